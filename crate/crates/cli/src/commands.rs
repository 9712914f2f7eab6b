use std::fmt::Write as _;
use std::path::Path;
use std::time::Duration;

use serde::Serialize;
use serde_json::json;

use cancellative_core::cancellative::corpus::pair_suite;
use cancellative_core::cancellative::{
    asymptotic_bound_report, check_shadow_edge_bounds, AsymptoticVariant, BoundSubject,
};
use cancellative_core::expansion::all_maximal_expansions;
use cancellative_core::extremal::{
    g_curve_csv, g_upper_bound, local_max_probe, max_cancellative, max_cancellative_with_shadow,
    region_csv, region_sample, SearchOptions, SearchResult, Side,
};
use cancellative_core::extremal::stability_experiment;
use cancellative_core::hypergraph::io::{parse_g2, parse_h3, write_g2, write_h3};
use cancellative_core::hypergraph::turan_graph;
use cancellative_core::rational::{parse_ratio, ratio_string};
use cancellative_core::steiner::{
    blowup, enumerate_sts, is_colorable, min_deletion_to_colorable, s_n_k,
    simplex_inequality_check_exact, BlowupSpec, Catalog, CatalogOptions, DeletionMode, SnkMode,
};
use cancellative_core::{
    cancellative_violation, make_pair, maximal_clique_expansion, Budget,
    BoundReport, Error, Graph, Result, SteinerTripleSystem, Triple, TripleSystem,
};

use crate::output::Output;
use crate::{
    BaseArgs, CheckCmd, Cli, Command, ExtremalCmd, HostArgs, ProbeCmd, RegionCmd, RunConfig,
    SearchArgs, SnkModeArg, StabilityCmd, StsCmd,
};

pub fn run(cli: &Cli) -> Result<Output> {
    let cfg = &cli.config;
    match &cli.command {
        Command::Sts(c) => sts(cfg, c),
        Command::Check(c) => check(c),
        Command::Shadow { input, out } => {
            let h = read_h3(input)?;
            let text = write_g2(&h.shadow());
            write_out(out.as_deref(), &text)?;
            let g = h.shadow();
            let edges: Vec<_> = g.edges().collect();
            Ok(Output::new(&json!({ "n": g.n(), "edges": edges }), text))
        }
        Command::Blowup { base, parts, out } => {
            let base = base_system(cfg, base)?;
            let spec = BlowupSpec::new(base, parts.clone())?;
            let b = blowup(&spec);
            let text = write_h3(&b.system);
            write_out(out.as_deref(), &text)?;
            let v = json!({
                "n": b.system.n(),
                "parts": parts,
                "edge_count": b.edge_count as u64,
                "shadow_count": b.shadow_count as u64,
                "edges": b.system.edges(),
            });
            Ok(Output::new(&v, text))
        }
        Command::Color { input, k } => {
            let h = read_h3(input)?;
            let cat = catalog(cfg, *k)?;
            let hit = cat.systems.iter().enumerate().find_map(|(i, s)| is_colorable(&h, s).map(|c| (i, c)));
            let text = match &hit {
                Some((i, c)) => format!("colorable by STS({k}) #{i}: {:?}", c.map),
                None => format!("not colorable by any STS({k})"),
            };
            let v = json!({
                "k": k,
                "colorable": hit.is_some(),
                "base_index": hit.as_ref().map(|h| h.0),
                "coloring": hit.as_ref().map(|h| &h.1),
            });
            Ok(Output::new(&v, text))
        }
        Command::Distance { input, k, local, restarts } => {
            let h = read_h3(input)?;
            let cat = catalog(cfg, *k)?;
            let mode = if *local {
                DeletionMode::LocalSearch { seed: cfg.seed, restarts: *restarts }
            } else {
                DeletionMode::Exact
            };
            let d = min_deletion_to_colorable(&h, &cat.systems, mode, &budget(cfg))?;
            let bound = if d.exact { "exactly" } else { "at most" };
            let text = format!("{bound} {} deletions (STS({k}) #{})", d.deletions, d.base_index);
            Ok(Output::new(&d, text))
        }
        Command::Expand { graph, kappa, all } => {
            let g = read_g2(graph)?;
            let xs = if *all { all_maximal_expansions(&g, *kappa)? } else { vec![maximal_clique_expansion(&g, *kappa)?] };
            let mut text = String::new();
            for x in &xs {
                let parts: Vec<String> = x.parts.iter().map(|p| join(p)).collect();
                writeln!(text, "S = [{}]  R = {{{}}}", parts.join("] ["), join(&x.r)).unwrap();
            }
            if *all {
                Ok(Output::new(&xs, text))
            } else {
                Ok(Output::new(&xs[0], text))
            }
        }
        Command::Extremal(c) => extremal(cfg, c),
        Command::Region(c) => region(cfg, c),
        Command::Probe(ProbeCmd::LocalMax { k, eps, side, c }) => {
            let side: Side = side.parse()?;
            let eps = parse_ratio(eps)?;
            let c = c.as_deref().map(parse_ratio).transpose()?;
            let r = local_max_probe(*k, &eps, side, c.as_ref())?;
            Ok(Output::new(&r, r.to_string()))
        }
        Command::Stability(StabilityCmd::Run { k, n, deletions, trials }) => {
            let cat = catalog(cfg, *k)?;
            let s = stability_experiment(*k, *n, *deletions, *trials, cfg.seed, &cat.systems, &budget(cfg))?;
            let mut text = String::new();
            for t in &s.trials {
                writeln!(
                    text,
                    "trial {}: base #{} |H|={} |dH|={} eps={} distance={} reference={:.6e}",
                    t.trial,
                    t.base_index,
                    t.edges,
                    t.shadow,
                    ratio_string(&t.epsilon),
                    t.distance,
                    t.reference_approx
                )
                .unwrap();
            }
            writeln!(text, "max distance {}", s.max_distance).unwrap();
            Ok(Output::new(&s, text))
        }
    }
}

fn budget(cfg: &RunConfig) -> Budget {
    Budget::with_time_limit(cfg.time_limit.map(Duration::from_secs_f64))
}

fn catalog(cfg: &RunConfig, k: usize) -> Result<Catalog> {
    let opts = CatalogOptions {
        cache_dir: cfg.cache_dir.clone(),
        use_cache: !cfg.no_cache,
        budget: budget(cfg),
        ..CatalogOptions::default()
    };
    enumerate_sts(k, &opts)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn read_h3(path: &Path) -> Result<TripleSystem> {
    parse_h3(&read(path)?)
}

fn read_g2(path: &Path) -> Result<Graph> {
    parse_g2(&read(path)?)
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    if let Some(p) = path {
        std::fs::write(p, text)?;
    }
    Ok(())
}

fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn base_system(cfg: &RunConfig, base: &BaseArgs) -> Result<SteinerTripleSystem> {
    match (&base.k, &base.base) {
        (Some(k), _) => catalog(cfg, *k)?
            .systems
            .into_iter()
            .next()
            .ok_or_else(|| Error::CatalogUnavailable(format!("empty STS({k}) catalog"))),
        (None, Some(p)) => SteinerTripleSystem::new(read_h3(p)?),
        (None, None) => Err(Error::InvalidParameter("give --k or --base".into())),
    }
}

#[derive(Serialize)]
struct CatalogJson<'a> {
    k: usize,
    count: usize,
    generator: &'a str,
    labeled_mass: String,
    automorphisms: &'a [u64],
    systems: Vec<&'a [Triple]>,
}

fn sts(cfg: &RunConfig, c: &StsCmd) -> Result<Output> {
    match c {
        StsCmd::Enum { k, out } => {
            let cat = catalog(cfg, *k)?;
            if let Some(p) = out {
                std::fs::write(p, cat.to_text())?;
            }
            let v = CatalogJson {
                k: cat.k,
                count: cat.len(),
                generator: &cat.generator,
                labeled_mass: cat.labeled_mass().to_string(),
                automorphisms: &cat.automorphisms,
                systems: cat.systems.iter().map(|s| s.system().edges()).collect(),
            };
            Ok(Output::new(&v, cat.to_text()))
        }
        StsCmd::Count { k } => {
            let cat = catalog(cfg, *k)?;
            Ok(Output::new(&json!({ "k": k, "count": cat.len() }), cat.len().to_string()))
        }
        StsCmd::Snk { n, k, mode } => {
            let cat = catalog(cfg, *k)?;
            let mode = match mode {
                SnkModeArg::Auto => SnkMode::Auto,
                SnkModeArg::Exhaustive => SnkMode::Exhaustive,
                SnkModeArg::NearBalanced => SnkMode::NearBalanced,
            };
            let r = s_n_k(*n, *k, &cat.systems, mode, &budget(cfg))?;
            let text = format!("s({n},{k}) = {}  parts {}  base #{}", r.value, join(&r.parts), r.base_index);
            Ok(Output::new(&r, text))
        }
    }
}

fn reports_text(reports: &[BoundReport]) -> String {
    reports.iter().map(|r| format!("{r}\n")).collect()
}

fn check(c: &CheckCmd) -> Result<Output> {
    match c {
        CheckCmd::Cancellative { input } => {
            let h = read_h3(input)?;
            match cancellative_violation(&h) {
                None => Ok(Output::new(&json!({ "cancellative": true }), "cancellative")),
                Some(v) => {
                    let j = json!({ "cancellative": false, "violation": v });
                    Ok(Output::new(&j, format!("violation {v}")).failed(true))
                }
            }
        }
        CheckCmd::Bounds { input, k, variant, c } => {
            let h = read_h3(input)?;
            match k {
                None => {
                    let reports = check_shadow_edge_bounds(&h)?;
                    let failed = reports.iter().any(|r| !r.holds);
                    Ok(Output::new(&reports, reports_text(&reports)).failed(failed))
                }
                Some(k) => {
                    let variant: AsymptoticVariant = variant.parse()?;
                    let c = c.as_deref().map(parse_ratio).transpose()?;
                    let bs = BoundSubject::System(&h);
                    let r = asymptotic_bound_report(bs, *k, variant, c.as_ref())?;
                    // valid only for large n: reported, never a failure
                    Ok(Output::new(&r, r.to_string()))
                }
            }
        }
        CheckCmd::Pair { graph, input, kappa } => {
            let p = make_pair(read_g2(graph)?, read_h3(input)?)?;
            let suite = pair_suite(&p, kappa)?;
            let ci = if suite.codegree_independence { "holds" } else { "FAILS" };
            let mut text = format!("codegree independence: {ci}\n");
            text.push_str(&reports_text(&suite.reports));
            let failed = !suite.holds();
            Ok(Output::new(&suite, text).failed(failed))
        }
        CheckCmd::Simplex { x } => {
            let x = x.iter().map(|s| parse_ratio(s)).collect::<Result<Vec<_>>>()?;
            let r = simplex_inequality_check_exact(&x)?;
            let failed = !r.holds;
            Ok(Output::new(&r, r.to_string()).failed(failed))
        }
    }
}

fn search_options(cfg: &RunConfig, s: &SearchArgs) -> Result<SearchOptions> {
    Ok(SearchOptions {
        order: s.order.parse()?,
        threshold: s.threshold,
        checkpoint: s.checkpoint.clone(),
        budget: budget(cfg),
    })
}

fn host_graph(h: &HostArgs) -> Result<Graph> {
    if let Some(p) = &h.graph {
        return read_g2(p);
    }
    if let Some(n) = h.complete {
        return Ok(Graph::complete(n));
    }
    match h.turan.as_deref() {
        Some(&[n, l]) => turan_graph(n, l),
        _ => Err(Error::InvalidParameter("give --graph, --complete N or --turan N,L".into())),
    }
}

fn search_text(r: &SearchResult) -> String {
    let mut text = format!(
        "optimum {}\nreference t_3({},3)={}\nwitnesses {} (up to isomorphism)\nproved {}\n",
        r.optimum, r.n, r.t3_reference, r.witness_count, r.proved
    );
    for w in &r.witnesses {
        let e: Vec<String> = w.edges().iter().map(|t| t.to_string()).collect();
        writeln!(text, "  {}", e.join(" ")).unwrap();
    }
    text
}

fn extremal(cfg: &RunConfig, c: &ExtremalCmd) -> Result<Output> {
    let r = match c {
        ExtremalCmd::Max { n, search } => max_cancellative(*n, &search_options(cfg, search)?)?,
        ExtremalCmd::ShadowMax { host, equality, search } => {
            let g = host_graph(host)?;
            max_cancellative_with_shadow(&g, *equality, &search_options(cfg, search)?)?
        }
    };
    Ok(Output::new(&r, search_text(&r)))
}

fn region(cfg: &RunConfig, c: &RegionCmd) -> Result<Output> {
    match c {
        RegionCmd::Sample { k, max_part } => {
            let cats = k.iter().map(|&k| catalog(cfg, k).map(|c| c.systems)).collect::<Result<Vec<_>>>()?;
            let pts = region_sample(k, *max_part, &cats, &budget(cfg))?;
            let csv = region_csv(&pts);
            Ok(Output::new(&pts, csv.clone()).csv(csv))
        }
        RegionCmd::Curve { steps, x } => match x {
            Some(x) => {
                let g = g_upper_bound(&parse_ratio(x)?)?;
                let text = format!("g({}) <= {} ({:?})", x, g.value, g.branch);
                Ok(Output::new(&g, text))
            }
            None => {
                let csv = g_curve_csv(*steps)?;
                let rows: Vec<_> = (0..=*steps)
                    .map(|i| g_upper_bound(&cancellative_core::rational::frac(i as i64, *steps as i64)))
                    .collect::<Result<_>>()?;
                Ok(Output::new(&rows, csv.clone()).csv(csv))
            }
        },
    }
}
