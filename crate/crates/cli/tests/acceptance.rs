//! Acceptance run: one PASS/FAIL line per criterion. Every time limit and
//! sample size is fixed below. Exits nonzero if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cancellative_core::cancellative::check_shadow_edge_bounds;
use cancellative_core::cancellative::corpus::{
    exhaustive_pair_corpus, pair_suite_with, random_pair, GraphFixtures, MAX_CORPUS_M,
};
use cancellative_core::extremal::{
    cancellative_subsets, exhaustive_max_cancellative, g_upper_bound, local_max_probe,
    max_cancellative, max_cancellative_with_shadow, region_sample, Branch, EdgeOrder,
    SearchOptions, Side, TripleIndex,
};
use cancellative_core::hypergraph::turan_triple_system;
use cancellative_core::rational::frac;
use cancellative_core::steiner::{
    blowup, enumerate_sts, link_blowup_structure, min_deletion_to_colorable, s_n_k, BlowupSpec,
    CatalogOptions, DeletionMode, SnkMode,
};
use cancellative_core::{
    canonical_form, is_cancellative, is_isomorphic, Budget, Graph, SteinerTripleSystem, Triple,
    TripleSystem,
};

type Outcome = Result<String, String>;

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

/// Runs `f`, failing if it takes longer than `limit`.
fn within<T>(what: &str, limit: Duration, f: impl FnOnce() -> T) -> Result<T, String> {
    let t = Instant::now();
    let v = f();
    let e = t.elapsed();
    if e > limit {
        return Err(format!("{what} took {e:.2?}, limit {limit:?}"));
    }
    Ok(v)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn catalog(k: usize) -> Result<Vec<SteinerTripleSystem>, String> {
    let opts = CatalogOptions { use_cache: false, ..CatalogOptions::default() };
    enumerate_sts(k, &opts).map(|c| c.systems).map_err(|e| e.to_string())
}

fn sts_census() -> Outcome {
    let opts = CatalogOptions { use_cache: false, ..CatalogOptions::default() };
    let mut got = Vec::new();
    for (k, want, limit) in [(3, 1, secs(1)), (7, 1, secs(1)), (9, 1, secs(1)), (13, 2, secs(60)), (15, 80, secs(600))] {
        let c = within(&format!("STS({k})"), limit, || enumerate_sts(k, &opts))?.map_err(|e| e.to_string())?;
        ensure(c.len() == want, || format!("s_{k} = {}, expected {want}", c.len()))?;
        got.push(format!("s{k}={}", c.len()));
    }
    Ok(got.join(" "))
}

fn extremal_small() -> Outcome {
    let want = [1, 2, 4, 8, 12];
    let mut got = Vec::new();
    for (n, &w) in (3..=7).zip(&want) {
        let limit = if n <= 6 { secs(10) } else { secs(600) };
        let orders: &[EdgeOrder] = if n <= 6 {
            &[EdgeOrder::Lexicographic]
        } else {
            &[EdgeOrder::Lexicographic, EdgeOrder::ReverseDegree]
        };
        let t3 = canonical_form(&turan_triple_system(n, 3).map_err(|e| e.to_string())?);
        for &order in orders {
            let opts = SearchOptions { order, ..SearchOptions::default() };
            let r = within(&format!("n={n} {order:?}"), limit, || max_cancellative(n, &opts))?
                .map_err(|e| e.to_string())?;
            ensure(r.proved && r.optimum == w, || format!("n={n}: optimum {} expected {w}", r.optimum))?;
            let forms: Vec<_> = r.witnesses.iter().map(canonical_form).collect();
            ensure(forms == [t3.clone()], || format!("n={n}: witnesses are not exactly T3({n},3)"))?;
        }
        if n <= 6 {
            let o = within(&format!("oracle n={n}"), secs(10), || exhaustive_max_cancellative(n, &Budget::unlimited()))?
                .map_err(|e| e.to_string())?;
            ensure(o.optimum == w && o.witnesses == [t3], || format!("oracle disagrees at n={n}"))?;
        }
        got.push(w.to_string());
    }
    Ok(format!("max = {} for n = 3..7", got.join(",")))
}

fn fano_shadow() -> Outcome {
    let r = within("K7 equality search", secs(300), || {
        max_cancellative_with_shadow(&Graph::complete(7), true, &SearchOptions::default())
    })?
    .map_err(|e| e.to_string())?;
    ensure(r.optimum == 7 && r.witness_count == 1, || format!("optimum {} with {} witnesses", r.optimum, r.witness_count))?;
    ensure(is_isomorphic(&r.witnesses[0], SteinerTripleSystem::fano().system()), || "witness is not Fano".into())?;
    Ok("optimum 7, unique witness is the Fano plane".into())
}

fn all_subsets_n6() -> Outcome {
    within("n=6 subset scan", secs(120), || -> Outcome {
        let index = TripleIndex::new(6).map_err(|e| e.to_string())?;
        let masks = cancellative_subsets(&index, &Budget::unlimited()).map_err(|e| e.to_string())?;
        for &m in &masks {
            let h = index.system(m);
            for r in check_shadow_edge_bounds(&h).map_err(|e| e.to_string())? {
                ensure(r.holds, || format!("{r} on mask {m:#x}"))?;
            }
        }
        Ok(format!("{} subsets scanned, {} cancellative, both bounds hold", index.subsets(), masks.len()))
    })?
}

const RANDOM_PAIRS: usize = 10_000;
const PAIR_SEED: u64 = 20_240_601;
const KAPPAS: [usize; 3] = [2, 3, 4];

fn pair_lemmas() -> Outcome {
    let budget = Budget::unlimited();
    let mut checks = 0usize;
    let mut exhaustive = 0usize;
    for m in 1..=MAX_CORPUS_M {
        exhaustive += exhaustive_pair_corpus(m, &budget, |g, pairs| {
            let fx = GraphFixtures::new(g, &KAPPAS)?;
            for p in &pairs {
                let s = pair_suite_with(p, &fx)?;
                checks += s.reports.len();
                if !s.holds() {
                    return Err(cancellative_core::Error::AssertionFailed(format!(
                        "m={m}: {:?}",
                        s.failures().map(|r| r.to_string()).collect::<Vec<_>>()
                    )));
                }
            }
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(PAIR_SEED);
    for i in 0..RANDOM_PAIRS {
        let m = rng.gen_range(1..=10);
        let p = random_pair(m, &mut rng).map_err(|e| e.to_string())?;
        let fx = GraphFixtures::new(p.g(), &KAPPAS).map_err(|e| e.to_string())?;
        let s = pair_suite_with(&p, &fx).map_err(|e| e.to_string())?;
        checks += s.reports.len();
        ensure(s.holds(), || format!("random pair {i} (m={m}) fails"))?;
    }
    Ok(format!("{exhaustive} exhaustive + {RANDOM_PAIRS} random pairs, {checks} inequalities, 0 failures"))
}

fn dist(a: &BigRational, b: &BigRational) -> BigRational {
    if a > b {
        a - b
    } else {
        b - a
    }
}

fn odometer(k: usize, lo: usize, hi: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut v = vec![lo; k];
    loop {
        out.push(v.clone());
        let mut i = 0;
        while i < k && v[i] == hi {
            v[i] = lo;
            i += 1;
        }
        if i == k {
            return out;
        }
        v[i] += 1;
    }
}

fn blowups() -> Outcome {
    let mut count = 0usize;
    for k in [3, 7, 9] {
        for (bi, base) in catalog(k)?.into_iter().enumerate() {
            for parts in odometer(k, 1, 3) {
                let spec = BlowupSpec::new(base.clone(), parts.clone()).map_err(|e| e.to_string())?;
                let b = blowup(&spec);
                let tag = || format!("STS({k})#{bi} {parts:?}");
                ensure(is_cancellative(&b.system), || format!("{} not cancellative", tag()))?;
                ensure(b.system.len() as u128 == b.edge_count, || format!("{} |H| mismatch", tag()))?;
                ensure(b.system.shadow().len() as u128 == b.shadow_count, || format!("{} |dH| mismatch", tag()))?;
                for v in 0..spec.n() {
                    let ok = link_blowup_structure(&b.system, &spec, v).map_err(|e| e.to_string())?;
                    ensure(ok, || format!("{} link at {v}", tag()))?;
                }
                count += 1;
            }
            // balanced blowups approach ((k-1)/k, (k-1)/k^2) monotonically
            let lim = (frac(k as i64 - 1, k as i64), frac(k as i64 - 1, (k * k) as i64));
            let mut prev: Option<(_, _)> = None;
            for m in 1..=3 {
                let spec = BlowupSpec::new(base.clone(), vec![m; k]).map_err(|e| e.to_string())?;
                let (x, y) = blowup(&spec).system.densities().map_err(|e| e.to_string())?;
                let gap = (dist(&x, &lim.0), dist(&y, &lim.1));
                if let Some((gx, gy)) = &prev {
                    ensure(gap.0 < *gx && gap.1 < *gy, || format!("STS({k})#{bi}: m={m} not closer to the limit"))?;
                }
                prev = Some(gap);
            }
        }
    }
    Ok(format!("{count} blowups: cancellative, counts match, links as predicted; balanced densities monotone"))
}

fn greedy_cancellative(n: usize, rng: &mut ChaCha8Rng) -> TripleSystem {
    let mut all: Vec<Triple> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                all.push(Triple::new(a, b, c).unwrap());
            }
        }
    }
    all.shuffle(rng);
    let mut h = TripleSystem::empty(n);
    for t in all {
        let mut e = h.edges().to_vec();
        e.push(t);
        let next = TripleSystem::new(n, e).unwrap();
        if is_cancellative(&next) {
            h = next;
        }
    }
    h
}

const DELETION_SAMPLES: usize = 12;
const DELETION_SEED: u64 = 7;

fn deletion_distance() -> Outcome {
    let budget = Budget::unlimited();
    let f5 = TripleSystem::from_tuples(5, &[(0, 1, 2), (0, 1, 3), (2, 3, 4)]).map_err(|e| e.to_string())?;
    let tri = catalog(3)?;
    let d = within("F5 distance", secs(60), || min_deletion_to_colorable(&f5, &tri, DeletionMode::Exact, &budget))?
        .map_err(|e| e.to_string())?;
    ensure(d.deletions == 1, || format!("F5 distance {}", d.deletions))?;
    let mut rng = ChaCha8Rng::seed_from_u64(DELETION_SEED);
    let mut calls = 1;
    for k in [3, 7] {
        let cat = catalog(k)?;
        for _ in 0..DELETION_SAMPLES {
            // part vector with n <= 9
            let mut parts = vec![1; k];
            while parts.iter().sum::<usize>() < 9 && rng.gen_bool(0.7) {
                let i = rng.gen_range(0..k);
                parts[i] += 1;
            }
            let base = cat.choose(&mut rng).unwrap().clone();
            let full = blowup(&BlowupSpec::new(base, parts.clone()).map_err(|e| e.to_string())?).system;
            let kept: Vec<Triple> = full.edges().iter().copied().filter(|_| rng.gen_bool(0.6)).collect();
            let h = TripleSystem::new(full.n(), kept).map_err(|e| e.to_string())?;
            let d = within(&format!("k={k} {parts:?}"), secs(60), || {
                min_deletion_to_colorable(&h, &cat, DeletionMode::Exact, &budget)
            })?
            .map_err(|e| e.to_string())?;
            ensure(d.deletions == 0, || format!("k={k} {parts:?}: distance {}", d.deletions))?;
            calls += 1;
        }
    }
    let subgraphs = calls - 1;
    // harder instances: greedy random cancellative systems on 9 vertices
    let mut hardest = Duration::ZERO;
    for k in [3, 7] {
        let cat = catalog(k)?;
        for _ in 0..DELETION_SAMPLES {
            let h = greedy_cancellative(9, &mut rng);
            let t = Instant::now();
            let d = within(&format!("greedy k={k}"), secs(60), || {
                min_deletion_to_colorable(&h, &cat, DeletionMode::Exact, &budget)
            })?
            .map_err(|e| e.to_string())?;
            hardest = hardest.max(t.elapsed());
            ensure(d.exact && d.deletions < h.len(), || format!("greedy k={k}: {} of {}", d.deletions, h.len()))?;
            calls += 1;
        }
    }
    Ok(format!(
        "F5 needs 1 deletion; {subgraphs} blowup subgraphs need 0; {calls} exact calls, slowest {hardest:.2?}"
    ))
}

fn snk() -> Outcome {
    let budget = Budget::unlimited();
    let mut got = Vec::new();
    for (n, k, want) in [(9, 3, 27u128), (10, 3, 36), (14, 7, 56)] {
        let cat = catalog(k)?;
        let (auto, ex) = within(&format!("s({n},{k})"), secs(10), || {
            (s_n_k(n, k, &cat, SnkMode::Auto, &budget), s_n_k(n, k, &cat, SnkMode::Exhaustive, &budget))
        })?;
        let (auto, ex) = (auto.map_err(|e| e.to_string())?, ex.map_err(|e| e.to_string())?);
        ensure(auto.value == want && ex.value == want, || format!("s({n},{k}) = {} / {} expected {want}", auto.value, ex.value))?;
        got.push(format!("s({n},{k})={want}"));
    }
    Ok(got.join(" "))
}

fn region() -> Outcome {
    let g = g_upper_bound(&frac(2, 3)).map_err(|e| e.to_string())?;
    ensure(g.branch == Branch::Both && g.as_rational() == Some(&frac(2, 9)), || format!("g(2/3) = {}", g.value))?;
    let ks = [3, 7, 9];
    let cats = ks.iter().map(|&k| catalog(k)).collect::<Result<Vec<_>, _>>()?;
    // validated inside: every point is cancellative and meets both finite-n bounds
    let pts = region_sample(&ks, 2, &cats, &Budget::unlimited()).map_err(|e| e.to_string())?;
    let mut probes = 0;
    for k in [3, 7, 9, 13] {
        for eps in [frac(1, 100), frac(1, 1000)] {
            let r = local_max_probe(k, &eps, Side::Right, None).map_err(|e| e.to_string())?;
            ensure(r.holds && r.lhs < r.rhs, || format!("k={k}: {r}"))?;
            ensure(r.rhs == frac(k as i64 - 1, (k * k) as i64), || format!("k={k}: rhs {}", r.rhs))?;
            probes += 1;
        }
    }
    Ok(format!("g(2/3)=2/9 on both branches; {} region points; {probes} right probes strict", pts.len()))
}

fn cli_json(args: &[&str], workers: &str) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_cancellative-lab"))
        .args(["--workers", workers, "--format", "json", "--no-cache"])
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || format!("{args:?} exited with {}", out.status))?;
    Ok(out.stdout)
}

fn worker_determinism() -> Outcome {
    let mut runs: Vec<Vec<String>> = Vec::new();
    for k in ["3", "7", "9", "13", "15"] {
        runs.push(vec!["sts".into(), "enum".into(), "--k".into(), k.into()]);
    }
    for n in 3..=7 {
        runs.push(vec!["extremal".into(), "max".into(), "--n".into(), n.to_string()]);
    }
    runs.push(["extremal", "shadow-max", "--complete", "7", "--equality"].map(String::from).to_vec());
    for r in &runs {
        let args: Vec<&str> = r.iter().map(String::as_str).collect();
        let a = cli_json(&args, "1")?;
        let b = cli_json(&args, "4")?;
        ensure(a == b, || format!("{args:?}: outputs differ"))?;
    }
    Ok(format!("{} commands byte-identical with 1 and 4 workers", runs.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("STS census", sts_census),
        ("max cancellative, n = 3..7", extremal_small),
        ("shadow-max on K7 with equality", fano_shadow),
        ("shadow inequalities on all subsets, n = 6", all_subsets_n6),
        ("pair inequalities", pair_lemmas),
        ("Steiner blowups", blowups),
        ("deletion distance", deletion_distance),
        ("s(n,k)", snk),
        ("region geometry", region),
        ("worker-count determinism", worker_determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = f();
        let e = t.elapsed();
        match r {
            Ok(msg) => println!("PASS {:>2} {name}: {msg} [{e:.2?}]", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {msg} [{e:.2?}]", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
