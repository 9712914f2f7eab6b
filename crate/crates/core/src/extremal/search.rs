//! Largest cancellative triple systems on at most nine vertices, optionally
//! with the shadow confined to (or equal to) a given graph.
//!
//! The search runs against a fixed threshold `T` instead of a moving
//! incumbent: it visits every cancellative system of size at least `T`,
//! so node counts and witness sets are the same for any thread count.
//! When nothing reaches `T`, the search repeats with `T - 1`.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Mutex;

use serde::{Deserialize, Serialize, Serializer};

use crate::budget::Budget;
use crate::cancellative::is_cancellative;
use crate::canon::canonical_form;
use crate::error::{Error, Result};
use crate::hypergraph::{turan_number, turan_triple_system, Graph, Triple, TripleSystem};
use crate::par;
use crate::steiner::catalog::write_atomic;

/// Largest `n` the exact search accepts.
pub const MAX_EXACT_N: usize = 9;
/// Nodes between checkpoint writes (checked when a task finishes).
pub const CHECKPOINT_INTERVAL: u64 = 10_000_000;
pub const CHECKPOINT_VERSION: u32 = 1;
/// Branching depth at which the tree is cut into parallel tasks.
const SPLIT_DEPTH: usize = 10;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgeOrder {
    /// lexicographic on triples
    #[default]
    Lexicographic,
    /// most constrained triples first, ties in reverse lexicographic order
    ReverseDegree,
}

impl std::str::FromStr for EdgeOrder {
    type Err = Error;
    fn from_str(s: &str) -> Result<EdgeOrder> {
        match s {
            "lex" | "lexicographic" => Ok(EdgeOrder::Lexicographic),
            "reverse-degree" => Ok(EdgeOrder::ReverseDegree),
            _ => Err(Error::InvalidParameter(format!("unknown edge order {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SearchOptions {
    pub order: EdgeOrder,
    /// starting threshold; default is the best of a few constructions
    pub threshold: Option<usize>,
    pub checkpoint: Option<PathBuf>,
    pub budget: Budget,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchResult {
    pub n: usize,
    pub optimum: usize,
    pub t3_reference: u128,
    pub witness_count: usize,
    pub nodes: u64,
    pub proved: bool,
    /// threshold of the final (successful) pass
    pub threshold: usize,
    pub order: EdgeOrder,
    /// one canonical representative per isomorphism class, sorted
    #[serde(serialize_with = "edge_lists")]
    pub witnesses: Vec<TripleSystem>,
}

fn edge_lists<S: Serializer>(ws: &[TripleSystem], s: S) -> std::result::Result<S::Ok, S::Error> {
    let v: Vec<Vec<[usize; 3]>> = ws
        .iter()
        .map(|w| w.edges().iter().map(|e| e.vertices()).collect())
        .collect();
    v.serialize(s)
}

/// Admissible triples in search order and, for each pair of them, the
/// triples completing a forbidden configuration `A, B, C` with `A △ B ⊆ C`.
struct Problem {
    n: usize,
    triples: Vec<Triple>,
    conflict: Vec<Vec<u128>>,
    vertex_mask: Vec<u128>,
    /// triples covering each pair of the host graph
    pair_mask: Vec<u128>,
    equality: bool,
    vertex_cap: u32,
    shadow_cap: Vec<usize>,
}

fn bits(mut m: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            i
        })
    })
}

/// `cap[s]`: the largest `e` allowed by `27e² ≤ s'³` and
/// `3n·e ≤ s'(n² - 2s') + 9n³` for some shadow size `s' ≤ s`.
fn shadow_caps(n: usize, pairs: usize) -> Vec<usize> {
    let ni = n as i128;
    let mut best = 0usize;
    (0..=pairs as i128)
        .map(|s| {
            let cube = s * s * s;
            let mut pow = ((cube / 27) as f64).sqrt() as i128;
            while 27 * (pow + 1) * (pow + 1) <= cube {
                pow += 1;
            }
            while pow > 0 && 27 * pow * pow > cube {
                pow -= 1;
            }
            let quad = (s * (ni * ni - 2 * s) + 9 * ni * ni * ni).div_euclid(3 * ni.max(1));
            best = best.max(pow.min(quad).max(0) as usize);
            best
        })
        .collect()
}

fn conflicts(ts: &[Triple]) -> Vec<Vec<u128>> {
    let m = ts.len();
    let mut c = vec![vec![0u128; m]; m];
    for x in 0..m {
        for y in x + 1..m {
            let Some(d) = ts[x].symmetric_difference_pair(&ts[y]) else { continue };
            for z in (0..m).filter(|&z| ts[z].contains_pair(d)) {
                for (p, q, r) in [(x, y, z), (x, z, y), (y, z, x)] {
                    c[p][q] |= 1 << r;
                    c[q][p] |= 1 << r;
                }
            }
        }
    }
    c
}

impl Problem {
    fn new(g: &Graph, equality: bool, order: EdgeOrder) -> Problem {
        let n = g.n();
        let mut triples = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    if g.has_edge(a, b) && g.has_edge(a, c) && g.has_edge(b, c) {
                        triples.push(Triple::new(a, b, c).expect("distinct"));
                    }
                }
            }
        }
        if order == EdgeOrder::ReverseDegree {
            let c = conflicts(&triples);
            let degree: Vec<u32> = c.iter().map(|row| row.iter().map(|m| m.count_ones()).sum()).collect();
            let mut idx: Vec<usize> = (0..triples.len()).collect();
            idx.sort_by(|&x, &y| degree[y].cmp(&degree[x]).then(y.cmp(&x)));
            triples = idx.into_iter().map(|i| triples[i]).collect();
        }
        let conflict = conflicts(&triples);
        let pair_index: BTreeMap<_, _> = g.edges().enumerate().map(|(i, p)| (p, i)).collect();
        let mut vertex_mask = vec![0u128; n];
        let mut pair_mask = vec![0u128; pair_index.len()];
        for (i, t) in triples.iter().enumerate() {
            for v in t.vertices() {
                vertex_mask[v] |= 1 << i;
            }
            for p in t.pairs() {
                pair_mask[pair_index[&p]] |= 1 << i;
            }
        }
        Problem {
            n,
            triples,
            conflict,
            vertex_mask,
            shadow_cap: shadow_caps(n, pair_mask.len()),
            pair_mask,
            equality,
            // links are triangle-free graphs on n - 1 vertices
            vertex_cap: (n.saturating_sub(1).pow(2) / 4) as u32,
        }
    }

    fn full(&self) -> u128 {
        match self.triples.len() {
            0 => 0,
            m => u128::MAX >> (128 - m),
        }
    }

    fn system(&self, mask: u128) -> TripleSystem {
        TripleSystem::new(self.n, bits(mask).map(|i| self.triples[i])).expect("valid triples")
    }

    fn covers_all(&self, mask: u128) -> bool {
        self.pair_mask.iter().all(|&p| p & mask != 0)
    }

    /// Whether a cancellative system inside `reach` could still have
    /// `threshold` edges.
    fn bound(&self, reach: u128, threshold: usize) -> bool {
        if (reach.count_ones() as usize) < threshold {
            return false;
        }
        let deg: u32 = self
            .vertex_mask
            .iter()
            .map(|&v| (v & reach).count_ones().min(self.vertex_cap))
            .sum();
        if ((deg / 3) as usize) < threshold {
            return false;
        }
        let s = self.pair_mask.iter().filter(|&&p| p & reach != 0).count();
        self.shadow_cap[s] >= threshold
    }

    /// Starting threshold: the best of `T_3(n, 3)` (when admissible) and
    /// two greedy passes. Under equality, candidates missing a pair of `G`
    /// only count when no candidate covers everything.
    fn initial_threshold(&self) -> usize {
        let mut candidates = Vec::new();
        for rev in [false, true] {
            let mut chosen = 0u128;
            let mut forb = 0u128;
            let m = self.triples.len();
            for j in (0..m).map(|j| if rev { m - 1 - j } else { j }) {
                if forb >> j & 1 == 1 {
                    continue;
                }
                for f in bits(chosen) {
                    forb |= self.conflict[f][j];
                }
                chosen |= 1 << j;
            }
            candidates.push(chosen);
        }
        if self.n >= 3 {
            let t = turan_triple_system(self.n, 3).expect("n >= 3");
            let pos: Option<Vec<usize>> =
                t.edges().iter().map(|e| self.triples.iter().position(|x| x == e)).collect();
            if let Some(pos) = pos {
                candidates.push(pos.into_iter().fold(0, |a, i| a | 1 << i));
            }
        }
        let size = |m: &u128| m.count_ones() as usize;
        let valid = candidates.iter().filter(|&&m| !self.equality || self.covers_all(m)).map(size).max();
        valid.unwrap_or_else(|| candidates.iter().map(size).max().unwrap_or(0))
    }
}

#[derive(Clone, Copy, Debug)]
struct Node {
    /// next undecided position
    i: usize,
    chosen: u128,
    forb: u128,
    size: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
struct TaskOut {
    nodes: u64,
    best: usize,
    #[serde(with = "hex_masks")]
    solutions: Vec<u128>,
}

mod hex_masks {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[u128], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|m| format!("{m:x}")).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<u128>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|h| u128::from_str_radix(h, 16).map_err(serde::de::Error::custom))
            .collect()
    }
}

struct Walker<'a> {
    p: &'a Problem,
    threshold: usize,
    budget: &'a Budget,
    stop: &'a AtomicBool,
    out: TaskOut,
    frontier: Option<(usize, Vec<Node>)>,
}

impl Walker<'_> {
    fn leaf(&mut self, chosen: u128, size: usize) {
        if size < self.threshold || (self.p.equality && !self.p.covers_all(chosen)) {
            return;
        }
        if size > self.out.best {
            self.out.best = size;
            self.out.solutions.clear();
        }
        if size == self.out.best {
            self.out.solutions.push(chosen);
        }
    }

    fn run(&mut self, node: Node, depth: usize) -> bool {
        self.out.nodes += 1;
        if self.out.nodes & 0xffff == 0 && (self.stop.load(Ordering::Relaxed) || self.budget.expired()) {
            self.stop.store(true, Ordering::Relaxed);
            return false;
        }
        let Node { i, chosen, forb, size } = node;
        let avail = self.p.full() & !forb & !((1u128 << i) - 1);
        if avail == 0 {
            self.leaf(chosen, size);
            return true;
        }
        if size + (avail.count_ones() as usize) < self.threshold
            || !self.p.bound(chosen | avail, self.threshold)
        {
            return true;
        }
        if let Some((cut, tasks)) = &mut self.frontier {
            if depth == *cut {
                tasks.push(node);
                return true;
            }
        }
        let j = avail.trailing_zeros() as usize;
        let mut nf = forb;
        for f in bits(chosen) {
            nf |= self.p.conflict[f][j];
        }
        let take = Node { i: j + 1, chosen: chosen | 1 << j, forb: nf, size: size + 1 };
        let skip = Node { i: j + 1, chosen, forb: forb | 1 << j, size };
        self.run(take, depth + 1) && self.run(skip, depth + 1)
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct Checkpoint {
    version: u32,
    fingerprint: String,
    tasks: usize,
    done: BTreeMap<usize, TaskOut>,
}

fn load_checkpoint(path: &Path, fingerprint: &str, tasks: usize) -> Result<BTreeMap<usize, TaskOut>> {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(BTreeMap::new()),
        Err(e) => return Err(e.into()),
    };
    let cp: Checkpoint =
        serde_json::from_str(&text).map_err(|e| Error::Checkpoint(format!("{}: {e}", path.display())))?;
    if cp.version != CHECKPOINT_VERSION {
        return Err(Error::Checkpoint(format!("unsupported version {}", cp.version)));
    }
    if cp.fingerprint != fingerprint || cp.tasks != tasks {
        // a different search (or pass): start over
        return Ok(BTreeMap::new());
    }
    Ok(cp.done)
}

fn save_checkpoint(path: &Path, fingerprint: &str, tasks: usize, done: &BTreeMap<usize, TaskOut>) -> Result<()> {
    let cp = Checkpoint {
        version: CHECKPOINT_VERSION,
        fingerprint: fingerprint.to_string(),
        tasks,
        done: done.clone(),
    };
    write_atomic(path, &serde_json::to_string(&cp)?)
}

struct Pass {
    nodes: u64,
    best: usize,
    solutions: Vec<u128>,
}

fn run_pass(p: &Problem, threshold: usize, opts: &SearchOptions) -> Result<Pass> {
    let stop = AtomicBool::new(false);
    let root = Node { i: 0, chosen: 0, forb: 0, size: 0 };
    let mut w = Walker {
        p,
        threshold,
        budget: &opts.budget,
        stop: &stop,
        out: TaskOut::default(),
        frontier: Some((SPLIT_DEPTH, Vec::new())),
    };
    w.run(root, 0);
    let (_, tasks) = w.frontier.take().expect("frontier");
    let mut total = w.out.clone();

    let fingerprint = format!(
        "n={} order={:?} threshold={} equality={} triples={}",
        p.n,
        opts.order,
        threshold,
        p.equality,
        p.triples.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(",")
    );
    let done = match &opts.checkpoint {
        Some(path) => load_checkpoint(path, &fingerprint, tasks.len())?,
        None => BTreeMap::new(),
    };
    let progress = Mutex::new((done, 0u64));
    let indexed: Vec<(usize, Node)> = tasks.iter().copied().enumerate().collect();
    let results: Vec<Result<TaskOut>> = par::map(indexed, |(idx, node)| {
        if let Some(r) = progress.lock().expect("progress lock").0.get(&idx) {
            return Ok(r.clone());
        }
        if stop.load(Ordering::Relaxed) || opts.budget.expired() {
            stop.store(true, Ordering::Relaxed);
            return Err(Error::Budget("time limit reached during extremal search".into()));
        }
        let mut w = Walker { p, threshold, budget: &opts.budget, stop: &stop, out: TaskOut::default(), frontier: None };
        if !w.run(node, SPLIT_DEPTH) {
            return Err(Error::Budget("time limit reached during extremal search".into()));
        }
        if let Some(path) = &opts.checkpoint {
            let mut g = progress.lock().expect("progress lock");
            g.0.insert(idx, w.out.clone());
            g.1 += w.out.nodes;
            if g.1 >= CHECKPOINT_INTERVAL {
                g.1 = 0;
                save_checkpoint(path, &fingerprint, tasks.len(), &g.0)?;
            }
        }
        Ok(w.out)
    });
    let mut failure = None;
    for r in results {
        match r {
            Ok(out) => {
                total.nodes += out.nodes;
                if out.best > total.best {
                    total.best = out.best;
                    total.solutions.clear();
                }
                if out.best == total.best && out.best > 0 {
                    total.solutions.extend(out.solutions);
                }
            }
            Err(e) => failure = failure.or(Some(e)),
        }
    }
    if let Some(path) = &opts.checkpoint {
        let g = progress.lock().expect("progress lock");
        save_checkpoint(path, &fingerprint, tasks.len(), &g.0)?;
    }
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(Pass { nodes: total.nodes, best: total.best, solutions: total.solutions })
}

fn too_large() -> Error {
    Error::Budget(format!(
        "exact search is limited to n <= {MAX_EXACT_N}; for larger n use the blowup constructions (`blowup`, `region sample`)"
    ))
}

fn solve(g: &Graph, equality: bool, opts: &SearchOptions) -> Result<SearchResult> {
    let n = g.n();
    if n == 0 {
        return Err(Error::TooFewVertices { needed: 1, got: 0 });
    }
    if n > MAX_EXACT_N {
        return Err(too_large());
    }
    let p = Problem::new(g, equality, opts.order);
    let t3_reference = turan_number(n, 3, 3)?;
    let mut threshold = opts.threshold.unwrap_or_else(|| p.initial_threshold());
    let mut nodes = 0;
    loop {
        let pass = if threshold == 0 {
            // only the empty system can remain
            let ok = !equality || p.covers_all(0);
            Pass { nodes: 1, best: 0, solutions: if ok { vec![0] } else { vec![] } }
        } else {
            run_pass(&p, threshold, opts)?
        };
        nodes += pass.nodes;
        if !pass.solutions.is_empty() {
            let mut forms = BTreeSet::new();
            for &m in &pass.solutions {
                let h = p.system(m);
                debug_assert!(is_cancellative(&h));
                forms.insert(canonical_form(&h));
            }
            let witnesses: Vec<TripleSystem> = forms.into_iter().map(|f| f.to_system()).collect();
            return Ok(SearchResult {
                n,
                optimum: pass.best,
                t3_reference,
                witness_count: witnesses.len(),
                nodes,
                proved: true,
                threshold,
                order: opts.order,
                witnesses,
            });
        }
        if threshold == 0 {
            return Err(Error::InvalidParameter(
                "no cancellative system has the required shadow".into(),
            ));
        }
        threshold -= 1;
    }
}

/// `ex(n, T_3)` with all optimal systems up to isomorphism; `n ≤ 9`.
pub fn max_cancellative(n: usize, opts: &SearchOptions) -> Result<SearchResult> {
    if n > MAX_EXACT_N {
        return Err(too_large());
    }
    solve(&Graph::complete(n), false, opts)
}

/// Largest cancellative `H` with `∂H ⊆ G`, or `∂H = G` when `equality`.
/// The equality constraint is applied to complete systems only.
pub fn max_cancellative_with_shadow(g: &Graph, equality: bool, opts: &SearchOptions) -> Result<SearchResult> {
    solve(g, equality, opts)
}
