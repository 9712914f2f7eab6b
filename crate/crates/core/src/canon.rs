//! Canonical forms of triple systems up to vertex relabeling.
//!
//! [`canonical_form`] is the single entry point. Steiner triple systems go
//! through a generator-closure labeling (every labeling is determined by a
//! short sequence of generating points, and the code compared is the third
//! point of each pair in colex order); everything else goes through
//! individualization-refinement on vertex colorings. Being an STS is
//! itself invariant under relabeling, so dispatching on it keeps the form
//! canonical.

use std::cmp::Ordering;

use crate::hypergraph::{Triple, TripleSystem, VertexId};

/// A relabeled copy of a system, equal for two inputs iff they are isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    pub n: usize,
    pub edges: Vec<Triple>,
}

impl CanonicalForm {
    pub fn to_system(&self) -> TripleSystem {
        TripleSystem::from_sorted(self.n, self.edges.clone())
    }
}

pub fn canonical_form(h: &TripleSystem) -> CanonicalForm {
    match third_table(h) {
        Some(t) => sts_canonical(h.n(), &t).form,
        None => general_canonical(h),
    }
}

pub fn is_isomorphic(a: &TripleSystem, b: &TripleSystem) -> bool {
    a.n() == b.n() && a.len() == b.len() && canonical_form(a) == canonical_form(b)
}

/// `t[u * n + v]` = third point of the block through `uv`, if every pair
/// has codegree exactly one.
pub(crate) fn third_table(h: &TripleSystem) -> Option<Vec<u8>> {
    let n = h.n();
    if n > 255 || h.len() * 6 != n * n.saturating_sub(1) {
        return None;
    }
    const NONE: u8 = u8::MAX;
    let mut t = vec![NONE; n * n];
    for e in h.edges() {
        let [a, b, c] = e.vertices();
        for (x, y, z) in [(a, b, c), (a, c, b), (b, c, a)] {
            if t[x * n + y] != NONE {
                return None;
            }
            t[x * n + y] = z as u8;
            t[y * n + x] = z as u8;
        }
    }
    for u in 0..n {
        for v in 0..n {
            if u != v && t[u * n + v] == NONE {
                return None;
            }
        }
    }
    Some(t)
}

pub(crate) struct StsCanon {
    pub form: CanonicalForm,
    /// Colex third-point code of the canonical labeling.
    pub code: Vec<u8>,
    /// Order of the automorphism group.
    pub automorphisms: u64,
}

/// Number of Pasch configurations through each point.
fn pasch_counts(n: usize, t: &[u8]) -> Vec<u32> {
    let mut out = vec![0u32; n];
    for v in 0..n {
        let mut lines: Vec<(usize, usize)> = Vec::with_capacity(n / 2);
        for a in 0..n {
            if a == v {
                continue;
            }
            let b = t[v * n + a] as usize;
            if a < b {
                lines.push((a, b));
            }
        }
        let mut c = 0;
        for i in 0..lines.len() {
            let (a, b) = lines[i];
            for &(x, y) in &lines[i + 1..] {
                if t[a * n + x] == t[b * n + y] {
                    c += 1;
                }
                if t[a * n + y] == t[b * n + x] {
                    c += 1;
                }
            }
        }
        out[v] = c;
    }
    out
}

struct StsSearch<'a> {
    n: usize,
    t: &'a [u8],
    inv: Vec<u32>,
    label: Vec<u8>,
    order: Vec<u8>,
    count: usize,
    cur: Vec<u8>,
    best: Vec<u8>,
    has_best: bool,
    auts: u64,
}

const UNL: u8 = u8::MAX;

impl StsSearch<'_> {
    fn undo_to(&mut self, saved: usize) {
        while self.count > saved {
            self.count -= 1;
            let p = self.order[self.count] as usize;
            self.label[p] = UNL;
        }
    }

    fn assign(&mut self, p: usize) {
        self.label[p] = self.count as u8;
        self.order[self.count] = p as u8;
        self.count += 1;
    }

    fn run(&mut self, mut j: usize, mut i: usize, mut less: bool) {
        let n = self.n;
        let saved = self.count;
        loop {
            if j == n {
                if less || !self.has_best {
                    self.best.copy_from_slice(&self.cur);
                    self.has_best = true;
                    self.auts = 1;
                } else {
                    self.auts += 1;
                }
                break;
            }
            if i == 0 && j == self.count {
                // closure exhausted: next generator among unlabeled points of least invariant
                let min = (0..n)
                    .filter(|&p| self.label[p] == UNL)
                    .map(|p| self.inv[p])
                    .min()
                    .expect("unlabeled point remains");
                for p in 0..n {
                    if self.label[p] == UNL && self.inv[p] == min {
                        self.assign(p);
                        self.run(j, 0, less);
                        self.undo_to(j);
                        // the first child replaced the incumbent, whose
                        // prefix now equals ours
                        less = false;
                    }
                }
                break;
            }
            if i == j {
                j += 1;
                i = 0;
                continue;
            }
            let tp = self.t[self.order[i] as usize * n + self.order[j] as usize] as usize;
            if self.label[tp] == UNL {
                self.assign(tp);
            }
            let e = self.label[tp];
            let pos = j * (j - 1) / 2 + i;
            if !less && self.has_best {
                match e.cmp(&self.best[pos]) {
                    Ordering::Greater => break,
                    Ordering::Less => less = true,
                    Ordering::Equal => {}
                }
            }
            self.cur[pos] = e;
            i += 1;
        }
        self.undo_to(saved);
    }
}

/// Canonical labeling of an STS given by its third-point table.
pub(crate) fn sts_canonical(n: usize, t: &[u8]) -> StsCanon {
    let len = n * n.saturating_sub(1) / 2;
    let mut s = StsSearch {
        n,
        t,
        inv: pasch_counts(n, t),
        label: vec![UNL; n],
        order: vec![0; n],
        count: 0,
        cur: vec![0; len],
        best: vec![0; len],
        has_best: false,
        auts: 0,
    };
    if n > 0 {
        s.run(0, 0, true);
    } else {
        s.auts = 1;
    }
    let mut edges = Vec::with_capacity(len / 3);
    for j in 1..n {
        for i in 0..j {
            let c = s.best[j * (j - 1) / 2 + i] as usize;
            if c > j {
                edges.push(Triple::new_unchecked(i, j, c));
            }
        }
    }
    edges.sort_unstable();
    StsCanon {
        form: CanonicalForm { n, edges },
        code: s.best,
        automorphisms: s.auts,
    }
}

/// Order of the automorphism group of a Steiner triple system.
pub fn sts_automorphism_count(h: &TripleSystem) -> Option<u64> {
    third_table(h).map(|t| sts_canonical(h.n(), &t).automorphisms)
}

struct General<'a> {
    n: usize,
    edges: &'a [Triple],
    /// edges through each vertex, as the other two endpoints
    through: Vec<Vec<(usize, usize)>>,
    twin: Vec<Vec<bool>>,
    best: Option<Vec<Triple>>,
}

impl General<'_> {
    /// Refines an ordered coloring to stability. Colors are cell ranks.
    fn refine(&self, color: &mut [usize]) {
        let n = self.n;
        let mut cells = count_cells(color);
        loop {
            let mut keyed: Vec<(usize, Vec<(usize, usize)>, usize)> = (0..n)
                .map(|v| {
                    let mut sig: Vec<(usize, usize)> = self.through[v]
                        .iter()
                        .map(|&(a, b)| {
                            let (x, y) = (color[a], color[b]);
                            (x.min(y), x.max(y))
                        })
                        .collect();
                    sig.sort_unstable();
                    (color[v], sig, v)
                })
                .collect();
            keyed.sort_unstable_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
            let mut rank = 0;
            for i in 0..n {
                if i > 0 && (keyed[i].0, &keyed[i].1) != (keyed[i - 1].0, &keyed[i - 1].1) {
                    rank = i;
                }
                color[keyed[i].2] = rank;
            }
            let now = count_cells(color);
            if now == cells {
                return;
            }
            cells = now;
        }
    }

    fn search(&mut self, color: Vec<usize>) {
        let n = self.n;
        if count_cells(&color) == n {
            let mut es: Vec<Triple> = self
                .edges
                .iter()
                .map(|e| {
                    let [a, b, c] = e.vertices();
                    let mut v = [color[a], color[b], color[c]];
                    v.sort_unstable();
                    Triple::new_unchecked(v[0], v[1], v[2])
                })
                .collect();
            es.sort_unstable();
            if self.best.as_ref().is_none_or(|b| es < *b) {
                self.best = Some(es);
            }
            return;
        }
        // first smallest non-singleton cell
        let mut sizes = vec![0usize; n];
        for &c in &color {
            sizes[c] += 1;
        }
        let target = (0..n)
            .filter(|&c| sizes[c] > 1)
            .min_by_key(|&c| (sizes[c], c))
            .expect("non-discrete partition");
        let members: Vec<usize> = (0..n).filter(|&v| color[v] == target).collect();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &members {
            if tried.iter().any(|&u| self.twin[u][v]) {
                continue;
            }
            tried.push(v);
            let mut c = color.clone();
            // individualized vertex keeps the cell's rank; the rest of the cell moves up
            for &u in &members {
                if u != v {
                    c[u] = target + 1;
                }
            }
            self.refine(&mut c);
            self.search(c);
        }
    }
}

fn count_cells(color: &[usize]) -> usize {
    let mut seen = vec![false; color.len()];
    let mut k = 0;
    for &c in color {
        if !seen[c] {
            seen[c] = true;
            k += 1;
        }
    }
    k
}

/// Vertices whose transposition is an automorphism.
fn twins(h: &TripleSystem) -> Vec<Vec<bool>> {
    let n = h.n();
    let mut out = vec![vec![false; n]; n];
    for u in 0..n {
        out[u][u] = true;
        for v in u + 1..n {
            let swap = |x: VertexId| {
                if x == u {
                    v
                } else if x == v {
                    u
                } else {
                    x
                }
            };
            let ok = h.edges().iter().all(|e| {
                let [a, b, c] = e.vertices();
                if e.contains(u) == e.contains(v) {
                    return true;
                }
                Triple::new(swap(a), swap(b), swap(c))
                    .map(|t| h.contains(&t))
                    .unwrap_or(false)
            });
            out[u][v] = ok;
            out[v][u] = ok;
        }
    }
    out
}

fn general_canonical(h: &TripleSystem) -> CanonicalForm {
    let n = h.n();
    let mut through = vec![Vec::new(); n];
    for e in h.edges() {
        let [a, b, c] = e.vertices();
        through[a].push((b, c));
        through[b].push((a, c));
        through[c].push((a, b));
    }
    let mut g = General {
        n,
        edges: h.edges(),
        through,
        twin: twins(h),
        best: None,
    };
    let mut color = vec![0usize; n];
    g.refine(&mut color);
    if n > 0 {
        g.search(color);
    }
    CanonicalForm {
        n,
        edges: g.best.unwrap_or_default(),
    }
}

/// Canonical form ignoring the STS fast path (used as an independent route
/// in tests).
pub fn general_canonical_form(h: &TripleSystem) -> CanonicalForm {
    general_canonical(h)
}
