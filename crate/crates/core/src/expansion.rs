//! Maximum cliques, clique expansions and exact k-colorability.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::budget::guard;
use crate::error::{Error, Result};
use crate::hypergraph::{Graph, VertexId};

/// Largest graph accepted by the exponential searches.
pub const MAX_SEARCH_VERTICES: usize = 64;

/// Cap on the number of distinct expansions [`all_maximal_expansions`] returns.
pub const MAX_EXPANSIONS: usize = 200_000;

/// Greedy coloring of `cand`; returns the vertices with their color
/// numbers (1-based), in non-decreasing color order.
fn color_sort(g: &Graph, cand: &BitSet) -> Vec<(VertexId, usize)> {
    let mut out = Vec::with_capacity(cand.count());
    let mut left = cand.clone();
    let mut color = 0;
    while !left.is_empty() {
        color += 1;
        let mut q = left.clone();
        while let Some(v) = q.first() {
            q.remove(v);
            q.difference_with(g.neighbors(v));
            left.remove(v);
            out.push((v, color));
        }
    }
    out
}

fn omega_rec(g: &Graph, size: usize, cand: BitSet, best: &mut usize) {
    let order = color_sort(g, &cand);
    let mut cand = cand;
    for &(v, c) in order.iter().rev() {
        if size + c <= *best {
            return;
        }
        let next = cand.intersection(g.neighbors(v));
        if next.is_empty() {
            *best = (*best).max(size + 1);
        } else {
            omega_rec(g, size + 1, next, best);
        }
        cand.remove(v);
    }
}

/// Clique number of `G[allowed]`.
pub fn clique_number_within(g: &Graph, allowed: &BitSet) -> usize {
    let mut best = 0;
    if !allowed.is_empty() {
        omega_rec(g, 0, allowed.clone(), &mut best);
    }
    best
}

pub fn clique_number(g: &Graph) -> usize {
    clique_number_within(g, &BitSet::full(g.n()))
}

fn coloring_bound(g: &Graph, cand: &BitSet) -> usize {
    color_sort(g, cand).last().map_or(0, |&(_, c)| c)
}

/// Depth-first in increasing vertex order; the first clique of size
/// `target` reached is the lexicographically smallest one.
fn first_clique(g: &Graph, cur: &mut Vec<VertexId>, cand: &BitSet, target: usize) -> bool {
    if cur.len() == target {
        return true;
    }
    if cur.len() + coloring_bound(g, cand) < target {
        return false;
    }
    let mut rest = cand.clone();
    for v in cand.iter() {
        if cur.len() + rest.count() < target {
            return false;
        }
        rest.remove(v);
        cur.push(v);
        if first_clique(g, cur, &rest.intersection(g.neighbors(v)), target) {
            return true;
        }
        cur.pop();
    }
    false
}

/// Lexicographically smallest maximum clique of `G[allowed]`.
pub fn max_clique_within(g: &Graph, allowed: &BitSet) -> Vec<VertexId> {
    let w = clique_number_within(g, allowed);
    let mut cur = Vec::with_capacity(w);
    let found = first_clique(g, &mut cur, allowed, w);
    debug_assert!(found);
    cur
}

/// A maximum clique; among all of them the lexicographically smallest
/// sorted vertex list.
pub fn max_clique(g: &Graph) -> Vec<VertexId> {
    max_clique_within(g, &BitSet::full(g.n()))
}

/// All maximal cliques (Bron–Kerbosch with pivoting), each sorted, in
/// lexicographic order.
pub fn maximal_cliques(g: &Graph) -> Vec<Vec<VertexId>> {
    fn bk(g: &Graph, r: &mut Vec<VertexId>, p: BitSet, x: BitSet, out: &mut Vec<Vec<VertexId>>) {
        if p.is_empty() {
            if x.is_empty() {
                let mut c = r.clone();
                c.sort_unstable();
                out.push(c);
            }
            return;
        }
        let pivot = p
            .iter()
            .chain(x.iter())
            .max_by_key(|&u| (p.intersection_count(g.neighbors(u)), std::cmp::Reverse(u)))
            .unwrap();
        let mut p = p;
        let mut x = x;
        let mut todo = p.clone();
        todo.difference_with(g.neighbors(pivot));
        for v in todo.iter() {
            r.push(v);
            bk(g, r, p.intersection(g.neighbors(v)), x.intersection(g.neighbors(v)), out);
            r.pop();
            p.remove(v);
            x.insert(v);
        }
    }
    let mut out = Vec::new();
    if g.n() > 0 {
        bk(g, &mut Vec::new(), BitSet::full(g.n()), BitSet::new(g.n()), &mut out);
    }
    out.sort();
    out
}

/// `(S_1, …, S_t, R)` with every `G[S_i]` complete.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueExpansion {
    pub parts: Vec<Vec<VertexId>>,
    #[serde(rename = "R")]
    pub r: Vec<VertexId>,
    pub threshold: Option<usize>,
    /// Claims that each `S_i` is a maximum clique of `G[S_i ∪ … ∪ S_t ∪ R]`.
    #[serde(skip)]
    pub maximal: bool,
}

impl CliqueExpansion {
    pub fn new(parts: Vec<Vec<VertexId>>, r: Vec<VertexId>, threshold: Option<usize>) -> Self {
        CliqueExpansion {
            parts,
            r,
            threshold,
            maximal: false,
        }
    }

    pub fn t(&self) -> usize {
        self.parts.len()
    }
}

fn remainder_list(rem: &BitSet) -> Vec<VertexId> {
    rem.iter().collect()
}

/// Peels lexicographically smallest maximum cliques while they have at
/// least `kappa` vertices.
pub fn maximal_clique_expansion(g: &Graph, kappa: usize) -> Result<CliqueExpansion> {
    if kappa == 0 {
        return Err(Error::InvalidParameter("threshold must be at least 1".into()));
    }
    let mut rem = BitSet::full(g.n());
    let mut parts = Vec::new();
    loop {
        let s = max_clique_within(g, &rem);
        if s.len() < kappa || s.is_empty() {
            break;
        }
        for &v in &s {
            rem.remove(v);
        }
        parts.push(s);
    }
    let x = CliqueExpansion {
        parts,
        r: remainder_list(&rem),
        threshold: Some(kappa),
        maximal: true,
    };
    debug_assert_eq!(verify_expansion(g, &x), Ok(()));
    Ok(x)
}

/// Maximum cliques of `G[allowed]`, sorted.
pub fn maximum_cliques_within(g: &Graph, allowed: &BitSet) -> Vec<Vec<VertexId>> {
    let w = clique_number_within(g, allowed);
    let mut out = Vec::new();
    fn rec(g: &Graph, cur: &mut Vec<VertexId>, cand: &BitSet, w: usize, out: &mut Vec<Vec<VertexId>>) {
        if cur.len() == w {
            out.push(cur.clone());
            return;
        }
        if cur.len() + coloring_bound(g, cand) < w {
            return;
        }
        let mut rest = cand.clone();
        for v in cand.iter() {
            if cur.len() + rest.count() < w {
                return;
            }
            rest.remove(v);
            cur.push(v);
            rec(g, cur, &rest.intersection(g.neighbors(v)), w, out);
            cur.pop();
        }
    }
    if w > 0 {
        rec(g, &mut Vec::new(), allowed, w, &mut out);
    }
    out
}

/// Every maximal threshold-`kappa` expansion, i.e. every way of
/// repeatedly removing some maximum clique of size `≥ kappa`. Expansions
/// with the same set of parts are reported once (the bound of interest
/// depends only on `t` and `R`).
pub fn all_maximal_expansions(g: &Graph, kappa: usize) -> Result<Vec<CliqueExpansion>> {
    if kappa == 0 {
        return Err(Error::InvalidParameter("threshold must be at least 1".into()));
    }
    guard("vertex count", g.n(), MAX_SEARCH_VERTICES)?;
    struct Walk<'a> {
        g: &'a Graph,
        kappa: usize,
        seen: BTreeSet<Vec<Vec<VertexId>>>,
        out: Vec<CliqueExpansion>,
    }
    impl Walk<'_> {
        fn go(&mut self, rem: &BitSet, parts: &mut Vec<Vec<VertexId>>) -> Result<()> {
            let mut key = parts.clone();
            key.sort();
            if !self.seen.insert(key) {
                return Ok(());
            }
            let options = maximum_cliques_within(self.g, rem);
            if options.first().is_none_or(|s| s.len() < self.kappa) {
                if self.out.len() >= MAX_EXPANSIONS {
                    return Err(Error::Budget(format!(
                        "more than {MAX_EXPANSIONS} maximal expansions"
                    )));
                }
                self.out.push(CliqueExpansion {
                    parts: parts.clone(),
                    r: remainder_list(rem),
                    threshold: Some(self.kappa),
                    maximal: true,
                });
                return Ok(());
            }
            for s in options {
                let mut next = rem.clone();
                for &v in &s {
                    next.remove(v);
                }
                parts.push(s);
                self.go(&next, parts)?;
                parts.pop();
            }
            Ok(())
        }
    }
    let mut w = Walk {
        g,
        kappa,
        seen: BTreeSet::new(),
        out: Vec::new(),
    };
    w.go(&BitSet::full(g.n()), &mut Vec::new())?;
    Ok(w.out)
}

/// Checks an expansion against the definition. `Err` names the first
/// violated clause.
pub fn verify_expansion(g: &Graph, x: &CliqueExpansion) -> std::result::Result<(), &'static str> {
    let n = g.n();
    let mut used = BitSet::new(n);
    for v in x.parts.iter().flatten().chain(&x.r) {
        if *v >= n {
            return Err("vertex-out-of-range");
        }
        if used.contains(*v) {
            return Err("parts-not-disjoint");
        }
        used.insert(*v);
    }
    if used.count() != n {
        return Err("remainder-mismatch");
    }
    if x.parts.iter().any(|s| !g.is_clique(s)) {
        return Err("parts-not-cliques");
    }
    let rbits = BitSet::from_iter(n, x.r.iter().copied());
    if let Some(kappa) = x.threshold {
        if x.parts.iter().any(|s| s.len() < kappa) {
            return Err("below-threshold");
        }
        if clique_number_within(g, &rbits) >= kappa {
            return Err("remainder-clique-too-large");
        }
    }
    if x.maximal {
        if x.parts.windows(2).any(|w| w[0].len() < w[1].len()) {
            return Err("sizes-not-monotone");
        }
        let mut later = rbits;
        for s in x.parts.iter().rev() {
            // everything after S_i sees at most |S_i| - 1 of its vertices
            let sb = BitSet::from_iter(n, s.iter().copied());
            if later.iter().any(|v| g.neighbors(v).intersection_count(&sb) >= s.len()) {
                return Err("later-vertex-sees-whole-part");
            }
            later.union_with(&sb);
            if clique_number_within(g, &later) != s.len() {
                return Err("part-not-maximum");
            }
        }
    }
    Ok(())
}

/// A proper coloring with at most `k` colors, as the list of color
/// classes (some possibly empty), or `None`. DSATUR-ordered backtracking.
pub fn is_k_partite(g: &Graph, k: usize) -> Result<Option<Vec<Vec<VertexId>>>> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    guard("vertex count", g.n(), MAX_SEARCH_VERTICES)?;
    let n = g.n();
    struct State<'a> {
        g: &'a Graph,
        k: usize,
        color: Vec<Option<usize>>,
        // forbidden[v][c]: number of colored neighbours of v with color c
        forbidden: Vec<Vec<u32>>,
    }
    impl State<'_> {
        fn pick(&self) -> Option<VertexId> {
            (0..self.g.n())
                .filter(|&v| self.color[v].is_none())
                .max_by_key(|&v| {
                    let sat = self.forbidden[v].iter().filter(|&&c| c > 0).count();
                    (sat, self.g.degree(v), std::cmp::Reverse(v))
                })
        }
        fn set(&mut self, v: VertexId, c: Option<usize>) {
            let old = self.color[v];
            self.color[v] = c;
            for u in self.g.neighbors(v).iter() {
                if let Some(o) = old {
                    self.forbidden[u][o] -= 1;
                }
                if let Some(c) = c {
                    self.forbidden[u][c] += 1;
                }
            }
        }
        fn solve(&mut self, used: usize) -> bool {
            let Some(v) = self.pick() else { return true };
            // a fresh color is interchangeable with every other unused one
            for c in 0..(used + 1).min(self.k) {
                if self.forbidden[v][c] == 0 {
                    self.set(v, Some(c));
                    if self.solve(used.max(c + 1)) {
                        return true;
                    }
                    self.set(v, None);
                }
            }
            false
        }
    }
    let kk = k.min(n.max(1));
    let mut st = State {
        g,
        k: kk,
        color: vec![None; n],
        forbidden: vec![vec![0; kk]; n],
    };
    if !st.solve(0) {
        return Ok(None);
    }
    let mut parts = vec![Vec::new(); k];
    for (v, c) in st.color.iter().enumerate() {
        parts[c.unwrap()].push(v);
    }
    Ok(Some(parts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::turan_graph;

    fn cycle(n: usize) -> Graph {
        let es: Vec<_> = (0..n).map(|i| (i.min((i + 1) % n), i.max((i + 1) % n))).collect();
        Graph::from_pairs(n, &es).unwrap()
    }

    #[test]
    fn max_clique_examples() {
        assert_eq!(max_clique(&cycle(5)), vec![0, 1]);
        assert_eq!(max_clique(&Graph::complete(7)), (0..7).collect::<Vec<_>>());
        assert_eq!(max_clique(&turan_graph(9, 3).unwrap()), vec![0, 3, 6]);
        assert_eq!(max_clique(&Graph::empty(3)), vec![0]);
        assert!(max_clique(&Graph::empty(0)).is_empty());
    }

    #[test]
    fn expansion_examples() {
        let mut k4 = Graph::complete_multipartite(&[1, 1, 1, 1]);
        k4 = Graph::new(5, k4.edges()).unwrap();
        let x = maximal_clique_expansion(&k4, 3).unwrap();
        assert_eq!(x.parts, vec![vec![0, 1, 2, 3]]);
        assert_eq!(x.r, vec![4]);

        let x = maximal_clique_expansion(&Graph::complete(7), 8).unwrap();
        assert_eq!(x.t(), 0);
        assert_eq!(x.r.len(), 7);

        let mut pairs = Vec::new();
        for base in [0, 4] {
            for a in 0..4 {
                for b in a + 1..4 {
                    pairs.push((base + a, base + b));
                }
            }
        }
        let two = Graph::from_pairs(8, &pairs).unwrap();
        let x = maximal_clique_expansion(&two, 4).unwrap();
        assert_eq!(x.parts.len(), 2);
        assert!(x.r.is_empty());
        assert_eq!(verify_expansion(&two, &x), Ok(()));
        assert_eq!(all_maximal_expansions(&two, 4).unwrap().len(), 1);
    }

    #[test]
    fn verify_clauses() {
        let g = cycle(5);
        let bad = CliqueExpansion::new(vec![vec![0, 2]], vec![1, 3, 4], None);
        assert_eq!(verify_expansion(&g, &bad), Err("parts-not-cliques"));
        let mut m = CliqueExpansion::new(vec![vec![0], vec![1, 2]], vec![3, 4], None);
        m.maximal = true;
        assert_eq!(verify_expansion(&g, &m), Err("sizes-not-monotone"));
        let short = CliqueExpansion::new(vec![vec![0, 1]], vec![2, 3], None);
        assert_eq!(verify_expansion(&g, &short), Err("remainder-mismatch"));
        let json = serde_json::to_string(&CliqueExpansion::new(vec![vec![0, 1]], vec![2, 3, 4], Some(2))).unwrap();
        assert_eq!(json, r#"{"parts":[[0,1]],"R":[2,3,4],"threshold":2}"#);
    }

    #[test]
    fn partite() {
        let t = turan_graph(9, 3).unwrap();
        let p = is_k_partite(&t, 3).unwrap().unwrap();
        assert_eq!(p, vec![vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8]]);
        assert!(is_k_partite(&Graph::complete(4), 3).unwrap().is_none());
        assert!(is_k_partite(&cycle(5), 2).unwrap().is_none());
        assert!(is_k_partite(&cycle(5), 3).unwrap().is_some());
        assert!(is_k_partite(&Graph::empty(0), 2).unwrap().is_some());
    }

    #[test]
    fn maximal_clique_listing() {
        assert_eq!(maximal_cliques(&cycle(4)), vec![vec![0, 1], vec![0, 3], vec![1, 2], vec![2, 3]]);
        assert_eq!(maximal_cliques(&Graph::empty(2)), vec![vec![0], vec![1]]);
    }
}
