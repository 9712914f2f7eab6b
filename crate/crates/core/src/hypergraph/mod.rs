//! Graphs and 3-graphs on a dense vertex universe `0..n`, with the
//! shadow / link / degree / codegree algebra.

pub mod io;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Range;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};

pub type VertexId = usize;

/// Largest vertex universe supported by the dense representations.
pub const MAX_VERTICES: usize = 1024;

fn compact(f: &mut fmt::Formatter<'_>, vs: &[VertexId]) -> fmt::Result {
    if vs.iter().all(|&v| v < 10) {
        for v in vs {
            write!(f, "{v}")?;
        }
        Ok(())
    } else {
        let s: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

/// An unordered pair `{u, v}` stored with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Pair(VertexId, VertexId);

impl Pair {
    pub fn new(u: VertexId, v: VertexId) -> Result<Pair> {
        match u.cmp(&v) {
            std::cmp::Ordering::Less => Ok(Pair(u, v)),
            std::cmp::Ordering::Greater => Ok(Pair(v, u)),
            std::cmp::Ordering::Equal => Err(Error::RepeatedVertex(format!("pair {u}{v}"))),
        }
    }

    pub(crate) fn new_unchecked(u: VertexId, v: VertexId) -> Pair {
        debug_assert!(u < v);
        Pair(u, v)
    }

    pub fn u(&self) -> VertexId {
        self.0
    }

    pub fn v(&self) -> VertexId {
        self.1
    }

    pub fn contains(&self, x: VertexId) -> bool {
        self.0 == x || self.1 == x
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        compact(f, &[self.0, self.1])
    }
}

/// A 3-set `{a, b, c}` stored with `a < b < c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Triple([VertexId; 3]);

impl Triple {
    pub fn new(a: VertexId, b: VertexId, c: VertexId) -> Result<Triple> {
        let mut v = [a, b, c];
        v.sort_unstable();
        if v[0] == v[1] || v[1] == v[2] {
            return Err(Error::RepeatedVertex(format!("triple {a}{b}{c}")));
        }
        Ok(Triple(v))
    }

    pub(crate) fn new_unchecked(a: VertexId, b: VertexId, c: VertexId) -> Triple {
        debug_assert!(a < b && b < c);
        Triple([a, b, c])
    }

    pub fn vertices(&self) -> [VertexId; 3] {
        self.0
    }

    pub fn max(&self) -> VertexId {
        self.0[2]
    }

    pub fn contains(&self, x: VertexId) -> bool {
        self.0.contains(&x)
    }

    pub fn contains_pair(&self, p: Pair) -> bool {
        self.contains(p.0) && self.contains(p.1)
    }

    /// The three pairs inside the triple, in lexicographic order.
    pub fn pairs(&self) -> [Pair; 3] {
        let [a, b, c] = self.0;
        [Pair(a, b), Pair(a, c), Pair(b, c)]
    }

    /// The vertex of the triple outside `p`; `p` must be inside.
    pub fn third(&self, p: Pair) -> VertexId {
        let [a, b, c] = self.0;
        if !p.contains(a) {
            a
        } else if !p.contains(b) {
            b
        } else {
            c
        }
    }

    pub fn intersection_size(&self, other: &Triple) -> usize {
        self.0.iter().filter(|x| other.contains(**x)).count()
    }

    /// For triples meeting in exactly two vertices, their symmetric difference.
    pub fn symmetric_difference_pair(&self, other: &Triple) -> Option<Pair> {
        if self.intersection_size(other) != 2 {
            return None;
        }
        let x = self.0.iter().copied().find(|v| !other.contains(*v))?;
        let y = other.0.iter().copied().find(|v| !self.contains(*v))?;
        Some(Pair(x.min(y), x.max(y)))
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        compact(f, &self.0)
    }
}

fn check_universe(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        return Err(Error::InvalidParameter(format!(
            "n = {n} exceeds the supported maximum {MAX_VERTICES}"
        )));
    }
    Ok(())
}

fn check_vertex(v: VertexId, n: usize) -> Result<()> {
    if v >= n {
        Err(Error::VertexOutOfRange { vertex: v, n })
    } else {
        Ok(())
    }
}

/// Vertex set given as a slice, as a bitset over `0..n`.
pub fn vertex_set(n: usize, vs: &[VertexId]) -> Result<BitSet> {
    let mut s = BitSet::new(n);
    for &v in vs {
        check_vertex(v, n)?;
        s.insert(v);
    }
    Ok(s)
}

/// A simple graph on `0..n` with bit-vector adjacency.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<BitSet>,
    m: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Graph {
        Graph {
            n,
            adj: vec![BitSet::new(n); n],
            m: 0,
        }
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.insert(Pair(u, v));
            }
        }
        g
    }

    pub fn new<I: IntoIterator<Item = Pair>>(n: usize, edges: I) -> Result<Graph> {
        check_universe(n)?;
        let mut g = Graph::empty(n);
        for p in edges {
            check_vertex(p.1, n)?;
            g.insert(p);
        }
        Ok(g)
    }

    pub fn from_pairs(n: usize, pairs: &[(VertexId, VertexId)]) -> Result<Graph> {
        let ps = pairs
            .iter()
            .map(|&(u, v)| Pair::new(u, v))
            .collect::<Result<Vec<_>>>()?;
        Graph::new(n, ps)
    }

    /// Complete multipartite graph on consecutive blocks of the given sizes.
    pub fn complete_multipartite(sizes: &[usize]) -> Graph {
        let ranges = blocks(sizes);
        let n = sizes.iter().sum();
        let mut g = Graph::empty(n);
        for (i, a) in ranges.iter().enumerate() {
            for b in &ranges[i + 1..] {
                for u in a.clone() {
                    for v in b.clone() {
                        g.insert(Pair(u, v));
                    }
                }
            }
        }
        g
    }

    /// Inserts an edge; returns false if it was already present.
    pub fn insert(&mut self, p: Pair) -> bool {
        if self.adj[p.0].contains(p.1) {
            return false;
        }
        self.adj[p.0].insert(p.1);
        self.adj[p.1].insert(p.0);
        self.m += 1;
        true
    }

    pub fn remove(&mut self, p: Pair) -> bool {
        if !self.adj[p.0].contains(p.1) {
            return false;
        }
        self.adj[p.0].remove(p.1);
        self.adj[p.1].remove(p.0);
        self.m -= 1;
        true
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.m == 0
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    pub fn contains(&self, p: Pair) -> bool {
        self.has_edge(p.0, p.1)
    }

    pub fn neighbors(&self, v: VertexId) -> &BitSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].count()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Pair> + '_ {
        (0..self.n).flat_map(move |u| {
            self.adj[u]
                .iter()
                .filter(move |&v| v > u)
                .map(move |v| Pair(u, v))
        })
    }

    /// Whether every pair inside `set` is an edge.
    pub fn is_clique(&self, set: &[VertexId]) -> bool {
        set.iter().enumerate().all(|(i, &u)| {
            set[i + 1..]
                .iter()
                .all(|&v| u != v && u < self.n && self.adj[u].contains(v))
        })
    }

    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.n == other.n && self.adj.iter().zip(&other.adj).all(|(a, b)| a.is_subset(b))
    }

    /// Induced subgraph kept on the full universe; vertices outside `set`
    /// become isolated.
    pub fn induced(&self, set: &[VertexId]) -> Result<Graph> {
        let keep = vertex_set(self.n, set)?;
        Ok(self.induced_bits(&keep))
    }

    pub fn induced_bits(&self, keep: &BitSet) -> Graph {
        let mut g = Graph::empty(self.n);
        for u in keep.iter() {
            let mut row = self.adj[u].clone();
            row.intersect_with(keep);
            g.m += row.count();
            g.adj[u] = row;
        }
        g.m /= 2;
        g
    }

    /// Edges with one endpoint in `s` and the other in `t`.
    pub fn cross_edges(&self, s: &[VertexId], t: &[VertexId]) -> Result<Vec<Pair>> {
        let sb = vertex_set(self.n, s)?;
        let tb = vertex_set(self.n, t)?;
        if !sb.is_disjoint(&tb) {
            return Err(Error::NonDisjointParts);
        }
        let mut out: Vec<Pair> = sb
            .iter()
            .flat_map(|u| {
                self.adj[u]
                    .iter()
                    .filter(|v| tb.contains(*v))
                    .map(move |v| Pair(u.min(v), u.max(v)))
                    .collect::<Vec<_>>()
            })
            .collect();
        out.sort_unstable();
        Ok(out)
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.adj[u].contains(v) {
                    g.insert(Pair(u, v));
                }
            }
        }
        g
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let es: Vec<String> = self.edges().map(|p| p.to_string()).collect();
        write!(f, "Graph(n={}, [{}])", self.n, es.join(" "))
    }
}

/// A 3-uniform hypergraph on `0..n`. Edges are kept sorted; each vertex
/// carries an incidence row over edge indices so that codegrees are a
/// popcount of two rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TripleSystem {
    n: usize,
    edges: Vec<Triple>,
    incidence: Vec<BitSet>,
}

impl TripleSystem {
    pub fn empty(n: usize) -> TripleSystem {
        TripleSystem {
            n,
            edges: Vec::new(),
            incidence: vec![BitSet::new(0); n],
        }
    }

    /// Builds a system from edges; duplicates are rejected.
    pub fn new<I: IntoIterator<Item = Triple>>(n: usize, edges: I) -> Result<TripleSystem> {
        check_universe(n)?;
        let mut edges: Vec<Triple> = edges.into_iter().collect();
        for e in &edges {
            check_vertex(e.max(), n)?;
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidParameter(format!("duplicate edge {}", w[0])));
        }
        Ok(Self::from_sorted(n, edges))
    }

    /// Like [`TripleSystem::new`] but silently merges duplicates.
    pub fn from_edge_set<I: IntoIterator<Item = Triple>>(
        n: usize,
        edges: I,
    ) -> Result<TripleSystem> {
        let mut es: Vec<Triple> = edges.into_iter().collect();
        es.sort_unstable();
        es.dedup();
        TripleSystem::new(n, es)
    }

    pub fn from_tuples(n: usize, tuples: &[(VertexId, VertexId, VertexId)]) -> Result<TripleSystem> {
        let es = tuples
            .iter()
            .map(|&(a, b, c)| Triple::new(a, b, c))
            .collect::<Result<Vec<_>>>()?;
        TripleSystem::new(n, es)
    }

    pub(crate) fn from_sorted(n: usize, edges: Vec<Triple>) -> TripleSystem {
        let incidence = build_incidence(n, &edges);
        TripleSystem { n, edges, incidence }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges, `|H|`.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> &[Triple] {
        &self.edges
    }

    pub fn contains(&self, t: &Triple) -> bool {
        self.edges.binary_search(t).is_ok()
    }

    pub fn incidence(&self, v: VertexId) -> &BitSet {
        &self.incidence[v]
    }

    /// Whether the stored incidence rows match a fresh rebuild from the edge list.
    pub fn index_consistent(&self) -> bool {
        build_incidence(self.n, &self.edges) == self.incidence
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incidence[v].count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn codegree(&self, p: Pair) -> usize {
        if p.1 >= self.n {
            return 0;
        }
        self.incidence[p.0].intersection_count(&self.incidence[p.1])
    }

    /// `N(uv)`: third vertices of the edges through `p`, ascending.
    pub fn codegree_neighborhood(&self, p: Pair) -> Vec<VertexId> {
        if p.1 >= self.n {
            return Vec::new();
        }
        let mut out: Vec<VertexId> = self.incidence[p.0]
            .intersection(&self.incidence[p.1])
            .iter()
            .map(|i| self.edges[i].third(p))
            .collect();
        out.sort_unstable();
        out
    }

    /// Codegree neighbourhoods of every covered pair, keyed by pair.
    pub fn pair_neighborhoods(&self) -> BTreeMap<Pair, Vec<VertexId>> {
        let mut map: BTreeMap<Pair, Vec<VertexId>> = BTreeMap::new();
        for e in &self.edges {
            for p in e.pairs() {
                map.entry(p).or_default().push(e.third(p));
            }
        }
        for v in map.values_mut() {
            v.sort_unstable();
        }
        map
    }

    /// `Δ₂(H)`, over pairs of the shadow; 0 for an empty system.
    pub fn max_codegree(&self) -> usize {
        self.pair_neighborhoods().values().map(Vec::len).max().unwrap_or(0)
    }

    /// `δ₂(H)`, over pairs of the shadow; 0 for an empty system.
    pub fn min_codegree(&self) -> usize {
        self.pair_neighborhoods().values().map(Vec::len).min().unwrap_or(0)
    }

    /// The shadow: all pairs covered by some edge.
    pub fn shadow(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for e in &self.edges {
            for p in e.pairs() {
                g.insert(p);
            }
        }
        g
    }

    /// Link of `v` as a graph on the same universe; `v` is isolated.
    pub fn link(&self, v: VertexId) -> Result<Graph> {
        check_vertex(v, self.n)?;
        let mut g = Graph::empty(self.n);
        for i in self.incidence[v].iter() {
            let e = self.edges[i];
            let [a, b] = match e.0 {
                [x, y, z] if x == v => [y, z],
                [x, y, z] if y == v => [x, z],
                [x, y, _] => [x, y],
            };
            g.insert(Pair(a, b));
        }
        Ok(g)
    }

    /// Edges fully inside `set`, kept on the original universe.
    pub fn induced(&self, set: &[VertexId]) -> Result<TripleSystem> {
        let keep = vertex_set(self.n, set)?;
        Ok(self.induced_bits(&keep))
    }

    pub fn induced_bits(&self, keep: &BitSet) -> TripleSystem {
        let edges = self
            .edges
            .iter()
            .copied()
            .filter(|e| e.0.iter().all(|&x| keep.contains(x)))
            .collect();
        TripleSystem::from_sorted(self.n, edges)
    }

    /// `H[S, T]`: edges meeting both `s` and `t`.
    pub fn cross(&self, s: &[VertexId], t: &[VertexId]) -> Result<TripleSystem> {
        let sb = vertex_set(self.n, s)?;
        let tb = vertex_set(self.n, t)?;
        if !sb.is_disjoint(&tb) {
            return Err(Error::NonDisjointParts);
        }
        let edges = self
            .edges
            .iter()
            .copied()
            .filter(|e| e.0.iter().any(|&x| sb.contains(x)) && e.0.iter().any(|&x| tb.contains(x)))
            .collect();
        Ok(TripleSystem::from_sorted(self.n, edges))
    }

    /// Subsystem with the given edges removed.
    pub fn without(&self, removed: &[Triple]) -> TripleSystem {
        let edges = self
            .edges
            .iter()
            .copied()
            .filter(|e| !removed.contains(e))
            .collect();
        TripleSystem::from_sorted(self.n, edges)
    }

    /// Applies a vertex relabeling `v -> perm[v]` into a universe of size `n`.
    pub fn relabel(&self, perm: &[VertexId], n: usize) -> Result<TripleSystem> {
        let edges = self
            .edges
            .iter()
            .map(|e| Triple::new(perm[e.0[0]], perm[e.0[1]], perm[e.0[2]]))
            .collect::<Result<Vec<_>>>()?;
        TripleSystem::new(n, edges)
    }

    /// Exact `(|∂H| / C(n,2), |H| / C(n,3))`.
    pub fn densities(&self) -> Result<(BigRational, BigRational)> {
        if self.n < 3 {
            return Err(Error::TooFewVertices {
                needed: 3,
                got: self.n,
            });
        }
        let n = self.n as u64;
        let pairs = n * (n - 1) / 2;
        let triples = n * (n - 1) * (n - 2) / 6;
        Ok((
            ratio(self.shadow().len() as u64, pairs),
            ratio(self.len() as u64, triples),
        ))
    }
}

impl fmt::Debug for TripleSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let es: Vec<String> = self.edges.iter().map(|e| e.to_string()).collect();
        write!(f, "TripleSystem(n={}, [{}])", self.n, es.join(" "))
    }
}

pub(crate) fn ratio(p: u64, q: u64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

fn build_incidence(n: usize, edges: &[Triple]) -> Vec<BitSet> {
    let mut rows = vec![BitSet::new(edges.len()); n];
    for (i, e) in edges.iter().enumerate() {
        for &x in &e.0 {
            rows[x].insert(i);
        }
    }
    rows
}

/// Consecutive index blocks of the given sizes.
pub fn blocks(sizes: &[usize]) -> Vec<Range<VertexId>> {
    let mut start = 0;
    sizes
        .iter()
        .map(|&s| {
            let r = start..start + s;
            start += s;
            r
        })
        .collect()
}

/// Part sizes of the Turán partition of `n` into `l` parts; the larger
/// parts come first.
pub fn turan_part_sizes(n: usize, l: usize) -> Vec<usize> {
    let (q, r) = (n / l, n % l);
    (0..l).map(|i| if i < r { q + 1 } else { q }).collect()
}

fn check_turan(n: usize, l: usize, r: usize) -> Result<()> {
    if !(2..=3).contains(&r) {
        return Err(Error::InvalidParameter(format!("uniformity {r} not in {{2,3}}")));
    }
    if l < r {
        return Err(Error::InvalidParameter(format!("need l >= r, got l = {l}, r = {r}")));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("need n >= 1".into()));
    }
    check_universe(n)
}

/// `T_2(n, l)`, the complete balanced `l`-partite graph.
pub fn turan_graph(n: usize, l: usize) -> Result<Graph> {
    check_turan(n, l, 2)?;
    Ok(Graph::complete_multipartite(&turan_part_sizes(n, l)))
}

/// `T_3(n, l)`: triples with at most one vertex in each part.
pub fn turan_triple_system(n: usize, l: usize) -> Result<TripleSystem> {
    check_turan(n, l, 3)?;
    let mut part = Vec::with_capacity(n);
    for (i, r) in blocks(&turan_part_sizes(n, l)).into_iter().enumerate() {
        part.extend(r.map(|_| i));
    }
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if part[a] == part[b] {
                continue;
            }
            for c in b + 1..n {
                if part[c] != part[a] && part[c] != part[b] {
                    edges.push(Triple([a, b, c]));
                }
            }
        }
    }
    Ok(TripleSystem::from_sorted(n, edges))
}

/// `t_r(n, l)`, the number of `r`-sets with at most one vertex per part.
pub fn turan_number(n: usize, l: usize, r: usize) -> Result<u128> {
    check_turan(n, l, r)?;
    let sizes: Vec<u128> = turan_part_sizes(n, l).into_iter().map(|s| s as u128).collect();
    // elementary symmetric polynomial e_r of the part sizes
    let mut e = vec![0u128; r + 1];
    e[0] = 1;
    for s in sizes {
        for j in (1..=r).rev() {
            e[j] += e[j - 1] * s;
        }
    }
    Ok(e[r])
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn h(n: usize, es: &[(usize, usize, usize)]) -> TripleSystem {
        TripleSystem::from_tuples(n, es).unwrap()
    }

    fn fano() -> TripleSystem {
        h(7, &[(0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)])
    }

    #[test]
    fn shadow_of_single_triple() {
        let g = h(3, &[(0, 1, 2)]).shadow();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![Pair(0, 1), Pair(0, 2), Pair(1, 2)]);
    }

    #[test]
    fn shadow_of_turan_is_complete_tripartite() {
        let t = turan_triple_system(9, 3).unwrap();
        assert_eq!(t.len(), 27);
        let s = t.shadow();
        assert_eq!(s.len(), 27);
        assert_eq!(s, turan_graph(9, 3).unwrap());
    }

    #[test]
    fn links() {
        let g = h(3, &[(0, 1, 2)]).link(0).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![Pair(1, 2)]);
        let f = fano();
        for v in 0..7 {
            let l = f.link(v).unwrap();
            assert_eq!(l.len(), 3);
            assert_eq!(l.degree(v), 0);
            for u in (0..7).filter(|&u| u != v) {
                assert_eq!(l.degree(u), 1, "perfect matching on the other six");
            }
        }
        let t = turan_triple_system(9, 3).unwrap();
        let l = t.link(0).unwrap();
        assert_eq!(l.len(), 9);
        assert_eq!(l, Graph::complete_multipartite(&[3, 3, 3]).induced(&[3, 4, 5, 6, 7, 8]).unwrap());
        assert!(t.link(9).is_err());
    }

    #[test]
    fn codegree_neighborhoods() {
        let t = h(4, &[(0, 1, 2), (0, 1, 3)]);
        assert_eq!(t.codegree_neighborhood(Pair(0, 1)), vec![2, 3]);
        assert_eq!(t.codegree(Pair(0, 1)), 2);
        assert_eq!(t.codegree(Pair(2, 3)), 0);
        let f = fano();
        for u in 0..7 {
            for v in u + 1..7 {
                assert_eq!(f.codegree(Pair(u, v)), 1);
            }
        }
        assert_eq!(f.max_codegree(), 1);
        assert_eq!(f.min_codegree(), 1);
    }

    #[test]
    fn induced_and_cross() {
        let t = h(5, &[(0, 1, 2), (0, 1, 3), (2, 3, 4)]);
        let sub = t.induced(&[0, 1, 2, 3]).unwrap();
        assert_eq!(sub, h(5, &[(0, 1, 2), (0, 1, 3)]));
        assert_eq!(sub.n(), 5);
        let k4 = Graph::complete(4);
        let cross = k4.cross_edges(&[0, 1], &[2, 3]).unwrap();
        assert_eq!(cross, vec![Pair(0, 2), Pair(0, 3), Pair(1, 2), Pair(1, 3)]);
        assert!(matches!(k4.cross_edges(&[0, 1], &[1, 2]), Err(Error::NonDisjointParts)));
        let t2 = turan_graph(9, 3).unwrap();
        assert!(t2.induced(&[0, 1, 2]).unwrap().is_empty());
        let hc = t.cross(&[4], &[0, 1]).unwrap();
        assert!(hc.is_empty());
        assert_eq!(t.cross(&[2], &[0]).unwrap().len(), 1);
    }

    #[test]
    fn turan_sizes() {
        assert_eq!(turan_triple_system(9, 3).unwrap().len(), 27);
        assert_eq!(turan_triple_system(7, 3).unwrap().len(), 12);
        assert_eq!(turan_number(7, 3, 3).unwrap(), 12);
        assert_eq!(turan_graph(7, 7).unwrap().len(), 21);
        assert_eq!(turan_part_sizes(7, 3), vec![3, 2, 2]);
        assert!(turan_graph(5, 1).is_err());
        assert!(turan_triple_system(5, 2).is_err());
        for n in 1..15 {
            for l in 3..6 {
                assert_eq!(
                    turan_triple_system(n, l).unwrap().len() as u128,
                    turan_number(n, l, 3).unwrap()
                );
                assert_eq!(turan_graph(n, l).unwrap().len() as u128, turan_number(n, l, 2).unwrap());
            }
        }
    }

    #[test]
    fn densities() {
        let (x, y) = turan_triple_system(9, 3).unwrap().densities().unwrap();
        assert_eq!(x, ratio(27, 36));
        assert_eq!(y, ratio(27, 84));
        let (x, y) = fano().densities().unwrap();
        assert_eq!(x, ratio(1, 1));
        assert_eq!(y, ratio(1, 5));
        let (x, y) = TripleSystem::empty(5).densities().unwrap();
        assert_eq!(x, ratio(0, 1));
        assert_eq!(y, ratio(0, 1));
        assert!(TripleSystem::empty(2).densities().is_err());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Triple::new(1, 1, 2).is_err());
        assert!(Pair::new(3, 3).is_err());
        assert!(TripleSystem::from_tuples(3, &[(0, 1, 3)]).is_err());
        assert!(TripleSystem::from_tuples(4, &[(0, 1, 2), (2, 1, 0)]).is_err());
        assert_eq!(Triple::new(2, 0, 1).unwrap(), Triple([0, 1, 2]));
    }

    #[test]
    fn symmetric_difference() {
        let a = Triple([0, 1, 2]);
        let b = Triple([0, 1, 3]);
        assert_eq!(a.symmetric_difference_pair(&b), Some(Pair(2, 3)));
        assert_eq!(a.symmetric_difference_pair(&Triple([0, 3, 4])), None);
    }
}
