//! Corpora of cancellative pairs, and the full battery of pair
//! inequalities run on one pair.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use super::bounds::{clique_degree_bound, expansion_bound, pair_density_bound, split_bound, BoundReport};
use super::{codegree_independence, make_pair, CancellativePair};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::expansion::{all_maximal_expansions, maximal_cliques, CliqueExpansion};
use crate::hypergraph::{Graph, Pair, Triple, TripleSystem, VertexId};

/// Largest `m` for [`exhaustive_pair_corpus`].
pub const MAX_CORPUS_M: usize = 6;

#[derive(Clone, Debug, Serialize)]
pub struct PairSuite {
    pub codegree_independence: bool,
    pub reports: Vec<BoundReport>,
}

impl PairSuite {
    pub fn holds(&self) -> bool {
        self.codegree_independence && self.reports.iter().all(|r| r.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &BoundReport> {
        self.reports.iter().filter(|r| !r.holds)
    }
}

/// Everything about `G` the suite needs: its maximal cliques and its
/// maximal expansions at each threshold. Computed once per graph.
#[derive(Clone, Debug)]
pub struct GraphFixtures {
    pub cliques: Vec<Vec<VertexId>>,
    pub expansions: Vec<CliqueExpansion>,
}

impl GraphFixtures {
    pub fn new(g: &Graph, kappas: &[usize]) -> Result<GraphFixtures> {
        let mut expansions = Vec::new();
        for &k in kappas {
            expansions.extend(all_maximal_expansions(g, k)?);
        }
        Ok(GraphFixtures { cliques: maximal_cliques(g), expansions })
    }
}

/// The density bound, the clique-degree bound and the split bound (with
/// `T` the complement of `S`) over every maximal clique `S`, the expansion
/// bound over every given expansion, and codegree independence.
pub fn pair_suite_with(p: &CancellativePair, fx: &GraphFixtures) -> Result<PairSuite> {
    let mut reports = Vec::with_capacity(1 + 2 * fx.cliques.len() + fx.expansions.len());
    reports.push(pair_density_bound(p)?);
    for s in &fx.cliques {
        reports.push(clique_degree_bound(p, s)?);
        let t: Vec<VertexId> = (0..p.m()).filter(|v| !s.contains(v)).collect();
        reports.push(split_bound(p, s, &t)?);
    }
    for x in &fx.expansions {
        reports.push(expansion_bound(p, x)?);
    }
    Ok(PairSuite { codegree_independence: codegree_independence(p), reports })
}

pub fn pair_suite(p: &CancellativePair, kappas: &[usize]) -> Result<PairSuite> {
    pair_suite_with(p, &GraphFixtures::new(p.g(), kappas)?)
}

fn pair_index(m: usize, u: usize, v: usize) -> usize {
    u * (2 * m - u - 1) / 2 + (v - u - 1)
}

fn graph_from_mask(m: usize, mask: u32) -> Graph {
    let mut g = Graph::empty(m);
    for u in 0..m {
        for v in u + 1..m {
            if mask >> pair_index(m, u, v) & 1 == 1 {
                g.insert(Pair::new(u, v).expect("u < v"));
            }
        }
    }
    g
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; m], &mut out);
    out
}

/// One graph per isomorphism class on `m ≤ 6` vertices: the labeling
/// whose pair mask is smallest.
pub fn graphs_up_to_isomorphism(m: usize) -> Result<Vec<Graph>> {
    if m > MAX_CORPUS_M {
        return Err(Error::Budget(format!("graph classes are listed for m <= {MAX_CORPUS_M}")));
    }
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|u| (u + 1..m).map(move |v| (u, v))).collect();
    // image of each pair bit under each permutation
    let images: Vec<Vec<u32>> = permutations(m)
        .iter()
        .map(|p| {
            pairs
                .iter()
                .map(|&(u, v)| 1 << pair_index(m, p[u].min(p[v]), p[u].max(p[v])))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let minimal = images.iter().all(|img| {
            let mut image = 0;
            let mut bits = mask;
            while bits != 0 {
                image |= img[bits.trailing_zeros() as usize];
                bits &= bits - 1;
            }
            image >= mask
        });
        if minimal {
            out.push(graph_from_mask(m, mask));
        }
    }
    Ok(out)
}

fn triangles(g: &Graph) -> Vec<Triple> {
    let n = g.n();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if !g.has_edge(a, b) {
                continue;
            }
            for c in b + 1..n {
                if g.has_edge(a, c) && g.has_edge(b, c) {
                    out.push(Triple::new(a, b, c).expect("distinct"));
                }
            }
        }
    }
    out
}

/// Triangles `A, B` of `G` that cannot both be in `H`: they share a pair
/// and `A △ B` is an edge of `G`.
fn conflicts(g: &Graph, tri: &[Triple]) -> Vec<u64> {
    let mut out = vec![0u64; tri.len()];
    for i in 0..tri.len() {
        for j in i + 1..tri.len() {
            if let Some(d) = tri[i].symmetric_difference_pair(&tri[j]) {
                if g.contains(d) {
                    out[i] |= 1 << j;
                    out[j] |= 1 << i;
                }
            }
        }
    }
    out
}

/// Every `H` making `(G, H)` a cancellative pair, as triangle sets of `G`
/// that are independent in the conflict graph. Since `∂H ⊆ G`, a triple
/// covering `A △ B` would put that pair in `G`, so conflicts are the
/// whole condition.
pub fn pairs_on_graph(g: &Graph, budget: &Budget) -> Result<Vec<TripleSystem>> {
    let tri = triangles(g);
    if tri.len() > 64 {
        return Err(Error::Budget(format!("{} triangles exceed the enumerator", tri.len())));
    }
    let conf = conflicts(g, &tri);
    fn go(
        i: usize,
        chosen: u64,
        tri: &[Triple],
        conf: &[u64],
        n: usize,
        budget: &Budget,
        out: &mut Vec<TripleSystem>,
    ) -> Result<()> {
        if i == tri.len() {
            if out.len().is_multiple_of(4096) {
                budget.check("pair corpus")?;
            }
            let edges = (0..tri.len()).filter(|&j| chosen >> j & 1 == 1).map(|j| tri[j]);
            out.push(TripleSystem::new(n, edges)?);
            return Ok(());
        }
        go(i + 1, chosen, tri, conf, n, budget, out)?;
        if conf[i] & chosen == 0 {
            go(i + 1, chosen | 1 << i, tri, conf, n, budget, out)?;
        }
        Ok(())
    }
    let mut out = Vec::new();
    go(0, 0, &tri, &conf, g.n(), budget, &mut out)?;
    Ok(out)
}

/// All cancellative pairs `(G, H)` on `m` vertices with `G` ranging over
/// isomorphism classes and `H` over every compatible labeled system.
/// Calls `visit` once per graph with the graph and its pairs.
pub fn exhaustive_pair_corpus<F>(m: usize, budget: &Budget, mut visit: F) -> Result<usize>
where
    F: FnMut(&Graph, Vec<CancellativePair>) -> Result<()>,
{
    let mut total = 0;
    for g in graphs_up_to_isomorphism(m)? {
        let pairs = pairs_on_graph(&g, budget)?
            .into_iter()
            .map(|h| make_pair(g.clone(), h))
            .collect::<Result<Vec<_>>>()?;
        total += pairs.len();
        visit(&g, pairs)?;
    }
    Ok(total)
}

/// A random pair on `m` vertices: `G` is `G(m, p)` for a uniform
/// `p ∈ [0.3, 1]`, and `H` adds the triangles of `G` in random order,
/// keeping each one that stays compatible.
pub fn random_pair<R: Rng>(m: usize, rng: &mut R) -> Result<CancellativePair> {
    let p: f64 = rng.gen_range(0.3..=1.0);
    let mut g = Graph::empty(m);
    for u in 0..m {
        for v in u + 1..m {
            if rng.gen_bool(p) {
                g.insert(Pair::new(u, v)?);
            }
        }
    }
    let mut tri = triangles(&g);
    tri.shuffle(rng);
    let mut kept: Vec<Triple> = Vec::new();
    for t in tri {
        let ok = kept.iter().all(|k| k.symmetric_difference_pair(&t).is_none_or(|d| !g.contains(d)));
        if ok {
            kept.push(t);
        }
    }
    make_pair(g, TripleSystem::new(m, kept)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn graph_class_counts() {
        // OEIS A000088
        let counts: Vec<usize> = (0..=6).map(|m| graphs_up_to_isomorphism(m).unwrap().len()).collect();
        assert_eq!(counts, [1, 1, 2, 4, 11, 34, 156]);
    }

    #[test]
    fn k4_pairs() {
        // in K_4 any two triangles share a pair whose complement is an edge
        let hs = pairs_on_graph(&Graph::complete(4), &Budget::unlimited()).unwrap();
        assert_eq!(hs.len(), 5);
    }

    #[test]
    fn random_pairs_pass() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let p = random_pair(7, &mut rng).unwrap();
            assert!(pair_suite(&p, &[2, 3]).unwrap().holds());
        }
    }
}
