//! Cancellativity of triple systems and of graph/triple-system pairs.
//!
//! `H` is cancellative when no three distinct edges `A, B, C` have
//! `A △ B ⊆ C`. Two triples with `|A ∩ B| ≤ 1` have a symmetric difference
//! of size at least 4, so only edges sharing a pair matter, and the scan
//! walks them through the codegree index.

pub mod bounds;
pub mod corpus;

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::{Graph, Pair, Triple, TripleSystem};

pub use bounds::{
    asymptotic_bound_report, check_shadow_edge_bounds, clique_degree_bound, expansion_bound,
    pair_density_bound, split_bound, AsymptoticVariant, BoundReport, BoundSubject,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Witness {
    Pair(Pair),
    Triple(Triple),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    TripleTriple,
    PairWitness,
}

/// Three distinct sets with `A △ B ⊆ C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    #[serde(rename = "A")]
    pub a: Triple,
    #[serde(rename = "B")]
    pub b: Triple,
    #[serde(rename = "C")]
    pub c: Witness,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A={} B={} C=", self.a, self.b)?;
        match self.c {
            Witness::Pair(p) => write!(f, "{p}"),
            Witness::Triple(t) => write!(f, "{t}"),
        }
    }
}

/// First edge (by index) containing the pair, if any.
fn first_edge_through(h: &TripleSystem, p: Pair) -> Option<usize> {
    let (ru, rv) = (h.incidence(p.u()), h.incidence(p.v()));
    ru.intersection(rv).first()
}

/// Scans `(A, B)` with `A < B` sharing two vertices in edge order and
/// returns the first pair for which `hit(A △ B)` yields a witness.
fn scan<F>(h: &TripleSystem, mut hit: F) -> Option<Violation>
where
    F: FnMut(Pair) -> Option<(Witness, ViolationKind)>,
{
    let edges = h.edges();
    let mut partners = Vec::new();
    for (i, a) in edges.iter().enumerate() {
        partners.clear();
        for p in a.pairs() {
            let mut common = h.incidence(p.u()).intersection(h.incidence(p.v()));
            common.remove(i);
            partners.extend(common.iter().filter(|&j| j > i));
        }
        partners.sort_unstable();
        for &j in &partners {
            let b = &edges[j];
            let d = a.symmetric_difference_pair(b).expect("edges share a pair");
            if let Some((c, kind)) = hit(d) {
                return Some(Violation { a: *a, b: *b, c, kind });
            }
        }
    }
    None
}

/// The lexicographically first `(A, B, C)` violating cancellativity.
pub fn cancellative_violation(h: &TripleSystem) -> Option<Violation> {
    scan(h, |d| {
        first_edge_through(h, d)
            .map(|c| (Witness::Triple(h.edges()[c]), ViolationKind::TripleTriple))
    })
}

pub fn is_cancellative(h: &TripleSystem) -> bool {
    cancellative_violation(h).is_none()
}

/// Direct transcription of the definition over all ordered triples of
/// edges. Cubic; for cross-checking only.
pub fn is_cancellative_naive(h: &TripleSystem) -> bool {
    let es = h.edges();
    for a in es {
        for b in es {
            if a == b {
                continue;
            }
            let ua: Vec<_> = a.vertices().into_iter().filter(|x| !b.contains(*x)).collect();
            let ub: Vec<_> = b.vertices().into_iter().filter(|x| !a.contains(*x)).collect();
            for c in es {
                if c != a && c != b && ua.iter().chain(&ub).all(|&x| c.contains(x)) {
                    return false;
                }
            }
        }
    }
    true
}

/// A graph `G ⊇ ∂H` and a triple system `H` on the same universe with no
/// `A, B ∈ H`, `C ∈ G ∪ H` distinct and `A △ B ⊆ C`.
#[derive(Clone, Debug)]
pub struct CancellativePair {
    g: Graph,
    h: TripleSystem,
}

impl CancellativePair {
    pub fn g(&self) -> &Graph {
        &self.g
    }

    pub fn h(&self) -> &TripleSystem {
        &self.h
    }

    /// Vertex count `m`.
    pub fn m(&self) -> usize {
        self.h.n()
    }

    pub fn into_parts(self) -> (Graph, TripleSystem) {
        (self.g, self.h)
    }
}

/// Validates `(G, H)`. Since `∂H ⊆ G` is checked first, a triple covering
/// `A △ B` forces that pair into `G`; the pair test alone decides, and the
/// witness is a triple when one exists.
pub fn make_pair(g: Graph, h: TripleSystem) -> Result<CancellativePair> {
    if g.n() != h.n() {
        return Err(Error::UniverseMismatch(g.n(), h.n()));
    }
    if let Some(p) = h.shadow().edges().find(|&p| !g.contains(p)) {
        return Err(Error::ShadowNotContained(p));
    }
    let v = scan(&h, |d| match first_edge_through(&h, d) {
        Some(c) => Some((Witness::Triple(h.edges()[c]), ViolationKind::TripleTriple)),
        None => g.contains(d).then_some((Witness::Pair(d), ViolationKind::PairWitness)),
    });
    match v {
        Some(v) => Err(Error::CancellativityViolation(v)),
        None => Ok(CancellativePair { g, h }),
    }
}

/// `N_H(uv)` is independent in `G` for every covered pair `uv`.
pub fn codegree_independence(p: &CancellativePair) -> bool {
    p.h.pair_neighborhoods().values().all(|nb| {
        nb.iter()
            .enumerate()
            .all(|(i, &x)| nb[i + 1..].iter().all(|&y| !p.g.has_edge(x, y)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::tests::h;
    use crate::hypergraph::turan_triple_system;
    use crate::steiner::SteinerTripleSystem;

    #[test]
    fn f5_witness() {
        let f5 = h(5, &[(0, 1, 2), (0, 1, 3), (2, 3, 4)]);
        let v = cancellative_violation(&f5).unwrap();
        assert_eq!(v.to_string(), "A=012 B=013 C=234");
        assert!(!is_cancellative_naive(&f5));
    }

    #[test]
    fn witness_is_lexicographically_first() {
        // both (012, 013) and (012, 014) violate; the first B wins
        let x = h(6, &[(0, 1, 2), (0, 1, 3), (0, 1, 4), (2, 3, 5), (2, 4, 5)]);
        let v = cancellative_violation(&x).unwrap();
        assert_eq!(v.to_string(), "A=012 B=013 C=235");
    }

    #[test]
    fn positive_examples() {
        let fano = SteinerTripleSystem::fano().into_system();
        assert!(is_cancellative(&fano));
        assert!(is_cancellative_naive(&fano));
        let t = turan_triple_system(9, 3).unwrap();
        assert!(is_cancellative(&t));
    }

    #[test]
    fn pairs() {
        let fano = SteinerTripleSystem::fano().into_system();
        let p = make_pair(Graph::complete(7), fano).unwrap();
        assert!(codegree_independence(&p));

        let f5 = h(5, &[(0, 1, 2), (0, 1, 3), (2, 3, 4)]);
        match make_pair(Graph::complete(5), f5) {
            Err(Error::CancellativityViolation(v)) => {
                assert_eq!(v.kind, ViolationKind::TripleTriple)
            }
            other => panic!("{other:?}"),
        }
        let one = h(3, &[(0, 1, 2)]);
        assert!(matches!(
            make_pair(Graph::empty(3), one.clone()),
            Err(Error::ShadowNotContained(_))
        ));
        let p = make_pair(one.shadow(), one).unwrap();
        assert!(codegree_independence(&p));

        // 012, 013 and the pair 23 in G but in no triple
        let two = h(4, &[(0, 1, 2), (0, 1, 3)]);
        let mut g = two.shadow();
        assert!(make_pair(g.clone(), two.clone()).is_ok());
        g.insert(Pair::new(2, 3).unwrap());
        match make_pair(g, two) {
            Err(Error::CancellativityViolation(v)) => {
                assert_eq!(v.kind, ViolationKind::PairWitness);
                assert_eq!(v.to_string(), "A=012 B=013 C=23");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn turan_pair_independence() {
        let t = turan_triple_system(9, 3).unwrap();
        let p = make_pair(t.shadow(), t).unwrap();
        assert!(codegree_independence(&p));
    }
}
