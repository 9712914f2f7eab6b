//! Steiner triple systems, their blowups and colorings.

pub mod blowup;
pub mod catalog;
pub mod coloring;
pub mod enumerate;

use crate::canon::third_table;
use crate::error::{Error, Result};
use crate::hypergraph::{Pair, TripleSystem, VertexId};

pub use blowup::{
    blowup, link_blowup_structure, s_n_k, simplex_inequality_check, simplex_inequality_check_exact,
    Blowup, BlowupSpec, SnkMode, SnkResult,
};
pub use catalog::{enumerate_sts, Catalog, CatalogOptions};
pub use coloring::{
    is_colorable, min_deletion_to_colorable, Coloring, DeletionMode, DeletionResult,
};

/// `k ≡ 1, 3 (mod 6)`; `k = 1` counts (the empty system on one point).
pub fn sts_exists(k: usize) -> bool {
    k % 6 == 1 || k % 6 == 3
}

/// True iff every pair of vertices lies in exactly one edge.
pub fn is_sts(h: &TripleSystem) -> bool {
    third_table(h).is_some()
}

/// A triple system in which every pair lies in exactly one edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteinerTripleSystem {
    h: TripleSystem,
    /// `third[u * k + v]`, undefined on the diagonal
    third: Vec<u8>,
}

impl SteinerTripleSystem {
    pub fn new(h: TripleSystem) -> Result<SteinerTripleSystem> {
        let k = h.n();
        if !sts_exists(k) {
            return Err(Error::NotSts(format!("{k} points is not 1 or 3 mod 6")));
        }
        match third_table(&h) {
            Some(third) => Ok(SteinerTripleSystem { h, third }),
            None => {
                let bad = (0..k)
                    .flat_map(|u| (u + 1..k).map(move |v| Pair::new_unchecked(u, v)))
                    .find(|&p| h.codegree(p) != 1)
                    .expect("some pair has codegree other than one");
                Err(Error::NotSts(format!(
                    "pair {bad} has codegree {}",
                    h.codegree(bad)
                )))
            }
        }
    }

    pub fn k(&self) -> usize {
        self.h.n()
    }

    pub fn system(&self) -> &TripleSystem {
        &self.h
    }

    pub fn into_system(self) -> TripleSystem {
        self.h
    }

    /// The third point of the block through `u` and `v`.
    pub fn third(&self, u: VertexId, v: VertexId) -> VertexId {
        assert!(u != v && u < self.k() && v < self.k());
        self.third[u * self.k() + v] as usize
    }

    /// Order of the automorphism group.
    pub fn automorphism_count(&self) -> u64 {
        crate::canon::sts_canonical(self.k(), &self.third).automorphisms
    }

    /// The single block on three points.
    pub fn triangle() -> SteinerTripleSystem {
        Self::from_lines(3, &[(0, 1, 2)])
    }

    /// Lines `{i, i+1, i+3} mod 7`, relabeled so that the edge list is
    /// sorted; any STS(7) is isomorphic to this one.
    pub fn fano() -> SteinerTripleSystem {
        Self::from_lines(
            7,
            &[(0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)],
        )
    }

    /// AG(2,3): points `3x + y` over Z_3, lines of the 4 parallel classes.
    pub fn affine_plane() -> SteinerTripleSystem {
        let mut lines = Vec::new();
        let pt = |x: usize, y: usize| 3 * (x % 3) + y % 3;
        for dir in [(0, 1), (1, 0), (1, 1), (1, 2)] {
            for x in 0..3 {
                for y in 0..3 {
                    let a = pt(x, y);
                    let b = pt(x + dir.0, y + dir.1);
                    let c = pt(x + 2 * dir.0, y + 2 * dir.1);
                    let mut l = [a, b, c];
                    l.sort_unstable();
                    lines.push((l[0], l[1], l[2]));
                }
            }
        }
        lines.sort_unstable();
        lines.dedup();
        Self::from_lines(9, &lines)
    }

    fn from_lines(k: usize, lines: &[(usize, usize, usize)]) -> SteinerTripleSystem {
        SteinerTripleSystem::new(TripleSystem::from_tuples(k, lines).unwrap()).unwrap()
    }
}

impl TryFrom<TripleSystem> for SteinerTripleSystem {
    type Error = Error;
    fn try_from(h: TripleSystem) -> Result<Self> {
        SteinerTripleSystem::new(h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::tests::h;

    #[test]
    fn named_systems() {
        for (s, k, auts) in [
            (SteinerTripleSystem::triangle(), 3, 6),
            (SteinerTripleSystem::fano(), 7, 168),
            (SteinerTripleSystem::affine_plane(), 9, 432),
        ] {
            assert_eq!(s.k(), k);
            assert_eq!(s.system().len(), k * (k - 1) / 6);
            assert!(is_sts(s.system()));
            assert_eq!(s.automorphism_count(), auts);
        }
    }

    #[test]
    fn rejects_non_sts() {
        let f5 = h(5, &[(0, 1, 2), (0, 1, 3), (2, 3, 4)]);
        assert!(!is_sts(&f5));
        assert!(SteinerTripleSystem::new(f5).is_err());
        let two = h(7, &[(0, 1, 2), (0, 3, 4)]);
        let err = SteinerTripleSystem::new(two).unwrap_err();
        assert!(err.to_string().contains("codegree 0"));
    }

    #[test]
    fn existence() {
        let ks: Vec<usize> = (0..20).filter(|&k| sts_exists(k)).collect();
        assert_eq!(ks, vec![1, 3, 7, 9, 13, 15, 19]);
    }

    #[test]
    fn third_point() {
        let f = SteinerTripleSystem::fano();
        assert_eq!(f.third(0, 1), 2);
        assert_eq!(f.third(6, 3), 2);
    }
}
