//! Brute force over every set of triples on `n ≤ 6` vertices. Shares no
//! code with the branch and bound; it exists to check it.

use std::collections::BTreeSet;

use crate::budget::Budget;
use crate::canon::{canonical_form, CanonicalForm};
use crate::error::{Error, Result};
use crate::hypergraph::{Triple, TripleSystem};
use crate::par;

pub const MAX_EXHAUSTIVE_N: usize = 6;

/// The triples on `0..n` in lexicographic order, with the data needed to
/// test a subset (a `u32` mask over that order) for cancellativity.
#[derive(Debug)]
pub struct TripleIndex {
    pub n: usize,
    pub triples: Vec<Triple>,
    /// pairs of each triple, as bits over the `C(n,2)` pairs
    pair_bits: Vec<u32>,
    /// `(a, b, d)`: triples `a`, `b` share two points and `d` is the bit
    /// of the pair `a △ b`
    adjacent: Vec<(u8, u8, u32)>,
}

impl TripleIndex {
    pub fn new(n: usize) -> Result<TripleIndex> {
        if n > MAX_EXHAUSTIVE_N {
            return Err(Error::Budget(format!(
                "exhaustive scan limited to n <= {MAX_EXHAUSTIVE_N}"
            )));
        }
        let pair = |u: usize, v: usize| -> u32 {
            let (u, v) = (u.min(v), u.max(v));
            // index of {u, v} in lexicographic order
            1 << (u * (2 * n - u - 1) / 2 + (v - u - 1))
        };
        let mut triples = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    triples.push(Triple::new(a, b, c)?);
                }
            }
        }
        let pair_bits = triples
            .iter()
            .map(|t| {
                let [a, b, c] = t.vertices();
                pair(a, b) | pair(a, c) | pair(b, c)
            })
            .collect();
        let mut adjacent = Vec::new();
        for (i, s) in triples.iter().enumerate() {
            for (j, t) in triples.iter().enumerate().skip(i + 1) {
                let shared: Vec<usize> = s.vertices().into_iter().filter(|&v| t.contains(v)).collect();
                if shared.len() == 2 {
                    let x = s.vertices().into_iter().find(|v| !shared.contains(v)).unwrap();
                    let y = t.vertices().into_iter().find(|v| !shared.contains(v)).unwrap();
                    adjacent.push((i as u8, j as u8, pair(x, y)));
                }
            }
        }
        Ok(TripleIndex { n, triples, pair_bits, adjacent })
    }

    pub fn subsets(&self) -> u64 {
        1u64 << self.triples.len()
    }

    /// Shadow of the subset, as pair bits.
    pub fn shadow(&self, mask: u32) -> u32 {
        (0..self.triples.len())
            .filter(|&i| mask >> i & 1 == 1)
            .fold(0, |s, i| s | self.pair_bits[i])
    }

    /// No two edges `A, B` of the subset share a pair while `A △ B` is
    /// covered by an edge of the subset.
    pub fn is_cancellative(&self, mask: u32) -> bool {
        let shadow = self.shadow(mask);
        self.adjacent
            .iter()
            .all(|&(a, b, d)| mask >> a & 1 == 0 || mask >> b & 1 == 0 || shadow & d == 0)
    }

    pub fn system(&self, mask: u32) -> TripleSystem {
        let edges = (0..self.triples.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| self.triples[i]);
        TripleSystem::new(self.n, edges).expect("valid triples")
    }
}

/// Every cancellative subset, as masks over [`TripleIndex::triples`], in
/// increasing order.
pub fn cancellative_subsets(index: &TripleIndex, budget: &Budget) -> Result<Vec<u32>> {
    let chunk = 1 << 14;
    let parts = par::map_chunks(index.subsets(), chunk, |r| -> Result<Vec<u32>> {
        budget.check("exhaustive scan")?;
        Ok(r.map(|m| m as u32).filter(|&m| index.is_cancellative(m)).collect())
    });
    let mut out = Vec::new();
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct OracleResult {
    pub n: usize,
    pub optimum: usize,
    /// labeled optimal systems
    pub labeled: usize,
    pub witnesses: Vec<CanonicalForm>,
    /// all cancellative subsets, including the empty one
    pub cancellative: usize,
}

/// The exact maximum by scanning all `2^C(n,3)` subsets.
pub fn exhaustive_max_cancellative(n: usize, budget: &Budget) -> Result<OracleResult> {
    let index = TripleIndex::new(n)?;
    let all = cancellative_subsets(&index, budget)?;
    let optimum = all.iter().map(|m| m.count_ones()).max().unwrap_or(0) as usize;
    let best: Vec<u32> = all.iter().copied().filter(|m| m.count_ones() as usize == optimum).collect();
    let witnesses: BTreeSet<CanonicalForm> = best.iter().map(|&m| canonical_form(&index.system(m))).collect();
    Ok(OracleResult {
        n,
        optimum,
        labeled: best.len(),
        witnesses: witnesses.into_iter().collect(),
        cancellative: all.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cancellative::is_cancellative_naive;

    #[test]
    fn agrees_with_naive_predicate() {
        let index = TripleIndex::new(5).unwrap();
        for m in 0..index.subsets() as u32 {
            assert_eq!(index.is_cancellative(m), is_cancellative_naive(&index.system(m)), "{m:b}");
        }
    }

    #[test]
    fn small_optima() {
        let r = exhaustive_max_cancellative(5, &Budget::unlimited()).unwrap();
        assert_eq!(r.optimum, 4);
        assert_eq!(r.witnesses.len(), 1);
        // T_3(5,3) has parts 2,2,1: 5!/(2·2·2) labelings
        assert_eq!(r.labeled, 15);
        assert!(TripleIndex::new(7).unwrap_err().is_budget());
    }
}
