//! Isomorph-free enumeration of Steiner triple systems.
//!
//! Every STS(k) has a copy in which the blocks through point 0 are
//! `{0,1,2}, {0,3,4}, …, {0,k-2,k-1}`. Relabelings fixing those blocks and
//! the points 1, 2 act on the remaining blocks through 1 (a perfect matching
//! of `3..k`) and their orbits are classified by the cycle type of that
//! matching against the pairs `{3,4}, {5,6}, …`; each cycle type is a
//! partition of `(k-3)/2` into parts of size at least 2. One matching per
//! cycle type is fixed, the remaining pairs are covered by backtracking
//! (most constrained pair first), and completed systems are merged by
//! canonical form.

use std::collections::BTreeMap;

use super::SteinerTripleSystem;
use crate::budget::Budget;
use crate::canon::{sts_canonical, CanonicalForm};
use crate::error::{Error, Result};
use crate::hypergraph::{Triple, TripleSystem};
use crate::par;

/// Largest `k` accepted without an explicit override.
pub const DEFAULT_MAX_K: usize = 15;

/// One isomorphism class found by the search.
#[derive(Clone, Debug)]
pub struct StsClass {
    pub form: CanonicalForm,
    pub automorphisms: u64,
}

#[derive(Clone, Debug, Default)]
pub struct EnumStats {
    pub leaves: u64,
    pub nodes: u64,
}

/// Partitions of `m` into parts `>= 2`, parts non-increasing.
fn cycle_types(m: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (2..=max.min(rest)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, m, &mut Vec::new(), &mut out);
    out
}

/// Backtracking state: `open[u]` has bit `v` set iff pair `uv` is uncovered.
#[derive(Clone)]
struct Cover {
    k: usize,
    open: Vec<u32>,
    third: Vec<u8>,
}

impl Cover {
    fn new(k: usize) -> Cover {
        let all = if k == 32 { !0 } else { (1u32 << k) - 1 };
        Cover {
            k,
            open: (0..k).map(|u| all & !(1 << u)).collect(),
            third: vec![u8::MAX; k * k],
        }
    }

    fn place(&mut self, a: usize, b: usize, c: usize) {
        for (x, y, z) in [(a, b, c), (a, c, b), (b, c, a)] {
            self.open[x] &= !(1 << y);
            self.open[y] &= !(1 << x);
            self.third[x * self.k + y] = z as u8;
            self.third[y * self.k + x] = z as u8;
        }
    }

    fn unplace(&mut self, a: usize, b: usize, c: usize) {
        for (x, y) in [(a, b), (a, c), (b, c)] {
            self.open[x] |= 1 << y;
            self.open[y] |= 1 << x;
        }
    }

    /// The uncovered pair with fewest possible third points, with its
    /// candidate mask; `None` when everything is covered.
    fn most_constrained(&self) -> Option<(usize, usize, u32)> {
        let mut best: Option<(usize, usize, u32)> = None;
        let mut best_count = u32::MAX;
        for u in 0..self.k {
            let mut row = self.open[u] & !((2u32 << u) - 1);
            while row != 0 {
                let v = row.trailing_zeros() as usize;
                row &= row - 1;
                let cand = self.open[u] & self.open[v];
                let c = cand.count_ones();
                if c < best_count {
                    best_count = c;
                    best = Some((u, v, cand));
                    if c <= 1 {
                        return best;
                    }
                }
            }
        }
        best
    }
}

struct Collector<'a> {
    classes: BTreeMap<Vec<u8>, StsClass>,
    stats: EnumStats,
    budget: &'a Budget,
    aborted: bool,
}

impl Collector<'_> {
    fn search(&mut self, cover: &mut Cover) {
        if self.aborted {
            return;
        }
        self.stats.nodes += 1;
        if self.stats.nodes & 0xFFFF == 0 && self.budget.expired() {
            self.aborted = true;
            return;
        }
        let Some((u, v, mut cand)) = cover.most_constrained() else {
            self.leaf(cover);
            return;
        };
        while cand != 0 {
            let w = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            cover.place(u, v, w);
            self.search(cover);
            cover.unplace(u, v, w);
        }
    }

    fn leaf(&mut self, cover: &Cover) {
        self.stats.leaves += 1;
        let c = sts_canonical(cover.k, &cover.third);
        self.classes.entry(c.code).or_insert(StsClass {
            form: c.form,
            automorphisms: c.automorphisms,
        });
    }
}

/// Starting configurations: fixed blocks through 0 and one matching per
/// cycle type for the blocks through 1, further split on the first branch
/// so that parallel workers get several tasks each.
fn seeds(k: usize) -> Vec<Cover> {
    let mut base = Cover::new(k);
    for i in 0..(k - 1) / 2 {
        base.place(0, 2 * i + 1, 2 * i + 2);
    }
    let mut out = Vec::new();
    for ty in cycle_types((k - 3) / 2) {
        let mut c = base.clone();
        let mut pair = 1usize; // pairs {2a+1, 2a+2}, a >= 1
        for len in ty {
            let members: Vec<usize> = (pair..pair + len).collect();
            for (t, &a) in members.iter().enumerate() {
                let b = members[(t + 1) % len];
                c.place(1, 2 * a + 2, 2 * b + 1);
            }
            pair += len;
        }
        match c.most_constrained() {
            Some((u, v, mut cand)) => {
                while cand != 0 {
                    let w = cand.trailing_zeros() as usize;
                    cand &= cand - 1;
                    let mut s = c.clone();
                    s.place(u, v, w);
                    out.push(s);
                }
            }
            None => out.push(c),
        }
    }
    out
}

/// All isomorphism classes of STS(k), sorted by canonical form.
pub fn enumerate_classes(k: usize, budget: &Budget) -> Result<(Vec<StsClass>, EnumStats)> {
    if !super::sts_exists(k) {
        return Err(Error::NoStsExists(k));
    }
    if k > 31 {
        return Err(Error::Budget(format!("k = {k} is beyond the enumerator's range")));
    }
    if k == 1 {
        let form = CanonicalForm { n: 1, edges: vec![] };
        return Ok((vec![StsClass { form, automorphisms: 1 }], EnumStats::default()));
    }
    let tasks = seeds(k);
    let results = par::map(tasks, |mut cover| {
        let mut col = Collector {
            classes: BTreeMap::new(),
            stats: EnumStats::default(),
            budget,
            aborted: false,
        };
        col.search(&mut cover);
        (col.classes, col.stats, col.aborted)
    });
    let mut merged: BTreeMap<Vec<u8>, StsClass> = BTreeMap::new();
    let mut stats = EnumStats::default();
    for (classes, st, aborted) in results {
        if aborted {
            return Err(Error::Budget(format!("time limit reached while enumerating STS({k})")));
        }
        stats.leaves += st.leaves;
        stats.nodes += st.nodes;
        merged.extend(classes);
    }
    let mut classes: Vec<StsClass> = merged.into_values().collect();
    classes.sort_by(|a, b| a.form.cmp(&b.form));
    Ok((classes, stats))
}

/// Every labeled STS on `0..k`, by plain backtracking without symmetry
/// reduction. Only sensible for `k <= 9`.
pub fn enumerate_labeled(k: usize) -> Result<Vec<SteinerTripleSystem>> {
    if !super::sts_exists(k) {
        return Err(Error::NoStsExists(k));
    }
    crate::budget::guard("k for labeled enumeration", k, 9)?;
    fn rec(c: &mut Cover, blocks: &mut Vec<[usize; 3]>, out: &mut Vec<Vec<[usize; 3]>>) {
        // lowest uncovered pair in lexicographic order
        let Some(u) = (0..c.k).find(|&u| c.open[u] >> (u + 1) != 0) else {
            out.push(blocks.clone());
            return;
        };
        let v = (c.open[u] >> (u + 1)).trailing_zeros() as usize + u + 1;
        let mut cand = c.open[u] & c.open[v];
        while cand != 0 {
            let w = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            c.place(u, v, w);
            blocks.push([u, v, w]);
            rec(c, blocks, out);
            blocks.pop();
            c.unplace(u, v, w);
        }
    }
    let mut out = Vec::new();
    rec(&mut Cover::new(k), &mut Vec::new(), &mut out);
    out.into_iter()
        .map(|bs| {
            let es = bs
                .into_iter()
                .map(|[a, b, c]| Triple::new(a, b, c))
                .collect::<Result<Vec<_>>>()?;
            SteinerTripleSystem::new(TripleSystem::new(k, es)?)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_type_counts() {
        assert_eq!(cycle_types(0), vec![Vec::<usize>::new()]);
        assert_eq!(cycle_types(2), vec![vec![2]]);
        assert_eq!(cycle_types(5), vec![vec![5], vec![3, 2]]);
        assert_eq!(cycle_types(6).len(), 4);
    }

    #[test]
    fn small_counts() {
        let b = Budget::unlimited();
        for (k, s) in [(1, 1), (3, 1), (7, 1), (9, 1)] {
            assert_eq!(enumerate_classes(k, &b).unwrap().0.len(), s, "k = {k}");
        }
        assert!(matches!(enumerate_classes(5, &b), Err(Error::NoStsExists(5))));
    }

    #[test]
    fn labeled_counts() {
        assert_eq!(enumerate_labeled(7).unwrap().len(), 30);
        assert_eq!(enumerate_labeled(9).unwrap().len(), 840);
        assert!(enumerate_labeled(13).is_err());
    }
}
