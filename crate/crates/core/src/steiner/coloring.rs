//! Homomorphisms of triple systems into Steiner triple systems.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::SteinerTripleSystem;
use crate::budget::{guard, Budget};
use crate::error::{Error, Result};
use crate::hypergraph::{Triple, TripleSystem, VertexId};
use crate::par;

/// Vertex map `V(H) → V(S)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coloring {
    pub map: Vec<VertexId>,
}

/// Whether an edge, fully colored, lands on a block: needs three distinct
/// colors with the third determined by the other two.
fn edge_ok(s: &SteinerTripleSystem, a: usize, b: usize, c: usize) -> bool {
    a != b && a != c && b != c && s.third(a, b) == c
}

impl Coloring {
    /// Edges of `h` not mapped onto a block of `s`.
    pub fn bad_edges(&self, h: &TripleSystem, s: &SteinerTripleSystem) -> Vec<Triple> {
        h.edges()
            .iter()
            .filter(|e| {
                let [a, b, c] = e.vertices();
                !edge_ok(s, self.map[a], self.map[b], self.map[c])
            })
            .copied()
            .collect()
    }

    pub fn verify(&self, h: &TripleSystem, s: &SteinerTripleSystem) -> bool {
        self.map.len() == h.n() && self.map.iter().all(|&c| c < s.k()) && self.bad_edges(h, s).is_empty()
    }
}

/// Vertices by descending degree, ties by index.
fn degree_order(h: &TripleSystem) -> Vec<VertexId> {
    let mut order: Vec<VertexId> = (0..h.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(h.degree(v)), v));
    order
}

/// Other two endpoints of each edge through each vertex.
fn through(h: &TripleSystem) -> Vec<Vec<(usize, usize)>> {
    let mut t = vec![Vec::new(); h.n()];
    for e in h.edges() {
        let [a, b, c] = e.vertices();
        t[a].push((b, c));
        t[b].push((a, c));
        t[c].push((a, b));
    }
    t
}

struct Colorer<'a> {
    s: &'a SteinerTripleSystem,
    through: Vec<Vec<(usize, usize)>>,
    color: Vec<Option<usize>>,
    trail: Vec<VertexId>,
}

impl Colorer<'_> {
    /// Colors `v` and propagates forced thirds; false on conflict.
    fn assign(&mut self, v: VertexId, c: usize) -> bool {
        let mut queue = vec![(v, c)];
        while let Some((v, c)) = queue.pop() {
            match self.color[v] {
                Some(old) if old == c => continue,
                Some(_) => return false,
                None => {}
            }
            self.color[v] = Some(c);
            self.trail.push(v);
            for &(x, y) in &self.through[v] {
                match (self.color[x], self.color[y]) {
                    (Some(cx), Some(cy)) => {
                        if !edge_ok(self.s, c, cx, cy) {
                            return false;
                        }
                    }
                    (Some(cx), None) => {
                        if cx == c {
                            return false;
                        }
                        queue.push((y, self.s.third(c, cx)));
                    }
                    (None, Some(cy)) => {
                        if cy == c {
                            return false;
                        }
                        queue.push((x, self.s.third(c, cy)));
                    }
                    (None, None) => {}
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().unwrap();
            self.color[v] = None;
        }
    }

    fn solve(&mut self, order: &[VertexId]) -> bool {
        let Some(pos) = order.iter().position(|&v| self.color[v].is_none()) else {
            return true;
        };
        let v = order[pos];
        // no symmetry reduction under Aut(S); every color is tried
        for c in 0..self.s.k() {
            let mark = self.trail.len();
            if self.assign(v, c) && self.solve(&order[pos + 1..]) {
                return true;
            }
            self.undo(mark);
        }
        false
    }
}

/// A coloring of `h` by `s` under which every edge is mapped onto a
/// block of `s`, if one exists.
pub fn is_colorable(h: &TripleSystem, s: &SteinerTripleSystem) -> Option<Coloring> {
    let mut c = Colorer {
        s,
        through: through(h),
        color: vec![None; h.n()],
        trail: Vec::new(),
    };
    let order = degree_order(h);
    if !c.solve(&order) {
        return None;
    }
    let col = Coloring {
        map: c.color.into_iter().map(|x| x.unwrap_or(0)).collect(),
    };
    assert!(col.verify(h, s), "colorability search produced an invalid coloring");
    Some(col)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DeletionMode {
    Exact,
    LocalSearch { seed: u64, restarts: u32 },
}

/// Largest `n` for [`DeletionMode::Exact`].
pub const EXACT_DELETION_MAX_N: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeletionResult {
    pub deletions: usize,
    pub base_index: usize,
    pub coloring: Coloring,
    pub deleted: Vec<Triple>,
    /// false for local search, whose count is only an upper bound
    pub exact: bool,
}

struct Deleter<'a> {
    s: &'a SteinerTripleSystem,
    order: Vec<VertexId>,
    /// edges whose last vertex in `order` is `order[i]`, as the other two
    closing: Vec<Vec<(usize, usize)>>,
    color: Vec<usize>,
    best: usize,
    best_color: Option<Vec<usize>>,
    nodes: u64,
    budget: &'a Budget,
}

impl Deleter<'_> {
    fn run(&mut self, i: usize, cost: usize) -> Result<()> {
        if cost >= self.best {
            return Ok(());
        }
        self.nodes += 1;
        if self.nodes.is_multiple_of(1 << 18) {
            self.budget.check("exact deletion distance")?;
        }
        if i == self.order.len() {
            self.best = cost;
            self.best_color = Some(self.color.clone());
            return Ok(());
        }
        let v = self.order[i];
        for c in 0..self.s.k() {
            self.color[v] = c;
            let extra = self.closing[i]
                .iter()
                .filter(|&&(x, y)| !edge_ok(self.s, c, self.color[x], self.color[y]))
                .count();
            self.run(i + 1, cost + extra)?;
            if self.best == 0 {
                return Ok(());
            }
        }
        Ok(())
    }
}

fn exact_for(h: &TripleSystem, s: &SteinerTripleSystem, budget: &Budget) -> Result<(usize, Vec<usize>)> {
    if let Some(c) = is_colorable(h, s) {
        return Ok((0, c.map));
    }
    let order = degree_order(h);
    let mut pos = vec![0; h.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut closing = vec![Vec::new(); h.n()];
    for e in h.edges() {
        let mut vs = e.vertices();
        vs.sort_by_key(|&v| pos[v]);
        closing[pos[vs[2]]].push((vs[0], vs[1]));
    }
    let mut d = Deleter {
        s,
        order,
        closing,
        color: vec![0; h.n()],
        best: h.len() + 1,
        best_color: None,
        nodes: 0,
        budget,
    };
    d.run(0, 0)?;
    Ok((d.best, d.best_color.expect("some coloring exists")))
}

fn local_for(h: &TripleSystem, s: &SteinerTripleSystem, seed: u64, restarts: u32) -> (usize, Vec<usize>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = s.k();
    let thr = through(h);
    let bad_at = |color: &[usize], v: usize| -> usize {
        thr[v]
            .iter()
            .filter(|&&(x, y)| !edge_ok(s, color[v], color[x], color[y]))
            .count()
    };
    let mut best: Option<(usize, Vec<usize>)> = None;
    for _ in 0..restarts.max(1) {
        let mut color: Vec<usize> = (0..h.n()).map(|_| rng.gen_range(0..k)).collect();
        let mut order: Vec<usize> = (0..h.n()).collect();
        loop {
            let mut improved = false;
            order.shuffle(&mut rng);
            for &v in &order {
                let before = bad_at(&color, v);
                if before == 0 {
                    continue;
                }
                let keep = color[v];
                let (mut arg, mut low) = (keep, before);
                for c in 0..k {
                    color[v] = c;
                    let b = bad_at(&color, v);
                    if b < low {
                        low = b;
                        arg = c;
                    }
                }
                color[v] = arg;
                improved |= arg != keep;
            }
            if !improved {
                break;
            }
        }
        let cost = Coloring { map: color.clone() }.bad_edges(h, s).len();
        if best.as_ref().is_none_or(|(b, _)| cost < *b) {
            best = Some((cost, color));
        }
        if cost == 0 {
            break;
        }
    }
    best.unwrap()
}

/// Fewest edge deletions after which `h` is colorable by some system of
/// `catalog`. Ties go to the earliest catalog entry.
pub fn min_deletion_to_colorable(
    h: &TripleSystem,
    catalog: &[SteinerTripleSystem],
    mode: DeletionMode,
    budget: &Budget,
) -> Result<DeletionResult> {
    if catalog.is_empty() {
        return Err(Error::CatalogUnavailable("empty catalog".into()));
    }
    if mode == DeletionMode::Exact {
        guard("n for exact deletion distance", h.n(), EXACT_DELETION_MAX_N)?;
    }
    let work: Vec<usize> = (0..catalog.len()).collect();
    let results = par::map(work, |i| match mode {
        DeletionMode::Exact => exact_for(h, &catalog[i], budget),
        DeletionMode::LocalSearch { seed, restarts } => {
            Ok(local_for(h, &catalog[i], seed.wrapping_add(i as u64), restarts))
        }
    });
    let mut best: Option<(usize, usize, Vec<usize>)> = None;
    for (i, r) in results.into_iter().enumerate() {
        let (d, col) = r?;
        if best.as_ref().is_none_or(|(bd, _, _)| d < *bd) {
            best = Some((d, i, col));
        }
    }
    let (deletions, base_index, map) = best.unwrap();
    let coloring = Coloring { map };
    let deleted = coloring.bad_edges(h, &catalog[base_index]);
    debug_assert_eq!(deleted.len(), deletions);
    Ok(DeletionResult {
        deletions,
        base_index,
        coloring,
        deleted,
        exact: mode == DeletionMode::Exact,
    })
}
