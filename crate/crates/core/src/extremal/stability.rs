//! Desk-scale stability runs: perturb balanced Steiner blowups, then
//! measure how far they are from being colorable.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::exhaustive::{cancellative_subsets, TripleIndex};
use crate::budget::Budget;
use crate::cancellative::is_cancellative;
use crate::error::{Error, Result};
use crate::hypergraph::{turan_part_sizes, Triple, TripleSystem};
use crate::rational::{int, serialize_ratio, Surd};
use crate::steiner::{
    blowup, is_colorable, min_deletion_to_colorable, sts_exists, BlowupSpec, DeletionMode,
    SteinerTripleSystem,
};

#[derive(Clone, Debug, Serialize)]
pub struct Trial {
    pub trial: usize,
    pub base_index: usize,
    pub deleted: Vec<Triple>,
    pub edges: usize,
    pub shadow: usize,
    /// least `ε` with `|∂H| ≥ (1-ε)(k-1)n²/(2k)` and `|H| ≥ (1-ε)(k-1)n³/(6k²)`
    #[serde(serialize_with = "serialize_ratio")]
    pub epsilon: BigRational,
    pub distance: usize,
    /// `20000 k⁶ √ε n³`, exact
    pub reference: String,
    pub reference_approx: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilitySummary {
    pub k: usize,
    pub n: usize,
    pub deletions: usize,
    pub seed: u64,
    pub max_distance: usize,
    pub trials: Vec<Trial>,
}

fn q(x: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// `trials` runs of: pick a catalog system at random, blow it up with the
/// balanced part vector on `n` vertices, delete `deletions` random edges,
/// then compute the exact deletion distance to colorability. All choices
/// come from one ChaCha8 stream seeded with `seed`.
pub fn stability_experiment(
    k: usize,
    n: usize,
    deletions: usize,
    trials: usize,
    seed: u64,
    catalog: &[SteinerTripleSystem],
    budget: &Budget,
) -> Result<StabilitySummary> {
    if !(k >= 3 && sts_exists(k)) {
        return Err(Error::InvalidParameter(format!("k = {k} is not 1 or 3 mod 6 with k >= 3")));
    }
    if n < k {
        return Err(Error::TooFewVertices { needed: k, got: n });
    }
    if catalog.is_empty() || catalog.iter().any(|s| s.k() != k) {
        return Err(Error::CatalogUnavailable(format!("no STS({k}) catalog supplied")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let kq = q(k);
    let shadow_full = q(k - 1) * q(n) * q(n) / (int(2) * &kq);
    let edge_full = q(k - 1) * q(n).pow(3) / (int(6) * &kq * &kq);
    let coef = q(20000) * kq.pow(6) * q(n).pow(3);
    let mut out = Vec::with_capacity(trials);
    for trial in 0..trials {
        budget.check("stability experiment")?;
        let base_index = rng.gen_range(0..catalog.len());
        let spec = BlowupSpec::new(catalog[base_index].clone(), turan_part_sizes(n, k))?;
        let full = blowup(&spec).system;
        if deletions > full.len() {
            return Err(Error::InvalidParameter(format!(
                "cannot delete {deletions} of {} edges",
                full.len()
            )));
        }
        let mut deleted: Vec<Triple> =
            sample(&mut rng, full.len(), deletions).into_iter().map(|i| full.edges()[i]).collect();
        deleted.sort_unstable();
        let h = full.without(&deleted);
        if !is_cancellative(&h) {
            return Err(Error::AssertionFailed("a subsystem of a blowup is not cancellative".into()));
        }
        let shadow = h.shadow().len();
        let eps = [int(1) - q(shadow) / &shadow_full, int(1) - q(h.len()) / &edge_full]
            .into_iter()
            .fold(BigRational::zero(), |a, b| a.max(b));
        let d = min_deletion_to_colorable(&h, catalog, DeletionMode::Exact, budget)?;
        if d.deletions > 0 {
            return Err(Error::AssertionFailed(format!(
                "a subsystem of an STS({k}) blowup needs {} deletions",
                d.deletions
            )));
        }
        let reference = Surd::new(BigRational::zero(), coef.clone(), eps.clone());
        out.push(Trial {
            trial,
            base_index,
            deleted,
            edges: h.len(),
            shadow,
            epsilon: eps,
            distance: d.deletions,
            reference: reference.to_string(),
            reference_approx: reference.to_f64(),
        });
    }
    Ok(StabilitySummary {
        k,
        n,
        deletions,
        seed,
        max_distance: out.iter().map(|t| t.distance).max().unwrap_or(0),
        trials: out,
    })
}

/// Cancellative systems on `n ≤ 6` vertices that are not colorable by the
/// single triple, i.e. not 3-partite in the blowup sense.
pub fn noncolorable_cancellative_pool(n: usize, budget: &Budget) -> Result<Vec<TripleSystem>> {
    let index = TripleIndex::new(n)?;
    let tri = SteinerTripleSystem::triangle();
    Ok(cancellative_subsets(&index, budget)?
        .into_iter()
        .map(|m| index.system(m))
        .filter(|h| is_colorable(h, &tri).is_none())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_deletions() {
        let tri = [SteinerTripleSystem::triangle()];
        let s = stability_experiment(3, 6, 0, 3, 1, &tri, &Budget::unlimited()).unwrap();
        assert!(s.trials.iter().all(|t| t.distance == 0 && t.epsilon.is_zero()));
        let s = stability_experiment(3, 9, 1, 4, 2, &tri, &Budget::unlimited()).unwrap();
        assert_eq!(s.max_distance, 0);
        assert!(s.trials.iter().all(|t| t.edges == 26));
    }

    #[test]
    fn pool_needs_deletions() {
        let budget = Budget::unlimited();
        let pool = noncolorable_cancellative_pool(6, &budget).unwrap();
        assert!(!pool.is_empty());
        let tri = [SteinerTripleSystem::triangle()];
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let h = &pool[rng.gen_range(0..pool.len())];
        let d = min_deletion_to_colorable(h, &tri, DeletionMode::Exact, &budget).unwrap();
        assert!(d.deletions >= 1);
    }
}
