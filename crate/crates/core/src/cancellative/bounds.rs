//! Inequalities between `|H|`, `|∂H|`, degrees and clique structure,
//! evaluated exactly.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use super::{is_cancellative, cancellative_violation, CancellativePair};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::expansion::{verify_expansion, CliqueExpansion};
use crate::hypergraph::{vertex_set, Graph, TripleSystem, VertexId};
use crate::rational::{ceil_mul_sqrt, int, ratio_string, serialize_ratio, Surd};

/// `lhs ≤ rhs`, with both sides exact.
///
/// An irrational right-hand side is replaced by a rational approximation
/// lying strictly on the same side of `lhs` as the true value, so `holds`
/// is exact and `slack` is a certified lower bound on the true slack (or
/// an upper bound on the deficit when the bound fails). The irrational
/// value is kept in `rhs_exact`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub bound: String,
    #[serde(serialize_with = "serialize_ratio")]
    pub lhs: BigRational,
    #[serde(serialize_with = "serialize_ratio")]
    pub rhs: BigRational,
    pub holds: bool,
    #[serde(serialize_with = "serialize_ratio")]
    pub slack: BigRational,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs_exact: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "opt_ratio")]
    pub epsilon: Option<BigRational>,
}

fn opt_ratio<S: Serializer>(q: &Option<BigRational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match q {
        Some(q) => serialize_ratio(q, s),
        None => s.serialize_none(),
    }
}

impl BoundReport {
    pub fn new(bound: &str, lhs: BigRational, rhs: BigRational) -> BoundReport {
        let slack = &rhs - &lhs;
        BoundReport {
            bound: bound.to_string(),
            holds: !slack.is_negative(),
            lhs,
            rhs,
            slack,
            rhs_exact: None,
            epsilon: None,
        }
    }

    pub fn with_surd(bound: &str, lhs: BigRational, rhs: &Surd) -> BoundReport {
        match rhs.as_rational() {
            Some(q) => BoundReport::new(bound, lhs, q.clone()),
            None => {
                let approx = rhs.round_towards(&lhs);
                let mut r = BoundReport::new(bound, lhs, approx);
                r.rhs_exact = Some(rhs.to_string());
                r
            }
        }
    }

    /// Equality between the two sides.
    pub fn tight(&self) -> bool {
        self.slack.is_zero()
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} <= {} {}",
            self.bound,
            ratio_string(&self.lhs),
            self.rhs_exact.clone().unwrap_or_else(|| ratio_string(&self.rhs)),
            if self.holds { "holds" } else { "FAILS" }
        )
    }
}

fn count(x: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// `x(1-x)/6 · m³ + 3m²` with `x = 2e/m²`.
fn quadratic_rhs(e: usize, m: usize) -> BigRational {
    let m = count(m);
    let x = count(2 * e) / (&m * &m);
    let one = int(1);
    &x * (&one - &x) / int(6) * &m * &m * &m + int(3) * &m * &m
}

/// The two shadow/edge inequalities for a cancellative `H` with
/// `|∂H| = x n²/2`: `|H| ≤ (x/6)^{3/2} n³` and
/// `|H| ≤ x(1-x)/6 · n³ + 3n²`.
///
/// The first is `|H| ≤ (s/3)^{3/2}` for `s = |∂H|`, decided as
/// `27 |H|² ≤ s³` in integers.
pub fn check_shadow_edge_bounds(h: &TripleSystem) -> Result<[BoundReport; 2]> {
    if let Some(v) = cancellative_violation(h) {
        return Err(Error::NotCancellative(v));
    }
    if h.n() == 0 {
        return Err(Error::TooFewVertices { needed: 1, got: 0 });
    }
    let s = h.shadow().len();
    let e = h.len();
    let third = count(s) / int(3);
    let mut power = BoundReport::with_surd("shadow-power", count(e), &Surd::new(int(0), third.clone(), third));
    let exact = BigInt::from(27) * BigInt::from(e).pow(2) <= BigInt::from(s).pow(3);
    debug_assert_eq!(exact, power.holds);
    power.holds = exact;
    let quad = BoundReport::new("shadow-quadratic", count(e), quadratic_rhs(s, h.n()));
    Ok([power, quad])
}

/// `|H| ≤ x(1-x)/6 · m³ + 3m²` with `|G| = x m²/2`.
pub fn pair_density_bound(p: &CancellativePair) -> Result<BoundReport> {
    if p.m() == 0 {
        return Err(Error::TooFewVertices { needed: 1, got: 0 });
    }
    Ok(BoundReport::new("pair-density", count(p.h().len()), quadratic_rhs(p.g().len(), p.m())))
}

fn clique_check(g: &Graph, s: &[VertexId]) -> Result<BitSet> {
    let bits = vertex_set(g.n(), s)?;
    if !g.is_clique(s) {
        return Err(Error::NotAClique(s.to_vec()));
    }
    Ok(bits)
}

/// `Σ_{v∈S} d_H(v) ≤ |∂H|` for a clique `S` of `G`.
pub fn clique_degree_bound(p: &CancellativePair, s: &[VertexId]) -> Result<BoundReport> {
    clique_check(p.g(), s)?;
    let lhs: usize = s.iter().map(|&v| p.h().degree(v)).sum();
    Ok(BoundReport::new("clique-degree", count(lhs), count(p.h().shadow().len())))
}

/// `|H| ≤ |H[R]| + t |∂H|` for a clique expansion `(S_1, …, S_t, R)` of `G`.
pub fn expansion_bound(p: &CancellativePair, x: &CliqueExpansion) -> Result<BoundReport> {
    if let Err(clause) = verify_expansion(p.g(), x) {
        return Err(Error::InvalidExpansion(clause.to_string()));
    }
    let hr = p.h().induced(&x.r)?.len();
    let rhs = hr + x.parts.len() * p.h().shadow().len();
    Ok(BoundReport::new("clique-expansion", count(p.h().len()), count(rhs)))
}

/// `|H| ≤ |H[T]| + |G[T]| + |G[S,T]|/2 + |G[S]|/3` when `{S, T}` partitions
/// the vertex set and `G[S]` is complete.
pub fn split_bound(p: &CancellativePair, s: &[VertexId], t: &[VertexId]) -> Result<BoundReport> {
    let g = p.g();
    let sb = clique_check(g, s)?;
    let tb = vertex_set(g.n(), t)?;
    if !sb.is_disjoint(&tb) || sb.count() + tb.count() != g.n() {
        return Err(Error::NotAPartition);
    }
    let ht = p.h().induced_bits(&tb).len();
    let gt = g.induced_bits(&tb).len();
    let gs = g.induced_bits(&sb).len();
    let gst = g.cross_edges(s, t)?.len();
    let rhs = count(ht) + count(gt) + count(gst) / int(2) + count(gs) / int(3);
    Ok(BoundReport::new("split", count(p.h().len()), rhs))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AsymptoticVariant {
    /// general cancellative `H`, `(k-1)/(6k²) - (k-1)/(4k²) ε + C ε^{3/2}`
    Thm41,
    /// `H` a blowup of an STS(k), `… - (k-1)/(2k²) ε + 9 k³ ε^{3/2}`
    Lem41,
    /// `G` k-partite, `H` inside a blowup on its parts, `… + 2 ε^{3/2}`
    Lem42,
    /// `G` k-partite, `… + 10⁹ k⁹ ε^{3/2}`
    Lem43,
}

impl AsymptoticVariant {
    pub fn name(self) -> &'static str {
        match self {
            AsymptoticVariant::Thm41 => "thm41",
            AsymptoticVariant::Lem41 => "lem41",
            AsymptoticVariant::Lem42 => "lem42",
            AsymptoticVariant::Lem43 => "lem43",
        }
    }
}

impl std::str::FromStr for AsymptoticVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "thm41" => Ok(AsymptoticVariant::Thm41),
            "lem41" => Ok(AsymptoticVariant::Lem41),
            "lem42" => Ok(AsymptoticVariant::Lem42),
            "lem43" => Ok(AsymptoticVariant::Lem43),
            _ => Err(Error::InvalidParameter(format!("unknown bound variant {s:?}"))),
        }
    }
}

/// What an asymptotic bound is evaluated on.
#[derive(Clone, Copy, Debug)]
pub enum BoundSubject<'a> {
    System(&'a TripleSystem),
    Pair(&'a CancellativePair),
}

/// The constant assembled at the end of the argument for the general
/// bound, `1100^{3/2} k⁶ (1 + 10⁹ k⁹) + 260² k⁸`, rounded up.
pub fn default_thm41_constant(k: usize) -> BigRational {
    let k = BigInt::from(k);
    let x = BigInt::from(1100) * k.pow(6) * (BigInt::from(1) + BigInt::from(10u64.pow(9)) * k.pow(9));
    let c = ceil_mul_sqrt(&x, &BigInt::from(1100)) + BigInt::from(67600) * k.pow(8);
    BigRational::from_integer(c)
}

/// Evaluates one of the large-`n` bounds. These are reports, not
/// assertions: they are only claimed for `n` beyond an unspecified
/// threshold, so `holds = false` on a small instance is not a bug.
///
/// `ε` is defined by `|G| = (1 - ε) (k-1)/(2k) n²`, where `G` is `∂H` for
/// `thm41`/`lem41` and the pair's graph for `lem42`/`lem43`. `c` overrides
/// the constant of `thm41` (default [`default_thm41_constant`]).
pub fn asymptotic_bound_report(
    subject: BoundSubject<'_>,
    k: usize,
    variant: AsymptoticVariant,
    c: Option<&BigRational>,
) -> Result<BoundReport> {
    if !(k >= 3 && crate::steiner::sts_exists(k)) {
        return Err(Error::InvalidParameter(format!("k = {k} is not 1 or 3 mod 6 with k >= 3")));
    }
    let (h, g_size) = match (subject, variant) {
        (BoundSubject::System(h), _) => {
            if let Some(v) = cancellative_violation(h) {
                return Err(Error::NotCancellative(v));
            }
            (h, h.shadow().len())
        }
        (BoundSubject::Pair(p), AsymptoticVariant::Thm41 | AsymptoticVariant::Lem41) => {
            (p.h(), p.h().shadow().len())
        }
        (BoundSubject::Pair(p), _) => (p.h(), p.g().len()),
    };
    if matches!(variant, AsymptoticVariant::Lem42 | AsymptoticVariant::Lem43) {
        let g = match subject {
            BoundSubject::System(h) => h.shadow(),
            BoundSubject::Pair(p) => p.g().clone(),
        };
        if crate::expansion::is_k_partite(&g, k)?.is_none() {
            return Err(Error::NotKPartite(k));
        }
    }
    debug_assert!(is_cancellative(h));
    let n = h.n();
    if n == 0 {
        return Err(Error::TooFewVertices { needed: 1, got: 0 });
    }
    let kq = count(k);
    let k1 = count(k - 1);
    let n3 = count(n).pow(3);
    let full = &k1 / (int(2) * &kq) * count(n).pow(2);
    let eps = int(1) - count(g_size) / &full;
    if eps.is_negative() {
        return Err(Error::InvalidParameter(format!(
            "|G| = {g_size} exceeds (k-1)/(2k) n^2, so epsilon < 0"
        )));
    }
    let k2 = &kq * &kq;
    let main = &k1 / (int(6) * &k2);
    let linear = match variant {
        AsymptoticVariant::Lem41 => &k1 / (int(2) * &k2),
        _ => &k1 / (int(4) * &k2),
    };
    let coef = match variant {
        AsymptoticVariant::Thm41 => c.cloned().unwrap_or_else(|| default_thm41_constant(k)),
        AsymptoticVariant::Lem41 => int(9) * kq.pow(3),
        AsymptoticVariant::Lem42 => int(2),
        AsymptoticVariant::Lem43 => BigRational::from_integer(BigInt::from(10u64.pow(9))) * kq.pow(9),
    };
    // (main - linear ε) n³ + coef ε √ε n³
    let rhs = Surd::new((main - linear * &eps) * &n3, coef * &eps * &n3, eps.clone());
    let mut r = BoundReport::with_surd(variant.name(), count(h.len()), &rhs);
    r.epsilon = Some(eps);
    Ok(r)
}
