//! The feasible region of cancellative triple systems: the boundary curve
//! `min{x^{3/2}/√6, x(1-x)}`, density points of explicit constructions,
//! and probes on either side of the Steiner points `x = (k-1)/k`.

use std::cmp::Ordering;
use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::budget::Budget;
use crate::cancellative::bounds::{check_shadow_edge_bounds, BoundReport};
use crate::cancellative::is_cancellative;
use crate::error::{Error, Result};
use crate::hypergraph::turan_triple_system;
use crate::rational::{frac, int, ratio_string, serialize_ratio, Surd};
use crate::steiner::{blowup, sts_exists, BlowupSpec, SteinerTripleSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    /// `x^{3/2}/√6` is the smaller
    Power,
    /// `x(1-x)` is the smaller
    Quadratic,
    Both,
}

#[derive(Clone, Debug, Serialize)]
pub struct GBound {
    #[serde(serialize_with = "serialize_ratio")]
    pub x: BigRational,
    /// exact value, `p/q` or `b*sqrt(r)`
    pub value: String,
    pub branch: Branch,
    #[serde(skip)]
    pub exact: Surd,
}

impl GBound {
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.exact.as_rational()
    }
}

/// `min{x^{3/2}/√6, x(1-x)}`, compared exactly by squaring.
pub fn g_upper_bound(x: &BigRational) -> Result<GBound> {
    if x.is_negative() || *x > int(1) {
        return Err(Error::InvalidParameter(format!("x = {} is outside [0, 1]", ratio_string(x))));
    }
    // x^{3/2}/√6 = x·√(x/6)
    let power = Surd::new(BigRational::zero(), x.clone(), x / int(6));
    let quad = x * (int(1) - x);
    // both are ≥ 0; compare x³/6 with x²(1-x)²
    let lhs = x * x * x / int(6);
    let rhs = &quad * &quad;
    let (branch, exact) = match lhs.cmp(&rhs) {
        Ordering::Less => (Branch::Power, power),
        Ordering::Greater => (Branch::Quadratic, Surd::rational(quad)),
        Ordering::Equal => (Branch::Both, Surd::rational(quad)),
    };
    Ok(GBound { x: x.clone(), value: exact.to_string(), branch, exact })
}

/// The curve at `x = i/steps` for `i = 0..=steps`, as CSV
/// `x_num,x_den,branch,value,approx`.
pub fn g_curve_csv(steps: usize) -> Result<String> {
    if steps == 0 {
        return Err(Error::InvalidParameter("need at least one step".into()));
    }
    let mut out = String::from("x_num,x_den,branch,value,approx\n");
    for i in 0..=steps {
        let x = frac(i as i64, steps as i64);
        let g = g_upper_bound(&x)?;
        let branch = match g.branch {
            Branch::Power => "power",
            Branch::Quadratic => "quadratic",
            Branch::Both => "both",
        };
        writeln!(out, "{},{},{},{},{:.12}", x.numer(), x.denom(), branch, g.value, g.exact.to_f64()).unwrap();
    }
    Ok(out)
}

/// `(|∂H|/C(n,2), |H|/C(n,3))` of a cancellative construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegionPoint {
    pub k: usize,
    pub parts: Vec<usize>,
    pub n: usize,
    #[serde(serialize_with = "serialize_ratio")]
    pub x: BigRational,
    #[serde(serialize_with = "serialize_ratio")]
    pub y: BigRational,
    /// `sts(k)#i` for the `i`-th catalog system, `turan` for `T_3(n,3)`
    pub provenance: String,
}

pub const REGION_CSV_HEADER: &str = "k,parts,n,x_num,x_den,y_num,y_den,provenance";

/// Parts are joined with `-` so the CSV needs no quoting.
pub fn region_csv(points: &[RegionPoint]) -> String {
    let mut out = String::from(REGION_CSV_HEADER);
    out.push('\n');
    for p in points {
        let parts: Vec<String> = p.parts.iter().map(|x| x.to_string()).collect();
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            p.k,
            parts.join("-"),
            p.n,
            p.x.numer(),
            p.x.denom(),
            p.y.numer(),
            p.y.denom(),
            p.provenance
        )
        .unwrap();
    }
    out
}

/// Largest number of part vectors `region_sample` will visit.
pub const MAX_REGION_VECTORS: u64 = 2_000_000;

/// Density points of every blowup of every catalog system over part
/// vectors with entries in `1..=max_part`, followed by `T_3(n,3)` for
/// `3 ≤ n ≤ 3·max_part`, each checked cancellative and against both
/// shadow inequalities. `catalogs[i]` must be the catalog for `ks[i]`.
pub fn region_sample(
    ks: &[usize],
    max_part: usize,
    catalogs: &[Vec<SteinerTripleSystem>],
    budget: &Budget,
) -> Result<Vec<RegionPoint>> {
    if ks.len() != catalogs.len() {
        return Err(Error::InvalidParameter("one catalog per k is required".into()));
    }
    if ks.is_empty() {
        return Ok(Vec::new());
    }
    if max_part == 0 {
        return Err(Error::InvalidParameter("max_part must be at least 1".into()));
    }
    let mut total = 0u64;
    for (&k, cat) in ks.iter().zip(catalogs) {
        if !(k >= 3 && sts_exists(k)) {
            return Err(Error::InvalidParameter(format!("k = {k} is not 1 or 3 mod 6 with k >= 3")));
        }
        if cat.is_empty() || cat.iter().any(|s| s.k() != k) {
            return Err(Error::CatalogUnavailable(format!("no STS({k}) catalog supplied")));
        }
        let per = (max_part as u64).checked_pow(k as u32).unwrap_or(u64::MAX);
        total = total.saturating_add(per.saturating_mul(cat.len() as u64));
    }
    if total > MAX_REGION_VECTORS {
        return Err(Error::Budget(format!(
            "{total} part vectors requested, limit is {MAX_REGION_VECTORS}"
        )));
    }
    let mut points = Vec::new();
    for (&k, cat) in ks.iter().zip(catalogs) {
        for (i, base) in cat.iter().enumerate() {
            let mut parts = vec![1usize; k];
            loop {
                budget.check("region sampling")?;
                let spec = BlowupSpec::new(base.clone(), parts.clone())?;
                let b = blowup(&spec);
                points.push(validated(&b.system, k, parts.clone(), format!("sts({k})#{i}"))?);
                // next vector in odometer order
                let Some(pos) = parts.iter().rposition(|&x| x < max_part) else { break };
                parts[pos] += 1;
                for x in &mut parts[pos + 1..] {
                    *x = 1;
                }
            }
        }
    }
    for n in 3..=3 * max_part {
        let t = turan_triple_system(n, 3)?;
        let sizes = crate::hypergraph::turan_part_sizes(n, 3);
        points.push(validated(&t, 3, sizes, "turan".into())?);
    }
    Ok(points)
}

fn validated(
    h: &crate::hypergraph::TripleSystem,
    k: usize,
    parts: Vec<usize>,
    provenance: String,
) -> Result<RegionPoint> {
    if !is_cancellative(h) {
        return Err(Error::AssertionFailed(format!("{provenance} {parts:?} is not cancellative")));
    }
    let [a, b] = check_shadow_edge_bounds(h)?;
    if !(a.holds && b.holds) {
        return Err(Error::AssertionFailed(format!("{provenance} {parts:?} violates a shadow bound")));
    }
    let (x, y) = h.densities()?;
    Ok(RegionPoint { k, n: h.n(), parts, x, y, provenance })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Left,
    Right,
}

impl std::str::FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Side> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            _ => Err(Error::InvalidParameter(format!("side must be left or right, got {s:?}"))),
        }
    }
}

/// Compares the edge density available near `x = (k-1)/k` with the
/// Steiner value `(k-1)/k²`. Densities are normalised by `n³/6`.
///
/// Right side: `lhs = x(1-x)` at `x = (k-1)/k + ε`, `rhs = (k-1)/k²`.
///
/// Left side, with shadow `(1-ε)(k-1)/(2k) n²`: the large-`n` bound
/// `(k-1)/k² - 3(k-1)/(2k²) ε + 6Cε^{3/2}` against the drop
/// `(k-1)/k² (1-ε)`, written as `lhs = (k-1)/k² - 3(k-1)/(2k²) ε` and
/// `rhs = (k-1)/k² (1-ε) - 6Cε^{3/2}`, so `holds` means the bound lies
/// below the drop. With the explicit constant this needs a tiny `ε`.
/// Both are reports; nothing here is claimed at finite `n`.
pub fn local_max_probe(k: usize, eps: &BigRational, side: Side, c: Option<&BigRational>) -> Result<BoundReport> {
    if !(k >= 3 && sts_exists(k)) {
        return Err(Error::InvalidParameter(format!("k = {k} is not 1 or 3 mod 6 with k >= 3")));
    }
    if eps.is_negative() {
        return Err(Error::InvalidParameter("epsilon must be nonnegative".into()));
    }
    let kq = int(k as i64);
    let k1 = int(k as i64 - 1);
    let steiner = &k1 / (&kq * &kq);
    let mut r = match side {
        Side::Right => {
            let x = &k1 / &kq + eps;
            if x > BigRational::one() {
                return Err(Error::InvalidParameter("(k-1)/k + epsilon exceeds 1".into()));
            }
            let lhs = &x * (int(1) - &x);
            BoundReport::new("probe-right", lhs, steiner)
        }
        Side::Left => {
            if *eps > BigRational::one() {
                return Err(Error::InvalidParameter("epsilon exceeds 1".into()));
            }
            let c = c.cloned().unwrap_or_else(|| crate::cancellative::bounds::default_thm41_constant(k));
            let lhs = &steiner - int(3) * &k1 / (int(2) * &kq * &kq) * eps;
            let drop = &steiner * (int(1) - eps);
            let rhs = Surd::new(drop, -(int(6) * c * eps), eps.clone());
            BoundReport::with_surd("probe-left", lhs, &rhs)
        }
    };
    r.epsilon = Some(eps.clone());
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crossover() {
        let g = g_upper_bound(&frac(2, 3)).unwrap();
        assert_eq!(g.branch, Branch::Both);
        assert_eq!(g.as_rational(), Some(&frac(2, 9)));
        let g = g_upper_bound(&frac(6, 7)).unwrap();
        assert_eq!(g.branch, Branch::Quadratic);
        assert_eq!(g.as_rational(), Some(&frac(6, 49)));
        let g = g_upper_bound(&int(0)).unwrap();
        assert_eq!(g.as_rational(), Some(&int(0)));
        let g = g_upper_bound(&frac(1, 2)).unwrap();
        assert_eq!(g.branch, Branch::Power);
        assert_eq!(g.value, "1/2*sqrt(1/12)");
        assert!(g_upper_bound(&frac(3, 2)).is_err());
    }

    #[test]
    fn probes() {
        let r = local_max_probe(3, &frac(1, 30), Side::Right, None).unwrap();
        assert_eq!(r.lhs, frac(21, 100));
        assert!(r.holds && !r.tight());
        for side in [Side::Left, Side::Right] {
            let r = local_max_probe(7, &int(0), side, None).unwrap();
            assert!(r.tight(), "{side:?}");
        }
        // with the explicit constant the left bound is far above the drop
        let r = local_max_probe(3, &frac(1, 100), Side::Left, None).unwrap();
        assert!(!r.holds);
        // a small constant brings it under
        let r = local_max_probe(3, &frac(1, 100), Side::Left, Some(&frac(1, 10))).unwrap();
        assert!(r.holds);
        assert!(local_max_probe(5, &frac(1, 100), Side::Right, None).is_err());
    }

    #[test]
    fn samples() {
        let tri = vec![SteinerTripleSystem::triangle()];
        let pts = region_sample(&[3], 3, &[tri], &Budget::unlimited()).unwrap();
        assert_eq!(pts.len(), 27 + 7);
        let p = pts.iter().find(|p| p.parts == [3, 3, 3] && p.provenance != "turan").unwrap();
        assert_eq!((p.x.clone(), p.y.clone()), (frac(3, 4), frac(27, 84)));
        assert!(region_sample(&[], 3, &[], &Budget::unlimited()).unwrap().is_empty());
        let csv = region_csv(&pts[..1]);
        assert_eq!(csv, "k,parts,n,x_num,x_den,y_num,y_den,provenance\n3,1-1-1,3,1,1,1,1,sts(3)#0\n");
    }
}
