//! Exact rationals on the wire, and numbers of the form `a + b·√r`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serializer;

use crate::error::{Error, Result};

pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn frac(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// `"p/q"`, always with an explicit denominator.
pub fn ratio_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn serialize_ratio<S: Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&ratio_string(q))
}

/// Accepts `p/q`, integers and plain decimals (`0.001`, `-2.5`, `1e-3`).
pub fn parse_ratio(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidParameter(format!("not a rational number: {s:?}"));
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (ip, fp) = digits.split_once('.').unwrap_or((digits, ""));
    if ip.is_empty() && fp.is_empty()
        || !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let whole: BigInt = format!("0{ip}{fp}").parse().map_err(|_| bad())?;
    let scale = exp - fp.len() as i32;
    let ten = BigInt::from(10);
    let mut q = BigRational::from_integer(whole);
    if scale >= 0 {
        q *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        q /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if neg { -q } else { q })
}

pub fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Square root of `q` if it is rational.
pub fn exact_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let (p, d) = (q.numer(), q.denom());
    let (sp, sd) = (p.sqrt(), d.sqrt());
    (&sp * &sp == *p && &sd * &sd == *d).then(|| BigRational::new(sp, sd))
}

/// `⌈x·√m⌉` for nonnegative integers.
pub fn ceil_mul_sqrt(x: &BigInt, m: &BigInt) -> BigInt {
    let sq = x * x * m;
    let s = sq.sqrt();
    if &s * &s == sq {
        s
    } else {
        s + 1
    }
}

/// `a + b·√r` with `r ≥ 0`. When `r` is a perfect square the root is
/// folded into `a`, so `b ≠ 0` means the value is irrational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surd {
    a: BigRational,
    b: BigRational,
    r: BigRational,
}

impl Surd {
    pub fn rational(a: BigRational) -> Surd {
        Surd {
            a,
            b: BigRational::zero(),
            r: BigRational::zero(),
        }
    }

    pub fn new(a: BigRational, b: BigRational, r: BigRational) -> Surd {
        assert!(!r.is_negative(), "negative radicand");
        if b.is_zero() || r.is_zero() {
            return Surd::rational(a);
        }
        match exact_sqrt(&r) {
            Some(s) => Surd::rational(a + b * s),
            None => Surd { a, b, r },
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.b.is_zero().then_some(&self.a)
    }

    /// Exact comparison of `self` with `q`.
    pub fn cmp_rational(&self, q: &BigRational) -> Ordering {
        if self.b.is_zero() {
            return self.a.cmp(q);
        }
        // compare X = b√r against d = q - a
        let d = q - &self.a;
        let x2 = &self.b * &self.b * &self.r;
        let d2 = &d * &d;
        if self.b.is_positive() {
            if d.is_negative() {
                Ordering::Greater
            } else {
                x2.cmp(&d2)
            }
        } else if !d.is_negative() {
            Ordering::Less
        } else {
            d2.cmp(&x2)
        }
    }

    /// A rational within `10^-digits · |b|` of the value, below it when
    /// `up` is false and above it otherwise.
    pub fn approx(&self, digits: u32, up: bool) -> BigRational {
        if self.b.is_zero() {
            return self.a.clone();
        }
        let scale = num_traits::pow(BigInt::from(10), digits as usize);
        let (p, q) = (self.r.numer(), self.r.denom());
        // √(p/q) = √(pq)/q
        let lo = (p * q * &scale * &scale).sqrt();
        let den = q * &scale;
        let lo_r = BigRational::new(lo.clone(), den.clone());
        let hi_r = BigRational::new(lo + 1, den);
        let want_big_root = up == self.b.is_positive();
        let root = if want_big_root { hi_r } else { lo_r };
        &self.a + &self.b * root
    }

    /// Rounds towards `lhs` but stays on the same (strict) side of it.
    pub fn round_towards(&self, lhs: &BigRational) -> BigRational {
        if let Some(q) = self.as_rational() {
            return q.clone();
        }
        let side = self.cmp_rational(lhs);
        let mut digits = 12;
        loop {
            let q = self.approx(digits, side == Ordering::Less);
            if q.cmp(lhs) == side {
                return q;
            }
            digits *= 2;
        }
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.a) + to_f64(&self.b) * to_f64(&self.r).sqrt()
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", ratio_string(&self.a));
        }
        if !self.a.is_zero() {
            write!(f, "{} + ", ratio_string(&self.a))?;
        }
        if self.b.is_one() {
            write!(f, "sqrt({})", ratio_string(&self.r))
        } else {
            write!(f, "{}*sqrt({})", ratio_string(&self.b), ratio_string(&self.r))
        }
    }
}
