use std::fmt;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An exact real number: a rational, or a real quadratic irrational
/// `p + q·√d` with `q ≠ 0` and squarefree `d ≥ 2`.
///
/// Values are kept in normal form (reduced rationals, squarefree radicand,
/// irrational part nonzero), so structural equality is value equality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExactScalar {
    Rational(Rational64),
    QuadIrr { p: Rational64, q: Rational64, d: u64 },
}

impl ExactScalar {
    pub fn integer(n: i64) -> Self {
        ExactScalar::Rational(Rational64::from_integer(n))
    }

    pub fn rational(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidScalar(format!("{num}/0 has zero denominator")));
        }
        Ok(ExactScalar::Rational(Rational64::new(num, den)))
    }

    /// `√n` for `n ≥ 0`, reduced to normal form (`√8 = 2√2`, `√9 = 3`).
    pub fn sqrt(n: i64) -> Result<Self> {
        Self::quadratic(Rational64::zero(), Rational64::one(), n)
    }

    /// `p + q·√n`, normalized.
    pub fn quadratic(p: Rational64, q: Rational64, n: i64) -> Result<Self> {
        if n < 0 {
            return Err(Error::InvalidScalar(format!(
                "sqrt({n}) is not real; the radicand must be nonnegative"
            )));
        }
        let (square, free) = split_square(n as u64);
        if q.is_zero() || free == 0 {
            return Ok(ExactScalar::Rational(p));
        }
        let square = i64::try_from(square)
            .map_err(|_| Error::InvalidScalar(format!("sqrt({n}) overflows")))?;
        let q = q
            .checked_mul(&Rational64::from_integer(square))
            .ok_or_else(|| Error::InvalidScalar(format!("coefficient of sqrt({n}) overflows")))?;
        if free == 1 {
            let v = p
                .checked_add(&q)
                .ok_or_else(|| Error::InvalidScalar("rational part overflows".into()))?;
            return Ok(ExactScalar::Rational(v));
        }
        Ok(ExactScalar::QuadIrr { p, q, d: free })
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, ExactScalar::Rational(_))
    }

    pub fn as_rational(&self) -> Option<Rational64> {
        match *self {
            ExactScalar::Rational(v) => Some(v),
            ExactScalar::QuadIrr { .. } => None,
        }
    }

    /// Squarefree radicand of an irrational value.
    pub fn radicand(&self) -> Option<u64> {
        match *self {
            ExactScalar::Rational(_) => None,
            ExactScalar::QuadIrr { d, .. } => Some(d),
        }
    }

    /// Floating-point value.
    ///
    /// When `p` and `q·√d` have opposite signs the value is computed as
    /// `(p² − q²d) / (p − q√d)`, with the numerator exact, so that
    /// cancellation does not destroy the relative accuracy.
    pub fn eval(&self) -> f64 {
        match *self {
            ExactScalar::Rational(v) => ratio_to_f64(v),
            ExactScalar::QuadIrr { p, q, d } => {
                let pf = ratio_to_f64(p);
                let qf = ratio_to_f64(q);
                let root = (d as f64).sqrt();
                if p.is_zero() || p.is_positive() == q.is_positive() {
                    return pf + qf * root;
                }
                let norm = exact_norm(p, q, d).map(ratio_to_f64);
                match norm {
                    Some(n) => n / (pf - qf * root),
                    None => pf + qf * root,
                }
            }
        }
    }
}

/// `p² − q²·d` if it fits in i64 rationals.
fn exact_norm(p: Rational64, q: Rational64, d: u64) -> Option<Rational64> {
    let d = Rational64::from_integer(i64::try_from(d).ok()?);
    let pp = p.checked_mul(&p)?;
    let qq = q.checked_mul(&q)?.checked_mul(&d)?;
    pp.checked_sub(&qq)
}

pub(crate) fn ratio_to_f64(v: Rational64) -> f64 {
    // i64 -> f64 is correctly rounded; the quotient adds one more rounding.
    let (n, d) = (*v.numer(), *v.denom());
    n.to_f64().unwrap_or(f64::NAN) / d.to_f64().unwrap_or(f64::NAN)
}

/// Writes `n = k²·m` with `m` squarefree; returns `(k, m)`.
fn split_square(n: u64) -> (u64, u64) {
    if n == 0 {
        return (0, 0);
    }
    let mut k = 1u64;
    let mut m = 1u64;
    let mut rest = n;
    let mut f = 2u64;
    while f.saturating_mul(f) <= rest {
        let mut e = 0u32;
        while rest.is_multiple_of(f) {
            rest /= f;
            e += 1;
        }
        k *= f.pow(e / 2);
        if e % 2 == 1 {
            m *= f;
        }
        f += if f == 2 { 1 } else { 2 };
    }
    (k, m * rest)
}

fn fmt_ratio(v: Rational64) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

impl fmt::Display for ExactScalar {
    /// Prints in the grammar accepted by [`str::parse`], e.g. `3/4`,
    /// `sqrt(2)`, `1/2-3*sqrt(5)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ExactScalar::Rational(v) => write!(f, "{}", fmt_ratio(v)),
            ExactScalar::QuadIrr { p, q, d } => {
                let mag = q.abs();
                let coeff = if mag.is_one() {
                    String::new()
                } else {
                    format!("{}*", fmt_ratio(mag))
                };
                let sign = if q.is_negative() { "-" } else { "+" };
                if p.is_zero() {
                    let lead = if q.is_negative() { "-" } else { "" };
                    write!(f, "{lead}{coeff}sqrt({d})")
                } else {
                    write!(f, "{}{sign}{coeff}sqrt({d})", fmt_ratio(p))
                }
            }
        }
    }
}

impl Serialize for ExactScalar {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExactScalar {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(de)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Least common multiple of the reduced denominators of two rationals.
pub(crate) fn lcm_denominators(r: Rational64, s: Rational64) -> u64 {
    let l = r.denom().lcm(s.denom());
    l.unsigned_abs()
}
