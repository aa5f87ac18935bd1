//! Exact scalars, the Q-independence decision for `{1, r, s}`, the
//! rational refinement denominator, and the configuration classifier.

mod parse;
mod relation;
mod scalar;

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub use parse::ParseScalarError;
pub use relation::{exact_relation, integer_relation_search, rationally_independent_1_r_s, IntegerRelation};
pub use scalar::ExactScalar;

use crate::error::{Error, Result};
use crate::phase_space::LatticeBasis;

/// The four-point configuration `{0, a, b, ν}` with `ν = r·a + s·b`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawConfiguration")]
pub struct Configuration {
    basis: LatticeBasis,
    r: ExactScalar,
    s: ExactScalar,
}

#[derive(Deserialize)]
struct RawConfiguration {
    basis: LatticeBasis,
    r: ExactScalar,
    s: ExactScalar,
}

impl TryFrom<RawConfiguration> for Configuration {
    type Error = Error;
    fn try_from(raw: RawConfiguration) -> Result<Self> {
        Configuration::new(raw.basis, raw.r, raw.s)
    }
}

/// Whether `0, a, b, r·a + s·b` are pairwise distinct. Because `a, b` are
/// independent this only fails for `(r, s) ∈ {(0,0), (1,0), (0,1)}`, which
/// is decided exactly.
pub fn points_distinct(r: &ExactScalar, s: &ExactScalar) -> bool {
    let zero = ExactScalar::integer(0);
    let one = ExactScalar::integer(1);
    let bad = [(&zero, &zero), (&one, &zero), (&zero, &one)];
    !bad.iter().any(|(br, bs)| r == *br && s == *bs)
}

impl Configuration {
    pub fn new(basis: LatticeBasis, r: ExactScalar, s: ExactScalar) -> Result<Self> {
        if !points_distinct(&r, &s) {
            return Err(Error::CoincidentPoints {
                r: r.to_string(),
                s: s.to_string(),
            });
        }
        Ok(Self { basis, r, s })
    }

    pub fn basis(&self) -> &LatticeBasis {
        &self.basis
    }

    pub fn r(&self) -> &ExactScalar {
        &self.r
    }

    pub fn s(&self) -> &ExactScalar {
        &self.s
    }

    /// Exact coordinates of `0, a, b, ν` in the refined frame `(a/N, b/N)`.
    pub fn refined_coordinates(&self, n: u64) -> Result<[(Rational64, Rational64); 4]> {
        let (r, s) = rational_pair(&self.r, &self.s)?;
        let n = Rational64::from_integer(
            i64::try_from(n).map_err(|_| Error::InvalidScalar(format!("refinement {n} too large")))?,
        );
        let (zero, one) = (Rational64::zero(), Rational64::one());
        Ok([
            (zero, zero),
            (n * one, zero),
            (zero, n * one),
            (n * r, n * s),
        ])
    }
}

fn rational_pair(r: &ExactScalar, s: &ExactScalar) -> Result<(Rational64, Rational64)> {
    let rr = r.as_rational().ok_or_else(|| Error::NotRational(r.to_string()))?;
    let ss = s.as_rational().ok_or_else(|| Error::NotRational(s.to_string()))?;
    Ok((rr, ss))
}

/// Smallest `N ≥ 1` with `N·r` and `N·s` integers: the lcm of the reduced
/// denominators.
pub fn refine_denominator(r: &ExactScalar, s: &ExactScalar) -> Result<u64> {
    let (rr, ss) = rational_pair(r, s)?;
    Ok(scalar::lcm_denominators(rr, ss))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutOfScopeReason {
    /// `1, r, s` independent but `covol(L0) ≤ 1`.
    CovolumeNotLarge,
    /// At least one of `r, s` irrational, yet `1, r, s` dependent over Q.
    ScalarsDependentButIrrational,
    /// The four points are not pairwise distinct.
    DegenerateConfiguration,
}

/// Which certified theorem, if any, covers a configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Classification {
    DenseLargeCovolume,
    RationalCoordinate { n: u64 },
    OutOfScope { reason: OutOfScopeReason },
}

impl Classification {
    /// Identifier of the formal theorem covering this case, or
    /// `"out-of-scope"`.
    pub fn theorem_name(&self) -> &'static str {
        match self {
            Classification::DenseLargeCovolume => "hrt_dense_large_covolume",
            Classification::RationalCoordinate { .. } => "hrt_finite_relative_orbit",
            Classification::OutOfScope { .. } => "out-of-scope",
        }
    }

    pub fn is_classified(&self) -> bool {
        !matches!(self, Classification::OutOfScope { .. })
    }

    /// One-sentence justification for reports.
    pub fn justification(&self) -> &'static str {
        match self {
            Classification::DenseLargeCovolume => {
                "covol(L0) > 1 and 1, r, s are Q-independent: f, pi(a)f, pi(b)f, pi(nu)f are linearly independent for every nonzero f"
            }
            Classification::RationalCoordinate { .. } => {
                "r, s rational: the configuration lies in the full-rank lattice (1/N)(Za + Zb), so linear independence follows from Linnell's lattice theorem"
            }
            Classification::OutOfScope { reason: OutOfScopeReason::CovolumeNotLarge } => {
                "1, r, s are Q-independent but covol(L0) <= 1; no certified theorem applies and no independence claim is made"
            }
            Classification::OutOfScope { reason: OutOfScopeReason::ScalarsDependentButIrrational } => {
                "1, r, s are Q-dependent with an irrational entry; no certified theorem applies and no independence claim is made"
            }
            Classification::OutOfScope { reason: OutOfScopeReason::DegenerateConfiguration } => {
                "the points 0, a, b, nu are not pairwise distinct"
            }
        }
    }
}

/// Classifies raw parts, reporting coincident points as
/// [`OutOfScopeReason::DegenerateConfiguration`] instead of failing.
pub fn classify_parts(basis: &LatticeBasis, r: &ExactScalar, s: &ExactScalar) -> Classification {
    if !points_distinct(r, s) {
        return Classification::OutOfScope {
            reason: OutOfScopeReason::DegenerateConfiguration,
        };
    }
    if let Ok(n) = refine_denominator(r, s) {
        return Classification::RationalCoordinate { n };
    }
    if rationally_independent_1_r_s(r, s) {
        if basis.covolume() > 1.0 {
            Classification::DenseLargeCovolume
        } else {
            Classification::OutOfScope {
                reason: OutOfScopeReason::CovolumeNotLarge,
            }
        }
    } else {
        Classification::OutOfScope {
            reason: OutOfScopeReason::ScalarsDependentButIrrational,
        }
    }
}

/// Rational coordinates take precedence over the covolume test.
pub fn classify(config: &Configuration) -> Classification {
    classify_parts(&config.basis, &config.r, &config.s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase_space::PhasePoint;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> ExactScalar {
        ExactScalar::rational(n, d).unwrap()
    }

    fn sc(s: &str) -> ExactScalar {
        s.parse().unwrap()
    }

    #[test]
    fn refine_examples() {
        assert_eq!(refine_denominator(&q(1, 2), &q(3, 4)).unwrap(), 4);
        assert_eq!(refine_denominator(&q(2, 1), &q(3, 1)).unwrap(), 1);
        assert_eq!(refine_denominator(&q(1, 6), &q(1, 10)).unwrap(), 30);
        assert!(matches!(
            refine_denominator(&sc("sqrt(2)"), &q(1, 2)),
            Err(Error::NotRational(_))
        ));
    }

    #[test]
    fn classify_examples() {
        let big = LatticeBasis::square(2.0).unwrap();
        let c = Configuration::new(big, sc("sqrt(2)"), sc("sqrt(3)")).unwrap();
        assert_eq!(classify(&c), Classification::DenseLargeCovolume);
        let c = Configuration::new(big, q(1, 2), q(3, 4)).unwrap();
        assert_eq!(classify(&c), Classification::RationalCoordinate { n: 4 });
        let c = Configuration::new(big, sc("sqrt(2)"), sc("1+sqrt(2)")).unwrap();
        assert_eq!(
            classify(&c),
            Classification::OutOfScope { reason: OutOfScopeReason::ScalarsDependentButIrrational }
        );
        let unit = LatticeBasis::square(1.0).unwrap();
        let c = Configuration::new(unit, sc("sqrt(2)"), sc("sqrt(3)")).unwrap();
        assert_eq!(
            classify(&c),
            Classification::OutOfScope { reason: OutOfScopeReason::CovolumeNotLarge }
        );
        // Rational coordinates win regardless of covolume.
        let c = Configuration::new(unit, q(1, 2), q(3, 4)).unwrap();
        assert_eq!(classify(&c), Classification::RationalCoordinate { n: 4 });
    }

    #[test]
    fn degenerate_configurations() {
        let unit = LatticeBasis::square(1.0).unwrap();
        for (r, s) in [(0, 0), (1, 0), (0, 1)] {
            let (r, s) = (ExactScalar::integer(r), ExactScalar::integer(s));
            assert!(matches!(Configuration::new(unit, r, s), Err(Error::CoincidentPoints { .. })));
            assert_eq!(
                classify_parts(&unit, &r, &s),
                Classification::OutOfScope { reason: OutOfScopeReason::DegenerateConfiguration }
            );
        }
        // nu = a + b is a valid, distinct fourth point.
        assert!(Configuration::new(unit, ExactScalar::integer(1), ExactScalar::integer(1)).is_ok());
    }

    #[test]
    fn theorem_names() {
        assert_eq!(Classification::DenseLargeCovolume.theorem_name(), "hrt_dense_large_covolume");
        assert_eq!(
            Classification::RationalCoordinate { n: 4 }.theorem_name(),
            "hrt_finite_relative_orbit"
        );
    }

    #[test]
    fn configuration_json_round_trip() {
        let basis = LatticeBasis::new(PhasePoint::new(2.0, 0.5).unwrap(), PhasePoint::new(0.0, 2.0).unwrap()).unwrap();
        let c = Configuration::new(basis, sc("1/2-sqrt(7)"), q(3, 4)).unwrap();
        let text = serde_json::to_string(&c).unwrap();
        let back: Configuration = serde_json::from_str(&text).unwrap();
        assert_eq!(back, c);
        let bad = text.replace("\"1/2-sqrt(7)\"", "\"0\"").replace("\"3/4\"", "\"1\"");
        assert!(serde_json::from_str::<Configuration>(&bad).is_err());
    }

    proptest! {
        #[test]
        fn refinement_is_minimal(rn in -40i64..40, rd in 1i64..40, sn in -40i64..40, sd in 1i64..40) {
            let (r, s) = (q(rn, rd), q(sn, sd));
            let n = refine_denominator(&r, &s).unwrap() as i64;
            let is_int = |v: ExactScalar, k: i64| (v.as_rational().unwrap() * Rational64::from_integer(k)).is_integer();
            prop_assert!(is_int(r, n) && is_int(s, n));
            for k in 1..n {
                prop_assert!(!(is_int(r, k) && is_int(s, k)));
            }
        }

        #[test]
        fn refinement_contains_configuration(rn in -40i64..40, rd in 1i64..40, sn in -40i64..40, sd in 1i64..40) {
            let (r, s) = (q(rn, rd), q(sn, sd));
            prop_assume!(points_distinct(&r, &s));
            let c = Configuration::new(LatticeBasis::square(1.7).unwrap(), r, s).unwrap();
            let n = refine_denominator(&r, &s).unwrap();
            for (u, v) in c.refined_coordinates(n).unwrap() {
                prop_assert!(u.is_integer() && v.is_integer());
            }
            // lattice points m1 a + m2 b have refined coordinates (N m1, N m2)
            let (_, a) = c.refined_coordinates(n).unwrap()[1];
            prop_assert!(a.is_zero());
        }

        #[test]
        fn classify_is_total(rn in -5i64..5, sn in -5i64..5, dr in 0i64..8, ds in 0i64..8, alpha in 0.5f64..3.0) {
            let r = ExactScalar::quadratic(Rational64::from_integer(rn), Rational64::from_integer(1), dr).unwrap();
            let s = ExactScalar::quadratic(Rational64::from_integer(sn), Rational64::from_integer(1), ds).unwrap();
            let basis = LatticeBasis::square(alpha).unwrap();
            let c = classify_parts(&basis, &r, &s);
            if r.is_rational() && s.is_rational() && points_distinct(&r, &s) {
                prop_assert!(matches!(c, Classification::RationalCoordinate { .. }), "rational precedence");
            }
        }
    }
}
