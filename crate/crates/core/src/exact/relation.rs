//! Integer relations `p + q·r + u·s = 0` among `{1, r, s}`.

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::ExactScalar;

/// Integer triple `(p, q, u)` standing for `p + q·r + u·s`.
///
/// Relations are normalized so that the first nonzero coefficient is
/// positive; `(1, -2, 0)` and `(-1, 2, 0)` are the same relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntegerRelation {
    pub p: i128,
    pub q: i128,
    pub u: i128,
}

impl IntegerRelation {
    pub fn new(p: i128, q: i128, u: i128) -> Self {
        let first = [p, q, u].into_iter().find(|&c| c != 0).unwrap_or(0);
        if first < 0 {
            Self { p: -p, q: -q, u: -u }
        } else {
            Self { p, q, u }
        }
    }

    /// `max(|p|, |q|, |u|)`.
    pub fn height(&self) -> u128 {
        self.p
            .unsigned_abs()
            .max(self.q.unsigned_abs())
            .max(self.u.unsigned_abs())
    }

    /// Total order used to pick a canonical relation: height first, then
    /// lexicographic on the normalized `(p, q, u)`.
    fn key(&self) -> (u128, i128, i128, i128) {
        (self.height(), self.p, self.q, self.u)
    }

    pub fn residual(&self, r: f64, s: f64) -> f64 {
        self.p as f64 + self.q as f64 * r + self.u as f64 * s
    }
}

/// Decides exactly whether `1, r, s` are linearly independent over Q.
///
/// A rational entry is already dependent on `1`. Two irrationals of the
/// form `p + q√d` are independent together with `1` iff their squarefree
/// radicands differ: `1, √d, √d'` are Q-independent for `d ≠ d'`, while
/// equal radicands put all three numbers in the 2-dimensional space Q(√d).
pub fn rationally_independent_1_r_s(r: &ExactScalar, s: &ExactScalar) -> bool {
    match (r.radicand(), s.radicand()) {
        (Some(dr), Some(ds)) => dr != ds,
        _ => false,
    }
}

/// An explicit primitive relation among `1, r, s` if one exists.
///
/// Returns `None` exactly when [`rationally_independent_1_r_s`] is true.
/// `None` is also returned if the coefficients overflow i128, which cannot
/// happen for 64-bit rational inputs.
pub fn exact_relation(r: &ExactScalar, s: &ExactScalar) -> Option<IntegerRelation> {
    type Q = Ratio<i128>;
    let widen = |v: num_rational::Rational64| Q::new(*v.numer() as i128, *v.denom() as i128);
    let coeffs: [Q; 3] = match (*r, *s) {
        // p + q r = 0 with r = n/d: (-n, d, 0)
        (ExactScalar::Rational(v), _) => [-widen(v), Q::from_integer(1), Q::from_integer(0)],
        (_, ExactScalar::Rational(v)) => [-widen(v), Q::from_integer(0), Q::from_integer(1)],
        (
            ExactScalar::QuadIrr { p: p1, q: q1, d: d1 },
            ExactScalar::QuadIrr { p: p2, q: q2, d: d2 },
        ) => {
            if d1 != d2 {
                return None;
            }
            // q2 r - q1 s = q2 p1 - q1 p2
            let (p1, q1, p2, q2) = (widen(p1), widen(q1), widen(p2), widen(q2));
            [-(q2 * p1 - q1 * p2), q2, -q1]
        }
    };
    let l = coeffs
        .iter()
        .fold(1i128, |acc, c| acc.lcm(c.denom()));
    let ints: Vec<i128> = coeffs
        .iter()
        .map(|c| c.numer().checked_mul(l / c.denom()))
        .collect::<Option<_>>()?;
    let g = ints.iter().fold(0i128, |acc, &c| acc.gcd(&c));
    Some(IntegerRelation::new(ints[0] / g, ints[1] / g, ints[2] / g))
}

/// Exhaustive search for the canonical integer relation of height at most
/// `height` with `|p + q·r + u·s| < tol`.
///
/// Among all qualifying nonzero triples the one with the smallest height
/// wins; ties go to the lexicographically smallest normalized `(p, q, u)`.
/// For `r = 0.5, s = 0.75` this is `(1, -2, 0)`.
///
/// The search visits every pair `(q, u)` in shells of increasing
/// `max(|q|, |u|)` and solves for the admissible `p` directly, so the cost
/// is `O(height²)` and no relation within the bound can be missed. It stops
/// as soon as the shell index exceeds the best height found.
pub fn integer_relation_search(r: f64, s: f64, height: u64, tol: f64) -> Option<IntegerRelation> {
    assert!(height >= 1, "height must be at least 1");
    assert!(tol > 0.0, "tolerance must be positive");
    let h = height as i64;
    let mut best: Option<IntegerRelation> = None;
    let consider = |q: i64, u: i64, best: &mut Option<IntegerRelation>| {
        let partial = q as f64 * r + u as f64 * s;
        let lo = (-partial - tol).ceil().max(-(h as f64)) as i64;
        let hi = (-partial + tol).floor().min(h as f64) as i64;
        for p in lo..=hi {
            if p == 0 && q == 0 && u == 0 {
                continue;
            }
            if (p as f64 + partial).abs() >= tol {
                continue;
            }
            let cand = IntegerRelation::new(p.into(), q.into(), u.into());
            if best.is_none_or(|b| cand.key() < b.key()) {
                *best = Some(cand);
            }
        }
    };
    for shell in 0..=h {
        if best.is_some_and(|b| b.height() < shell as u128) {
            break;
        }
        if shell == 0 {
            consider(0, 0, &mut best);
            continue;
        }
        for q in -shell..=shell {
            if q.abs() == shell {
                for u in -shell..=shell {
                    consider(q, u, &mut best);
                }
            } else {
                consider(q, -shell, &mut best);
                consider(q, shell, &mut best);
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::SQRT_2;

    const SQRT_3: f64 = 1.732_050_807_568_877_2;

    /// Brute force over the full cube, used to freeze expected values.
    fn cube_search(r: f64, s: f64, h: i64, tol: f64) -> Option<IntegerRelation> {
        let mut all = Vec::new();
        for p in -h..=h {
            for q in -h..=h {
                for u in -h..=h {
                    if (p, q, u) != (0, 0, 0) && (p as f64 + q as f64 * r + u as f64 * s).abs() < tol {
                        all.push(IntegerRelation::new(p.into(), q.into(), u.into()));
                    }
                }
            }
        }
        all.into_iter().min_by_key(|c| c.key())
    }

    #[test]
    fn rational_pair_tie_rule() {
        let found = integer_relation_search(0.5, 0.75, 4, 1e-9);
        assert_eq!(found, Some(IntegerRelation::new(1, -2, 0)));
        assert_eq!(found, cube_search(0.5, 0.75, 4, 1e-9));
    }

    #[test]
    fn sqrt2_sqrt3_has_no_small_relation() {
        assert_eq!(integer_relation_search(SQRT_2, SQRT_3, 100, 1e-9), None);
        assert_eq!(cube_search(SQRT_2, SQRT_3, 12, 1e-9), None);
    }

    #[test]
    fn sqrt2_one_plus_sqrt2() {
        let found = integer_relation_search(SQRT_2, 1.0 + SQRT_2, 2, 1e-9);
        assert_eq!(found, Some(IntegerRelation::new(1, 1, -1)));
        assert_eq!(found, cube_search(SQRT_2, 1.0 + SQRT_2, 2, 1e-9));
    }

    #[test]
    fn shell_search_matches_cube_search() {
        let cases = [
            (0.5, 0.75, 1e-9),
            (1.0 / 3.0, 0.2, 1e-9),
            (SQRT_2, 2.0 * SQRT_2 - 1.0, 1e-9),
            (0.3, SQRT_2, 0.05),
            (SQRT_2, SQRT_3, 0.01),
            (-0.7, 1.0 / 6.0, 1e-9),
        ];
        for (r, s, tol) in cases {
            for h in 1..=6 {
                assert_eq!(
                    integer_relation_search(r, s, h as u64, tol),
                    cube_search(r, s, h, tol),
                    "r={r} s={s} h={h} tol={tol}"
                );
            }
        }
    }

    #[test]
    fn large_tolerance_multiple_p() {
        // tol > 1/2 admits several p for one (q, u); among the height-1
        // candidates (0, 0, 1) is lexicographically first.
        assert_eq!(integer_relation_search(0.1, 0.2, 3, 1.5), Some(IntegerRelation::new(0, 0, 1)));
        assert_eq!(cube_search(0.1, 0.2, 3, 1.5), Some(IntegerRelation::new(0, 0, 1)));
    }

    #[test]
    fn exact_decisions() {
        let q = |n, d| ExactScalar::rational(n, d).unwrap();
        let r2 = ExactScalar::sqrt(2).unwrap();
        let r3 = ExactScalar::sqrt(3).unwrap();
        let one_r2: ExactScalar = "1+sqrt(2)".parse().unwrap();
        assert!(!rationally_independent_1_r_s(&q(1, 2), &q(3, 4)));
        assert!(rationally_independent_1_r_s(&r2, &r3));
        assert!(!rationally_independent_1_r_s(&r2, &one_r2));
        assert!(!rationally_independent_1_r_s(&r2, &q(1, 3)));
        assert_eq!(exact_relation(&r2, &one_r2), Some(IntegerRelation::new(1, 1, -1)));
        assert_eq!(exact_relation(&q(1, 2), &q(3, 4)), Some(IntegerRelation::new(1, -2, 0)));
        assert_eq!(exact_relation(&r2, &r3), None);
    }

    #[test]
    fn exact_relation_vanishes() {
        let r: ExactScalar = "1/3-5/7*sqrt(5)".parse().unwrap();
        let s: ExactScalar = "-2+3/2*sqrt(5)".parse().unwrap();
        let rel = exact_relation(&r, &s).unwrap();
        assert!(rel.residual(r.eval(), s.eval()).abs() < 1e-12);
        assert_eq!(integer_relation_search(r.eval(), s.eval(), rel.height() as u64, 1e-9).map(|x| x.height() <= rel.height()), Some(true));
    }
}
