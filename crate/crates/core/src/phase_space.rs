//! Phase space R² with the standard symplectic form, lattice bases and
//! truncated lattice enumeration.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Configuration;

/// A point `(x, omega)` of phase space: time shift in seconds, frequency
/// shift in Hz.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhasePoint {
    pub x: f64,
    pub omega: f64,
}

impl PhasePoint {
    pub const ORIGIN: PhasePoint = PhasePoint { x: 0.0, omega: 0.0 };

    /// Builds a point, rejecting NaN and infinite coordinates.
    pub fn new(x: f64, omega: f64) -> Result<Self> {
        if x.is_finite() && omega.is_finite() {
            Ok(Self { x, omega })
        } else {
            Err(Error::NonFinitePoint { x, omega })
        }
    }

    /// Euclidean norm on R².
    pub fn norm(self) -> f64 {
        self.x.hypot(self.omega)
    }

    pub fn distance(self, other: PhasePoint) -> f64 {
        (self - other).norm()
    }
}

impl Add for PhasePoint {
    type Output = PhasePoint;
    fn add(self, rhs: PhasePoint) -> PhasePoint {
        PhasePoint {
            x: self.x + rhs.x,
            omega: self.omega + rhs.omega,
        }
    }
}

impl Sub for PhasePoint {
    type Output = PhasePoint;
    fn sub(self, rhs: PhasePoint) -> PhasePoint {
        PhasePoint {
            x: self.x - rhs.x,
            omega: self.omega - rhs.omega,
        }
    }
}

impl Neg for PhasePoint {
    type Output = PhasePoint;
    fn neg(self) -> PhasePoint {
        PhasePoint {
            x: -self.x,
            omega: -self.omega,
        }
    }
}

impl Mul<PhasePoint> for f64 {
    type Output = PhasePoint;
    fn mul(self, rhs: PhasePoint) -> PhasePoint {
        PhasePoint {
            x: self * rhs.x,
            omega: self * rhs.omega,
        }
    }
}

/// The standard symplectic form `σ((x, ω), (y, η)) = xη − yω`.
pub fn symplectic_form(z: PhasePoint, w: PhasePoint) -> f64 {
    z.x * w.omega - w.x * z.omega
}

/// Basis `(a, b)` of the lattice `Z a + Z b`. Construction rejects
/// `σ(a, b) = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LatticeBasis {
    a: PhasePoint,
    b: PhasePoint,
}

impl LatticeBasis {
    pub fn new(a: PhasePoint, b: PhasePoint) -> Result<Self> {
        PhasePoint::new(a.x, a.omega)?;
        PhasePoint::new(b.x, b.omega)?;
        if symplectic_form(a, b) == 0.0 {
            return Err(Error::DegenerateBasis);
        }
        Ok(Self { a, b })
    }

    /// The canonical basis `(1, 0), (0, 1)` scaled by `alpha`: the square
    /// lattice `αZ × αZ`.
    pub fn square(alpha: f64) -> Result<Self> {
        Self::new(PhasePoint::new(alpha, 0.0)?, PhasePoint::new(0.0, alpha)?)
    }

    pub fn a(&self) -> PhasePoint {
        self.a
    }

    pub fn b(&self) -> PhasePoint {
        self.b
    }

    /// Oriented area `σ(a, b)`.
    pub fn symplectic_area(&self) -> f64 {
        symplectic_form(self.a, self.b)
    }

    /// Covolume `|σ(a, b)|` of the lattice.
    pub fn covolume(&self) -> f64 {
        self.symplectic_area().abs()
    }

    /// `u·a + v·b` for real coefficients.
    pub fn combine(&self, u: f64, v: f64) -> PhasePoint {
        u * self.a + v * self.b
    }

    /// Coordinates `(u, v)` of `z` in the frame `(a, b)`, via the inverse
    /// basis matrix.
    pub fn coordinates(&self, z: PhasePoint) -> (f64, f64) {
        // z = u a + v b  =>  σ(z, b) = u σ(a, b),  σ(a, z) = v σ(a, b)
        let det = self.symplectic_area();
        (symplectic_form(z, self.b) / det, symplectic_form(self.a, z) / det)
    }

    /// Basis scaled by `factor` (both vectors).
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(factor * self.a, factor * self.b)
    }
}

impl<'de> Deserialize<'de> for LatticeBasis {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            a: PhasePoint,
            b: PhasePoint,
        }
        let raw = Raw::deserialize(de)?;
        LatticeBasis::new(raw.a, raw.b).map_err(serde::de::Error::custom)
    }
}

/// Integer coefficients `(m1, m2)` of the lattice point `m1·a + m2·b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticePoint {
    pub m1: i64,
    pub m2: i64,
}

impl LatticePoint {
    pub fn new(m1: i64, m2: i64) -> Self {
        Self { m1, m2 }
    }
}

pub fn lattice_point_coords(basis: &LatticeBasis, p: LatticePoint) -> PhasePoint {
    basis.combine(p.m1 as f64, p.m2 as f64)
}

/// All lattice points with `|m1| ≤ radius` and `|m2| ≤ radius`, row-major
/// in `m1` then `m2`.
pub fn enumerate_lattice(basis: &LatticeBasis, coeff_radius: u32) -> Vec<(LatticePoint, PhasePoint)> {
    let r = i64::from(coeff_radius);
    let mut out = Vec::with_capacity((2 * r as usize + 1).pow(2));
    for m1 in -r..=r {
        for m2 in -r..=r {
            let p = LatticePoint::new(m1, m2);
            out.push((p, lattice_point_coords(basis, p)));
        }
    }
    out
}

/// Floating-point evaluation of `ν = r·a + s·b`.
pub fn nu_point(config: &Configuration) -> PhasePoint {
    config.basis().combine(config.r().eval(), config.s().eval())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ExactScalar;
    use proptest::prelude::*;

    fn pt(x: f64, w: f64) -> PhasePoint {
        PhasePoint::new(x, w).unwrap()
    }

    #[test]
    fn symplectic_examples() {
        assert_eq!(symplectic_form(pt(1.0, 0.0), pt(0.0, 1.0)), 1.0);
        let z = pt(0.7, -1.3);
        assert_eq!(symplectic_form(z, z), 0.0);
        assert_eq!(symplectic_form(pt(2.0, 1.0), pt(1.0, 3.0)), 5.0);
    }

    #[test]
    fn non_finite_point_rejected() {
        assert!(PhasePoint::new(f64::NAN, 0.0).is_err());
        assert!(PhasePoint::new(0.0, f64::INFINITY).is_err());
    }

    #[test]
    fn covolume_examples() {
        assert_eq!(LatticeBasis::square(1.0).unwrap().covolume(), 1.0);
        let b = LatticeBasis::new(pt(2.0, 0.0), pt(0.0, 1.0)).unwrap();
        assert_eq!(b.covolume(), 2.0);
        assert!(matches!(
            LatticeBasis::new(pt(1.0, 1.0), pt(2.0, 2.0)),
            Err(Error::DegenerateBasis)
        ));
    }

    #[test]
    fn lattice_coords_examples() {
        let canon = LatticeBasis::square(1.0).unwrap();
        assert_eq!(lattice_point_coords(&canon, LatticePoint::new(0, 0)), pt(0.0, 0.0));
        assert_eq!(lattice_point_coords(&canon, LatticePoint::new(3, -2)), pt(3.0, -2.0));
        let b = LatticeBasis::new(pt(2.0, 0.0), pt(1.0, 1.0)).unwrap();
        assert_eq!(lattice_point_coords(&b, LatticePoint::new(1, 1)), pt(3.0, 1.0));
    }

    #[test]
    fn enumeration_counts_and_order() {
        let canon = LatticeBasis::square(1.0).unwrap();
        let e0 = enumerate_lattice(&canon, 0);
        assert_eq!(e0.len(), 1);
        assert_eq!(e0[0].1, PhasePoint::ORIGIN);
        assert_eq!(enumerate_lattice(&canon, 1).len(), 9);
        let e5 = enumerate_lattice(&canon, 5);
        assert_eq!(e5.len(), 121);
        assert_eq!(e5[0].0, LatticePoint::new(-5, -5));
        assert_eq!(e5[1].0, LatticePoint::new(-5, -4));
        assert_eq!(e5[120].0, LatticePoint::new(5, 5));
        assert!(e5.iter().any(|(_, z)| *z == PhasePoint::ORIGIN));
    }

    #[test]
    fn nu_point_examples() {
        let canon = LatticeBasis::square(1.0).unwrap();
        let q = |n, d| ExactScalar::rational(n, d).unwrap();
        let c = Configuration::new(canon, q(1, 2), q(3, 4)).unwrap();
        assert_eq!(nu_point(&c), pt(0.5, 0.75));
        let c = Configuration::new(canon, ExactScalar::sqrt(2).unwrap(), ExactScalar::sqrt(3).unwrap()).unwrap();
        let nu = nu_point(&c);
        assert!((nu.x - std::f64::consts::SQRT_2).abs() < 1e-15);
        assert!((nu.omega - 1.732_050_807_568_877_2).abs() < 1e-15);
    }

    #[test]
    fn coordinates_invert_combine() {
        let b = LatticeBasis::new(pt(2.0, 0.5), pt(-0.3, 1.7)).unwrap();
        let (u, v) = b.coordinates(b.combine(0.25, -1.5));
        assert!((u - 0.25).abs() < 1e-14 && (v + 1.5).abs() < 1e-14);
    }

    fn coord() -> impl Strategy<Value = f64> {
        -10.0f64..10.0
    }

    proptest! {
        #[test]
        fn antisymmetric(a in coord(), b in coord(), c in coord(), d in coord()) {
            let (z, w) = (pt(a, b), pt(c, d));
            prop_assert_eq!(symplectic_form(z, w), -symplectic_form(w, z));
        }

        #[test]
        fn bilinear(a in coord(), b in coord(), c in coord(), d in coord(), e in coord(), f in coord()) {
            let (z, z2, w) = (pt(a, b), pt(c, d), pt(e, f));
            let lhs = symplectic_form(z + z2, w);
            let rhs = symplectic_form(z, w) + symplectic_form(z2, w);
            prop_assert!((lhs - rhs).abs() <= 1e-12 * 100.0);
        }

        #[test]
        fn covolume_positive(a in coord(), b in coord(), c in coord(), d in coord()) {
            if let Ok(basis) = LatticeBasis::new(pt(a, b), pt(c, d)) {
                prop_assert!(basis.covolume() > 0.0);
            }
        }

        #[test]
        fn enumeration_size(r in 0u32..8) {
            let e = enumerate_lattice(&LatticeBasis::square(1.3).unwrap(), r);
            prop_assert_eq!(e.len(), ((2 * r + 1) * (2 * r + 1)) as usize);
            prop_assert!(e.iter().any(|(p, _)| p.m1 == 0 && p.m2 == 0));
        }
    }
}
