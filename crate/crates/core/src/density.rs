//! Dynamical steps of the dense large-covolume argument, made executable:
//! Kronecker density of the forward semigroup `L0 + Nν`, residuals of
//! probes against truncated lattice orbits, and the covolume-1 completeness
//! transition of Gaussian lattice systems.
//!
//! Every number produced here is evidence on a finite grid with a finite
//! orbit truncation. None of it proves completeness, incompleteness or
//! density.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Configuration;
use crate::independence::gram_of_family;
use crate::phase_space::{enumerate_lattice, nu_point, LatticeBasis, PhasePoint};
use crate::signal::{inner_unchecked, make_gaussian, norm, tf_shift, tf_shift_batch, DiscretizedSignal, GridSpec};

/// Tikhonov weight relative to `trace(G)` used for every orbit projection.
pub const REGULARIZATION: f64 = 1e-12;

/// Footer attached to residual reports.
pub const EVIDENCE_CAVEAT: &str =
    "truncated-orbit residuals on a finite grid are numerical evidence, not proofs";

/// A point `m1·a + m2·b + n·ν` of the forward semigroup close to `target`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityWitness {
    pub n: u64,
    pub m1: i64,
    pub m2: i64,
    pub target: PhasePoint,
    /// Euclidean distance from the semigroup point to `target`.
    pub error: f64,
}

impl DensityWitness {
    pub fn point(&self, config: &Configuration) -> PhasePoint {
        semigroup_point(config.basis(), nu_point(config), self.n, self.m1, self.m2)
    }

    pub fn recompute_error(&self, config: &Configuration) -> f64 {
        self.point(config).distance(self.target)
    }
}

fn semigroup_point(basis: &LatticeBasis, nu: PhasePoint, n: u64, m1: i64, m2: i64) -> PhasePoint {
    basis.combine(m1 as f64, m2 as f64) + (n as f64) * nu
}

/// First `n ∈ 0..=n_max` for which rounding `target − n·ν` to `L0` lands
/// within `eps` of `target`.
///
/// Rounding is to the nearest integer coefficients in the `(a, b)` frame,
/// ties to even. Only nonnegative multiples of `ν` are used.
pub fn semigroup_witness(config: &Configuration, target: PhasePoint, eps: f64, n_max: u64) -> Option<DensityWitness> {
    let basis = config.basis();
    let nu = nu_point(config);
    (0..=n_max).find_map(|n| {
        let rest = target - (n as f64) * nu;
        let (u, v) = basis.coordinates(rest);
        let (m1, m2) = (u.round_ties_even() as i64, v.round_ties_even() as i64);
        let error = semigroup_point(basis, nu, n, m1, m2).distance(target);
        (error < eps).then_some(DensityWitness { n, m1, m2, target, error })
    })
}

/// Summary of a batch of witness searches.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityStats {
    pub eps: f64,
    pub n_max: u64,
    pub num_targets: usize,
    pub seed: u64,
    pub successes: usize,
    pub rate: f64,
    /// Witnesses in target order; `None` where the search failed.
    pub witnesses: Vec<Option<DensityWitness>>,
}

/// `num_targets` points drawn uniformly from the fundamental domain
/// `{u·a + v·b : u, v ∈ [0, 1)}`.
pub fn sample_targets(basis: &LatticeBasis, num_targets: usize, seed: u64) -> Vec<PhasePoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..num_targets)
        .map(|_| {
            let u: f64 = rng.random();
            let v: f64 = rng.random();
            basis.combine(u, v)
        })
        .collect()
}

pub fn density_stats(config: &Configuration, eps: f64, n_max: u64, num_targets: usize, seed: u64) -> DensityStats {
    assert!(num_targets >= 1, "need at least one target");
    let targets = sample_targets(config.basis(), num_targets, seed);
    let witnesses: Vec<Option<DensityWitness>> = targets
        .par_iter()
        .map(|&t| semigroup_witness(config, t, eps, n_max))
        .collect();
    let successes = witnesses.iter().filter(|w| w.is_some()).count();
    DensityStats {
        eps,
        n_max,
        num_targets,
        seed,
        successes,
        rate: successes as f64 / num_targets as f64,
        witnesses,
    }
}

/// Fraction of random targets in one fundamental domain that admit a
/// witness. Deterministic for a given seed.
pub fn density_success_rate(config: &Configuration, eps: f64, n_max: u64, num_targets: usize, seed: u64) -> f64 {
    density_stats(config, eps, n_max, num_targets, seed).rate
}

/// Result of projecting a probe onto a truncated lattice orbit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrbitFit {
    /// `‖p − P p‖ / ‖p‖`.
    pub residual: f64,
    pub family_size: usize,
    /// Absolute Tikhonov weight `REGULARIZATION · trace(G)`.
    pub regularization: f64,
}

/// Projects `probe` onto `span{π(ℓ) f : ℓ = m1 a + m2 b, |m1|, |m2| ≤ R}`.
///
/// The coefficients solve `(Gᵀ + λI) c = b` with `b_i = ⟨probe, π(ℓ_i) f⟩`
/// and `λ = 1e−12 · trace(G)`; the residual is then measured directly as
/// `‖probe − Σ c_i π(ℓ_i) f‖`.
pub fn orbit_fit(
    f: &DiscretizedSignal,
    basis: &LatticeBasis,
    probe: &DiscretizedSignal,
    coeff_radius: u32,
) -> Result<OrbitFit> {
    let probe_norm = norm(probe);
    if probe_norm == 0.0 {
        return Err(Error::ZeroSignal);
    }
    if f.grid() != probe.grid() {
        return Err(Error::GridMismatch {
            left: format!("{:?}", f.grid()),
            right: format!("{:?}", probe.grid()),
        });
    }
    let lattice = enumerate_lattice(basis, coeff_radius);
    let points: Vec<PhasePoint> = lattice.iter().map(|(_, z)| *z).collect();
    let family = tf_shift_batch(f, &points);
    if let Some(((lp, _), _)) = lattice.iter().zip(&family).find(|(_, s)| !s.is_clean()) {
        return Err(Error::WrappedShift { m1: lp.m1, m2: lp.m2 });
    }
    let step = f.grid().step();
    let gram = gram_of_family(&family);
    let n = family.len();
    let trace: f64 = (0..n).map(|i| gram[(i, i)].re).sum();
    let lambda = REGULARIZATION * trace;
    // Normal equations: Σ_j ⟨φ_j, φ_i⟩ c_j = ⟨p, φ_i⟩, i.e. Gᵀ c = b.
    let system = DMatrix::from_fn(n, n, |i, j| {
        let v = gram[(j, i)];
        if i == j {
            v + lambda
        } else {
            v
        }
    });
    let rhs: Vec<Complex64> = family
        .par_iter()
        .map(|phi| inner_unchecked(probe.samples(), phi.samples()) * step)
        .collect();
    let rhs = DVector::from_vec(rhs);
    let coeffs = system
        .cholesky()
        .ok_or_else(|| Error::Solve("regularized Gram system is not positive definite".into()))?
        .solve(&rhs);

    let mut approx = vec![Complex64::new(0.0, 0.0); probe.samples().len()];
    for (c, phi) in coeffs.iter().zip(&family) {
        for (acc, s) in approx.iter_mut().zip(phi.samples()) {
            *acc += c * s;
        }
    }
    let diff = DiscretizedSignal::new(*probe.grid(), approx)
        .and_then(|a| probe.sub(&a))?;
    Ok(OrbitFit {
        residual: norm(&diff) / probe_norm,
        family_size: n,
        regularization: lambda,
    })
}

/// Relative distance of `probe` from the truncated lattice orbit of `f`.
pub fn orbit_residual(
    f: &DiscretizedSignal,
    basis: &LatticeBasis,
    probe: &DiscretizedSignal,
    coeff_radius: u32,
) -> Result<f64> {
    orbit_fit(f, basis, probe, coeff_radius).map(|fit| fit.residual)
}

/// Relative distance of `π(ν) f` from the truncated orbit `{π(ℓ) f}`.
pub fn cyclic_membership_residual(f: &DiscretizedSignal, config: &Configuration, coeff_radius: u32) -> Result<f64> {
    let probe = tf_shift(f, nu_point(config));
    orbit_residual(f, config.basis(), &probe, coeff_radius)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveEntry {
    pub coeff_radius: u32,
    pub residual: f64,
    pub family_size: usize,
}

/// Orbit residuals of one probe for a sequence of truncation radii.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualCurve {
    pub basis: LatticeBasis,
    pub probe_descr: String,
    pub regularization: f64,
    pub entries: Vec<CurveEntry>,
}

impl ResidualCurve {
    /// Whether residuals never increase with the radius by more than `slack`.
    pub fn is_monotone(&self, slack: f64) -> bool {
        let mut sorted = self.entries.clone();
        sorted.sort_by_key(|e| e.coeff_radius);
        sorted.windows(2).all(|w| w[1].residual <= w[0].residual + slack)
    }
}

pub fn residual_curve(
    f: &DiscretizedSignal,
    basis: &LatticeBasis,
    probe: &DiscretizedSignal,
    probe_descr: &str,
    radii: &[u32],
) -> Result<ResidualCurve> {
    let entries = radii
        .iter()
        .map(|&r| {
            orbit_fit(f, basis, probe, r).map(|fit| CurveEntry {
                coeff_radius: r,
                residual: fit.residual,
                family_size: fit.family_size,
            })
        })
        .collect::<Result<_>>()?;
    Ok(ResidualCurve {
        basis: *basis,
        probe_descr: probe_descr.to_string(),
        regularization: REGULARIZATION,
        entries,
    })
}

/// The probe used on `αZ × αZ`: the Gaussian moved to the deep hole
/// `(α/2, α/2)`.
pub fn deep_hole_probe(gaussian: &DiscretizedSignal, alpha: f64) -> Result<DiscretizedSignal> {
    Ok(tf_shift(gaussian, PhasePoint::new(alpha / 2.0, alpha / 2.0)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbeRow {
    pub alpha: f64,
    pub covol: f64,
    pub coeff_radius: u32,
    pub residual: f64,
}

/// Deep-hole residuals of the Gaussian lattice system on `αZ × αZ` for each
/// `α`, all with the same radius and grid.
pub fn completeness_probe(alpha_list: &[f64], coeff_radius: u32, grid: GridSpec) -> Result<Vec<ProbeRow>> {
    let g = make_gaussian(grid);
    alpha_list
        .iter()
        .map(|&alpha| {
            if !(alpha.is_finite() && alpha > 0.0) {
                return Err(Error::InvalidGrid(format!("lattice spacing alpha = {alpha} must be positive")));
            }
            let basis = LatticeBasis::square(alpha)?;
            let probe = deep_hole_probe(&g, alpha)?;
            let residual = orbit_residual(&g, &basis, &probe, coeff_radius)?;
            Ok(ProbeRow {
                alpha,
                covol: basis.covolume(),
                coeff_radius,
                residual,
            })
        })
        .collect()
}

/// CSV with columns `alpha,covol,R,residual`.
pub fn probe_rows_csv(rows: &[ProbeRow]) -> String {
    let mut out = String::from("alpha,covol,R,residual\n");
    for r in rows {
        out.push_str(&format!("{},{},{},{:e}\n", r.alpha, r.covol, r.coeff_radius, r.residual));
    }
    out
}
