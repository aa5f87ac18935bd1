//! Gram-matrix certificates of linear independence for finite families
//! `{π(λ_i) f}`.
//!
//! A family is certified independent on the grid when the smallest
//! eigenvalue of its Gram matrix exceeds a threshold. A small eigenvalue is
//! never read as evidence of dependence in L²(R).

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Configuration;
use crate::phase_space::{nu_point, LatticeBasis, PhasePoint};
use crate::signal::inner_unchecked;
use crate::signal::{tf_shift_batch, DiscretizedSignal, GridSpec};

pub type GramMatrix = DMatrix<Complex64>;

/// Default certification threshold on the default grid.
pub const DEFAULT_THRESHOLD: f64 = 1e-8;

/// Points closer than this are rejected as coincident.
pub const MIN_POINT_SEPARATION: f64 = 1e-6;

/// Evidence that `{π(λ_i) f}` is linearly independent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GramReport {
    pub labels: Vec<String>,
    pub points: Vec<PhasePoint>,
    /// Row-major, each entry `[re, im]`.
    pub gram: Vec<Vec<[f64; 2]>>,
    pub min_singular: f64,
    /// `λ_max / λ_min`; `None` when `λ_min` is zero (infinite condition).
    pub condition: Option<f64>,
    pub threshold: f64,
    pub grid: GridSpec,
    pub certified_independent: bool,
}

impl GramReport {
    pub fn gram_matrix(&self) -> GramMatrix {
        let n = self.gram.len();
        DMatrix::from_fn(n, n, |i, j| Complex64::new(self.gram[i][j][0], self.gram[i][j][1]))
    }
}

fn check_points(points: &[PhasePoint]) -> Result<()> {
    for (i, p) in points.iter().enumerate() {
        for (j, q) in points.iter().enumerate().skip(i + 1) {
            let distance = p.distance(*q);
            if distance < MIN_POINT_SEPARATION {
                return Err(Error::DuplicatePoints {
                    first: i,
                    second: j,
                    distance,
                });
            }
        }
    }
    Ok(())
}

/// Gram matrix of a family of signals on one grid; upper triangle computed,
/// lower triangle mirrored.
pub(crate) fn gram_of_family(family: &[DiscretizedSignal]) -> GramMatrix {
    let n = family.len();
    let step = family.first().map(|f| f.grid().step()).unwrap_or(1.0);
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let values: Vec<Complex64> = pairs
        .par_iter()
        .map(|&(i, j)| inner_unchecked(family[i].samples(), family[j].samples()) * step)
        .collect();
    let mut g = DMatrix::zeros(n, n);
    for (&(i, j), &v) in pairs.iter().zip(&values) {
        if i == j {
            g[(i, i)] = Complex64::new(v.re, 0.0);
        } else {
            g[(i, j)] = v;
            g[(j, i)] = v.conj();
        }
    }
    g
}

/// `G[i][j] = ⟨π(points[i]) f, π(points[j]) f⟩`.
pub fn gram_matrix(f: &DiscretizedSignal, points: &[PhasePoint]) -> Result<GramMatrix> {
    if f.is_zero() {
        return Err(Error::ZeroSignal);
    }
    check_points(points)?;
    let family = tf_shift_batch(f, points);
    Ok(gram_of_family(&family))
}

/// Smallest and largest eigenvalue of a Hermitian matrix, unclamped.
pub fn eigen_extremes(g: &GramMatrix) -> (f64, f64) {
    if g.is_empty() {
        return (0.0, 0.0);
    }
    let eig = g.clone().symmetric_eigen();
    let lo = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = eig.eigenvalues.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (lo, hi)
}

/// Smallest eigenvalue of the PSD matrix `g`, clamped at zero.
pub fn min_singular_value(g: &GramMatrix) -> f64 {
    eigen_extremes(g).0.max(0.0)
}

/// Builds a report for an arbitrary labelled family.
pub fn gram_report(
    f: &DiscretizedSignal,
    labels: &[&str],
    points: &[PhasePoint],
    threshold: f64,
) -> Result<GramReport> {
    let g = gram_matrix(f, points)?;
    let (lo, hi) = eigen_extremes(&g);
    let min_singular = lo.max(0.0);
    let condition = (min_singular > 0.0).then(|| hi / min_singular);
    let gram = (0..g.nrows())
        .map(|i| (0..g.ncols()).map(|j| [g[(i, j)].re, g[(i, j)].im]).collect())
        .collect();
    Ok(GramReport {
        labels: labels.iter().map(|s| s.to_string()).collect(),
        points: points.to_vec(),
        gram,
        min_singular,
        condition,
        threshold,
        grid: *f.grid(),
        certified_independent: min_singular > threshold,
    })
}

/// Certificate for `f, π(a)f, π(b)f, π(ν)f`, in that order.
pub fn certify_independence(f: &DiscretizedSignal, config: &Configuration, threshold: f64) -> Result<GramReport> {
    let basis = config.basis();
    let points = [PhasePoint::ORIGIN, basis.a(), basis.b(), nu_point(config)];
    gram_report(f, &["0", "a", "b", "nu"], &points, threshold)
}

/// Certificate for the three-point subfamily `f, π(a)f, π(b)f`.
pub fn three_point_certificate(f: &DiscretizedSignal, basis: &LatticeBasis, threshold: f64) -> Result<GramReport> {
    let points = [PhasePoint::ORIGIN, basis.a(), basis.b()];
    gram_report(f, &["0", "a", "b"], &points, threshold)
}
