//! Discretized model of L²(R): complex samples on a periodic grid, with
//! translation, modulation and time-frequency shifts.
//!
//! Translation is a band-limited periodic shift: the samples are
//! transformed with an FFT, bin `j` (frequency `ξ_j = j/T`, with `j ≥ N/2`
//! read as `j − N`) is multiplied by `e^{−2πi ξ_j x}`, and the result is
//! transformed back. That makes every translation exactly unitary on the
//! grid and exact for whole-sample shifts. Modulation multiplies sample `k`
//! by `e^{2πi ω t_k}` with `t_k = −T/2 + k·T/N`.
//!
//! # Inner product convention
//!
//! [`inner`] is linear in its **first** argument and conjugate-linear in
//! the second: `⟨f, g⟩ = Σ_k f_k · conj(g_k) · Δt`. Gram matrices use this
//! convention, `G[i][j] = ⟨π(λ_i)f, π(λ_j)f⟩`.
//!
//! # Phase laws
//!
//! With `π(x, ω) = M_ω T_x`, direct substitution gives for `z = (x, ω)`,
//! `w = (y, η)`:
//!
//! ```text
//! π(z) π(w)    = e^{−2πi x η}  π(z + w)                 (composition)
//! π(z) π(w)    = e^{−2πi σ(z,w)} π(w) π(z)              (commutation)
//! ⟨π(z)g, π(w)g⟩ = e^{πi (ω − η)(x + y)} e^{−π|z − w|²/2}   (Gaussian)
//! ```
//!
//! where `σ(z, w) = xη − yω` and `g(t) = 2^{1/4} e^{−πt²}`. The
//! commutation factor follows from the composition law applied in both
//! orders. All three are checked against the discrete operators in tests.
//!
//! # Wraparound
//!
//! Every signal carries a [`ShiftQuality`]. A signal is `Wrapped` when more
//! than [`WRAP_ENERGY_FRACTION`] of its energy lies within [`GUARD_BAND`]
//! of the window edge `±T/2`, where the periodic model no longer stands in
//! for the real line. The flag is sticky through shift operations.

mod io;
mod ops;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use io::{read_binary, write_binary, write_csv, SIGNAL_MAGIC};
pub(crate) use ops::inner_unchecked;
pub use ops::{
    cocycle, composition_phase, gaussian_ambiguity, inner, make_gaussian, modulate, norm, tf_shift,
    tf_shift_batch, translate,
};

/// Standard deviation of `|g|²` for the unit Gaussian `g(t) = 2^{1/4} e^{−πt²}`.
pub const GAUSSIAN_WIDTH: f64 = 0.282_094_791_773_878_14; // 1 / (2 sqrt(pi))

/// Width of the boundary band checked for wraparound.
pub const GUARD_BAND: f64 = 4.0 * GAUSSIAN_WIDTH;

/// Energy fraction inside the guard band above which a signal is `Wrapped`.
pub const WRAP_ENERGY_FRACTION: f64 = 1e-16;

/// Sample grid `t_k = −T/2 + k·T/N`, `k = 0..N`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    n_samples: usize,
    period: f64,
}

impl GridSpec {
    pub const MIN_SAMPLES: usize = 8;

    pub fn new(n_samples: usize, period: f64) -> Result<Self> {
        if n_samples < Self::MIN_SAMPLES {
            return Err(Error::InvalidGrid(format!(
                "n_samples = {n_samples}, need at least {}",
                Self::MIN_SAMPLES
            )));
        }
        if !(period.is_finite() && period > 0.0) {
            return Err(Error::InvalidGrid(format!("period = {period}, need a positive finite value")));
        }
        Ok(Self { n_samples, period })
    }

    /// The default grid `N = 2048, T = 32`.
    pub fn standard() -> Self {
        Self {
            n_samples: 2048,
            period: 32.0,
        }
    }

    /// Parses `"N,T"`, the format of the `HRTLAB_GRID` variable.
    pub fn parse_pair(text: &str) -> Result<Self> {
        let (n, t) = text
            .split_once(',')
            .ok_or_else(|| Error::InvalidGrid(format!("{text:?}: expected \"N,T\"")))?;
        let n = n
            .trim()
            .parse()
            .map_err(|_| Error::InvalidGrid(format!("{text:?}: bad sample count")))?;
        let t = t
            .trim()
            .parse()
            .map_err(|_| Error::InvalidGrid(format!("{text:?}: bad period")))?;
        Self::new(n, t)
    }

    pub fn n_samples(&self) -> usize {
        self.n_samples
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn step(&self) -> f64 {
        self.period / self.n_samples as f64
    }

    pub fn time(&self, k: usize) -> f64 {
        -0.5 * self.period + k as f64 * self.step()
    }

    /// Signed frequency of FFT bin `j`.
    pub fn frequency(&self, j: usize) -> f64 {
        let n = self.n_samples;
        let signed = if j < n.div_ceil(2) { j as f64 } else { j as f64 - n as f64 };
        signed / self.period
    }

    /// Nyquist frequency `N / (2T)`.
    pub fn nyquist(&self) -> f64 {
        self.n_samples as f64 / (2.0 * self.period)
    }

    fn describe(&self) -> String {
        format!("N={}, T={}", self.n_samples, self.period)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShiftQuality {
    Clean,
    Wrapped,
}

impl ShiftQuality {
    pub fn worst(self, other: ShiftQuality) -> ShiftQuality {
        if self == ShiftQuality::Wrapped || other == ShiftQuality::Wrapped {
            ShiftQuality::Wrapped
        } else {
            ShiftQuality::Clean
        }
    }
}

/// Complex samples of a function on a [`GridSpec`].
#[derive(Debug, Clone, PartialEq)]
pub struct DiscretizedSignal {
    grid: GridSpec,
    samples: Vec<Complex64>,
    quality: ShiftQuality,
}

impl DiscretizedSignal {
    pub fn new(grid: GridSpec, samples: Vec<Complex64>) -> Result<Self> {
        if samples.len() != grid.n_samples {
            return Err(Error::InvalidGrid(format!(
                "{} samples for a grid of {}",
                samples.len(),
                grid.n_samples
            )));
        }
        if samples.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFiniteSignal);
        }
        Ok(Self::from_parts(grid, samples, ShiftQuality::Clean))
    }

    /// Samples `f(t_k)`.
    pub fn from_fn(grid: GridSpec, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        let samples = (0..grid.n_samples).map(|k| f(grid.time(k))).collect();
        Self::new(grid, samples)
    }

    pub fn zeros(grid: GridSpec) -> Self {
        Self::from_parts(grid, vec![Complex64::new(0.0, 0.0); grid.n_samples], ShiftQuality::Clean)
    }

    /// Builds a signal and measures its wraparound quality, keeping
    /// `inherited` if that is already `Wrapped`.
    pub(crate) fn from_parts(grid: GridSpec, samples: Vec<Complex64>, inherited: ShiftQuality) -> Self {
        let mut out = Self {
            grid,
            samples,
            quality: inherited,
        };
        out.quality = inherited.worst(out.measure_quality());
        out
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<Complex64> {
        self.samples
    }

    pub fn quality(&self) -> ShiftQuality {
        self.quality
    }

    pub fn is_clean(&self) -> bool {
        self.quality == ShiftQuality::Clean
    }

    /// Fraction of `Σ|f_k|²` carried by samples within [`GUARD_BAND`] of
    /// the window edge. Zero for the zero signal.
    pub fn boundary_energy_fraction(&self) -> f64 {
        let half = 0.5 * self.grid.period;
        let (mut edge, mut total) = (0.0, 0.0);
        for (k, z) in self.samples.iter().enumerate() {
            let t = self.grid.time(k);
            let e = z.norm_sqr();
            total += e;
            if (half - t.abs()) < GUARD_BAND {
                edge += e;
            }
        }
        if total > 0.0 {
            edge / total
        } else {
            0.0
        }
    }

    fn measure_quality(&self) -> ShiftQuality {
        if self.boundary_energy_fraction() > WRAP_ENERGY_FRACTION {
            ShiftQuality::Wrapped
        } else {
            ShiftQuality::Clean
        }
    }

    /// `c · f`.
    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            grid: self.grid,
            samples: self.samples.iter().map(|z| z * c).collect(),
            quality: self.quality,
        }
    }

    /// `f − g`, sample by sample.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_grids(self, other)?;
        let samples = self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self {
            grid: self.grid,
            samples,
            quality: self.quality.worst(other.quality),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.samples.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }
}

pub(crate) fn check_grids(f: &DiscretizedSignal, g: &DiscretizedSignal) -> Result<()> {
    if f.grid == g.grid {
        Ok(())
    } else {
        Err(Error::GridMismatch {
            left: f.grid.describe(),
            right: g.grid.describe(),
        })
    }
}

pub(crate) fn unit_phase(angle: f64) -> Complex64 {
    Complex64::from_polar(1.0, angle)
}

pub(crate) const TWO_PI: f64 = 2.0 * PI;
