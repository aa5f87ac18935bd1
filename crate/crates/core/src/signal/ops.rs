use std::cell::RefCell;
use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use super::{check_grids, unit_phase, DiscretizedSignal, GridSpec, ShiftQuality, TWO_PI};
use crate::error::Result;
use crate::phase_space::{symplectic_form, PhasePoint};

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

/// `g(t) = 2^{1/4} e^{−πt²}` sampled on `grid` and rescaled to unit
/// discrete norm.
pub fn make_gaussian(grid: GridSpec) -> DiscretizedSignal {
    let amp = 2f64.powf(0.25);
    let samples: Vec<Complex64> = (0..grid.n_samples())
        .map(|k| {
            let t = grid.time(k);
            Complex64::new(amp * (-PI * t * t).exp(), 0.0)
        })
        .collect();
    let raw = DiscretizedSignal::from_parts(grid, samples, ShiftQuality::Clean);
    let n = norm(&raw);
    raw.scale(Complex64::new(1.0 / n, 0.0))
}

/// `T_x f(t) = f(t − x)` as a band-limited periodic shift.
pub fn translate(f: &DiscretizedSignal, x: f64) -> DiscretizedSignal {
    if x == 0.0 {
        return f.clone();
    }
    let grid = *f.grid();
    let n = grid.n_samples();
    let mut buf = f.samples().to_vec();
    let (fwd, inv) = PLANNER.with(|p| {
        let mut p = p.borrow_mut();
        (p.plan_fft_forward(n), p.plan_fft_inverse(n))
    });
    fwd.process(&mut buf);
    let scale = 1.0 / n as f64;
    for (j, bin) in buf.iter_mut().enumerate() {
        *bin *= unit_phase(-TWO_PI * grid.frequency(j) * x) * scale;
    }
    inv.process(&mut buf);
    DiscretizedSignal::from_parts(grid, buf, f.quality())
}

/// `M_ω f(t) = e^{2πiωt} f(t)`.
pub fn modulate(f: &DiscretizedSignal, omega: f64) -> DiscretizedSignal {
    if omega == 0.0 {
        return f.clone();
    }
    let grid = *f.grid();
    let samples = f
        .samples()
        .iter()
        .enumerate()
        .map(|(k, z)| z * unit_phase(TWO_PI * omega * grid.time(k)))
        .collect();
    DiscretizedSignal::from_parts(grid, samples, f.quality())
}

/// `π(z) f = M_ω T_x f`: translate first, then modulate.
pub fn tf_shift(f: &DiscretizedSignal, z: PhasePoint) -> DiscretizedSignal {
    modulate(&translate(f, z.x), z.omega)
}

/// `π(z) f` for every `z`, in input order.
pub fn tf_shift_batch(f: &DiscretizedSignal, points: &[PhasePoint]) -> Vec<DiscretizedSignal> {
    points.par_iter().map(|&z| tf_shift(f, z)).collect()
}

/// Discrete pairing `⟨f, g⟩ = Σ f_k conj(g_k) Δt`, linear in `f`.
///
/// The sum is compensated (Neumaier) so the result does not depend on
/// accumulation order effects beyond a few ulps.
pub fn inner(f: &DiscretizedSignal, g: &DiscretizedSignal) -> Result<Complex64> {
    check_grids(f, g)?;
    Ok(inner_unchecked(f.samples(), g.samples()) * f.grid().step())
}

pub(crate) fn inner_unchecked(f: &[Complex64], g: &[Complex64]) -> Complex64 {
    let mut re = Neumaier::default();
    let mut im = Neumaier::default();
    for (a, b) in f.iter().zip(g) {
        let p = a * b.conj();
        re.add(p.re);
        im.add(p.im);
    }
    Complex64::new(re.total(), im.total())
}

/// `‖f‖ = sqrt(⟨f, f⟩)`.
pub fn norm(f: &DiscretizedSignal) -> f64 {
    let mut acc = Neumaier::default();
    for z in f.samples() {
        acc.add(z.norm_sqr());
    }
    (acc.total() * f.grid().step()).sqrt()
}

#[derive(Default)]
struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Commutation factor `κ(z, w) = e^{−2πi σ(z, w)}` with
/// `π(z)π(w) = κ(z, w) π(w)π(z)`.
pub fn cocycle(z: PhasePoint, w: PhasePoint) -> Complex64 {
    unit_phase(-TWO_PI * symplectic_form(z, w))
}

/// Composition factor `e^{−2πi x_z ω_w}` with `π(z)π(w) = c · π(z + w)`.
pub fn composition_phase(z: PhasePoint, w: PhasePoint) -> Complex64 {
    unit_phase(-TWO_PI * z.x * w.omega)
}

/// Closed form of `⟨π(z)g, π(w)g⟩` for the unit-norm continuum Gaussian
/// `g(t) = 2^{1/4} e^{−πt²}`:
/// `e^{πi(ω_z − ω_w)(x_z + x_w)} · e^{−π|z − w|²/2}`.
pub fn gaussian_ambiguity(z: PhasePoint, w: PhasePoint) -> Complex64 {
    let d = z - w;
    let modulus = (-0.5 * PI * (d.x * d.x + d.omega * d.omega)).exp();
    unit_phase(PI * (z.omega - w.omega) * (z.x + w.x)) * modulus
}
