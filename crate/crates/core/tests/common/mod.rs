#![allow(dead_code)]

use hrtlab::exact::{classify, Classification, Configuration, ExactScalar};
use hrtlab::phase_space::{nu_point, LatticeBasis, PhasePoint};
use hrtlab::signal::{make_gaussian, tf_shift, DiscretizedSignal, GridSpec};
use num_complex::Complex64;
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn pt(x: f64, omega: f64) -> PhasePoint {
    PhasePoint::new(x, omega).unwrap()
}

pub fn scalar(text: &str) -> ExactScalar {
    text.parse().unwrap()
}

pub fn config(alpha: f64, r: &str, s: &str) -> Configuration {
    Configuration::new(LatticeBasis::square(alpha).unwrap(), scalar(r), scalar(s)).unwrap()
}

/// The covolume-4 fixture: `a = (2, 0)`, `b = (0, 2)`, `r = √2`, `s = √3`.
pub fn covol4() -> Configuration {
    config(2.0, "sqrt(2)", "sqrt(3)")
}

/// Same lattice, `r = 1/2`, `s = 3/4`.
pub fn rational4() -> Configuration {
    config(2.0, "1/2", "3/4")
}

pub fn gaussian() -> DiscretizedSignal {
    make_gaussian(GridSpec::standard())
}

/// A smooth, well-localized test signal: a fixed combination of shifted
/// Gaussians with complex weights.
pub fn wave_packet(grid: GridSpec) -> DiscretizedSignal {
    let g = make_gaussian(grid);
    let parts = [
        (pt(-1.5, 0.7), Complex64::new(0.8, -0.3)),
        (pt(0.4, -2.0), Complex64::new(-0.2, 1.1)),
        (pt(2.2, 1.3), Complex64::new(0.5, 0.5)),
    ];
    let mut acc = vec![Complex64::new(0.0, 0.0); grid.n_samples()];
    for (z, c) in parts {
        for (a, v) in acc.iter_mut().zip(tf_shift(&g, z).samples()) {
            *a += c * v;
        }
    }
    DiscretizedSignal::new(grid, acc).unwrap()
}

/// Random configurations with `covol ∈ [1.5, 6]` and `r, s` quadratic
/// irrationals with distinct radicands.
pub fn random_configurations(n: usize, seed: u64) -> Vec<Configuration> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let radicands = [2i64, 3, 5, 6, 7, 10, 11];
    let mut out = Vec::new();
    while out.len() < n {
        let covol: f64 = rng.random_range(1.5..6.0);
        let theta: f64 = rng.random_range(0.0..std::f64::consts::PI);
        let len_a: f64 = rng.random_range(1.0..2.5);
        let shear: f64 = rng.random_range(-0.5..0.5);
        let a = pt(len_a * theta.cos(), len_a * theta.sin());
        let h = covol / len_a;
        let perp = pt(-theta.sin(), theta.cos());
        let b = pt(shear * a.x + h * perp.x, shear * a.omega + h * perp.omega);
        let Ok(basis) = LatticeBasis::new(a, b) else { continue };
        let i = rng.random_range(0..radicands.len());
        let j = (i + rng.random_range(1..radicands.len())) % radicands.len();
        let scalar = |rng: &mut ChaCha8Rng, d: i64| {
            let p = Rational64::new(rng.random_range(-3..=3), rng.random_range(1..=4));
            let q = Rational64::new(rng.random_range(1..=3) * if rng.random() { 1 } else { -1 }, rng.random_range(1..=3));
            ExactScalar::quadratic(p, q, d).unwrap()
        };
        let r = scalar(&mut rng, radicands[i]);
        let s = scalar(&mut rng, radicands[j]);
        let Ok(config) = Configuration::new(basis, r, s) else { continue };
        // keep ν well inside the sample window
        if nu_point(&config).norm() > 8.0 {
            continue;
        }
        assert_eq!(classify(&config), Classification::DenseLargeCovolume);
        out.push(config);
    }
    out
}
