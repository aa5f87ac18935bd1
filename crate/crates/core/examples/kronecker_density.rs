//! Approximating random targets by points `m1·a + m2·b + n·ν`, `n ≥ 0`.
//!
//! ```bash
//! cargo run --release --example kronecker_density
//! ```

use hrtlab::density::{density_stats, semigroup_witness};
use hrtlab::exact::Configuration;
use hrtlab::phase_space::{LatticeBasis, PhasePoint};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let basis = LatticeBasis::square(2.0)?;
    let irrational = Configuration::new(basis, "sqrt(2)".parse()?, "sqrt(3)".parse()?)?;
    let rational = Configuration::new(basis, "1/2".parse()?, "3/4".parse()?)?;

    let target = PhasePoint::new(1.3, 2.7)?;
    if let Some(w) = semigroup_witness(&irrational, target, 0.05, 100_000) {
        println!("witness for {target:?}: n={} m1={} m2={} error={:.4}", w.n, w.m1, w.m2, w.error);
    }

    for (name, config) in [("sqrt(2), sqrt(3)", &irrational), ("1/2, 3/4", &rational)] {
        for eps in [0.05, 1e-3] {
            let stats = density_stats(config, eps, 100_000, 200, 42);
            println!("{name:<16} eps={eps:<6} rate={:.3}", stats.rate);
        }
    }
    Ok(())
}
