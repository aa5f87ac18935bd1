//! Discrete inner products of shifted Gaussians against the closed form
//! `⟨π(z)g, π(w)g⟩ = e^{πi(ω−η)(x+y)} e^{−π|z−w|²/2}`.
//!
//! ```bash
//! cargo run --release --example gaussian_ambiguity
//! ```

use hrtlab::phase_space::PhasePoint;
use hrtlab::signal::{gaussian_ambiguity, inner, make_gaussian, tf_shift, GridSpec};

fn main() -> hrtlab::Result<()> {
    let g = make_gaussian(GridSpec::standard());
    let pairs = [
        ((0.0, 0.0), (1.0, 0.0)),
        ((0.5, -1.0), (-0.5, 1.0)),
        ((2.0, 1.0), (1.5, 2.5)),
        ((-3.0, 0.0), (0.0, 3.0)),
    ];
    println!("{:>12} {:>12} {:>26} {:>10}", "z", "w", "discrete", "error");
    for ((x, om), (y, eta)) in pairs {
        let z = PhasePoint::new(x, om)?;
        let w = PhasePoint::new(y, eta)?;
        let got = inner(&tf_shift(&g, z), &tf_shift(&g, w))?;
        let want = gaussian_ambiguity(z, w);
        println!(
            "{:>12} {:>12} {:>12.9}{:+.9}i {:>10.2e}",
            format!("({x},{om})"),
            format!("({y},{eta})"),
            got.re,
            got.im,
            (got - want).norm()
        );
    }
    Ok(())
}
