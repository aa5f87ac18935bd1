//! The projective phase laws of time-frequency shifts, checked on the grid.
//!
//! ```bash
//! cargo run --release --example operator_cocycle
//! ```

use hrtlab::phase_space::{symplectic_form, PhasePoint};
use hrtlab::signal::{cocycle, composition_phase, inner, make_gaussian, norm, tf_shift, GridSpec};

fn main() -> hrtlab::Result<()> {
    let grid = GridSpec::standard();
    let g = make_gaussian(grid);
    let z = PhasePoint::new(1.0, 0.0)?;
    let w = PhasePoint::new(0.0, 0.5)?;

    // π(z)π(w) = κ(z, w) π(w)π(z)
    let zw = tf_shift(&tf_shift(&g, w), z);
    let wz = tf_shift(&tf_shift(&g, z), w);
    let k = cocycle(z, w);
    let diff = zw.sub(&wz.scale(k))?;
    println!("sigma(z, w) = {}", symplectic_form(z, w));
    println!("kappa(z, w) = {k}");
    println!("|pi(z)pi(w)g - kappa pi(w)pi(z)g| = {:e}", norm(&diff));

    // π(z)π(w) = c(z, w) π(z + w)
    let c = composition_phase(z, w);
    let joint = tf_shift(&g, z + w).scale(c);
    println!("|pi(z)pi(w)g - c pi(z+w)g| = {:e}", norm(&zw.sub(&joint)?));

    // Unitarity
    let v = PhasePoint::new(-2.3, 1.7)?;
    println!("|pi(v)g| / |g| = {}", norm(&tf_shift(&g, v)) / norm(&g));
    println!("<g, g> = {}", inner(&g, &g)?);
    Ok(())
}
