//! Deep-hole residuals of the Gaussian on `αZ × αZ` across covolume 1.
//!
//! ```bash
//! cargo run --release --example completeness_transition
//! ```

use hrtlab::density::{deep_hole_probe, residual_curve, EVIDENCE_CAVEAT};
use hrtlab::phase_space::LatticeBasis;
use hrtlab::signal::{make_gaussian, GridSpec};

fn main() -> hrtlab::Result<()> {
    let g = make_gaussian(GridSpec::standard());
    let radii = [1, 2, 3, 4, 5, 6];
    println!("{:>5} {:>6} {}", "alpha", "covol", radii.map(|r| format!("{:>11}", format!("R={r}"))).join(""));
    for alpha in [0.8, 0.9, 1.0, 1.1, 1.2] {
        let basis = LatticeBasis::square(alpha)?;
        let probe = deep_hole_probe(&g, alpha)?;
        let curve = residual_curve(&g, &basis, &probe, "deep hole", &radii)?;
        let cells: String = curve.entries.iter().map(|e| format!("{:>11.3e}", e.residual)).collect();
        println!("{alpha:>5} {:>6.2} {cells}", basis.covolume());
    }
    println!("{EVIDENCE_CAVEAT}");
    Ok(())
}
