//! Gram-matrix certificates for the four-point family and its three-point
//! subfamily.
//!
//! ```bash
//! cargo run --release --example independence_certificate
//! ```

use hrtlab::exact::Configuration;
use hrtlab::independence::{certify_independence, three_point_certificate, DEFAULT_THRESHOLD};
use hrtlab::phase_space::LatticeBasis;
use hrtlab::signal::{make_gaussian, GridSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = make_gaussian(GridSpec::standard());
    for (alpha, r, s) in [(2.0, "sqrt(2)", "sqrt(3)"), (1.0, "1/2", "3/4"), (0.5, "sqrt(2)", "sqrt(3)")] {
        let config = Configuration::new(LatticeBasis::square(alpha)?, r.parse()?, s.parse()?)?;
        let four = certify_independence(&g, &config, DEFAULT_THRESHOLD)?;
        let three = three_point_certificate(&g, config.basis(), DEFAULT_THRESHOLD)?;
        println!(
            "alpha={alpha} r={r} s={s}: min eig 4pt={:.6e} 3pt={:.6e} certified={}",
            four.min_singular, three.min_singular, four.certified_independent
        );
    }

    let config = Configuration::new(LatticeBasis::square(2.0)?, "sqrt(2)".parse()?, "sqrt(3)".parse()?)?;
    let report = certify_independence(&g, &config, DEFAULT_THRESHOLD)?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}
