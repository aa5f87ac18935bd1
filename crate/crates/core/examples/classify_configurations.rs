//! Classify a handful of configurations `{0, a, b, r·a + s·b}`.
//!
//! ```bash
//! cargo run --example classify_configurations
//! ```

use hrtlab::exact::{classify_parts, exact_relation, Configuration, ExactScalar};
use hrtlab::phase_space::{LatticeBasis, PhasePoint};

fn main() -> hrtlab::Result<()> {
    let square = |alpha| LatticeBasis::square(alpha);
    let sheared = LatticeBasis::new(PhasePoint::new(1.5, 0.0)?, PhasePoint::new(0.5, 1.0)?)?;
    let cases = [
        (square(2.0)?, "sqrt(2)", "sqrt(3)"),
        (square(1.0)?, "1/2", "3/4"),
        (square(1.0)?, "sqrt(2)", "sqrt(3)"),
        (square(2.0)?, "sqrt(2)", "1+sqrt(2)"),
        (sheared, "sqrt(5)", "-1/3*sqrt(7)"),
        (square(1.0)?, "1", "0"),
    ];
    for (basis, r, s) in cases {
        let r: ExactScalar = r.parse()?;
        let s: ExactScalar = s.parse()?;
        let class = classify_parts(&basis, &r, &s);
        println!("covol={:<5} r={r:<10} s={s:<14} -> {:?} [{}]", basis.covolume(), class, class.theorem_name());
        match exact_relation(&r, &s) {
            Some(rel) => println!("    relation ({}) + ({})r + ({})s = 0", rel.p, rel.q, rel.u),
            None => println!("    1, r, s independent over Q"),
        }
    }

    // Rational coordinates put all four points in a finer lattice.
    let config = Configuration::new(square(1.0)?, "1/2".parse()?, "3/4".parse()?)?;
    let coords = config.refined_coordinates(4)?;
    let shown: Vec<String> = coords.iter().map(|(u, v)| format!("({u}, {v})")).collect();
    println!("0, a, b, nu in the frame (a/4, b/4): {}", shown.join(" "));
    Ok(())
}
