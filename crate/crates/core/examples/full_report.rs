//! The consolidated report for the covolume-4 configuration, as the
//! `hrtlab report` subcommand would print it.
//!
//! ```bash
//! cargo run --release --example full_report
//! ```

use hrtlab::cli::{build_report, ExperimentConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = ExperimentConfig::from_toml_str(
        r#"
a = [2.0, 0.0]
b = [0.0, 2.0]
r = "sqrt(2)"
s = "sqrt(3)"
alphas = [0.8, 1.2]
radius = 4
"#,
        "inline",
    )?;
    let doc = build_report(&cfg.resolve(None)?)?;
    println!("{}", serde_json::to_string_pretty(&doc)?);
    eprintln!("exit code would be {}", doc.exit_code());
    Ok(())
}
