//! Writing a shifted Gaussian to the binary and CSV formats and reading it
//! back.
//!
//! ```bash
//! cargo run --example signal_io
//! ```

use hrtlab::phase_space::PhasePoint;
use hrtlab::signal::{make_gaussian, read_binary, tf_shift, write_binary, write_csv, GridSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let grid = GridSpec::new(256, 16.0)?;
    let f = tf_shift(&make_gaussian(grid), PhasePoint::new(1.0, 2.0)?);
    let dir = std::env::temp_dir();

    let bin = dir.join("hrtlab_signal.bin");
    write_binary(&f, std::fs::File::create(&bin)?)?;
    let back = read_binary(std::fs::File::open(&bin)?)?;
    println!("{} bytes, round trip exact: {}", std::fs::metadata(&bin)?.len(), back == f);

    let csv = dir.join("hrtlab_signal.csv");
    write_csv(&f, std::fs::File::create(&csv)?)?;
    let text = std::fs::read_to_string(&csv)?;
    for line in text.lines().take(3) {
        println!("{line}");
    }
    Ok(())
}
