//! Signal files.
//!
//! Binary layout, all fields little-endian:
//!
//! | offset | size  | field                                          |
//! |--------|-------|------------------------------------------------|
//! | 0      | 8     | magic `HRTSIG1\0`                              |
//! | 8      | 4     | `u32` sample count `N`                         |
//! | 12     | 4     | `u32` flags, bit 0 set when the signal is wrapped |
//! | 16     | 8     | `f64` period `T` in seconds                    |
//! | 24     | 16·N  | `N` pairs of `f64` (real, imaginary)           |
//!
//! The 16-byte header is followed by the period and then the samples.
//! CSV export writes a `t,re,im` header and one row per sample.

use std::io::{Read, Write};

use num_complex::Complex64;

use super::{DiscretizedSignal, GridSpec, ShiftQuality};
use crate::error::{Error, Result};

pub const SIGNAL_MAGIC: &[u8; 8] = b"HRTSIG1\0";

const FLAG_WRAPPED: u32 = 1;

pub fn write_binary<W: Write>(signal: &DiscretizedSignal, mut out: W) -> Result<()> {
    let grid = signal.grid();
    let n = u32::try_from(grid.n_samples())
        .map_err(|_| Error::SignalFormat("sample count exceeds u32".into()))?;
    let flags = if signal.quality() == ShiftQuality::Wrapped { FLAG_WRAPPED } else { 0 };
    out.write_all(SIGNAL_MAGIC)?;
    out.write_all(&n.to_le_bytes())?;
    out.write_all(&flags.to_le_bytes())?;
    out.write_all(&grid.period().to_le_bytes())?;
    let mut buf = Vec::with_capacity(16 * signal.samples().len());
    for z in signal.samples() {
        buf.extend_from_slice(&z.re.to_le_bytes());
        buf.extend_from_slice(&z.im.to_le_bytes());
    }
    out.write_all(&buf)?;
    Ok(())
}

pub fn read_binary<R: Read>(mut input: R) -> Result<DiscretizedSignal> {
    let mut header = [0u8; 24];
    input
        .read_exact(&mut header)
        .map_err(|e| Error::SignalFormat(format!("truncated header: {e}")))?;
    if &header[..8] != SIGNAL_MAGIC {
        return Err(Error::SignalFormat("bad magic".into()));
    }
    let n = u32::from_le_bytes(header[8..12].try_into().unwrap()) as usize;
    let flags = u32::from_le_bytes(header[12..16].try_into().unwrap());
    let period = f64::from_le_bytes(header[16..24].try_into().unwrap());
    let grid = GridSpec::new(n, period)?;
    let mut raw = vec![0u8; 16 * n];
    input
        .read_exact(&mut raw)
        .map_err(|e| Error::SignalFormat(format!("truncated samples: {e}")))?;
    let samples = raw
        .chunks_exact(16)
        .map(|c| {
            Complex64::new(
                f64::from_le_bytes(c[..8].try_into().unwrap()),
                f64::from_le_bytes(c[8..].try_into().unwrap()),
            )
        })
        .collect();
    let signal = DiscretizedSignal::new(grid, samples)?;
    let inherited = if flags & FLAG_WRAPPED != 0 {
        ShiftQuality::Wrapped
    } else {
        ShiftQuality::Clean
    };
    Ok(DiscretizedSignal::from_parts(grid, signal.into_samples(), inherited))
}

pub fn write_csv<W: Write>(signal: &DiscretizedSignal, mut out: W) -> Result<()> {
    writeln!(out, "t,re,im")?;
    let grid = signal.grid();
    for (k, z) in signal.samples().iter().enumerate() {
        writeln!(out, "{},{},{}", grid.time(k), z.re, z.im)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase_space::PhasePoint;
    use crate::signal::{make_gaussian, tf_shift, translate};

    #[test]
    fn binary_round_trip_is_bit_exact() {
        let g = make_gaussian(GridSpec::new(64, 8.0).unwrap());
        let s = tf_shift(&g, PhasePoint::new(0.37, -1.25).unwrap());
        let mut bytes = Vec::new();
        write_binary(&s, &mut bytes).unwrap();
        assert_eq!(bytes.len(), 24 + 16 * 64);
        assert_eq!(&bytes[..8], SIGNAL_MAGIC);
        let back = read_binary(bytes.as_slice()).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn wrapped_flag_survives() {
        let g = make_gaussian(GridSpec::new(64, 8.0).unwrap());
        let w = translate(&translate(&g, 4.0), -4.0);
        let mut bytes = Vec::new();
        write_binary(&w, &mut bytes).unwrap();
        assert_eq!(read_binary(bytes.as_slice()).unwrap().quality(), ShiftQuality::Wrapped);
    }

    #[test]
    fn malformed_files() {
        assert!(matches!(read_binary(&b"HRTSIG2\0"[..]), Err(Error::SignalFormat(_))));
        let g = make_gaussian(GridSpec::new(16, 4.0).unwrap());
        let mut bytes = Vec::new();
        write_binary(&g, &mut bytes).unwrap();
        bytes[..8].copy_from_slice(b"NOTASIG\0");
        assert!(read_binary(bytes.as_slice()).is_err());
        let mut bytes = Vec::new();
        write_binary(&g, &mut bytes).unwrap();
        bytes.truncate(100);
        assert!(read_binary(bytes.as_slice()).is_err());
    }

    #[test]
    fn csv_layout() {
        let g = make_gaussian(GridSpec::new(8, 4.0).unwrap());
        let mut out = Vec::new();
        write_csv(&g, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 9);
        assert_eq!(lines[0], "t,re,im");
        assert!(lines[1].starts_with("-2,"));
    }
}
