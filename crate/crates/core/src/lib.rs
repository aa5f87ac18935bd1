//! Exact and numerical laboratory for four-point time-frequency shift
//! configurations `Λ = {0, a, b, ν}` with `ν = r·a + s·b`.
//!
//! * [`phase_space`]: points, the symplectic form, lattice bases.
//! * [`exact`]: exact scalars, Q-independence of `{1, r, s}`, classifier.
//! * [`signal`]: discretized signals and time-frequency shifts.
//! * [`independence`]: Gram-matrix independence certificates.
//! * [`density`]: semigroup density witnesses and orbit residuals.
//! * [`cli`]: the `hrtlab` command line and consolidated reports.

pub mod cli;
pub mod density;
pub mod error;
pub mod exact;
pub mod independence;
pub mod phase_space;
pub mod signal;

pub use error::{Error, Result};
