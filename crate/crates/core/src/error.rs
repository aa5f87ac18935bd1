use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("non-finite coordinate in phase-space point ({x}, {omega})")]
    NonFinitePoint { x: f64, omega: f64 },

    #[error("degenerate basis: sigma(a, b) = 0, the basis vectors are linearly dependent")]
    DegenerateBasis,

    #[error("points 0, a, b, nu are not pairwise distinct (r, s) = ({r}, {s})")]
    CoincidentPoints { r: String, s: String },

    #[error("scalar {0} is not rational")]
    NotRational(String),

    #[error("invalid scalar: {0}")]
    InvalidScalar(String),

    #[error(transparent)]
    ScalarParse(#[from] crate::exact::ParseScalarError),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("signals live on different grids ({left} vs {right})")]
    GridMismatch { left: String, right: String },

    #[error("signal has non-finite samples")]
    NonFiniteSignal,

    #[error("signal is zero")]
    ZeroSignal,

    #[error("points {first} and {second} coincide (distance {distance:e})")]
    DuplicatePoints {
        first: usize,
        second: usize,
        distance: f64,
    },

    #[error("family member at lattice point ({m1}, {m2}) wraps around the sample window")]
    WrappedShift { m1: i64, m2: i64 },

    #[error("linear solve failed: {0}")]
    Solve(String),

    #[error("malformed signal file: {0}")]
    SignalFormat(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
