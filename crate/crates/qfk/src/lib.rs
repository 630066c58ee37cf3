//! Symmetric quincunx tight framelet filter banks.
//!
//! Filters are finitely supported sequences on Z or Z², stored densely over
//! their support box, with coefficients either in float64 complex ([`C64`])
//! or exact rational complex ([`CQ`]) arithmetic.

pub mod analysis;
pub mod cli;
pub mod construct;
pub mod factorize;
pub mod filters1d;
pub mod io;
pub mod lattice;
pub mod scalar;
pub mod smoothness;
pub mod transform;

pub use construct::{CanonicalPair, FilterBank};
pub use lattice::{Character, Dilation, Filter, Filter1D, Filter2D, SymmetrySpec};
pub use scalar::{Rat, Scalar, C64, CQ};

/// Default residual threshold for float-mode identity checks.
pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("odd-index coefficient {max:e} does not vanish in half-argument product")]
    NonIntegerSpectrum { max: f64 },
    #[error("polynomial is negative somewhere (minimum {min:e})")]
    NegativePoly { min: f64 },
    #[error("unit-circle roots could not be paired: {0}")]
    RootClusterFailure(String),
    #[error("real root {root} has odd multiplicity")]
    OddRealRoot { root: f64 },
    #[error("shift {0:?} lies in the dilation lattice")]
    BadShift(Vec<i64>),
    #[error("filters do not form a partition of unity (residual {residual:e})")]
    NotPartition { residual: f64 },
    #[error("filters are not canonically paired: {0}")]
    NotCanonical(String),
    #[error("filter is not a low-pass filter (symbol at the origin is {value})")]
    NotLowpass { value: String },
    #[error("center is incompatible with the symmetry group")]
    IncompatibleCenter,
    #[error("moment system is singular")]
    SingularSystem,
    #[error("bad grid dimensions: {0}")]
    BadDimensions(String),
    #[error("pyramid does not match bank: {0}")]
    MetadataMismatch(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
