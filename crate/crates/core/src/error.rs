use thiserror::Error;

/// Errors raised by the surface arithmetic and everything built on it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A modulus left the representable range of `f64` (overflowed to
    /// infinity or underflowed to zero).
    #[error("range error in {op}: modulus {modulus:e} is not representable")]
    Range { op: &'static str, modulus: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid surface point: modulus {modulus}, argument {argument}")]
    InvalidPoint { modulus: f64, argument: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// Phase unwrapping could not decide the sheet of a sample.
    #[error("cannot lift sample {index}: {reason}")]
    Lifting { index: usize, reason: String },

    /// The Courant number `c dt / dx` reached or exceeded one.
    #[error("CFL violation at grid point {index}: |c dt/dx| = {courant}")]
    Cfl { index: usize, courant: f64 },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("duplicate interpolation node {0}")]
    DuplicateNode(f64),

    #[error("reference has zero norm")]
    ZeroNorm,
}

pub type Result<T> = std::result::Result<T, Error>;
