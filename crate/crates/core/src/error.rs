use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("division is not exact: nonzero remainder")]
    NonExactDivision,

    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("seed degree {v} of type {kind} out of range (max {max})")]
    OutOfRange { v: u32, kind: String, max: i64 },

    #[error("duplicate seed ({v}, {kind}) in index set")]
    DuplicateSeed { v: u32, kind: String },

    #[error("prefactor exponents did not cancel: {0}")]
    InternalExponentMismatch(String),

    #[error("operation requires the {0} family")]
    FamilyMismatch(&'static str),

    #[error("argument outside the physical domain: {0}")]
    Domain(String),

    #[error("quadrature did not meet its error budget: {0}")]
    Quadrature(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Validation failures (bad user input) as opposed to internal exactness failures.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::InvalidParams(_)
                | Error::OutOfRange { .. }
                | Error::DuplicateSeed { .. }
                | Error::FamilyMismatch(_)
                | Error::Domain(_)
                | Error::Parse(_)
                | Error::NonSquare { .. }
        )
    }
}
