use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("variable x{0} used more than once in a monomial")]
    RepeatedVariable(u8),
    #[error("swap matrix is not an involution")]
    NonInvolutiveSwap,
    #[error("basis change matrix is singular")]
    SingularBasisChange,
    #[error("basis change matrix does not commute with the S2 action")]
    NonEquivariantBasisChange,
    #[error("unknown operad `{0}`")]
    UnknownOperad(String),
    #[error("index window too small: need K >= {required}, have K = {have}")]
    WindowTooSmall { required: i64, have: i64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("operad spec file: {0}")]
    SpecFile(String),
    /// A cross-check between two independent computations failed. This
    /// always indicates a bug, never bad input.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }
}
