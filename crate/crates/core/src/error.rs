use thiserror::Error;

/// Errors raised by the exact and numeric routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("subset spans more than one collinearity class")]
    MixedClass,
    #[error("no functional is nonzero on every covector (zero covector present)")]
    NoGenericFunctional,
    #[error("forms G1 and G2 are not proportional")]
    NotProportional,
    #[error("form G2 vanishes identically")]
    ZeroG2,
    #[error("covector {index}: M(dual) is not a multiple of the dual vector")]
    NotEigen { index: usize },
    #[error("collinearity class of covector {index} has vanishing weighted sum C_delta")]
    CDeltaZero { index: usize },
    #[error("Gram form restricted to the kernel subspace is degenerate")]
    DegenerateRestrictedGram,
    #[error("every covector restricts to zero")]
    EmptyChild,
    #[error("unsupported parameters: {0}")]
    UnsupportedParams(String),
    #[error("degenerate parameters: {0}")]
    DegenerateParams(String),
    #[error("no a_i table for {0}")]
    NoATable(String),
    #[error("sample point too close to a pole (min |sin| = {min_sine:.3e})")]
    PoleTooClose { min_sine: f64 },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
