use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("lattice basis is singular")]
    SingularLattice,

    #[error("form is not symmetric")]
    NotSymmetric,

    #[error("form is not integral on the lattice: Q*lambda_{column} = {value}")]
    IntegralityViolation { column: usize, value: String },

    #[error("form has a negative eigenvalue")]
    NotSemidefinite,

    #[error("form is not positive definite")]
    NotPositiveDefinite,

    #[error("lattice enumeration exceeded the search cap of {cap}")]
    TruncationNotCertified { cap: usize },

    #[error("bundle has no sections ({0})")]
    NoSections(String),

    #[error("operation not applicable: {0}")]
    NotApplicable(String),

    #[error("complex is not a pure curve")]
    NotPureCurve,

    #[error("complexes live on different ambient spaces")]
    AmbientMismatch,

    #[error("vandermonde interpolation needs at least two generators, got {0}")]
    DegenerateBasis(usize),

    #[error("expected {expected} interpolation points, got {got}")]
    PointCount { expected: usize, got: usize },

    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),

    #[error("no generic perturbation direction found among the presets")]
    DegeneratePerturbation,

    #[error("too many dimensions to draw: {0}")]
    TooHighDimensional(usize),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
