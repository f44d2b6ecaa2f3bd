use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure mode of the library. Variant names double as the
/// machine-readable `kind` reported by the command-line front end.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: max |m_ij - conj(m_ji)| = {deviation:e} exceeds {tolerance:e}")]
    NotHermitian { deviation: f64, tolerance: f64 },

    #[error("matrix has a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("Jacobi eigensolver did not converge within {sweeps} sweeps")]
    ConvergenceFailure { sweeps: usize },

    #[error("matrix is not positive definite: smallest eigenvalue {lambda_min:e}")]
    NotPositiveDefinite { lambda_min: f64 },

    #[error("basis vector {index} has norm {norm}, expected 1")]
    NotNormalized { index: usize, norm: f64 },

    #[error("basis vectors are linearly dependent: smallest Gram eigenvalue {lambda_min:e}")]
    LinearlyDependent { lambda_min: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid Gram matrix: {0}")]
    InvalidGram(String),

    #[error("no positive-definite Gram matrix found after {tries} draws")]
    GenerationFailure { tries: usize },

    #[error("Gram-Schmidt step {step} produced a vector of norm {norm:e}")]
    DegenerateStep { step: usize, norm: f64 },

    #[error("invalid ordering: {0}")]
    InvalidPermutation(String),

    #[error("operation requires dimension 2, got {0}")]
    UnsupportedDimension(usize),

    #[error("state has zero norm")]
    ZeroState,

    #[error("state is not normalized: a^dagger O a = {norm}")]
    StateNotNormalized { norm: f64 },

    #[error("invalid density operator: {0}")]
    InvalidDensity(String),

    #[error("Tr(O rho) = {trace:e} is too small to normalize")]
    DegenerateTrace { trace: f64 },

    #[error("invalid weight distribution: {0}")]
    InvalidWeights(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

impl Error {
    /// Stable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotHermitian { .. } => "NotHermitian",
            Error::NonFinite { .. } => "NonFinite",
            Error::ConvergenceFailure { .. } => "ConvergenceFailure",
            Error::NotPositiveDefinite { .. } => "NotPositiveDefinite",
            Error::NotNormalized { .. } => "NotNormalized",
            Error::LinearlyDependent { .. } => "LinearlyDependent",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::InvalidGram(_) => "InvalidGram",
            Error::GenerationFailure { .. } => "GenerationFailure",
            Error::DegenerateStep { .. } => "DegenerateStep",
            Error::InvalidPermutation(_) => "InvalidPermutation",
            Error::UnsupportedDimension(_) => "UnsupportedDimension",
            Error::ZeroState => "ZeroState",
            Error::StateNotNormalized { .. } => "StateNotNormalized",
            Error::InvalidDensity(_) => "InvalidDensity",
            Error::DegenerateTrace { .. } => "DegenerateTrace",
            Error::InvalidWeights(_) => "InvalidWeights",
            Error::InvalidParameters(_) => "InvalidParameters",
        }
    }
}
