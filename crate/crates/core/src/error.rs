use thiserror::Error;

/// Errors raised anywhere in the crate.
///
/// Variants split into domain errors (bad input, violated preconditions)
/// and internal assertion failures; see [`Error::is_internal`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by a quaternion of norm {norm:e}")]
    ZeroDivision { norm: f64 },
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("real polynomial root finder did not converge")]
    RootSolverFailure,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not symmetric (asymmetry {0:e})")]
    NotSymmetric(f64),
    #[error("matrix is not normal (commutator {0:e})")]
    NotNormal(f64),
    #[error("matrix is not tridiagonal symmetric")]
    NotTridiagonalSymmetric,
    #[error("off-diagonal entry {0} is zero; split the matrix into blocks first")]
    ZeroOffDiagonal(usize),
    #[error("QR iteration did not converge")]
    EigenSolverFailure,
    #[error("eigenvector recovery failed for {value}: residual {residual:e}")]
    RecoveryFailure { value: String, residual: f64 },
    #[error("vector {index} depends on the preceding vectors")]
    DependentInput { index: usize },
    #[error("eigenvector {index} has a vanishing first entry ({norm:e})")]
    FirstEntryZero { index: usize, norm: f64 },
    #[error("no admissible sample point in orbit ({re}, {r}); best residual {residual:e}")]
    OrbitSelectionFailure { re: f64, r: f64, residual: f64 },
    #[error("orbit ({re}, {r}) is not a spherical zero orbit")]
    NotSpherical { re: f64, r: f64 },
    #[error("seed point {0} is not in the requested orbit")]
    SeedNotInOrbit(String),
    #[error("sample points are not admissible: {0}")]
    InvalidSamplePoints(String),
    #[error("zero classes and spectrum differ: {0}")]
    SpectrumMismatch(String),
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// True for failures that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::SpectrumMismatch(_) | Error::FirstEntryZero { .. } | Error::RecoveryFailure { .. })
    }

    /// Short stable tag used in machine-readable CLI diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ZeroDivision { .. } => "ZeroDivision",
            Error::DegenerateInput(_) => "DegenerateInput",
            Error::RootSolverFailure => "RootSolverFailure",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NotSymmetric(_) => "NotSymmetric",
            Error::NotNormal(_) => "NotNormal",
            Error::NotTridiagonalSymmetric => "NotTridiagonalSymmetric",
            Error::ZeroOffDiagonal(_) => "ZeroOffDiagonal",
            Error::EigenSolverFailure => "EigenSolverFailure",
            Error::RecoveryFailure { .. } => "RecoveryFailure",
            Error::DependentInput { .. } => "DependentInput",
            Error::FirstEntryZero { .. } => "FirstEntryZero",
            Error::OrbitSelectionFailure { .. } => "OrbitSelectionFailure",
            Error::NotSpherical { .. } => "NotSpherical",
            Error::SeedNotInOrbit(_) => "SeedNotInOrbit",
            Error::InvalidSamplePoints(_) => "InvalidSamplePoints",
            Error::SpectrumMismatch(_) => "SpectrumMismatch",
            Error::Parse { .. } => "ParseError",
            Error::InvalidInput(_) => "InvalidInput",
            Error::Io(_) => "IoError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
