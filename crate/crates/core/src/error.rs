use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid spin quantum number {0}: must be a non-negative multiple of 1/2")]
    InvalidSpin(String),

    #[error("spin {0} exceeds the supported maximum of 50")]
    SpinTooLarge(String),

    #[error("projection m = {m} is not one of -{s}, ..., {s}")]
    InvalidProjection { s: String, m: String },

    #[error("axis is not a unit vector (norm {0})")]
    NonUnitAxis(f64),

    #[error("{name} must be positive and finite, got {value}")]
    NonPositive { name: &'static str, value: f64 },

    #[error("{name} = {value} is outside [{lo}, {hi}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("eigenvalue {0} is repeated; Lagrange denominators vanish")]
    RepeatedEigenvalue(String),

    #[error("generator is not Hermitian (max |A - A^H| = {0})")]
    NotHermitian(f64),

    #[error("supplied eigenvalues do not match the generator (off by {0})")]
    SpectrumMismatch(f64),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("state is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("state off manifold (fidelity {0})")]
    OffManifold(f64),

    #[error("target outside rotation circle")]
    Unreachable,

    #[error("no field at this tilt reaches the target")]
    NoCompatibleAzimuth,

    #[error("empty reachable tilt interval for theta_f = {0}")]
    EmptyReachableInterval(f64),

    #[error("grid must have at least 3 points, got {0}")]
    GridTooSmall(usize),

    #[error("cannot parse {0:?} as a half-integer")]
    Parse(String),
}

impl Error {
    /// True for errors that describe a physically impossible request rather
    /// than malformed input.
    pub fn is_infeasible(&self) -> bool {
        matches!(
            self,
            Error::Unreachable | Error::NoCompatibleAzimuth | Error::EmptyReachableInterval(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
