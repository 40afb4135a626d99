use num_complex::Complex64;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: entry ({row}, {col}) deviates by {deviation:e}")]
    NonHermitianInput { row: usize, col: usize, deviation: f64 },
    #[error("matrix is not unitary: max |U^dagger U - I| = {defect:e}")]
    NonUnitary { defect: f64 },
    #[error("function undefined at eigenvalue {eigenvalue}")]
    DomainError { eigenvalue: f64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("transition amplitude {amplitude} has modulus below 1e-14; phase undefined")]
    ZeroAmplitude { amplitude: Complex64 },
    #[error("Gibbs weights not representable at full rank (beta * spread = {exponent})")]
    Overflow { exponent: f64 },
    #[error("density matrix is rank deficient (minimum eigenvalue {min_eigenvalue:e})")]
    RankDeficient { min_eigenvalue: f64 },
    #[error("density matrix trace {trace} differs from 1")]
    NotNormalized { trace: f64 },
    #[error("longitude {phi0} outside [0, pi]")]
    InvalidLongitude { phi0: f64 },
    #[error("operation not defined for a {0} loop")]
    ConventionMismatch(&'static str),
    #[error("level {level} is degenerate along the loop (gap {gap:e})")]
    DegenerateLevel { level: usize, gap: f64 },
    #[error("loop is not closed: {0}")]
    NonClosedLoop(String),
    #[error("density-matrix sequence is not closed (|rho_first - rho_last| = {defect:e})")]
    NotClosed { defect: f64 },
    #[error("{check} residual {value:e} exceeds tolerance {tolerance:e}")]
    ToleranceExceeded { check: &'static str, value: f64, tolerance: f64 },
    #[error("spectrum of rho varies along the loop by {drift:e}; process is not unitary")]
    NonUnitaryProcess { drift: f64 },
    #[error("no sign change of Re G between T = {t_lo} and T = {t_hi}")]
    NoBracket { t_lo: f64, t_hi: f64 },
    #[error("amplitude has imaginary part {im:e} at T = {t}; real-G bisection not applicable")]
    ComplexAmplitude { t: f64, im: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable snake_case identifier used in machine-readable output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NonHermitianInput { .. } => "non_hermitian_input",
            Error::NonUnitary { .. } => "non_unitary",
            Error::DomainError { .. } => "domain_error",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::ZeroAmplitude { .. } => "zero_amplitude",
            Error::Overflow { .. } => "overflow",
            Error::RankDeficient { .. } => "rank_deficient",
            Error::NotNormalized { .. } => "not_normalized",
            Error::InvalidLongitude { .. } => "invalid_longitude",
            Error::ConventionMismatch(_) => "convention_mismatch",
            Error::DegenerateLevel { .. } => "degenerate_level",
            Error::NonClosedLoop(_) => "non_closed_loop",
            Error::NotClosed { .. } => "not_closed",
            Error::ToleranceExceeded { .. } => "tolerance_exceeded",
            Error::NonUnitaryProcess { .. } => "non_unitary_process",
            Error::NoBracket { .. } => "no_bracket",
            Error::ComplexAmplitude { .. } => "complex_amplitude",
            Error::InvalidArgument(_) => "invalid_argument",
        }
    }
}
