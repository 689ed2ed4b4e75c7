use num_complex::Complex64;
use thiserror::Error;

/// Every failure mode surfaced by the toolkit.
///
/// The `code()` of each variant is the stable, kebab-case identifier used in
/// reports and by the CLI.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DbError {
    #[error("magnitude-overflow: evaluation at z = {z} is not finite")]
    MagnitudeOverflow { z: Complex64 },

    #[error("invalid-grid: {0}")]
    InvalidGrid(String),

    #[error("orientation-violation: kernel diagonal {value:e} at x = {x} is not positive")]
    OrientationViolation { x: f64, value: f64 },

    #[error("spectrum-missing: {0}")]
    SpectrumMissing(String),

    #[error("divergent-integrand: integrand does not decay (growth ratio {ratio:e})")]
    DivergentIntegrand { ratio: f64 },

    #[error("sample-shape: {found} samples for {expected} spectrum points")]
    SampleShape { expected: usize, found: usize },

    #[error("count-mismatch: expected {expected} zeros, located {found}")]
    CountMismatch { expected: usize, found: usize },

    #[error("non-simple-zero: suspected multiple zero near x = {x}")]
    NonSimpleZero { x: f64 },

    #[error("relation-case: beta = 0 gives a multivalued relation, not an operator")]
    RelationCase,

    #[error("same-beta: both spectra belong to beta = {0}")]
    SameBeta(f64),

    #[error("beta-singular: beta = {beta} lies outside [{min}, pi - {min}]")]
    BetaSingular { beta: f64, min: f64 },

    #[error("not-in-domain: {0}")]
    NotInDomain(String),

    #[error("resolvent-pole: w = {w} is at or near the spectrum")]
    ResolventPole { w: Complex64 },

    #[error("s0-vanishes-on-spectrum: s0({x}) = {value:e}")]
    S0VanishesOnSpectrum { x: f64, value: f64 },

    #[error("indeterminate-bound: s_pi/2 vanishes at spectrum point {x}")]
    IndeterminateBound { x: f64 },

    #[error("inconclusive-truncation: tail estimate {tail:e} vs partial sum {partial:e}")]
    InconclusiveTruncation { partial: f64, tail: f64 },

    #[error("interlacing-violation: {0}")]
    InterlacingViolation(String),

    #[error("oracle-calibration-failure: kappa = {kappa} (expected 1)")]
    OracleCalibrationFailure { kappa: f64 },

    #[error("invalid-model: {0}")]
    InvalidModel(String),

    #[error("invalid-argument: {0}")]
    InvalidArgument(String),
}

impl DbError {
    pub fn code(&self) -> &'static str {
        match self {
            DbError::MagnitudeOverflow { .. } => "magnitude-overflow",
            DbError::InvalidGrid(_) => "invalid-grid",
            DbError::OrientationViolation { .. } => "orientation-violation",
            DbError::SpectrumMissing(_) => "spectrum-missing",
            DbError::DivergentIntegrand { .. } => "divergent-integrand",
            DbError::SampleShape { .. } => "sample-shape",
            DbError::CountMismatch { .. } => "count-mismatch",
            DbError::NonSimpleZero { .. } => "non-simple-zero",
            DbError::RelationCase => "relation-case",
            DbError::SameBeta(_) => "same-beta",
            DbError::BetaSingular { .. } => "beta-singular",
            DbError::NotInDomain(_) => "not-in-domain",
            DbError::ResolventPole { .. } => "resolvent-pole",
            DbError::S0VanishesOnSpectrum { .. } => "s0-vanishes-on-spectrum",
            DbError::IndeterminateBound { .. } => "indeterminate-bound",
            DbError::InconclusiveTruncation { .. } => "inconclusive-truncation",
            DbError::InterlacingViolation(_) => "interlacing-violation",
            DbError::OracleCalibrationFailure { .. } => "oracle-calibration-failure",
            DbError::InvalidModel(_) => "invalid-model",
            DbError::InvalidArgument(_) => "invalid-argument",
        }
    }
}

pub type Result<T, E = DbError> = std::result::Result<T, E>;
