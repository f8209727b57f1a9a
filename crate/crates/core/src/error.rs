use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },

    #[error("scalar mode mismatch: {0}")]
    ModeMismatch(String),

    #[error("generator index {index} out of range for rank {rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// `a` sits on, or within the guard distance of, a nonnegative integer.
    #[error("parameter a = {a} is guarded: {reason}")]
    GuardedParameter { a: String, reason: String },

    #[error("truncation window too small: cutoff {cutoff}, need at least {needed}")]
    WindowTooSmall { cutoff: usize, needed: usize },

    #[error("vector left the truncation window (boundary mass {0:e})")]
    BoundaryLoss(f64),

    #[error("vector component {0} lies outside the truncation window")]
    OutsideWindow(String),

    #[error("no expected bracket in the generator span for [{0}, {1}]")]
    NoExpectedBracket(String, String),

    #[error("exact arithmetic unavailable: {0}")]
    ExactUnavailable(String),

    #[error("seed {seed} is not an eigenvector (residual {residual:e})")]
    NotEigenvector { seed: String, residual: f64 },

    #[error("branching partition failure: {0}")]
    PartitionFailure(String),

    #[error("growth fit residual {residual:e} exceeds {threshold:e}")]
    FitResidual { residual: f64, threshold: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("label outside the degree-1 classification: {0}")]
    NotDegreeOne(String),

    #[error("label family {family} does not match real form {form}")]
    FamilyMismatch { family: String, form: String },

    #[error("verdict depends on the symbolic parameter: {0}")]
    ParameterDependent(String),

    #[error("invalid real form: {0}")]
    InvalidForm(String),

    #[error("cocycle denominator too close to zero ({0:e})")]
    DegenerateCocycle(f64),

    #[error("too few Monte Carlo samples: {0} < 1000")]
    TooFewSamples(usize),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::RankMismatch { .. } => "rank_mismatch",
            Error::ModeMismatch(_) => "mode_mismatch",
            Error::GeneratorOutOfRange { .. } => "generator_out_of_range",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::GuardedParameter { .. } => "guarded_parameter",
            Error::WindowTooSmall { .. } => "window_too_small",
            Error::BoundaryLoss(_) => "boundary_loss",
            Error::OutsideWindow(_) => "outside_window",
            Error::NoExpectedBracket(..) => "no_expected_bracket",
            Error::ExactUnavailable(_) => "exact_unavailable",
            Error::NotEigenvector { .. } => "not_eigenvector",
            Error::PartitionFailure(_) => "partition_failure",
            Error::FitResidual { .. } => "fit_residual",
            Error::Parse(_) => "parse",
            Error::NotDegreeOne(_) => "not_degree_one",
            Error::FamilyMismatch { .. } => "family_mismatch",
            Error::ParameterDependent(_) => "parameter_dependent",
            Error::InvalidForm(_) => "invalid_form",
            Error::DegenerateCocycle(_) => "degenerate_cocycle",
            Error::TooFewSamples(_) => "too_few_samples",
        }
    }
}
