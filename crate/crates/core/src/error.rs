use thiserror::Error;

/// Errors produced by construction, evaluation and verification routines.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("vector length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("nonpositive entry in {name}")]
    NonPositive { name: &'static str },

    #[error("subset enumeration limited to n <= {max}, got n = {n}")]
    TooManyRisks { n: usize, max: usize },

    #[error("quantile bracket did not close after {0} doublings; the distribution looks malformed")]
    BracketGrowth(usize),

    #[error("cdf saturated at x = {x}: survival below {eps:e}")]
    Saturated { x: f64, eps: f64 },

    #[error("scenario is malformed: {0}")]
    ScenarioShape(String),

    #[error("unknown theorem id: {0}")]
    UnknownTheorem(String),

    #[error("scenario generation exhausted its rejection budget of {0} draws")]
    GeneratorBudget(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
