use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} values, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("no value supplied for G_{var}")]
    MissingValue { var: usize },
    #[error("substitution for G_{var} refers to G_{var} itself")]
    CyclicSubstitution { var: usize },
    #[error("G_{var} does not occur in both polynomials")]
    VariableAbsent { var: usize },
    #[error("expected a polynomial in G_{var} only, found variables {found:?}")]
    NotUnivariate { var: usize, found: Vec<usize> },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("theory {theory} is not parity symmetric")]
    NotParitySymmetric { theory: String },
    #[error("missing seed for G_{var}")]
    MissingSeed { var: usize },
    #[error("theory {theory} needs {unknowns} base unknowns; use {suggested}")]
    WrongEliminator {
        theory: String,
        unknowns: usize,
        suggested: &'static str,
    },
    #[error("resultant vanished identically; the system is degenerate")]
    DegenerateSystem,
    #[error("root finder did not converge: {0}")]
    NonConvergence(String),
    #[error("no root satisfies the selection policy {0}")]
    NoRootSelected(String),
    #[error("ray at angle {angle} lies outside every convergence sector")]
    OutsideSector { angle: f64 },
    #[error("sequence too short: need {needed}, have {have}")]
    SequenceTooShort { needed: usize, have: usize },
    #[error("bracketing failed: {0}")]
    Bracketing(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
