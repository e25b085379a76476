use std::fmt;

use crate::algebra::MultiIndex;

/// Errors produced by the toolkit.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("non-finite coefficient or parameter: {0}")]
    NonFinite(String),

    #[error("inner map has a nonzero constant term in component {component}")]
    NonZeroConstantTerm { component: usize },

    #[error("exponent {k} exceeds the truncation degree {max_degree}")]
    DegreeTooHigh { k: MultiIndex, max_degree: usize },

    #[error("higher-order part contains a term of degree {degree} (must be >= 2)")]
    LowDegreeTerm { degree: usize },

    #[error("spectrum is not of dilation type: Re alpha_{index} = {re}")]
    NonDilation { index: usize, re: f64 },

    #[error("eigenvalue modulus outside (0, 1): |beta_{index}| = {modulus}")]
    NotContracting { index: usize, modulus: f64 },

    #[error("small divisor {divisor:e} at {at}")]
    SmallDivisor { at: TermRef, divisor: f64 },

    #[error("term {at} is not resonant")]
    NonResonantTerm { at: TermRef },

    #[error("map is not triangular")]
    NotTriangular,

    #[error("map is not normalized (needs zero constant term and identity linear part)")]
    NotNormalized,

    #[error("linear parts differ")]
    MismatchedLinearParts,

    #[error("trajectory left the polydisc of radius {radius} at t = {time}")]
    LeftDomain { time: f64, radius: f64 },

    #[error("step size underflow at t = {time}")]
    StepSizeUnderflow { time: f64 },

    #[error("step limit {0} reached")]
    TooManySteps(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// True for failures of the numerics (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::SmallDivisor { .. }
                | Error::LeftDomain { .. }
                | Error::StepSizeUnderflow { .. }
                | Error::TooManySteps(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// A `(component, multi-index)` pair, displayed 1-based as in `(2, (2,0))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermRef {
    pub component: usize,
    pub k: MultiIndex,
}

impl fmt::Display for TermRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.component + 1, self.k)
    }
}
