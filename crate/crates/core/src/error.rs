use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("non-finite coordinate at index {index}")]
    NonFinite { index: usize },

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),

    #[error("atom parameter not normalized (norm {norm})")]
    UnnormalizedParam { norm: f64 },

    #[error("atom parameter does not match the model: {0}")]
    ParamMismatch(String),

    #[error("element is not an atom")]
    NotAnAtom,

    #[error("element is not a logic element (eigenvalue {eigenvalue})")]
    NotLogicElement { eigenvalue: f64 },

    #[error("function is not finite at eigenvalue {eigenvalue}")]
    NonFiniteFunction { eigenvalue: f64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("ambiguous meet: eigenvalue {eigenvalue} of q1+q2 lies between the top cluster threshold and 2")]
    AmbiguousMeet { eigenvalue: f64 },

    #[error("point is not in the convex hull (phase-one residual {residual})")]
    Infeasible { residual: f64 },

    #[error("linear program failed: {0}")]
    LpFailure(String),

    #[error("cone projection did not converge after {iterations} iterations (residual {residual})")]
    ProjectionFailed { iterations: usize, residual: f64 },

    #[error("atom oracle failed: {0}")]
    OracleFailure(String),

    #[error("property (tp) violated: maximal families disagree by {defect}")]
    TpViolation { defect: f64 },

    #[error("invalid polytope: {0}")]
    InvalidPolytope(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
