use thiserror::Error;

use crate::action::SupportSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("empty point set")]
    EmptyInput,
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("ray direction is zero")]
    ZeroDirection,
    #[error("gram matrix not positive definite")]
    NotPositiveDefinite,
    #[error("gram matrix not symmetric")]
    NotSymmetric,
    #[error("gram matrix is not {0}x{0}")]
    BadGramShape(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("ParseError: {0}")]
    Parse(String),
    #[error("ValidationError: {field}: {message}")]
    Validation { field: String, message: String },
}

impl ActionError {
    pub(crate) fn validation(field: &str, message: impl Into<String>) -> Self {
        ActionError::Validation {
            field: field.to_string(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrataError {
    #[error("support enumeration over {0} weights exceeds the limit of 20")]
    TooLarge(usize),
    #[error("codimension formula went negative ({0}); root data inconsistent with the weights")]
    NegativeCodim(i64),
    #[error("beta must be nonzero")]
    ZeroBeta,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DescentError {
    #[error("descent did not converge after {steps} steps (residual {residual:e})")]
    NoConvergence {
        limit: Vec<f64>,
        residual: f64,
        steps: usize,
    },
    #[error("step and tolerance must be positive")]
    BadParameters,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error("support {0} is strictly semistable")]
    StrictlySemistable(SupportSet),
    #[error("semistable series is not a polynomial")]
    NotPolynomial,
    #[error("Betti numbers need a torus action; root data present")]
    NonAbelian,
    #[error(transparent)]
    Strata(#[from] StrataError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuotientError {
    #[error("beta must be nonzero")]
    ZeroBeta,
    #[error("epsilon must be positive")]
    NonPositiveEpsilon,
    #[error("reports differ inside the epsilon chamber ({lo}, {hi})")]
    ChamberInconsistent { lo: String, hi: String },
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Strata(#[from] StrataError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ImplosionError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("simple-root index {0} out of range")]
    BadSimpleIndex(usize),
    #[error("parabolic Weyl group exceeds {0} elements")]
    GroupTooLarge(usize),
    #[error("point is not in the positive Weyl chamber")]
    NotInChamber,
    #[error("reflection descent did not terminate; root data not a finite root system")]
    DescentDiverged,
}
