use thiserror::Error;

/// Errors raised by constructors and evaluators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter violated its documented range.
    #[error("{name} must satisfy {requirement}, got {value}")]
    InvalidParameter {
        name: &'static str,
        requirement: &'static str,
        value: f64,
    },

    /// An evaluation argument fell outside the function's domain.
    #[error("{name} must lie in {domain}, got {value}")]
    OutOfDomain {
        name: &'static str,
        domain: &'static str,
        value: f64,
    },

    /// A copula argument missed the attainable value set of a discrete
    /// marginal. Carries the nearest attainable value.
    #[error("{name}={value} is not attained by the discrete marginal (nearest attainable value {nearest})")]
    OffRange {
        name: &'static str,
        value: f64,
        nearest: f64,
    },

    /// Rectangle corners for a volume were crossed or out of the unit square.
    #[error("rectangle [{u1}, {u2}] x [{v1}, {v2}] must satisfy 0 <= u1 <= u2 <= 1 and 0 <= v1 <= v2 <= 1")]
    BadRectangle { u1: f64, u2: f64, v1: f64, v2: f64 },

    /// A support set needs at least one point.
    #[error("support set is empty")]
    EmptySupport,

    /// Atom masses must be positive and sum to one.
    #[error("atom masses must be positive and sum to 1 within 1e-12 (sum was {sum})")]
    BadMasses { sum: f64 },
}
