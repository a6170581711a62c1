use thiserror::Error;

/// Validation failures when constructing algebra contexts, weights and
/// elements.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("order l must be at least 2, got {0}")]
    InvalidOrder(usize),
    #[error("deformation parameter q must be finite and nonzero")]
    InvalidDeformation,
    #[error("weights must be strictly positive (w_{index} = {value})")]
    NonPositiveWeight { index: usize, value: f64 },
    #[error("q-factorial weights need a real q with every factor positive (factor {index} is {value})")]
    QFactorialWeights { index: usize, value: f64 },
    #[error("index {index} is outside 0..{l}")]
    IndexOutOfRange { index: usize, l: usize },
    #[error("expected {expected} coefficients, got {found}")]
    CoefficientCount { expected: usize, found: usize },
}
