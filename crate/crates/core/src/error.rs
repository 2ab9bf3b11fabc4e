use thiserror::Error;

/// Errors raised by the evaluators and verifiers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("q must lie strictly between 0 and 1 (got {0})")]
    InvalidQ(f64),
    #[error("a must satisfy 0 < a < 1/q (got a = {a}, q = {q})")]
    InvalidA { a: f64, q: f64 },
    #[error("b must be negative (got {0})")]
    InvalidB(f64),
    #[error("l must be positive (got {0})")]
    InvalidL(f64),
    #[error("invalid truncation policy: {0}")]
    InvalidTruncation(String),
    #[error("{0}")]
    Domain(String),
    #[error("series diverges: |z| = {z} >= 1 and no numerator parameter terminates")]
    Divergent { z: f64 },
    #[error("denominator parameter vanishes at term {index}")]
    DenominatorZero { index: usize },
    #[error("series did not converge within {max_terms} terms")]
    NonConvergence { max_terms: usize },
    #[error("generating series tail is not negligible (last term {last_term:e}, ratio {ratio})")]
    TailNotNegligible { last_term: f64, ratio: f64 },
    #[error("negative radicand {value:e} in {context}")]
    NegativeRadicand { value: f64, context: &'static str },
    #[error("weight {index} of the {context} is not positive ({value:e})")]
    NonPositiveWeight {
        index: i64,
        value: f64,
        context: &'static str,
    },
    #[error("non-finite value in {0}")]
    Overflow(&'static str),
    #[error("eigensolver failed: {0}")]
    Eigen(String),
}

pub type Result<T> = std::result::Result<T, Error>;
