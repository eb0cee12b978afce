use thiserror::Error;

use crate::exact::Interval;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("zero cannot be raised to a negative power")]
    ZeroToNegativePower,

    #[error("cannot take a root of the negative number {0}")]
    NegativeRadicand(String),

    #[error("root degree must be at least 1")]
    ZeroRootDegree,

    #[error("interval endpoints out of order: [{lo}, {hi}]")]
    InvalidInterval { lo: String, hi: String },

    #[error("operation requires a strictly positive interval, got [{lo}, {hi}]")]
    NotPositiveInterval { lo: String, hi: String },

    #[error("precision must be strictly positive, got {0}")]
    InvalidPrecision(String),

    #[error("expected a strictly positive value, got {0}")]
    NotPositive(String),

    #[error("expected a value greater than 1, got {0}")]
    NotGreaterThanOne(String),

    #[error("expected a nonnegative value, got {0}")]
    NegativeInput(String),

    #[error("input list is empty")]
    EmptyInput,

    #[error("step size must be nonzero")]
    ZeroStep,

    #[error("arguments out of order: {0}")]
    OutOfOrder(String),

    #[error("logarithm base interval [{lo}, {hi}] contains 1")]
    BaseContainsOne { lo: String, hi: String },

    #[error("compound base 1 + x/n = {0} is not positive")]
    CompoundBaseNotPositive(String),

    #[error("could not parse {input:?} as an exact rational: {reason}")]
    Parse { input: String, reason: String },

    #[error("{what}: gave up after {iterations} iterations, best enclosure [{}, {}]", best.lo(), best.hi())]
    IterationCap { what: &'static str, iterations: u32, best: Interval },

    #[error("inconsistent enclosures in {0}; this is an implementation defect")]
    Inconsistent(&'static str),
}
