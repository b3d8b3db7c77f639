use thiserror::Error;

use crate::topology::ValidationReport;

/// Errors raised by soft-set operations.
#[derive(Debug, Clone, Error)]
pub enum SoftError {
    #[error("universe must be non-empty")]
    EmptyUniverse,
    #[error("parameter set must be non-empty")]
    EmptyParameters,
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("universe has {0} points; at most 64 are supported")]
    UniverseTooLarge(usize),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("unknown parameter `{0}`")]
    UnknownParameter(String),
    #[error("operands live in different contexts")]
    ContextMismatch,
    #[error("expected {expected} fibers, got {actual}")]
    FiberCount { expected: usize, actual: usize },
    #[error("fiber mask {mask:#x} exceeds a universe of {size} points")]
    FiberOutOfRange { mask: u64, size: usize },
    #[error("soft set {0} has both empty and non-empty fibers; it is outside S(X)")]
    MixedOperand(String),
    #[error("operation requires a topology validated under the CS definition")]
    NotCsTopology,
    #[error("family is not a valid topology: {} violation(s)", .0.violations.len())]
    InvalidTopology(Box<ValidationReport>),
    #[error("fiber family for parameter `{0}` is not a crisp topology")]
    NotCrispTopology(String),
    #[error("neighbourhood operator has no family for soft element {0}")]
    NonTotalOperator(String),
    #[error("source and target contexts do not share the parameter set")]
    ParameterMismatch,
    #[error("function table for parameter `{parameter}` is not total")]
    NonTotalFunction { parameter: String },
    #[error("family is not a sub-base of the target topology")]
    InvalidSubbase,
    #[error("enumeration would visit {required} candidates; cap is {cap}")]
    CapExceeded { required: u128, cap: u128 },
    #[error("invalid miner goal: {0}")]
    InvalidGoal(String),
}

pub type Result<T> = std::result::Result<T, SoftError>;
