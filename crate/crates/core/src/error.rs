use thiserror::Error;

/// Domain errors raised by the trust algebra, the fuzzy engine and the pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("evidence total {total} exceeds the configured maximum N = {cap}")]
    EvidenceExceedsCap { total: u64, cap: u64 },

    #[error(
        "degenerate base rate in {operator}: denominator {denominator} is within tolerance of zero"
    )]
    DegenerateBase {
        operator: &'static str,
        denominator: f64,
    },

    #[error("initial expectation f is zero; behavioral probability is undefined")]
    ZeroBase,

    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("invalid domain [{lo}, {hi}]: lower bound must be below upper bound")]
    InvalidDomain { lo: f64, hi: f64 },

    #[error("expected {expected} inputs, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("input index {index} out of range for {arity} inputs")]
    IndexOutOfRange { index: usize, arity: usize },

    #[error("aggregated membership is zero over the whole output domain")]
    EmptyAggregate,

    #[error("invalid linguistic variable {name}: {reason}")]
    InvalidVariable { name: String, reason: String },

    #[error("invalid rulebase: {0}")]
    InvalidRuleBase(String),

    #[error("invalid pipeline configuration: {0}")]
    InvalidConfig(String),

    #[error("missing inputs for variables: {}", .0.join(", "))]
    MissingVariable(Vec<String>),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
