use thiserror::Error;

/// Errors raised by the repair pipeline.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("unknown vertex id {0}")]
    UnknownVertex(usize),

    #[error("triangle ({0}, {1}, {2}) is not in the complex")]
    UnknownTriangle(usize, usize, usize),

    #[error("reduction requires betti numbers (1, 0), got ({beta0}, {beta1})")]
    NotCovered { beta0: usize, beta1: usize },

    #[error("conditioning set is over-constrained: no proposal accepted after {proposals} attempts")]
    OverConstrained { proposals: usize },

    #[error("addition loop exceeded {iterations} iterations without reaching betti (1, 0)")]
    LoopCapExceeded { iterations: usize },

    #[error("strategy `{strategy}` cannot add more vertices; betti numbers stuck at ({beta0}, {beta1})")]
    StrategyExhausted {
        strategy: &'static str,
        beta0: usize,
        beta1: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
