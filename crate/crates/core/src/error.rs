use thiserror::Error;

/// Shape of a matrix operand, printed as `RxC`.
fn shape(s: &(usize, usize)) -> String {
    format!("{}x{}", s.0, s.1)
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch in {op}: left is {}, right is {}", shape(left), shape(right))]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("signature order mismatch: ell {left} vs ell {right}")]
    OrderMismatch { left: u32, right: u32 },

    /// A parameter set that violates a documented precondition.
    #[error("invalid spec: {0}")]
    InvalidSpec(String),

    /// A well-formed request that cannot be realized, such as too few distinct
    /// DPMs for the requested block count.
    #[error("infeasible construction: {0}")]
    Infeasible(String),

    #[error("matrix is not self-orthogonal: rows {0} and {1} have odd overlap")]
    NotOrthogonal(usize, usize),

    #[error("support search exhausted its budget at row {row} after {failed_attempts} failed attempts")]
    HeuristicExhausted { row: usize, failed_attempts: usize },

    #[error("exhaustive search too large: {work} subsets exceeds the limit of {limit}")]
    SearchTooLarge { work: u128, limit: u128 },

    #[error("non-finite LLR at position {0}")]
    NonFiniteLlr(usize),

    #[error("malformed cycle sequence: {0}")]
    MalformedSequence(String),
}

pub type Result<T> = std::result::Result<T, Error>;
