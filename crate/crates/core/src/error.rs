use thiserror::Error;

/// Errors raised by the algebraic operations of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator index {index} out of range for {n} strands")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("generator {generator} out of range for free group of rank {rank}")]
    GeneratorOutOfRange { generator: usize, rank: usize },

    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid pair ({i}, {j}) for {n} strands")]
    InvalidPair { i: usize, j: usize, n: usize },

    #[error("braid is not pure")]
    NotPure,

    #[error("odd crossing total {total} for strands {i} and {j}")]
    OddCrossings { i: usize, j: usize, total: i64 },

    #[error("not a vertex: abelianization {0} is not a unit basis vector")]
    NotAVertex(String),

    #[error("coefficient overflow")]
    Overflow,

    #[error("malformed key {0:?}")]
    MalformedKey(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("trace of length {len} exceeds subindex limit {limit}")]
    TooLong { len: usize, limit: usize },

    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),

    #[error("enumeration budget exceeded: {count} > {limit}")]
    BudgetExceeded { count: u64, limit: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
