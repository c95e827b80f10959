use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid rank {rank} for family {family}")]
    InvalidRank { family: char, rank: usize },

    #[error("{0} is not prime (or is out of the supported range 2..2^31)")]
    BadPrime(u64),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("preprojective relation violated at vertex {vertex}")]
    RelationViolation { vertex: usize },

    #[error("linear system has no solution")]
    NoSolution,

    #[error("{0} needs the Weyl group enumerated (rank <= 6 and |W| <= 51840)")]
    NeedsWeylEnumeration(&'static str),

    #[error("not a positive root: {0:?}")]
    NotPositiveRoot(Vec<i64>),

    #[error("vertex {0} is not a source of the quiver")]
    NotSource(usize),

    #[error("vertex {0} is not a sink of the quiver")]
    NotSink(usize),

    #[error("word is not adapted to the quiver")]
    NotAdapted,

    #[error("word {0:?} is not a reduced word of the longest element")]
    NotReducedWord(Vec<usize>),

    #[error("edge inequality fails at (w = {word:?}, i = {i}): value {value}")]
    NotPseudoWeyl { word: Vec<usize>, i: usize, value: i64 },

    #[error("vertex difference {diff:?} is not a multiple of the expected root {root:?}")]
    NonCollinear { diff: Vec<i64>, root: Vec<i64> },

    #[error("negative Ext^1 dimension; module invalid or prime unlucky")]
    NegativeExt,

    #[error("crystal operator undefined: {0}")]
    OperatorUndefined(&'static str),

    #[error("sampled data failed BZ validation; rerun with another seed or a larger prime")]
    SamplingFailed,

    #[error("{0}")]
    Invalid(String),
}
