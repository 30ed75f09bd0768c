use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("degree {0} is outside the supported range 1..={max}", max = crate::perm::MAX_N)]
    DegreeOutOfRange(usize),
    #[error("one-line word is not a permutation")]
    NotAPermutation,
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("({0},{1}) is not a transposition")]
    InvalidTransposition(u8, u8),
    #[error("cannot parse {0:?}")]
    Parse(String),
    #[error("not an edge of the Bruhat graph")]
    NotAnEdge,
    #[error("edges do not form a path")]
    MalformedChain,
    #[error("flip index {index} out of range for a path of length {len}")]
    FlipIndex { index: usize, len: usize },
    #[error("path length {0} is not supported")]
    PathTooLong(usize),
    #[error("not a reduced word of the longest element")]
    NotReducedWordOfLongest,
    #[error("not a reflection ordering")]
    InvalidOrdering,
    #[error("{u} is not below {v} in Bruhat order")]
    NotComparable { u: String, v: String },
    #[error("t-vector has length {got}, expected {expected}")]
    TVectorLength { got: usize, expected: usize },
    #[error("t-vector {0} does not occur for 5-flipclasses")]
    UnknownTVector(String),
    #[error("degree polynomial {poly} is not listed for t-vector {tvec}")]
    UnknownBranch { tvec: String, poly: String },
    #[error("no coefficient table available for h = {0}")]
    MissingTable(usize),
    #[error("invariant key {0} is missing from the coefficient table")]
    UnknownInvariant(String),
    #[error("coefficient recipe only covers h <= 6, got {0}")]
    RecipeOutOfRange(usize),
    #[error("missing invariant table for h = {0}")]
    MissingLowerTable(usize),
    #[error("table self-check failed: {0}")]
    TableSelfCheck(String),
}
