use thiserror::Error;

/// Errors returned by index construction and queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("document is empty")]
    EmptyDocument,
    #[error("document contains the reserved byte 0x00 at offset {offset}")]
    SentinelInText { offset: usize },
    #[error("unknown document {0}")]
    UnknownDocument(usize),
    #[error("substring [{i}..{j}] is out of range for document {doc} of length {len}")]
    OutOfRange {
        doc: usize,
        i: usize,
        j: usize,
        len: usize,
    },
    #[error("rank {rank} is outside 1..={max}")]
    RankOutOfRange { rank: usize, max: usize },
    #[error("node {0} does not belong to this tree")]
    NodeNotInTree(usize),
    #[error("element {0} is not in the order list")]
    ElementNotInList(usize),
    #[error("range endpoints are out of order")]
    OrderViolation,
    #[error("malformed index file: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
