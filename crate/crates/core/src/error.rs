use thiserror::Error;

/// Errors raised by the table model, the solvers and the gadget certifiers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("length mismatch: expected {expected} entries, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("empty table: at least one row is required")]
    EmptyTable,

    #[error("record {record} has {actual} fields, expected {expected}")]
    RaggedRecord {
        record: usize,
        expected: usize,
        actual: usize,
    },

    #[error("record {record}, column {column}: `*` is reserved for suppressed entries")]
    ReservedSymbol { record: usize, column: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid k = {k} for a table with {n} rows")]
    InvalidK { k: usize, n: usize },

    #[error("not a partition of the row set: {0}")]
    NotAPartition(String),

    #[error("row {row} is compatible with no vector of the candidate set")]
    InvalidCandidate { row: usize },

    #[error("brute-force oracle refuses {n} rows (cap {cap}); raise the limit explicitly")]
    OracleCap { n: usize, cap: usize },

    #[error("vertex {vertex} out of range (side has {len} vertices)")]
    VertexOutOfRange { vertex: usize, len: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("usage: {0}")]
    Usage(String),

    #[error("certificate rejected: {0}")]
    CertificateInvalid(String),

    #[error("clustering is not canonical: {0}")]
    NonCanonical(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
