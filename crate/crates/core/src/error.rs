use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: malformed document: {reason}")]
    MalformedLine { line: usize, reason: String },
    #[error("line {line}: invalid document: {reason}")]
    InvalidDocument { line: usize, reason: String },
    #[error("line {line}: duplicate doc_id {doc_id:?}")]
    DuplicateDocId { doc_id: String, line: usize },
    #[error("invalid author id: {0}")]
    InvalidAuthor(String),
    #[error("unknown phase {0:?}")]
    UnknownPhase(String),
    #[error("no token sequences to build a matrix from")]
    EmptyInput,
    #[error("token sequences do not match the corpus: {0}")]
    Mismatch(String),
    #[error("min_weight must be at least 1, got {0}")]
    InvalidMinWeight(u64),
    #[error("reference author {0:?} not found")]
    ReferenceNotFound(String),
    #[error("negative weight {weight} for author {author:?}")]
    NegativeWeight { author: String, weight: i64 },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("cannot export {object} as {format}")]
    UnsupportedFormat {
        object: &'static str,
        format: &'static str,
    },
    #[error("malformed input: {0}")]
    Parse(String),
}
