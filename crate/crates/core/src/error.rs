//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("label {label} out of range for {class_count} classes")]
    InvalidLabel { label: usize, class_count: usize },

    #[error("clusterings are defined over different instance universes")]
    UniverseMismatch,

    #[error("operation undefined on an empty universe")]
    EmptyUniverse,

    #[error("part counts differ: {left} vs {right}")]
    PartCountMismatch { left: usize, right: usize },

    #[error("node {id} is not a {expected}")]
    NodeKind { id: usize, expected: &'static str },

    #[error("node id {id} out of range")]
    NodeId { id: usize },

    #[error("feature vector has {got} features, expected {expected}")]
    FeatureArity { got: usize, expected: usize },

    #[error("{path}:{line}: {message}")]
    CsvFormat {
        path: String,
        line: u64,
        message: String,
    },

    #[error("malformed tree document at {location}: {message}")]
    TreeParse { location: String, message: String },

    #[error("invalid spec: {0}")]
    InvalidSpec(String),

    #[error("no consistent tree exists: contradictory duplicate instances")]
    NoConsistentTree,

    #[error("instance budget exceeded: {actual} rows over budget {budget}")]
    BudgetExceeded { actual: usize, budget: usize },

    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            context: context.into(),
            source,
        }
    }
}
