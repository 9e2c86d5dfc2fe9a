//! Error type shared across the toolkit.

use thiserror::Error;

/// All errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A data row could not be parsed. `line` is 1-based and counts the
    /// header, so the first data row is line 2.
    #[error("line {line}: {message}")]
    ParseRow { line: u64, message: String },

    /// The same retweet id appeared twice in one dataset.
    #[error("duplicate retweet_id `{retweet_id}` on lines {first_line} and {second_line}")]
    DuplicateRetweetId {
        retweet_id: String,
        first_line: u64,
        second_line: u64,
    },

    /// A column-mapping config referenced a column the input does not have,
    /// or is otherwise unusable.
    #[error("mapping config: {0}")]
    MappingConfig(String),

    /// A threshold could not be estimated from the data; the message tells
    /// the caller which override to supply instead.
    #[error("threshold estimation: {0}")]
    Estimation(String),

    /// An operation that needs a non-empty graph was given an empty one.
    #[error("graph is empty")]
    EmptyGraph,

    /// A node of the graph has no community label.
    #[error("node `{0}` has no community label")]
    UnlabeledNode(String),

    /// A config document (scenario, params) violates its invariants.
    #[error("invalid config: {0}")]
    InvalidConfig(String),

    /// Evaluation inputs are inconsistent (accounts outside the universe,
    /// empty universe, ...).
    #[error("evaluation: {0}")]
    Evaluation(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Whether this error stems from a bad configuration (exit code 2)
    /// rather than bad input data (exit code 1).
    pub fn is_config(&self) -> bool {
        matches!(self, Error::MappingConfig(_) | Error::InvalidConfig(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
