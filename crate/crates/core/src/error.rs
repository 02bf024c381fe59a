use std::path::PathBuf;

use thiserror::Error;

use crate::wordnet::SynsetId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read {path}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: {message}")]
    Malformed {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("{path}: {message}")]
    Format { path: PathBuf, message: String },

    #[error("synset {from} points to missing synset {to}")]
    DanglingSynset { from: SynsetId, to: SynsetId },

    #[error("unknown synset {0}")]
    UnknownSynset(SynsetId),

    #[error("no taxonomy relates {0} and {1}")]
    UnsupportedTaxonomy(SynsetId, SynsetId),

    #[error("`{lemma}` ({pos}) has no sense in WordNet")]
    NoSense { lemma: String, pos: crate::Pos },

    #[error("prediction for `{0}` has no gold entry")]
    UnknownInstance(String),

    #[error("alpha must lie in [0, 1], got {0}")]
    InvalidAlpha(f64),

    #[error("matrix chain broken at link {index}: {left_cols} columns vs {right_rows} rows")]
    DimensionMismatch {
        index: usize,
        left_cols: usize,
        right_rows: usize,
    },

    #[error("the JCN measure needs an information-content table")]
    MissingIc,

    #[error("unknown {what} `{value}`")]
    UnknownOption { what: &'static str, value: String },

    #[error("cannot write {path}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn malformed(path: impl Into<PathBuf>, line: usize, message: impl Into<String>) -> Self {
        Error::Malformed {
            path: path.into(),
            line,
            message: message.into(),
        }
    }

    pub(crate) fn format(path: impl Into<PathBuf>, message: impl Into<String>) -> Self {
        Error::Format {
            path: path.into(),
            message: message.into(),
        }
    }

    /// True for errors caused by the content of an input file rather than
    /// by the environment.
    pub fn is_input_format(&self) -> bool {
        matches!(
            self,
            Error::Malformed { .. }
                | Error::Format { .. }
                | Error::DanglingSynset { .. }
                | Error::UnknownInstance(_)
        )
    }
}
