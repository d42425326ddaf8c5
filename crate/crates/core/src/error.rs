use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the enumeration engines and the table formats.
///
/// The arithmetic variants (`InexactDivision`, `NegativeCoefficient`,
/// `NonIntegerCoefficient`) never occur for correct input data; they exist
/// so that a transcription slip in a recurrence or an embedded polynomial
/// surfaces as an error instead of a wrong number.
#[derive(Debug, Error)]
pub enum Error {
    #[error("inexact division by {divisor} while computing {context}")]
    InexactDivision { divisor: u64, context: String },

    #[error("negative coefficient while computing {context}")]
    NegativeCoefficient { context: String },

    #[error("non-integer or negative series coefficient at order {order} of {context}")]
    NonIntegerCoefficient { order: usize, context: String },

    #[error("fixed-point iteration for {context} did not stabilize within {rounds} rounds")]
    NoConvergence { context: String, rounds: usize },

    #[error("genus {genus}, {darts} darts is outside the filled range (genus <= {max_genus}, darts <= {max_darts})")]
    NotFilled {
        genus: u32,
        darts: u32,
        max_genus: u32,
        max_darts: u32,
    },

    #[error("unsupported genus {genus} for {what} (supported: 0..={max})")]
    UnsupportedGenus { genus: u32, what: &'static str, max: u32 },

    #[error("invalid key: {0}")]
    InvalidKey(String),

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("{0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
