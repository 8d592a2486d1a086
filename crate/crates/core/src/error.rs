use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("symbol {symbol} out of range for alphabet of size {alphabet_size}")]
    SymbolOutOfRange { symbol: u64, alphabet_size: u32 },

    #[error("alphabet size {0} is outside 1..=65536")]
    AlphabetSize(u64),

    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("neighborhood must contain at least one offset")]
    EmptyNeighborhood,

    #[error("offset {offset:?} has {found} coordinates, expected {expected}")]
    OffsetDimension {
        offset: Vec<i64>,
        expected: usize,
        found: usize,
    },

    #[error("duplicate neighborhood offset {0:?}")]
    DuplicateOffset(Vec<i64>),

    #[error("neighborhood offsets are not in lexicographic order")]
    UnsortedNeighborhood,

    #[error("rule table has {found} entries, expected {expected}")]
    TableLength { expected: u128, found: usize },

    #[error("rule table would need {0} entries, which exceeds the supported maximum")]
    TableTooLarge(u128),

    #[error("invalid shape {shape:?}: {reason}")]
    InvalidShape { shape: Vec<usize>, reason: String },

    #[error("configuration has {found} cells but shape {shape:?} needs {expected}")]
    CellCount {
        shape: Vec<usize>,
        expected: usize,
        found: usize,
    },

    #[error("axis {axis} out of range for dimension {dimension}")]
    AxisOutOfRange { axis: usize, dimension: usize },

    #[error("successor of state {state} is {value}, outside 0..{domain_size}")]
    SuccessorOutOfRange {
        state: usize,
        value: usize,
        domain_size: usize,
    },

    #[error("state space of {required} states exceeds the budget of {cap}")]
    BudgetExceeded { required: u128, cap: u64 },

    #[error("clock modulus {0} must be at least 2")]
    Modulus(u64),

    #[error("clock dimension must be at least 1")]
    ClockDimension,

    #[error(
        "no weak factor map C_{m} -> C_{q}: {q} does not divide g_F = {m}, \
         so every periodic point argument rules it out"
    )]
    NotDivisible { m: u64, q: u64 },

    #[error("out of scope: {0}")]
    OutOfScope(String),

    #[error("parse error at `{token}`: {message}")]
    Parse { token: String, message: String },

    #[error("{path}:{line}: {message}")]
    RuleTable {
        path: String,
        line: usize,
        message: String,
    },

    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn parse(token: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            token: token.into(),
            message: message.into(),
        }
    }
}
