use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("letter x{generator} is outside rank {rank}")]
    InvalidLetter { generator: usize, rank: usize },

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("rank {0} is not supported here (need at least 2)")]
    UnsupportedRank(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("budget exceeded after {vertices} vertices")]
    BudgetExceeded { vertices: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("empty stratum for {0}")]
    EmptyStratum(String),

    #[error("io: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
