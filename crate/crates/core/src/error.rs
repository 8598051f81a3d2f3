use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid rank {rank} for type {family}")]
    InvalidRank { family: char, rank: usize },

    #[error("cannot parse root system name {0:?}")]
    BadSystemName(String),

    #[error("letter {letter} is out of range for rank {rank}")]
    LetterOutOfRange { letter: usize, rank: usize },

    #[error("cannot parse word {0:?}")]
    BadWord(String),

    #[error("word is not reduced (first failure at letter position {position})")]
    NotReduced { position: usize },

    #[error("{0:?} is not a root of this system")]
    NotARoot(String),

    #[error("cannot parse root {0:?}")]
    BadRoot(String),

    #[error("mirror vector is zero")]
    ZeroMirror,

    #[error("operation needs a system of type B, C or D, got {0}")]
    NotClassical(String),

    #[error("invalid indices i={i}, j={j} for {system}")]
    InvalidIndices { system: String, i: usize, j: usize },

    #[error("triple is not valid: {0}")]
    BadTriple(String),

    #[error("exploration cap of {cap} states exceeded")]
    CapExceeded { cap: usize },

    #[error("planar configuration is invalid: {0}")]
    BadConfig(String),

    #[error("golden data is malformed: {0}")]
    BadGolden(String),
}
