use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid letter {0:?}: words are strings over {{0,1}}")]
    InvalidLetter(char),

    #[error("invalid integer sequence: {0}")]
    InvalidSequence(String),

    #[error("value {value} outside alphabet {{1..{alphabet}}}")]
    OutOfAlphabet { value: u32, alphabet: u32 },

    #[error("alphabet size must be at least 2, got {0}")]
    AlphabetTooSmall(u32),

    #[error("empty periodic pattern")]
    EmptyPattern,

    #[error("probability {0} outside [0,1]")]
    InvalidProbability(f64),

    #[error("enumeration budget exceeded: {what} needs {needed}, budget is {budget}")]
    BudgetExceeded {
        what: &'static str,
        needed: u64,
        budget: u64,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error("contract violated: {0}")]
    Contract(String),
}

pub type Result<T> = std::result::Result<T, Error>;
