use thiserror::Error;

/// Everything that can go wrong anywhere in the pipeline.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid transducer: {0}")]
    InvalidTransducer(String),

    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),

    #[error("invalid letter order: {0}")]
    InvalidPoset(String),

    #[error("unknown letter index {0}")]
    UnknownLetter(usize),

    #[error("label mismatch: {0}")]
    LabelMismatch(String),

    #[error("not a probability distribution: {0}")]
    NotStochastic(String),

    #[error("distribution has empty support")]
    EmptySupport,

    #[error("prior g-vulnerability is zero, g-leakage is undefined")]
    ZeroVulnerability,

    #[error("channel is not deterministic")]
    NotDeterministic,

    #[error("strategy horizon {horizon} is shorter than the requested run length {needed}")]
    HorizonTooSmall { horizon: usize, needed: usize },

    #[error("strategy has no choice for a queried trace of length {0}")]
    StrategyUndefined(usize),

    #[error("induced channel requires every state to be accepting")]
    NotAllAccepting,

    #[error("Bob's input and output alphabets share letters: {0:?}")]
    AlphabetCollision(Vec<String>),

    #[error("budget exceeded: {what} (limit {limit})")]
    BudgetExceeded { what: &'static str, limit: usize },

    #[error("classification inconsistency: gadget order {gadget_order}, width fit says {fit}")]
    ClassificationInconsistent { gadget_order: usize, fit: String },

    #[error("witness check failed: {0}")]
    WitnessRejected(String),

    #[error("i/o: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
