use thiserror::Error;

/// Syntax error in an LTL formula.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("formula syntax error at {0}")]
    Parse(#[from] ParseError),

    #[error("HOA error at line {line}: {message}")]
    Hoa { line: usize, message: String },

    #[error("automaton is not deterministic: state {state} has several edges on letter {letter}")]
    Nondeterministic { state: usize, letter: u32 },

    #[error("automaton is not complete: state {state} has no edge on letter {letter}")]
    Incomplete { state: usize, letter: u32 },

    #[error("unsupported acceptance primitive `{0}`")]
    UnknownAcceptance(String),

    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),

    #[error("`{formula}` is not in the {expected} fragment")]
    FragmentViolation {
        formula: String,
        expected: &'static str,
    },

    #[error("state bound of {bound} exceeded")]
    StateBound { bound: usize },

    #[error("too many atomic propositions ({count}, at most {max} supported)")]
    TooManyAtoms { count: usize, max: usize },

    #[error("`{formula}` needs an external translator but none is configured")]
    FallbackRequired { formula: String },

    #[error("external translator failed for `{formula}`: {message}")]
    Fallback { formula: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
