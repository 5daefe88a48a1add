use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid substitution: {0}")]
    InvalidSubstitution(String),

    #[error("letter {letter} is outside the alphabet of size {m}")]
    InvalidLetter { letter: u8, m: usize },

    #[error("digit {digit} is outside the digit alphabet 0..={max}")]
    InvalidDigit { digit: u8, max: u8 },

    #[error("{0}")]
    Domain(String),

    #[error("words are not abelian equivalent: {top} vs {bottom}")]
    ParikhMismatch { top: String, bottom: String },

    /// The substituted bottom word does not begin with the zeros the digit map
    /// has to rotate, so the digit cannot extend the current representation.
    #[error("digit map D_{digit} is not applicable: image {image} does not begin with 0^{digit}")]
    NotApplicable { digit: u8, image: String },

    #[error("closure did not reach a fixed point within {limit} {what}")]
    LimitExceeded { what: &'static str, limit: usize },

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("malformed automaton file: {0}")]
    Parse(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
