use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The input denotes a rational number, which has a finite continued
    /// fraction and no three-gap sequence to speak of.
    #[error("rational value: {0}")]
    RationalValue(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Exact comparison of two numbers living in different quadratic fields.
    #[error("unsupported comparison between sqrt({0}) and sqrt({1})")]
    UnsupportedComparison(u64, u64),

    #[error("insufficient depth: {0}")]
    InsufficientDepth(String),

    #[error("precision exhausted at {bits} bits: {what}")]
    PrecisionExhausted { bits: u32, what: String },

    /// Malformed alpha specification; `token` is the offending piece of text.
    #[error("parse error at `{token}`: {message}")]
    Parse { token: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
