use thiserror::Error;

use crate::monoid::Violation;
use crate::term::Letter;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("exponent must be at least 1")]
    ZeroExponent,
    #[error("invalid ordered monoid: {0}")]
    Monoid(#[from] Violation),
    #[error("letter {0} has no image under the assignment")]
    Unassigned(Letter),
    #[error("invalid automaton: {0}")]
    Automaton(String),
    #[error("automata are over different alphabets")]
    AlphabetMismatch,
    #[error("unsupported level {0}")]
    UnsupportedLevel(String),
    #[error("expression is not well-leveled at {0}")]
    IllLeveled(String),
    #[error("malformed JSON document: {0}")]
    Format(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
