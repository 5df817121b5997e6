use thiserror::Error;

use crate::diagram::{ChordId, Violation};
use crate::moves::MoveInstance;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("label {label} occurs {count} times (expected exactly 2)")]
    LabelCount { label: u32, count: usize },

    #[error("label {label} occurs twice as {}", if *over { "O" } else { "U" })]
    LabelRole { label: u32, over: bool },

    #[error("label {label} has different signs at its two occurrences")]
    SignMismatch { label: u32 },

    #[error("invalid diagram: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),

    #[error("unknown chord {0}")]
    UnknownChord(ChordId),

    #[error("chord {0} given twice where distinct chords are required")]
    SameChord(ChordId),

    #[error("illegal move {step}: {reason}")]
    IllegalMove { step: MoveInstance, reason: String },

    #[error("step {index} illegal: {reason}")]
    IllegalStep { index: usize, step: MoveInstance, reason: String, state: String },

    #[error("macro precondition failed: {0}")]
    MacroPrecondition(String),

    #[error("variant table: {0}")]
    Table(String),

    #[error("unknown variant id {0:?}")]
    UnknownVariant(String),

    #[error("trace line {line}: {message}")]
    TraceSyntax { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
