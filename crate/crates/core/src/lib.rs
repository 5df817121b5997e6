//! Gauss diagram rewriting with Reidemeister moves I, II, III and the two
//! forbidden moves.
//!
//! The forbidden moves swap two adjacent arrowheads (`FH`) or arrowtails
//! (`FT`). Together with the Reidemeister moves they can also swap an adjacent
//! head and tail ([`macros`]), and from there any diagram can be rewritten into
//! any other ([`rewriter`]). Every rewrite is emitted as a [`Trace`] of
//! primitive moves that [`Engine::replay`] checks step by step.

pub mod cli;
pub mod code;
pub mod diagram;
pub mod error;
pub mod invariants;
pub mod macros;
pub mod moves;
pub mod render;
pub mod rewriter;
pub mod trace;
pub mod variants;

pub use code::{parse_gauss_code, serialize};
pub use diagram::{
    canonical_form, diagrams_equal, interleaved, ChordId, Endpoint, GaussDiagram, Role, Sign, Violation,
};
pub use error::{Error, Result};
pub use invariants::{odd_writhe, writhe, InvariantValue};
pub use macros::{macro_for, Macro, MacroKind};
pub use moves::{Engine, MoveInstance, MoveKind};
pub use rewriter::UNKNOT_LENGTH_FACTOR;
pub use trace::{Trace, TraceFile, TraceStats};
pub use variants::VariantTable;
