//! Safe Kleene iteration over idempotent semirings and weighted pushdown
//! reachability.
//!
//! The crate is organised bottom-up:
//!
//! * [`semiring`]: the algebra and four shipped instances.
//! * [`fixpoint`]: polynomial systems, safe Kleene iteration with witness
//!   detection, and a derivation-tree oracle.
//! * [`wpds`]: weighted pushdown systems, the pre* and post* equation
//!   systems, reversal and target reduction.
//! * [`wautomata`]: weighted automata built from solved systems, accepted
//!   weights, Bellman-Ford and products.
//! * [`analyses`]: memory-allocation balance, correspondence assertions and
//!   shape-balancedness of context-free grammars.

pub mod analyses;
pub mod fixpoint;
pub mod semiring;
pub mod wautomata;
pub mod wpds;

/// Line and column of a parse error, both 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl std::fmt::Display for Position {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

/// A parse error with its location.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{position}: {message}")]
pub struct ParseError {
    pub position: Position,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            position: Position { line, column },
            message: message.into(),
        }
    }
}
