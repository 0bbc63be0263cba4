//! Weighted automata over stack alphabets.

mod automaton;
mod bellman_ford;
mod dump;
mod nfa;
mod pre_unweighted;
mod product;

use thiserror::Error;

pub use automaton::{from_post_star, from_pre_star, AcceptedWeight, Transition, WAutomaton, ACCEPT_STATE};
pub use bellman_ford::{bellman_ford_extremal, Extremal, ExtremalMode, ExtremalResult};
pub use dump::{dump_semiring, parse_dump, AutomatonJson, StateJson, TransitionJson};
pub use nfa::Nfa;
pub use pre_unweighted::unweighted_pre_star;
pub use product::product_with_unweighted;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomatonError {
    #[error("unknown automaton state `{0}`")]
    UnknownState(String),
    #[error("automaton state index {0} out of range")]
    UnknownStateIndex(usize),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("`{0}` is not an initial state")]
    NotInitial(String),
    #[error("alphabet mismatch: `{0}` is not shared")]
    AlphabetMismatch(String),
    #[error(transparent)]
    Wpds(#[from] crate::wpds::WpdsError),
}
