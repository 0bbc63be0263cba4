//! Memory-allocation balance, correspondence assertions and
//! shape-balancedness of context-free grammars.

mod balance;
mod cfg;
mod labelled;
mod memory;
pub mod search;
mod verdict;
mod words;

use thiserror::Error;

pub use balance::check_shape_balancedness;
pub use cfg::{
    cfg_to_wpds, parse_cfg, remove_useless, Cfg, CfgWpds, Production, BOTTOM_SYMBOL, FINAL_STATE, RUN_STATE,
    START_SYMBOL,
};
pub use labelled::{InstructionTag, LabelledWpds};
pub use memory::{check_correspondence, check_memory_safety};
pub use verdict::{Evidence, Status, Verdict, WitnessPath};
pub use words::{shape_oracle, words_up_to, OracleResult, OracleViolation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("start symbol `{0}` has no production")]
    UnknownStart(String),
    #[error("word enumeration exceeded {0} words")]
    EnumerationCap(u64),
    #[error(transparent)]
    Wpds(#[from] crate::wpds::WpdsError),
    #[error(transparent)]
    Automaton(#[from] crate::wautomata::AutomatonError),
}
