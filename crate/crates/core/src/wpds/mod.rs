//! Weighted pushdown systems and their reachability equation systems.

pub(crate) mod model;
mod oracle;
mod post_star;
mod pre_star;
mod reverse;
mod target;
mod text;

use thiserror::Error;

pub use model::{Configuration, Rule, StateId, SymbolId, Wpds};
pub use oracle::{brute_force_movp, brute_force_paths, configuration_iterate, pop_weight_bounded, DEFAULT_FRONTIER_CAP};
pub use post_star::{build_post_star_system, solve_post_star, Context, MidState, PostStarSolution, PostStarSystem, PostVar};
pub use pre_star::{build_pre_star_system, movp, solve_pre_star, useful_heads, PopVar, PreStarSolution, PreStarSystem};
pub use reverse::{reverse_wpds, ReversedWpds, BOTTOM_SYMBOL};
pub use target::{reduce_regular_target, ReducedTarget, TARGET_STATE};
pub use text::{parse_wpds, ConfigPattern, RuleLine, TagSpec, WpdsDocument};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WpdsError {
    #[error("unknown control state `{0}`")]
    UnknownState(String),
    #[error("unknown stack symbol `{0}`")]
    UnknownSymbol(String),
    #[error("control state id {0} out of range")]
    UnknownStateId(usize),
    #[error("stack symbol id {0} out of range")]
    UnknownSymbolId(usize),
    #[error("`{0}` declared twice")]
    Duplicate(String),
    #[error("rules must push at most two symbols; normalize first")]
    NotNormalized,
    #[error("{0}")]
    Configuration(String),
    #[error("path enumeration exceeded {0} configurations")]
    Explosion(usize),
    #[error("target automaton uses `{0}`, which the system does not declare")]
    Alphabet(String),
}
