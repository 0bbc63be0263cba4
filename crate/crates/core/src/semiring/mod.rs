//! Idempotent semirings.
//!
//! A semiring here is a type whose values are the domain elements; the
//! operations are associated functions. Four instances ship with the crate:
//! [`IntMinPlus`], [`IntMaxPlus`], [`RatMaxTimes`] and [`BoolReach`].
//!
//! Analysis results may additionally carry the undefined marker ⊥, see
//! [`Value`].

mod axioms;
mod boolean;
mod dynamic;
mod int;
mod rat;
mod value;

use std::fmt;
use std::hash::Hash;

use thiserror::Error;

pub use axioms::{axiom_suite, Axiom, AxiomOutcome, AxiomReport};
pub use boolean::BoolReach;
pub use dynamic::{AnyValue, SemiringKind};
pub use int::{IntMaxPlus, IntMinPlus, IntegerWeight};
pub use rat::RatMaxTimes;
pub use value::Value;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemiringError {
    #[error("operands belong to different semirings ({left} and {right})")]
    Mismatch {
        left: &'static str,
        right: &'static str,
    },
    #[error("bot is unordered and cannot be compared")]
    Unordered,
    #[error("unknown semiring `{0}` (expected minplus-int, maxplus-int, maxtimes-rat or bool)")]
    UnknownSemiring(String),
    #[error("invalid {semiring} literal `{literal}`: {reason}")]
    Literal {
        semiring: &'static str,
        literal: String,
        reason: String,
    },
}

/// An idempotent semiring `(D, ⊕, ⊗, 0̄, 1̄)` whose values are `Self`.
///
/// Implementations must satisfy the usual laws: `⊕` is associative,
/// commutative and idempotent with neutral `0̄`; `⊗` is associative with
/// neutral `1̄`, distributes over `⊕` on both sides and is annihilated by
/// `0̄`. The solvers additionally assume that the derived order is total
/// and that extend preserves inequality on `D ∖ {0̄}`; [`axiom_suite`]
/// checks all of this on samples.
pub trait Semiring: Clone + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// Name used in input files and on the command line.
    const NAME: &'static str;

    /// Whether ⊥ can stand in for an unbounded limit element (−∞ for
    /// min-plus, +∞ for max-plus). Only then are witness sets computed by
    /// [`crate::fixpoint::all_witnesses`] exact.
    const EXACT_DIVERGENCE: bool = false;

    fn zero() -> Self;
    fn one() -> Self;
    fn combine(&self, other: &Self) -> Self;
    fn extend(&self, other: &Self) -> Self;

    /// Parses a literal; the inverse of `Display`.
    fn parse_literal(text: &str) -> Result<Self, SemiringError>;

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// The derived order: `a ⊑ b` iff `a ⊕ b = a`.
    fn leq(&self, other: &Self) -> bool {
        self.combine(other) == *self
    }
}
