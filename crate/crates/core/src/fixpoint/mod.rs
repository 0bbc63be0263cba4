//! Polynomial equation systems and safe Kleene iteration.

mod derivation;
mod kleene;
mod poly;
mod text;

use thiserror::Error;

pub use derivation::{derivation_tree_value, derivation_yields, enumeration_cap, DEFAULT_ENUM_CAP};
pub use kleene::{all_witnesses, kleene_sequence, safe_kleene, KleeneRun, KleeneTrace, SolveOutcome, WitnessReport};
pub use poly::{Factor, Monomial, Polynomial, PolynomialSystem};
pub use text::{parse_system, semiring_header, system_from_json, system_to_json, SystemJson};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FixpointError {
    #[error("dimension mismatch: expected {expected} components, got {actual}")]
    Dimension { expected: usize, actual: usize },
    #[error("variable index {index} out of range for {n} variables")]
    VariableOutOfRange { index: usize, n: usize },
    #[error("all-witness extension needs an integer semiring, not {0}")]
    UnsupportedSemiring(&'static str),
    #[error("derivation-tree enumeration exceeded the cap of {0} combinations")]
    EnumerationCap(u64),
}
