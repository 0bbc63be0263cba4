use std::fmt;

use super::{Semiring, SemiringError};

/// Plain reachability: `∨` as combine, `∧` as extend.
///
/// The derived order puts `true` below `false`, so "reachable" is the
/// better value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoolReach(pub bool);

impl Semiring for BoolReach {
    const NAME: &'static str = "bool";

    fn zero() -> Self {
        BoolReach(false)
    }

    fn one() -> Self {
        BoolReach(true)
    }

    fn combine(&self, other: &Self) -> Self {
        BoolReach(self.0 || other.0)
    }

    fn extend(&self, other: &Self) -> Self {
        BoolReach(self.0 && other.0)
    }

    fn parse_literal(text: &str) -> Result<Self, SemiringError> {
        match text {
            "true" | "1" => Ok(BoolReach(true)),
            "false" | "0" => Ok(BoolReach(false)),
            _ => Err(SemiringError::Literal {
                semiring: Self::NAME,
                literal: text.to_string(),
                reason: "expected true or false".to_string(),
            }),
        }
    }
}

impl fmt::Display for BoolReach {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
