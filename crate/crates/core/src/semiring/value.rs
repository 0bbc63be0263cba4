use std::fmt;

use super::{Semiring, SemiringError};

/// A semiring element or the undefined marker ⊥.
///
/// ⊥ marks witness-tainted results. It absorbs both operations, except
/// that `0̄ ⊗ ⊥ = ⊥ ⊗ 0̄ = 0̄`: a product that contains no path stays empty
/// regardless of taint. For the integer semirings this is exactly how the
/// limit element −∞ (resp. +∞) behaves.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Value<S> {
    Finite(S),
    Bottom,
}

impl<S: Semiring> Value<S> {
    pub fn zero() -> Self {
        Value::Finite(S::zero())
    }

    pub fn one() -> Self {
        Value::Finite(S::one())
    }

    pub fn is_bottom(&self) -> bool {
        matches!(self, Value::Bottom)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Value::Finite(s) if s.is_zero())
    }

    pub fn finite(&self) -> Option<&S> {
        match self {
            Value::Finite(s) => Some(s),
            Value::Bottom => None,
        }
    }

    pub fn into_finite(self) -> Option<S> {
        match self {
            Value::Finite(s) => Some(s),
            Value::Bottom => None,
        }
    }

    pub fn combine(&self, other: &Self) -> Self {
        match (self, other) {
            (Value::Finite(a), Value::Finite(b)) => Value::Finite(a.combine(b)),
            _ => Value::Bottom,
        }
    }

    pub fn extend(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Value::zero();
        }
        match (self, other) {
            (Value::Finite(a), Value::Finite(b)) => Value::Finite(a.extend(b)),
            _ => Value::Bottom,
        }
    }

    /// `a ⊑ b`; ⊥ is unordered.
    pub fn leq(&self, other: &Self) -> Result<bool, SemiringError> {
        match (self, other) {
            (Value::Finite(a), Value::Finite(b)) => Ok(a.leq(b)),
            _ => Err(SemiringError::Unordered),
        }
    }

    pub fn parse(text: &str) -> Result<Self, SemiringError> {
        match text.trim() {
            "bot" | "⊥" => Ok(Value::Bottom),
            other => S::parse_literal(other).map(Value::Finite),
        }
    }
}

impl<S> From<S> for Value<S> {
    fn from(s: S) -> Self {
        Value::Finite(s)
    }
}

impl<S: fmt::Display> fmt::Display for Value<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Finite(s) => s.fmt(f),
            Value::Bottom => f.write_str("bot"),
        }
    }
}
