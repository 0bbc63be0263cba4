use std::fmt;

use num_bigint::BigInt;

use super::{Semiring, SemiringError};

/// Integers with `min` as combine and `+` as extend; `0̄ = ∞`, `1̄ = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum IntMinPlus {
    Finite(BigInt),
    Infinity,
}

/// Integers with `max` as combine and `+` as extend; `0̄ = −∞`, `1̄ = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum IntMaxPlus {
    Finite(BigInt),
    NegInfinity,
}

/// Integer-valued semirings whose paths can be fed to Bellman-Ford.
pub trait IntegerWeight: Semiring {
    /// The finite integer, or `None` for `0̄`.
    fn as_integer(&self) -> Option<&BigInt>;
    fn from_integer(n: BigInt) -> Self;
    /// Whether the optimum is a minimum (`true`) or a maximum.
    const MINIMIZES: bool;
}

fn parse_int(semiring: &'static str, text: &str) -> Result<BigInt, SemiringError> {
    text.parse::<BigInt>().map_err(|e| SemiringError::Literal {
        semiring,
        literal: text.to_string(),
        reason: e.to_string(),
    })
}

impl From<i64> for IntMinPlus {
    fn from(n: i64) -> Self {
        IntMinPlus::Finite(BigInt::from(n))
    }
}

impl From<i64> for IntMaxPlus {
    fn from(n: i64) -> Self {
        IntMaxPlus::Finite(BigInt::from(n))
    }
}

impl Semiring for IntMinPlus {
    const NAME: &'static str = "minplus-int";
    const EXACT_DIVERGENCE: bool = true;

    fn zero() -> Self {
        IntMinPlus::Infinity
    }

    fn one() -> Self {
        IntMinPlus::Finite(BigInt::from(0))
    }

    fn combine(&self, other: &Self) -> Self {
        match (self, other) {
            (IntMinPlus::Infinity, x) | (x, IntMinPlus::Infinity) => x.clone(),
            (IntMinPlus::Finite(a), IntMinPlus::Finite(b)) => {
                IntMinPlus::Finite(if a <= b { a.clone() } else { b.clone() })
            }
        }
    }

    fn extend(&self, other: &Self) -> Self {
        match (self, other) {
            (IntMinPlus::Finite(a), IntMinPlus::Finite(b)) => IntMinPlus::Finite(a + b),
            _ => IntMinPlus::Infinity,
        }
    }

    fn parse_literal(text: &str) -> Result<Self, SemiringError> {
        match text {
            "inf" | "+inf" | "∞" => Ok(IntMinPlus::Infinity),
            _ => parse_int(Self::NAME, text).map(IntMinPlus::Finite),
        }
    }
}

impl IntegerWeight for IntMinPlus {
    const MINIMIZES: bool = true;

    fn as_integer(&self) -> Option<&BigInt> {
        match self {
            IntMinPlus::Finite(n) => Some(n),
            IntMinPlus::Infinity => None,
        }
    }

    fn from_integer(n: BigInt) -> Self {
        IntMinPlus::Finite(n)
    }
}

impl fmt::Display for IntMinPlus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntMinPlus::Finite(n) => n.fmt(f),
            IntMinPlus::Infinity => f.write_str("inf"),
        }
    }
}

impl Semiring for IntMaxPlus {
    const NAME: &'static str = "maxplus-int";
    const EXACT_DIVERGENCE: bool = true;

    fn zero() -> Self {
        IntMaxPlus::NegInfinity
    }

    fn one() -> Self {
        IntMaxPlus::Finite(BigInt::from(0))
    }

    fn combine(&self, other: &Self) -> Self {
        match (self, other) {
            (IntMaxPlus::NegInfinity, x) | (x, IntMaxPlus::NegInfinity) => x.clone(),
            (IntMaxPlus::Finite(a), IntMaxPlus::Finite(b)) => {
                IntMaxPlus::Finite(if a >= b { a.clone() } else { b.clone() })
            }
        }
    }

    fn extend(&self, other: &Self) -> Self {
        match (self, other) {
            (IntMaxPlus::Finite(a), IntMaxPlus::Finite(b)) => IntMaxPlus::Finite(a + b),
            _ => IntMaxPlus::NegInfinity,
        }
    }

    fn parse_literal(text: &str) -> Result<Self, SemiringError> {
        match text {
            "-inf" | "−∞" | "-∞" => Ok(IntMaxPlus::NegInfinity),
            _ => parse_int(Self::NAME, text).map(IntMaxPlus::Finite),
        }
    }
}

impl IntegerWeight for IntMaxPlus {
    const MINIMIZES: bool = false;

    fn as_integer(&self) -> Option<&BigInt> {
        match self {
            IntMaxPlus::Finite(n) => Some(n),
            IntMaxPlus::NegInfinity => None,
        }
    }

    fn from_integer(n: BigInt) -> Self {
        IntMaxPlus::Finite(n)
    }
}

impl fmt::Display for IntMaxPlus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntMaxPlus::Finite(n) => n.fmt(f),
            IntMaxPlus::NegInfinity => f.write_str("-inf"),
        }
    }
}
