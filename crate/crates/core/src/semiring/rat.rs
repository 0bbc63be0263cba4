use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Semiring, SemiringError};

/// Exact rationals in `[0, 1]` with `max` as combine and `·` as extend.
///
/// Values outside the unit interval are rejected at parse time; the
/// operations keep values inside it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatMaxTimes(BigRational);

impl RatMaxTimes {
    /// Returns `None` unless `0 ≤ numer/denom ≤ 1`.
    pub fn new(numer: i64, denom: i64) -> Option<Self> {
        if denom == 0 {
            return None;
        }
        Self::from_rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_rational(r: BigRational) -> Option<Self> {
        (r >= BigRational::zero() && r <= BigRational::one()).then_some(RatMaxTimes(r))
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }
}

impl Semiring for RatMaxTimes {
    const NAME: &'static str = "maxtimes-rat";

    fn zero() -> Self {
        RatMaxTimes(BigRational::zero())
    }

    fn one() -> Self {
        RatMaxTimes(BigRational::one())
    }

    fn combine(&self, other: &Self) -> Self {
        if self.0 >= other.0 {
            self.clone()
        } else {
            other.clone()
        }
    }

    fn extend(&self, other: &Self) -> Self {
        RatMaxTimes(&self.0 * &other.0)
    }

    fn parse_literal(text: &str) -> Result<Self, SemiringError> {
        let err = |reason: &str| SemiringError::Literal {
            semiring: Self::NAME,
            literal: text.to_string(),
            reason: reason.to_string(),
        };
        let r = text
            .parse::<BigRational>()
            .map_err(|e| err(&e.to_string()))?;
        Self::from_rational(r).ok_or_else(|| err("value must lie in [0, 1]"))
    }
}

impl fmt::Display for RatMaxTimes {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}
