use std::fmt;
use std::str::FromStr;

use super::{BoolReach, IntMaxPlus, IntMinPlus, RatMaxTimes, Semiring, SemiringError, Value};

/// Selects one of the shipped semirings at runtime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum SemiringKind {
    #[serde(rename = "minplus-int")]
    MinPlusInt,
    #[serde(rename = "maxplus-int")]
    MaxPlusInt,
    #[serde(rename = "maxtimes-rat")]
    MaxTimesRat,
    #[serde(rename = "bool")]
    Bool,
}

impl SemiringKind {
    pub const ALL: [SemiringKind; 4] = [
        SemiringKind::MinPlusInt,
        SemiringKind::MaxPlusInt,
        SemiringKind::MaxTimesRat,
        SemiringKind::Bool,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SemiringKind::MinPlusInt => IntMinPlus::NAME,
            SemiringKind::MaxPlusInt => IntMaxPlus::NAME,
            SemiringKind::MaxTimesRat => RatMaxTimes::NAME,
            SemiringKind::Bool => BoolReach::NAME,
        }
    }
}

impl FromStr for SemiringKind {
    type Err = SemiringError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SemiringKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| SemiringError::UnknownSemiring(s.to_string()))
    }
}

impl fmt::Display for SemiringKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A value tagged with its semiring, for callers that only know the
/// semiring at runtime. Operations on mixed operands fail.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum AnyValue {
    MinPlusInt(Value<IntMinPlus>),
    MaxPlusInt(Value<IntMaxPlus>),
    MaxTimesRat(Value<RatMaxTimes>),
    Bool(Value<BoolReach>),
}

macro_rules! binary_op {
    ($name:ident, $op:ident) => {
        pub fn $name(&self, other: &AnyValue) -> Result<AnyValue, SemiringError> {
            match (self, other) {
                (AnyValue::MinPlusInt(a), AnyValue::MinPlusInt(b)) => {
                    Ok(AnyValue::MinPlusInt(a.$op(b)))
                }
                (AnyValue::MaxPlusInt(a), AnyValue::MaxPlusInt(b)) => {
                    Ok(AnyValue::MaxPlusInt(a.$op(b)))
                }
                (AnyValue::MaxTimesRat(a), AnyValue::MaxTimesRat(b)) => {
                    Ok(AnyValue::MaxTimesRat(a.$op(b)))
                }
                (AnyValue::Bool(a), AnyValue::Bool(b)) => Ok(AnyValue::Bool(a.$op(b))),
                _ => Err(self.mismatch(other)),
            }
        }
    };
}

impl AnyValue {
    pub fn parse(kind: SemiringKind, text: &str) -> Result<AnyValue, SemiringError> {
        Ok(match kind {
            SemiringKind::MinPlusInt => AnyValue::MinPlusInt(Value::parse(text)?),
            SemiringKind::MaxPlusInt => AnyValue::MaxPlusInt(Value::parse(text)?),
            SemiringKind::MaxTimesRat => AnyValue::MaxTimesRat(Value::parse(text)?),
            SemiringKind::Bool => AnyValue::Bool(Value::parse(text)?),
        })
    }

    pub fn kind(&self) -> SemiringKind {
        match self {
            AnyValue::MinPlusInt(_) => SemiringKind::MinPlusInt,
            AnyValue::MaxPlusInt(_) => SemiringKind::MaxPlusInt,
            AnyValue::MaxTimesRat(_) => SemiringKind::MaxTimesRat,
            AnyValue::Bool(_) => SemiringKind::Bool,
        }
    }

    fn mismatch(&self, other: &AnyValue) -> SemiringError {
        SemiringError::Mismatch {
            left: self.kind().name(),
            right: other.kind().name(),
        }
    }

    binary_op!(combine, combine);
    binary_op!(extend, extend);

    pub fn leq(&self, other: &AnyValue) -> Result<bool, SemiringError> {
        match (self, other) {
            (AnyValue::MinPlusInt(a), AnyValue::MinPlusInt(b)) => a.leq(b),
            (AnyValue::MaxPlusInt(a), AnyValue::MaxPlusInt(b)) => a.leq(b),
            (AnyValue::MaxTimesRat(a), AnyValue::MaxTimesRat(b)) => a.leq(b),
            (AnyValue::Bool(a), AnyValue::Bool(b)) => a.leq(b),
            _ => Err(self.mismatch(other)),
        }
    }
}

impl fmt::Display for AnyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnyValue::MinPlusInt(v) => v.fmt(f),
            AnyValue::MaxPlusInt(v) => v.fmt(f),
            AnyValue::MaxTimesRat(v) => v.fmt(f),
            AnyValue::Bool(v) => v.fmt(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(s: &str) -> AnyValue {
        AnyValue::parse(SemiringKind::MinPlusInt, s).unwrap()
    }

    #[test]
    fn documented_examples() {
        assert_eq!(mp("3").combine(&mp("inf")).unwrap(), mp("3"));
        assert_eq!(mp("5").combine(&mp("5")).unwrap(), mp("5"));
        assert_eq!(mp("bot").combine(&mp("7")).unwrap(), mp("bot"));
        assert_eq!(mp("2").extend(&mp("inf")).unwrap(), mp("inf"));
        assert_eq!(mp("4").extend(&mp("0")).unwrap(), mp("4"));
        let half = AnyValue::parse(SemiringKind::MaxTimesRat, "1/2").unwrap();
        let quarter = AnyValue::parse(SemiringKind::MaxTimesRat, "1/4").unwrap();
        assert_eq!(half.extend(&half).unwrap(), quarter);
        assert!(mp("2").leq(&mp("5")).unwrap());
        assert!(!mp("5").leq(&mp("2")).unwrap());
        let tq = AnyValue::parse(SemiringKind::MaxTimesRat, "3/4").unwrap();
        assert!(tq.leq(&half).unwrap());
    }

    #[test]
    fn mixed_operands_rejected() {
        let b = AnyValue::parse(SemiringKind::Bool, "true").unwrap();
        assert!(matches!(
            mp("1").combine(&b),
            Err(SemiringError::Mismatch { .. })
        ));
        assert!(mp("1").extend(&b).is_err());
        assert!(mp("1").leq(&b).is_err());
    }

    #[test]
    fn bottom_comparison_rejected() {
        assert_eq!(mp("bot").leq(&mp("1")), Err(SemiringError::Unordered));
    }

    #[test]
    fn kind_names() {
        for k in SemiringKind::ALL {
            assert_eq!(k.name().parse::<SemiringKind>().unwrap(), k);
        }
        assert!("tropical".parse::<SemiringKind>().is_err());
    }
}
