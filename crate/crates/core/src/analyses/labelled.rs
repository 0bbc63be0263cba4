use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::semiring::{IntMinPlus, IntegerWeight};
use crate::wpds::{Configuration, TagSpec, Wpds, WpdsDocument};
use crate::ParseError;

/// The instruction a rule stands for.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum InstructionTag {
    /// Allocates `2ⁿ` pages.
    Alloc(u32),
    /// Frees `2ⁿ` pages.
    Free(u32),
    Begin(String),
    End(String),
    Open,
    Close,
    Other,
}

impl InstructionTag {
    pub fn from_spec(spec: &TagSpec) -> Result<Self, String> {
        let order = |kind: &str| -> Result<u32, String> {
            let a = spec.arg.as_deref().ok_or_else(|| format!("`{kind}` needs an order, as in `{kind}:1`"))?;
            a.parse().map_err(|_| format!("invalid order `{a}`"))
        };
        let label = |kind: &str| -> Result<String, String> {
            spec.arg
                .clone()
                .filter(|l| !l.is_empty())
                .ok_or_else(|| format!("`{kind}` needs a label, as in `{kind}:lock`"))
        };
        let bare = |t: InstructionTag| match &spec.arg {
            None => Ok(t),
            Some(a) => Err(format!("`{}` takes no argument, found `{a}`", spec.kind)),
        };
        match spec.kind.as_str() {
            "alloc" => Ok(InstructionTag::Alloc(order("alloc")?)),
            "free" => Ok(InstructionTag::Free(order("free")?)),
            "begin" => Ok(InstructionTag::Begin(label("begin")?)),
            "end" => Ok(InstructionTag::End(label("end")?)),
            "open" => bare(InstructionTag::Open),
            "close" => bare(InstructionTag::Close),
            "other" => bare(InstructionTag::Other),
            k => Err(format!("unknown tag `{k}`")),
        }
    }

    /// `±2ⁿ` for alloc/free, `±1` for open/close, else 0.
    pub fn memory_weight(&self) -> BigInt {
        match self {
            InstructionTag::Alloc(n) => BigInt::one() << *n,
            InstructionTag::Free(n) => -(BigInt::one() << *n),
            InstructionTag::Open => BigInt::one(),
            InstructionTag::Close => -BigInt::one(),
            _ => BigInt::zero(),
        }
    }

    /// `+1` for `begin ℓ`, `−1` for `end ℓ`, 0 for everything else.
    pub fn label_weight(&self, label: &str) -> BigInt {
        match self {
            InstructionTag::Begin(l) if l == label => BigInt::one(),
            InstructionTag::End(l) if l == label => -BigInt::one(),
            _ => BigInt::zero(),
        }
    }
}

impl fmt::Display for InstructionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InstructionTag::Alloc(n) => write!(f, "alloc:{n}"),
            InstructionTag::Free(n) => write!(f, "free:{n}"),
            InstructionTag::Begin(l) => write!(f, "begin:{l}"),
            InstructionTag::End(l) => write!(f, "end:{l}"),
            InstructionTag::Open => f.write_str("open"),
            InstructionTag::Close => f.write_str("close"),
            InstructionTag::Other => f.write_str("other"),
        }
    }
}

/// A pushdown system whose rules carry instruction tags; weights are
/// derived from the tags per analysis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelledWpds {
    /// The rule structure; every weight is `1̄`.
    shape: Wpds<IntMinPlus>,
    tags: Vec<InstructionTag>,
}

impl LabelledWpds {
    /// `shape` supplies the rules, `tags[i]` tags rule `i`.
    pub fn new(shape: &Wpds<IntMinPlus>, tags: Vec<InstructionTag>) -> Result<Self, String> {
        if tags.len() != shape.rules().len() {
            return Err(format!("{} tags for {} rules", tags.len(), shape.rules().len()));
        }
        Ok(LabelledWpds {
            shape: shape.map_weights(|_, _| IntMinPlus::from(0)),
            tags,
        })
    }

    /// Reads tags from a parsed file. Untagged rules are `other`; weight
    /// literals are rejected since the tags determine all weights.
    pub fn from_document(doc: &WpdsDocument) -> Result<Self, ParseError> {
        let mut tags = vec![];
        for r in &doc.rules {
            if r.weight.is_some() {
                return Err(ParseError::new(r.line, 1, "tagged systems take weights from tags; drop the literal"));
            }
            tags.push(match &r.tag {
                None => InstructionTag::Other,
                Some(t) => InstructionTag::from_spec(t).map_err(|m| ParseError::new(r.line, 1, m))?,
            });
        }
        let mut plain = doc.clone();
        plain.semiring = None;
        let shape = plain.to_wpds::<IntMinPlus>()?;
        Ok(LabelledWpds { shape, tags })
    }

    pub fn shape(&self) -> &Wpds<IntMinPlus> {
        &self.shape
    }

    pub fn tags(&self) -> &[InstructionTag] {
        &self.tags
    }

    /// Labels used by `begin`/`end` tags, sorted.
    pub fn labels(&self) -> BTreeSet<String> {
        self.tags
            .iter()
            .filter_map(|t| match t {
                InstructionTag::Begin(l) | InstructionTag::End(l) => Some(l.clone()),
                _ => None,
            })
            .collect()
    }

    pub fn parse_configuration(&self, text: &str) -> Result<Configuration, crate::wpds::WpdsError> {
        self.shape.parse_configuration(text)
    }

    /// The system with weight `weight(tag)` on every rule.
    pub fn weighted<S: IntegerWeight>(&self, mut weight: impl FnMut(&InstructionTag) -> BigInt) -> Wpds<S> {
        self.shape.map_weights(|i, _| S::from_integer(weight(&self.tags[i])))
    }

    /// Weights for the memory check: `±2ⁿ` on alloc/free.
    pub fn memory_weights<S: IntegerWeight>(&self) -> Wpds<S> {
        self.weighted(InstructionTag::memory_weight)
    }

    /// Weights for the correspondence check on `label`.
    pub fn label_weights<S: IntegerWeight>(&self, label: &str) -> Wpds<S> {
        self.weighted(|t| t.label_weight(label))
    }
}
