use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Safe,
    /// A violation with a finite offending weight.
    Unsafe,
    /// A violation whose extremal weight is unbounded.
    Diverges,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Safe => "safe",
            Status::Unsafe => "unsafe",
            Status::Diverges => "diverges",
        })
    }
}

/// A rule sequence from the initial configuration, replayable with
/// `Wpds::replay` on the system the check was built from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessPath {
    pub start: String,
    /// Indices into the system's rule list.
    pub rules: Vec<usize>,
    /// The rules rendered as `p X -> q Y @ w`.
    pub steps: Vec<String>,
    pub end: String,
    pub weight: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    /// Which property failed.
    pub property: String,
    /// The offending configuration read off the automaton, when known.
    pub configuration: Option<String>,
    /// The extremal weight found by Bellman-Ford: an integer, `-inf` or `+inf`.
    pub weight: String,
    pub path: Option<WitnessPath>,
    /// For grammar checks: the terminals read along `path`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub check: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub evidence: Option<Evidence>,
    #[serde(default)]
    pub warnings: Vec<String>,
}

impl Verdict {
    pub fn safe(check: impl Into<String>) -> Self {
        Verdict {
            check: check.into(),
            status: Status::Safe,
            label: None,
            evidence: None,
            warnings: vec![],
        }
    }

    pub fn is_safe(&self) -> bool {
        self.status == Status::Safe
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "check: {}", self.check)?;
        if let Some(l) = &self.label {
            write!(f, " {l}")?;
        }
        writeln!(f)?;
        writeln!(f, "status: {}", self.status)?;
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        if let Some(e) = &self.evidence {
            writeln!(f, "property: {}", e.property)?;
            if let Some(c) = &e.configuration {
                writeln!(f, "configuration: {c}")?;
            }
            writeln!(f, "weight: {}", e.weight)?;
            if let Some(w) = &e.word {
                writeln!(f, "word: {w}")?;
            }
            if let Some(p) = &e.path {
                writeln!(f, "path from {} to {} with weight {}:", p.start, p.end, p.weight)?;
                for (i, s) in p.rules.iter().zip(&p.steps) {
                    writeln!(f, "  [{i}] {s}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let v = Verdict {
            check: "alloc".into(),
            status: Status::Unsafe,
            label: None,
            evidence: Some(Evidence {
                property: "negative weight".into(),
                configuration: Some("p X".into()),
                weight: "-2".into(),
                path: Some(WitnessPath {
                    start: "p X".into(),
                    rules: vec![0, 1],
                    steps: vec!["p X -> p Y X @ 2".into(), "p Y -> p @ -4".into()],
                    end: "p X".into(),
                    weight: "-2".into(),
                }),
                word: None,
            }),
            warnings: vec![],
        };
        let json = serde_json::to_string(&v).unwrap();
        assert!(json.contains("\"status\":\"unsafe\""));
        assert_eq!(serde_json::from_str::<Verdict>(&json).unwrap(), v);
        let text = v.to_string();
        assert!(text.contains("status: unsafe\n"));
        assert!(text.contains("  [1] p Y -> p @ -4\n"));
    }
}
