//! Text, JSON and DOT renderings of weighted automata.

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::semiring::{Semiring, Value};
use crate::ParseError;

use super::WAutomaton;

const EPSILON: &str = "%eps";

impl<S: Semiring> fmt::Display for WAutomaton<S> {
    /// The dump format: `semiring`, `stack`, then `state` and `trans` lines.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "semiring {}", S::NAME)?;
        writeln!(f, "stack {}", self.symbols.join(" "))?;
        for (i, s) in self.states.iter().enumerate() {
            write!(f, "state {s}")?;
            if self.is_initial(i) {
                f.write_str(" initial")?;
            }
            if self.is_final(i) {
                f.write_str(" final")?;
            }
            writeln!(f)?;
        }
        for t in &self.transitions {
            write!(f, "trans {} {} {}", self.states[t.from], self.label_name(t.label), self.states[t.to])?;
            if !matches!(&t.weight, Value::Finite(w) if w.is_one()) {
                write!(f, " @ {}", t.weight)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateJson {
    pub name: String,
    #[serde(default)]
    pub initial: bool,
    #[serde(default, rename = "final")]
    pub is_final: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionJson {
    pub from: String,
    /// `None` for ε.
    pub label: Option<String>,
    pub to: String,
    /// A weight literal or `bot`.
    pub weight: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomatonJson {
    pub semiring: String,
    pub stack: Vec<String>,
    pub states: Vec<StateJson>,
    pub transitions: Vec<TransitionJson>,
}

impl<S: Semiring> WAutomaton<S> {
    pub fn to_json(&self) -> AutomatonJson {
        AutomatonJson {
            semiring: S::NAME.to_string(),
            stack: self.symbols.clone(),
            states: self
                .states
                .iter()
                .enumerate()
                .map(|(i, s)| StateJson {
                    name: s.clone(),
                    initial: self.is_initial(i),
                    is_final: self.is_final(i),
                })
                .collect(),
            transitions: self
                .transitions
                .iter()
                .map(|t| TransitionJson {
                    from: self.states[t.from].clone(),
                    label: t.label.map(|x| self.symbols[x].clone()),
                    to: self.states[t.to].clone(),
                    weight: t.weight.to_string(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &AutomatonJson) -> Result<Self, String> {
        if json.semiring != S::NAME {
            return Err(format!("expected semiring {}, found {}", S::NAME, json.semiring));
        }
        let mut a = WAutomaton::new(json.stack.clone());
        for s in &json.states {
            if a.state_index(&s.name).is_some() {
                return Err(format!("duplicate state `{}`", s.name));
            }
            a.add_state(s.name.clone(), s.initial, s.is_final);
        }
        for t in &json.transitions {
            let state = |n: &str| a.state_index(n).ok_or_else(|| format!("unknown state `{n}`"));
            let (from, to) = (state(&t.from)?, state(&t.to)?);
            let label = match &t.label {
                None => None,
                Some(x) => Some(a.symbol_index(x).ok_or_else(|| format!("unknown symbol `{x}`"))?),
            };
            let w = Value::<S>::parse(&t.weight).map_err(|e| e.to_string())?;
            a.add_transition(from, label, to, w);
        }
        Ok(a)
    }

    /// Graphviz rendering; edges are labelled `X / w`, ⊥ as `⊥`.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph wautomaton {\n  rankdir=LR;\n");
        for (i, s) in self.states.iter().enumerate() {
            let shape = if self.is_final(i) { "doublecircle" } else { "circle" };
            let _ = writeln!(out, "  n{i} [label=\"{}\", shape={shape}];", escape(s));
            if self.is_initial(i) {
                let _ = writeln!(out, "  i{i} [shape=point];\n  i{i} -> n{i};");
            }
        }
        for t in &self.transitions {
            let label = t.label.map_or("ε", |x| &self.symbols[x]);
            let w = match &t.weight {
                Value::Bottom => "⊥".to_string(),
                Value::Finite(w) => w.to_string(),
            };
            let _ = writeln!(out, "  n{} -> n{} [label=\"{} / {}\"];", t.from, t.to, escape(label), escape(&w));
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Parses the dump format. A `#` starts a comment only at the beginning
/// of a line, since `#` is a legal stack symbol in reversed systems.
pub fn parse_dump<S: Semiring>(text: &str) -> Result<WAutomaton<S>, ParseError> {
    let mut symbols: Option<Vec<String>> = None;
    let mut a: Option<WAutomaton<S>> = None;
    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let trimmed = raw.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let col = raw.len() - trimmed.len() + 1;
        let err = |msg: String| ParseError::new(line_no, col, msg);
        let (body, weight) = match trimmed.split_once('@') {
            Some((b, w)) => (b, Some(w.trim())),
            None => (trimmed, None),
        };
        let words: Vec<&str> = body.split_whitespace().collect();
        match words[0] {
            "semiring" => {
                if words.len() != 2 || words[1] != S::NAME {
                    return Err(err(format!("expected `semiring {}`", S::NAME)));
                }
            }
            "stack" => {
                if symbols.is_some() {
                    return Err(err("duplicate stack declaration".into()));
                }
                symbols = Some(words[1..].iter().map(|s| s.to_string()).collect());
            }
            "state" => {
                let syms = symbols.clone().ok_or_else(|| err("`stack` must precede states".into()))?;
                let a = a.get_or_insert_with(|| WAutomaton::new(syms));
                let [_, name, flags @ ..] = words.as_slice() else {
                    return Err(err("expected `state NAME [initial] [final]`".into()));
                };
                if a.state_index(name).is_some() {
                    return Err(err(format!("duplicate state `{name}`")));
                }
                let (mut initial, mut fin) = (false, false);
                for f in flags {
                    match *f {
                        "initial" => initial = true,
                        "final" => fin = true,
                        other => return Err(err(format!("unknown state flag `{other}`"))),
                    }
                }
                a.add_state(*name, initial, fin);
            }
            "trans" => {
                let a = a.as_mut().ok_or_else(|| err("states must precede transitions".into()))?;
                let [_, from, label, to] = words.as_slice() else {
                    return Err(err("expected `trans FROM SYMBOL TO [@ WEIGHT]`".into()));
                };
                let state = |n: &str| a.state_index(n).ok_or_else(|| err(format!("unknown state `{n}`")));
                let (from, to) = (state(from)?, state(to)?);
                let label = if *label == EPSILON {
                    None
                } else {
                    Some(a.symbol_index(label).ok_or_else(|| err(format!("unknown symbol `{label}`")))?)
                };
                let w = match weight {
                    None => Value::one(),
                    Some(w) => Value::<S>::parse(w).map_err(|e| err(e.to_string()))?,
                };
                a.add_transition(from, label, to, w);
            }
            other => return Err(err(format!("unknown directive `{other}`"))),
        }
    }
    match a {
        Some(a) => Ok(a),
        None => Ok(WAutomaton::new(symbols.unwrap_or_default())),
    }
}

/// Reads the `semiring NAME` line of a dump, if present.
pub fn dump_semiring(text: &str) -> Option<&str> {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .and_then(|l| l.strip_prefix("semiring "))
        .map(str::trim)
}
