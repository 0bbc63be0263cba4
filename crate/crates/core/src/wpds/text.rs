//! WPDS text format.
//!
//! ```text
//! semiring minplus-int
//! states p q
//! stack X Y
//! p X -> q Y @ 1
//! p X -> p X Y @ 1 @tag alloc:1
//! p Y -> p @ 1
//! target q *          # q followed by any stack
//! source p X
//! ```
//!
//! A missing weight means `1̄`. `%` and `#` may not appear in names; `#`
//! starts a comment.

use std::fmt;

use crate::semiring::{Semiring, SemiringKind};
use crate::wautomata::Nfa;
use crate::ParseError;

use super::{Rule, Wpds};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TagSpec {
    pub kind: String,
    pub arg: Option<String>,
}

impl fmt::Display for TagSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.arg {
            Some(a) => write!(f, "{}:{a}", self.kind),
            None => f.write_str(&self.kind),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleLine {
    pub line: usize,
    pub from: String,
    pub symbol: String,
    pub to: String,
    pub push: Vec<String>,
    pub weight: Option<String>,
    pub tag: Option<TagSpec>,
}

/// A control state, a stack prefix and whether any suffix is allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigPattern {
    pub state: String,
    pub stack: Vec<String>,
    pub any_suffix: bool,
}

impl fmt::Display for ConfigPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.state)?;
        for x in &self.stack {
            write!(f, " {x}")?;
        }
        if self.any_suffix {
            f.write_str(" *")?;
        }
        Ok(())
    }
}

/// A parsed WPDS file before weights are interpreted.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WpdsDocument {
    pub semiring: Option<SemiringKind>,
    pub states: Vec<String>,
    pub stack: Vec<String>,
    pub rules: Vec<RuleLine>,
    pub targets: Vec<ConfigPattern>,
    pub source: Option<ConfigPattern>,
}

fn col_of(line: &str, token: &str) -> usize {
    let offset = token.as_ptr() as usize - line.as_ptr() as usize;
    line[..offset].chars().count() + 1
}

fn check_name(line_no: usize, line: &str, tok: &str) -> Result<(), ParseError> {
    if tok.contains('%') || tok.contains('#') {
        return Err(ParseError::new(
            line_no,
            col_of(line, tok),
            format!("`{tok}`: `%` and `#` are reserved"),
        ));
    }
    if tok == "->" || tok == "*" || tok.starts_with('@') {
        return Err(ParseError::new(line_no, col_of(line, tok), format!("unexpected `{tok}`")));
    }
    Ok(())
}

/// Parses the WPDS text format. Names are checked against the `states`
/// and `stack` declarations, which must precede their first use.
pub fn parse_wpds(input: &str) -> Result<WpdsDocument, ParseError> {
    let mut doc = WpdsDocument::default();
    for (ln, raw) in input.lines().enumerate() {
        let ln = ln + 1;
        let line = raw.split('#').next().unwrap_or("");
        let mut words = line.split_whitespace();
        let Some(head) = words.next() else { continue };
        let rest: Vec<&str> = words.collect();
        let err = |tok: &str, msg: String| ParseError::new(ln, col_of(raw, tok), msg);
        match head {
            "semiring" => {
                let [name] = rest.as_slice() else {
                    return Err(err(head, "expected `semiring NAME`".into()));
                };
                doc.semiring = Some(name.parse().map_err(|e: crate::semiring::SemiringError| err(name, e.to_string()))?);
            }
            "states" | "stack" => {
                for tok in &rest {
                    check_name(ln, raw, tok)?;
                    let list = if head == "states" { &mut doc.states } else { &mut doc.stack };
                    if list.iter().any(|s| s == tok) {
                        return Err(err(tok, format!("`{tok}` declared twice")));
                    }
                    list.push(tok.to_string());
                }
            }
            "target" | "source" => {
                let pattern = parse_pattern(&doc, ln, raw, head, &rest)?;
                if head == "target" {
                    doc.targets.push(pattern);
                } else {
                    if doc.source.is_some() {
                        return Err(err(head, "only one `source` is allowed".into()));
                    }
                    if pattern.any_suffix || pattern.stack.len() != 1 {
                        return Err(err(head, "`source` takes a state and exactly one symbol".into()));
                    }
                    doc.source = Some(pattern);
                }
            }
            _ => doc.rules.push(parse_rule(&doc, ln, raw, line)?),
        }
    }
    Ok(doc)
}

fn parse_pattern(
    doc: &WpdsDocument,
    ln: usize,
    raw: &str,
    head: &str,
    rest: &[&str],
) -> Result<ConfigPattern, ParseError> {
    let Some((state, tail)) = rest.split_first() else {
        return Err(ParseError::new(ln, col_of(raw, head), format!("`{head}` needs a control state")));
    };
    known(doc, true, ln, raw, state)?;
    let mut stack = Vec::new();
    let mut any_suffix = false;
    for (i, tok) in tail.iter().enumerate() {
        if *tok == "*" && i + 1 == tail.len() {
            any_suffix = true;
        } else {
            known(doc, false, ln, raw, tok)?;
            stack.push(tok.to_string());
        }
    }
    Ok(ConfigPattern {
        state: state.to_string(),
        stack,
        any_suffix,
    })
}

fn known(doc: &WpdsDocument, state: bool, ln: usize, raw: &str, tok: &str) -> Result<(), ParseError> {
    let (list, what) = if state {
        (&doc.states, "control state")
    } else {
        (&doc.stack, "stack symbol")
    };
    if list.iter().any(|s| s == tok) {
        Ok(())
    } else {
        Err(ParseError::new(ln, col_of(raw, tok), format!("undeclared {what} `{tok}`")))
    }
}

fn parse_rule(doc: &WpdsDocument, ln: usize, raw: &str, line: &str) -> Result<RuleLine, ParseError> {
    let (body, annotations) = match line.find('@') {
        Some(i) => (&line[..i], Some(&line[i + 1..])),
        None => (line, None),
    };
    let Some(arrow) = body.find("->") else {
        let first = body.trim_start();
        return Err(ParseError::new(ln, col_of(raw, first), "expected `p X -> q α`"));
    };
    let lhs: Vec<&str> = body[..arrow].split_whitespace().collect();
    let rhs: Vec<&str> = body[arrow + 2..].split_whitespace().collect();
    let [from, symbol] = lhs.as_slice() else {
        return Err(ParseError::new(ln, col_of(raw, &body[arrow..]), "left side must be `p X`"));
    };
    let Some((to, push)) = rhs.split_first() else {
        return Err(ParseError::new(ln, col_of(raw, &body[arrow..]), "right side needs a control state"));
    };
    known(doc, true, ln, raw, from)?;
    known(doc, false, ln, raw, symbol)?;
    known(doc, true, ln, raw, to)?;
    for x in push {
        known(doc, false, ln, raw, x)?;
    }
    let mut weight = None;
    let mut tag = None;
    if let Some(ann) = annotations {
        for piece in ann.split('@') {
            let words: Vec<&str> = piece.split_whitespace().collect();
            match words.as_slice() {
                ["tag", t] => {
                    if tag.is_some() {
                        return Err(ParseError::new(ln, col_of(raw, words[0]), "duplicate tag"));
                    }
                    let (kind, arg) = match t.split_once(':') {
                        Some((k, a)) => (k.to_string(), Some(a.to_string())),
                        None => (t.to_string(), None),
                    };
                    tag = Some(TagSpec { kind, arg });
                }
                [w] if weight.is_none() => weight = Some(w.to_string()),
                [] => {
                    return Err(ParseError::new(ln, col_of(raw, piece), "empty annotation after `@`"));
                }
                _ => {
                    return Err(ParseError::new(
                        ln,
                        col_of(raw, words[0]),
                        format!("unexpected annotation `{}`", piece.trim()),
                    ));
                }
            }
        }
    }
    Ok(RuleLine {
        line: ln,
        from: from.to_string(),
        symbol: symbol.to_string(),
        to: to.to_string(),
        push: push.iter().map(|s| s.to_string()).collect(),
        weight,
        tag,
    })
}

impl WpdsDocument {
    /// Builds the weighted system, reading each rule's weight literal.
    pub fn to_wpds<S: Semiring>(&self) -> Result<Wpds<S>, ParseError> {
        self.to_wpds_with(|r| match &r.weight {
            None => Ok(S::one()),
            Some(w) => S::parse_literal(w).map_err(|e| e.to_string()),
        })
    }

    /// Builds the weighted system with weights computed by `weight`;
    /// errors are reported at the rule's line.
    pub fn to_wpds_with<S: Semiring>(
        &self,
        mut weight: impl FnMut(&RuleLine) -> Result<S, String>,
    ) -> Result<Wpds<S>, ParseError> {
        if let Some(k) = self.semiring {
            if k.name() != S::NAME {
                return Err(ParseError::new(
                    1,
                    1,
                    format!("file declares semiring `{k}` but `{}` was requested", S::NAME),
                ));
            }
        }
        let mut w: Wpds<S> = Wpds::new(self.states.iter().cloned(), self.stack.iter().cloned())
            .map_err(|e| ParseError::new(1, 1, e.to_string()))?;
        for r in &self.rules {
            let d = weight(r).map_err(|m| ParseError::new(r.line, 1, m))?;
            let to_err = |e: super::WpdsError| ParseError::new(r.line, 1, e.to_string());
            let rule = Rule::new(
                w.state(&r.from).map_err(to_err)?,
                w.symbol(&r.symbol).map_err(to_err)?,
                w.state(&r.to).map_err(to_err)?,
                r.push.iter().map(|x| w.symbol(x)).collect::<Result<_, _>>().map_err(to_err)?,
                d,
            );
            w.add_rule(rule).map_err(to_err)?;
        }
        Ok(w)
    }

    /// Parses a pattern such as `q` or `p X *` against the declarations,
    /// as given on a command line.
    pub fn parse_pattern(&self, text: &str) -> Result<ConfigPattern, ParseError> {
        let words: Vec<&str> = text.split_whitespace().collect();
        let Some(first) = words.first() else {
            return Err(ParseError::new(1, 1, "a pattern needs a control state"));
        };
        parse_pattern(self, 1, text, first, &words)
    }

    /// The `target` directives as an automaton; `None` if there are none.
    pub fn target_automaton(&self) -> Option<Nfa> {
        if self.targets.is_empty() {
            return None;
        }
        let nfa = Nfa::from_patterns(
            self.states.iter().cloned(),
            self.stack.iter().cloned(),
            self.targets
                .iter()
                .map(|t| (t.state.as_str(), t.stack.as_slice(), t.any_suffix)),
        )
        .expect("directive names were checked at parse time");
        Some(nfa)
    }
}

impl fmt::Display for WpdsDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(k) = self.semiring {
            writeln!(f, "semiring {k}")?;
        }
        writeln!(f, "states {}", self.states.join(" "))?;
        writeln!(f, "stack {}", self.stack.join(" "))?;
        for r in &self.rules {
            write!(f, "{} {} -> {}", r.from, r.symbol, r.to)?;
            for x in &r.push {
                write!(f, " {x}")?;
            }
            if let Some(w) = &r.weight {
                write!(f, " @ {w}")?;
            }
            if let Some(t) = &r.tag {
                write!(f, " @tag {t}")?;
            }
            writeln!(f)?;
        }
        for t in &self.targets {
            writeln!(f, "target {t}")?;
        }
        if let Some(s) = &self.source {
            writeln!(f, "source {s}")?;
        }
        Ok(())
    }
}
