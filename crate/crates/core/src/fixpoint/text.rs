//! Equation text format and its JSON mirror.
//!
//! ```text
//! semiring minplus-int          # optional, defaults to the caller's choice
//! X1 = (-2) | X2 . X3
//! X2 = X3 . (1) ; X3 = X1 | X2
//! ```
//!
//! `|` is combine, `.` is extend, parenthesized tokens are constants and `#`
//! starts a comment. Equations end at a newline or `;`. An empty right-hand
//! side is the empty polynomial.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::semiring::{Semiring, SemiringKind};
use crate::ParseError;

use super::{Factor, Monomial, Polynomial, PolynomialSystem};

struct Statement<'a> {
    line: usize,
    /// 1-based column of `text`'s first byte.
    column: usize,
    text: &'a str,
}

fn statements(input: &str) -> Vec<Statement<'_>> {
    let mut out = Vec::new();
    for (ln, line) in input.lines().enumerate() {
        let code = line.split('#').next().unwrap_or("");
        let mut offset = 0;
        for piece in code.split(';') {
            let lead = piece.len() - piece.trim_start().len();
            let text = piece.trim();
            if !text.is_empty() {
                out.push(Statement {
                    line: ln + 1,
                    column: char_column(line, offset + lead),
                    text,
                });
            }
            offset += piece.len() + 1;
        }
    }
    out
}

fn char_column(line: &str, byte: usize) -> usize {
    line[..byte].chars().count() + 1
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

fn header_of<'a>(st: &Statement<'a>) -> Option<&'a str> {
    let rest = st.text.strip_prefix("semiring")?;
    rest.starts_with(char::is_whitespace).then(|| rest.trim())
}

/// The semiring named by a `semiring` header line, if any.
pub fn semiring_header(input: &str) -> Result<Option<SemiringKind>, ParseError> {
    for st in statements(input) {
        if let Some(name) = header_of(&st) {
            return name
                .parse()
                .map(Some)
                .map_err(|e: crate::semiring::SemiringError| {
                    ParseError::new(st.line, st.column, e.to_string())
                });
        }
    }
    Ok(None)
}

/// Parses an equation system. Variables are numbered in the order their
/// equations appear; right-hand sides may refer to later variables.
pub fn parse_system<S: Semiring>(input: &str) -> Result<PolynomialSystem<S>, ParseError> {
    let mut names: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut bodies = Vec::new();
    for st in statements(input) {
        if let Some(name) = header_of(&st) {
            if name != S::NAME {
                return Err(ParseError::new(
                    st.line,
                    st.column,
                    format!("file declares semiring `{name}` but `{}` was requested", S::NAME),
                ));
            }
            continue;
        }
        let Some(eq) = st.text.find('=') else {
            return Err(ParseError::new(st.line, st.column, "expected `VAR = polynomial`"));
        };
        let lhs = st.text[..eq].trim();
        if !is_ident(lhs) {
            return Err(ParseError::new(
                st.line,
                st.column,
                format!("invalid variable name `{lhs}`"),
            ));
        }
        if index.insert(lhs.to_string(), names.len()).is_some() {
            return Err(ParseError::new(
                st.line,
                st.column,
                format!("duplicate equation for `{lhs}`"),
            ));
        }
        names.push(lhs.to_string());
        bodies.push((st.line, st.column + st.text[..=eq].chars().count(), &st.text[eq + 1..]));
    }
    let mut components = Vec::with_capacity(bodies.len());
    for (line, column, body) in bodies {
        components.push(parse_polynomial::<S>(body, line, column, &index)?);
    }
    PolynomialSystem::new(names, components)
        .map_err(|e| ParseError::new(1, 1, e.to_string()))
}

fn parse_polynomial<S: Semiring>(
    body: &str,
    line: usize,
    column: usize,
    index: &HashMap<String, usize>,
) -> Result<Polynomial<S>, ParseError> {
    let mut monomials = Vec::new();
    if body.trim().is_empty() {
        return Ok(Polynomial::zero());
    }
    let mut col = column;
    for mono in body.split('|') {
        let mut factors = Vec::new();
        let mut fcol = col;
        for factor in mono.split('.') {
            let lead = factor.chars().count() - factor.trim_start().chars().count();
            let at = fcol + lead;
            let f = factor.trim();
            if f.is_empty() {
                return Err(ParseError::new(line, at, "missing factor"));
            }
            if let Some(lit) = f.strip_prefix('(') {
                let Some(lit) = lit.strip_suffix(')') else {
                    return Err(ParseError::new(line, at, "unterminated constant"));
                };
                let c = S::parse_literal(lit.trim())
                    .map_err(|e| ParseError::new(line, at, e.to_string()))?;
                factors.push(Factor::Const(c));
            } else if let Some(&i) = index.get(f) {
                factors.push(Factor::Var(i));
            } else if is_ident(f) {
                return Err(ParseError::new(line, at, format!("undefined variable `{f}`")));
            } else {
                return Err(ParseError::new(line, at, format!("unexpected `{f}`")));
            }
            fcol += factor.chars().count() + 1;
        }
        monomials.push(Monomial::new(factors));
        col += mono.chars().count() + 1;
    }
    Ok(Polynomial::new(monomials))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FactorJson {
    Var { var: String },
    Const {
        #[serde(rename = "const")]
        value: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationJson {
    pub var: String,
    pub monomials: Vec<Vec<FactorJson>>,
}

/// Machine-readable mirror of the text format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemJson {
    pub semiring: String,
    pub equations: Vec<EquationJson>,
}

pub fn system_to_json<S: Semiring>(system: &PolynomialSystem<S>) -> SystemJson {
    SystemJson {
        semiring: S::NAME.to_string(),
        equations: system
            .names()
            .iter()
            .zip(system.components())
            .map(|(name, p)| EquationJson {
                var: name.clone(),
                monomials: p
                    .monomials
                    .iter()
                    .map(|m| {
                        m.factors
                            .iter()
                            .map(|f| match f {
                                Factor::Const(c) => FactorJson::Const { value: c.to_string() },
                                Factor::Var(i) => FactorJson::Var {
                                    var: system.name(*i).to_string(),
                                },
                            })
                            .collect()
                    })
                    .collect(),
            })
            .collect(),
    }
}

pub fn system_from_json<S: Semiring>(json: &SystemJson) -> Result<PolynomialSystem<S>, ParseError> {
    if json.semiring != S::NAME {
        return Err(ParseError::new(
            1,
            1,
            format!("system is over `{}`, expected `{}`", json.semiring, S::NAME),
        ));
    }
    let index: HashMap<&str, usize> = json
        .equations
        .iter()
        .enumerate()
        .map(|(i, e)| (e.var.as_str(), i))
        .collect();
    if index.len() != json.equations.len() {
        return Err(ParseError::new(1, 1, "duplicate variable"));
    }
    let mut components = Vec::new();
    for (eq_no, e) in json.equations.iter().enumerate() {
        let mut monomials = Vec::new();
        for m in &e.monomials {
            let mut factors = Vec::new();
            for f in m {
                factors.push(match f {
                    FactorJson::Var { var } => Factor::Var(*index.get(var.as_str()).ok_or_else(|| {
                        ParseError::new(eq_no + 1, 1, format!("undefined variable `{var}`"))
                    })?),
                    FactorJson::Const { value } => Factor::Const(
                        S::parse_literal(value)
                            .map_err(|err| ParseError::new(eq_no + 1, 1, err.to_string()))?,
                    ),
                });
            }
            monomials.push(Monomial::new(factors));
        }
        components.push(Polynomial::new(monomials));
    }
    let names = json.equations.iter().map(|e| e.var.clone()).collect();
    PolynomialSystem::new(names, components).map_err(|e| ParseError::new(1, 1, e.to_string()))
}
