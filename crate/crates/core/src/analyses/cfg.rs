//! Context-free grammars over a paired alphabet and their pushdown
//! translation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;

use crate::semiring::IntMinPlus;
use crate::wpds::{Configuration, StateId, Wpds};
use crate::ParseError;

use super::AnalysisError;

/// Control state that runs the derivation.
pub const RUN_STATE: &str = "p";
/// Control state reached after the whole input is derived.
pub const FINAL_STATE: &str = "f";
/// Initial stack symbol; `p %start → p S %bottom`.
pub const START_SYMBOL: &str = "%start";
/// Bottom marker whose pop moves to the final state.
pub const BOTTOM_SYMBOL: &str = "%bottom";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Production {
    pub lhs: String,
    /// Empty for an ε-production.
    pub rhs: Vec<String>,
}

/// A grammar whose terminals are opening tags, closing tags or neutral.
/// Nonterminals are exactly the symbols with a production.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cfg {
    pub start: String,
    pub open: BTreeSet<String>,
    pub close: BTreeSet<String>,
    pub productions: Vec<Production>,
}

impl Cfg {
    pub fn nonterminals(&self) -> BTreeSet<&str> {
        self.productions.iter().map(|p| p.lhs.as_str()).collect()
    }

    pub fn is_nonterminal(&self, x: &str) -> bool {
        self.productions.iter().any(|p| p.lhs == x)
    }

    /// Terminals in first-occurrence order, then declared but unused tags.
    pub fn terminals(&self) -> Vec<String> {
        let nts = self.nonterminals();
        let mut out: Vec<String> = vec![];
        let rhs = self.productions.iter().flat_map(|p| &p.rhs);
        for x in rhs.chain(&self.open).chain(&self.close) {
            if !nts.contains(x.as_str()) && !out.contains(x) {
                out.push(x.clone());
            }
        }
        out
    }

    /// `+1` for opening, `−1` for closing, 0 for neutral terminals.
    pub fn terminal_weight(&self, t: &str) -> i64 {
        if self.open.contains(t) {
            1
        } else if self.close.contains(t) {
            -1
        } else {
            0
        }
    }
}

impl fmt::Display for Cfg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "start {}", self.start)?;
        if !self.open.is_empty() {
            writeln!(f, "open {}", self.open.iter().cloned().collect::<Vec<_>>().join(" "))?;
        }
        if !self.close.is_empty() {
            writeln!(f, "close {}", self.close.iter().cloned().collect::<Vec<_>>().join(" "))?;
        }
        for p in &self.productions {
            if p.rhs.is_empty() {
                writeln!(f, "{} -> @", p.lhs)?;
            } else {
                writeln!(f, "{} -> {}", p.lhs, p.rhs.join(" "))?;
            }
        }
        Ok(())
    }
}

/// Parses `start S`, `open a …`, `close b …` and `A -> α | β` lines; `@`
/// alone denotes ε and `#` starts a comment.
pub fn parse_cfg(input: &str) -> Result<Cfg, ParseError> {
    let mut start: Option<String> = None;
    let mut open = BTreeSet::new();
    let mut close = BTreeSet::new();
    let mut productions = vec![];
    for (ln, raw) in input.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let words: Vec<&str> = line.split_whitespace().collect();
        let Some(&head) = words.first() else { continue };
        let col = raw.find(head).map_or(1, |c| c + 1);
        let err = |m: String| ParseError::new(ln + 1, col, m);
        for w in &words {
            if w.contains('%') {
                return Err(err(format!("`%` is reserved, found `{w}`")));
            }
        }
        match head {
            "start" => {
                if words.len() != 2 {
                    return Err(err("expected `start SYMBOL`".into()));
                }
                if start.replace(words[1].to_string()).is_some() {
                    return Err(err("duplicate `start`".into()));
                }
            }
            "open" | "close" => {
                let set = if head == "open" { &mut open } else { &mut close };
                for w in &words[1..] {
                    if *w == "@" || *w == "|" || *w == "->" {
                        return Err(err(format!("`{w}` cannot be a tag")));
                    }
                    set.insert(w.to_string());
                }
            }
            _ => {
                if words.get(1) != Some(&"->") {
                    return Err(err("expected `start`, `open`, `close` or `A -> …`".into()));
                }
                for alt in words[2..].split(|w| *w == "|") {
                    let rhs: Vec<String> = match alt {
                        ["@"] => vec![],
                        [] => return Err(err("empty alternative; write `@` for ε".into())),
                        _ if alt.contains(&"@") => return Err(err("`@` must stand alone".into())),
                        _ => alt.iter().map(|s| s.to_string()).collect(),
                    };
                    productions.push(Production {
                        lhs: head.to_string(),
                        rhs,
                    });
                }
            }
        }
    }
    let start = start.ok_or_else(|| ParseError::new(1, 1, "missing `start`"))?;
    if let Some(t) = open.intersection(&close).next() {
        return Err(ParseError::new(1, 1, format!("`{t}` is both opening and closing")));
    }
    let g = Cfg {
        start,
        open,
        close,
        productions,
    };
    if let Some(t) = g.open.iter().chain(&g.close).find(|t| g.is_nonterminal(t)) {
        return Err(ParseError::new(1, 1, format!("tag `{t}` also has a production")));
    }
    Ok(g)
}

/// Removes non-generating and unreachable nonterminals. Returns the
/// reduced grammar and the names of unreachable nonterminals.
pub fn remove_useless(g: &Cfg) -> (Cfg, Vec<String>) {
    let nts = g.nonterminals();
    let mut generating: BTreeSet<&str> = BTreeSet::new();
    loop {
        let before = generating.len();
        for p in &g.productions {
            if p.rhs.iter().all(|x| !nts.contains(x.as_str()) || generating.contains(x.as_str())) {
                generating.insert(&p.lhs);
            }
        }
        if generating.len() == before {
            break;
        }
    }
    let kept: Vec<&Production> = g
        .productions
        .iter()
        .filter(|p| {
            generating.contains(p.lhs.as_str())
                && p.rhs.iter().all(|x| !nts.contains(x.as_str()) || generating.contains(x.as_str()))
        })
        .collect();
    let mut reachable: BTreeSet<&str> = BTreeSet::from([g.start.as_str()]);
    let mut stack = vec![g.start.as_str()];
    while let Some(a) = stack.pop() {
        for p in kept.iter().filter(|p| p.lhs == a) {
            for x in &p.rhs {
                if nts.contains(x.as_str()) && reachable.insert(x) {
                    stack.push(x);
                }
            }
        }
    }
    let unreachable = nts
        .iter()
        .filter(|a| !reachable.contains(*a))
        .map(|a| a.to_string())
        .collect();
    let reduced = Cfg {
        start: g.start.clone(),
        open: g.open.clone(),
        close: g.close.clone(),
        productions: kept
            .into_iter()
            .filter(|p| reachable.contains(p.lhs.as_str()))
            .cloned()
            .collect(),
    };
    (reduced, unreachable)
}

/// A grammar's pushdown translation.
#[derive(Debug, Clone)]
pub struct CfgWpds {
    /// Min-plus weights: `+1` on reading an opening tag, `−1` on a
    /// closing tag, 0 elsewhere.
    pub wpds: Wpds<IntMinPlus>,
    /// `p %start`.
    pub initial: Configuration,
    /// The final control states; the language is the set of words read
    /// on paths from `initial` to `f ε`.
    pub finals: Vec<StateId>,
    pub warnings: Vec<String>,
    /// The terminal read by each rule, if any.
    pub reads: Vec<Option<String>>,
}

/// Leftmost-derivation pushdown automaton with two control states.
///
/// `p A → p α` expands a production, `p a → p ε` reads terminal `a`
/// with its tag weight, and `p %bottom → f ε` accepts. Useless
/// nonterminals are dropped first; unreachable ones produce warnings.
pub fn cfg_to_wpds(g: &Cfg) -> Result<CfgWpds, AnalysisError> {
    if !g.is_nonterminal(&g.start) {
        return Err(AnalysisError::UnknownStart(g.start.clone()));
    }
    let (reduced, unreachable) = remove_useless(g);
    let mut warnings: Vec<String> = unreachable
        .iter()
        .map(|a| format!("nonterminal `{a}` is unreachable from `{}`", g.start))
        .collect();
    if reduced.productions.is_empty() {
        warnings.push("the language is empty".to_string());
    }
    let mut symbols: Vec<String> = vec![START_SYMBOL.into(), BOTTOM_SYMBOL.into()];
    symbols.extend(g.nonterminals().into_iter().map(String::from));
    symbols.extend(g.terminals());
    let mut w = Wpds::new([RUN_STATE, FINAL_STATE], symbols)?;
    let mut reads = vec![];
    let zero = || IntMinPlus::from(0);
    w.add_named_rule(RUN_STATE, START_SYMBOL, zero(), RUN_STATE, &[g.start.as_str(), BOTTOM_SYMBOL])?;
    reads.push(None);
    for p in &reduced.productions {
        let rhs: Vec<&str> = p.rhs.iter().map(String::as_str).collect();
        w.add_named_rule(RUN_STATE, &p.lhs, zero(), RUN_STATE, &rhs)?;
        reads.push(None);
    }
    // Every terminal gets a read rule so that the alphabet is uniform.
    for t in g.terminals() {
        let d = IntMinPlus::Finite(BigInt::from(g.terminal_weight(&t)));
        w.add_named_rule(RUN_STATE, &t, d, RUN_STATE, &[])?;
        reads.push(Some(t));
    }
    w.add_named_rule(RUN_STATE, BOTTOM_SYMBOL, zero(), FINAL_STATE, &[])?;
    reads.push(None);
    let initial = w.parse_configuration(&format!("{RUN_STATE} {START_SYMBOL}"))?;
    let finals = vec![w.state(FINAL_STATE)?];
    Ok(CfgWpds {
        wpds: w,
        initial,
        finals,
        warnings,
        reads,
    })
}

impl CfgWpds {
    /// The terminals read along a rule sequence.
    pub fn word(&self, rules: &[usize]) -> Vec<String> {
        rules.iter().filter_map(|&i| self.reads[i].clone()).collect()
    }
}

/// Maps each nonterminal to its alternatives; used by the word oracle.
pub(crate) fn alternatives(g: &Cfg) -> BTreeMap<&str, Vec<&[String]>> {
    let mut m: BTreeMap<&str, Vec<&[String]>> = BTreeMap::new();
    for p in &g.productions {
        m.entry(p.lhs.as_str()).or_default().push(&p.rhs);
    }
    m
}
