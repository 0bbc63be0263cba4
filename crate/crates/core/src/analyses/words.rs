//! Bounded word enumeration, used as an oracle for shape-balancedness.

use std::collections::{BTreeMap, BTreeSet};

use super::cfg::{alternatives, Cfg};
use super::AnalysisError;

/// Words of one symbol, bucketed by length: `by_len[l]` holds words of
/// length `l` over interned terminal ids.
type Buckets = Vec<BTreeSet<Vec<usize>>>;

/// A right-hand side symbol: a nonterminal name or a terminal id.
type Symbol<'a> = Result<&'a str, usize>;

/// All words of length at most `max_len` derivable from the start
/// symbol. Errors once more than `cap` words are held in total.
pub fn words_up_to(g: &Cfg, max_len: usize, cap: u64) -> Result<BTreeSet<Vec<String>>, AnalysisError> {
    let alts = alternatives(g);
    let mut terminals: Vec<String> = vec![];
    let mut intern = |t: &str| match terminals.iter().position(|x| x == t) {
        Some(i) => i,
        None => {
            terminals.push(t.to_string());
            terminals.len() - 1
        }
    };
    // Each right-hand side as nonterminal names or terminal ids.
    let rules: Vec<(&str, Vec<Vec<Symbol>>)> = alts
        .iter()
        .map(|(&a, rhss)| {
            let rhss = rhss
                .iter()
                .map(|rhs| {
                    rhs.iter()
                        .map(|x| if alts.contains_key(x.as_str()) { Ok(x.as_str()) } else { Err(intern(x)) })
                        .collect()
                })
                .collect();
            (a, rhss)
        })
        .collect();
    let empty = || vec![BTreeSet::new(); max_len + 1];
    let mut table: BTreeMap<&str, Buckets> = alts.keys().map(|&a| (a, empty())).collect();
    loop {
        let mut changed = false;
        for (a, rhss) in &rules {
            let mut found = empty();
            for rhs in rhss {
                let mut partial = empty();
                partial[0].insert(vec![]);
                for x in rhs {
                    let mut next = empty();
                    for (pl, ps) in partial.iter().enumerate() {
                        for p in ps {
                            match x {
                                Ok(nt) => {
                                    for (wl, ws) in table[nt].iter().enumerate().take(max_len - pl + 1) {
                                        for w in ws {
                                            let mut v = p.clone();
                                            v.extend_from_slice(w);
                                            next[pl + wl].insert(v);
                                        }
                                    }
                                }
                                Err(t) if pl < max_len => {
                                    let mut v = p.clone();
                                    v.push(*t);
                                    next[pl + 1].insert(v);
                                }
                                Err(_) => {}
                            }
                        }
                    }
                    partial = next;
                }
                for (l, ws) in partial.into_iter().enumerate() {
                    found[l].extend(ws);
                }
            }
            let entry = table.get_mut(a).expect("every nonterminal has an entry");
            for (l, ws) in found.into_iter().enumerate() {
                let before = entry[l].len();
                entry[l].extend(ws);
                changed |= entry[l].len() != before;
            }
        }
        let total: usize = table.values().flatten().map(BTreeSet::len).sum();
        if total as u64 > cap {
            return Err(AnalysisError::EnumerationCap(cap));
        }
        if !changed {
            break;
        }
    }
    let start = table.remove(g.start.as_str()).unwrap_or_default();
    Ok(start
        .into_iter()
        .flatten()
        .map(|w| w.into_iter().map(|t| terminals[t].clone()).collect())
        .collect())
}

/// The first word that breaks shape-balancedness, with the reason.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleViolation {
    /// The total weight is non-zero.
    Total { word: Vec<String>, weight: i64 },
    /// A prefix has negative weight.
    Prefix { word: Vec<String>, prefix_len: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub words: usize,
    pub violation: Option<OracleViolation>,
}

/// Checks every word up to `max_len`: total weight 0 and every prefix
/// weight nonnegative. Not a proof for longer words.
pub fn shape_oracle(g: &Cfg, max_len: usize, cap: u64) -> Result<OracleResult, AnalysisError> {
    let words = words_up_to(g, max_len, cap)?;
    let mut violation = None;
    for w in &words {
        let mut acc = 0i64;
        let mut bad_prefix = None;
        for (i, t) in w.iter().enumerate() {
            acc += g.terminal_weight(t);
            if acc < 0 && bad_prefix.is_none() {
                bad_prefix = Some(i + 1);
            }
        }
        let v = if acc != 0 {
            Some(OracleViolation::Total {
                word: w.clone(),
                weight: acc,
            })
        } else {
            bad_prefix.map(|prefix_len| OracleViolation::Prefix {
                word: w.clone(),
                prefix_len,
            })
        };
        if v.is_some() {
            violation = v;
            break;
        }
    }
    Ok(OracleResult {
        words: words.len(),
        violation,
    })
}
