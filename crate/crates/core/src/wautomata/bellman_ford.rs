use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigInt;

use crate::semiring::{IntegerWeight, Value};

use super::WAutomaton;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtremalMode {
    /// Minimum path sum; ⊥ edges count as −∞.
    Shortest,
    /// Maximum path sum; ⊥ edges count as +∞.
    Longest,
}

/// The extremal weight from one state to the final states.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Extremal {
    /// No final state is reachable.
    Unreachable,
    Finite(BigInt),
    /// −∞ for shortest, +∞ for longest.
    Divergent,
}

impl fmt::Display for Extremal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extremal::Unreachable => f.write_str("unreachable"),
            Extremal::Finite(n) => n.fmt(f),
            Extremal::Divergent => f.write_str("divergent"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalResult {
    pub mode: ExtremalMode,
    /// Indexed by automaton state.
    pub values: Vec<Extremal>,
    /// For finite values: the transition that realises the extremum.
    successor: Vec<Option<usize>>,
}

impl ExtremalResult {
    pub fn value(&self, state: usize) -> &Extremal {
        &self.values[state]
    }

    /// Transition indices of an extremal path from `state` to a final
    /// state; `None` unless the value is finite.
    pub fn path(&self, state: usize, a_transitions: &[(usize, usize)]) -> Option<Vec<usize>> {
        if !matches!(self.values[state], Extremal::Finite(_)) {
            return None;
        }
        let mut out = vec![];
        let mut s = state;
        // Finite values have acyclic successor chains ending at a final state.
        while let Some(t) = self.successor[s] {
            out.push(t);
            s = a_transitions[t].1;
            if out.len() > self.values.len() {
                return None;
            }
        }
        Some(out)
    }

    /// Transition indices of an extremal path from `state`, for `a`.
    pub fn witness_path<S: IntegerWeight>(&self, a: &WAutomaton<S>, state: usize) -> Option<Vec<usize>> {
        let ends: Vec<(usize, usize)> = a.transitions().iter().map(|t| (t.from, t.to)).collect();
        self.path(state, &ends)
    }
}

/// Cost of an edge after orienting every problem as a minimization.
#[derive(Clone)]
enum Cost {
    Finite(BigInt),
    NegInfinity,
}

/// Extremal accumulated weight from every state to any final state.
///
/// Runs `|Q| − 1` relaxation rounds and one detection round; states that
/// can reach an improving cycle or a ⊥ edge leading to a final state are
/// divergent.
pub fn bellman_ford_extremal<S: IntegerWeight>(a: &WAutomaton<S>, mode: ExtremalMode) -> ExtremalResult {
    let n = a.states().len();
    let edges: Vec<(usize, usize, Option<Cost>)> = a
        .transitions()
        .iter()
        .map(|t| {
            let cost = match &t.weight {
                Value::Bottom => Some(Cost::NegInfinity),
                Value::Finite(w) => w.as_integer().map(|x| {
                    Cost::Finite(match mode {
                        ExtremalMode::Shortest => x.clone(),
                        ExtremalMode::Longest => -x,
                    })
                }),
            };
            (t.from, t.to, cost)
        })
        .collect();

    let mut dist: Vec<Option<BigInt>> = vec![None; n];
    let mut successor: Vec<Option<usize>> = vec![None; n];
    for f in a.final_states() {
        dist[f] = Some(BigInt::from(0));
    }
    let relax = |dist: &mut Vec<Option<BigInt>>, successor: &mut Vec<Option<usize>>, record: bool| {
        let mut improved = vec![];
        for (i, (u, v, cost)) in edges.iter().enumerate() {
            let (Some(Cost::Finite(c)), Some(dv)) = (cost, &dist[*v]) else { continue };
            let cand = c + dv;
            if dist[*u].as_ref().is_none_or(|du| cand < *du) {
                improved.push(*u);
                if record {
                    dist[*u] = Some(cand);
                    successor[*u] = Some(i);
                }
            }
        }
        improved
    };
    for _ in 1..n.max(1) {
        if relax(&mut dist, &mut successor, true).is_empty() {
            break;
        }
    }

    let mut divergent = vec![false; n];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for u in relax(&mut dist, &mut successor, false) {
        queue.push_back(u);
    }
    for (u, v, cost) in &edges {
        if matches!(cost, Some(Cost::NegInfinity)) && dist[*v].is_some() {
            queue.push_back(*u);
        }
    }
    // Divergence spreads backwards; a ⊥ edge into a divergent state also
    // leaves its source divergent, which the plain edge scan covers.
    while let Some(u) = queue.pop_front() {
        if divergent[u] {
            continue;
        }
        divergent[u] = true;
        for (from, to, cost) in &edges {
            if *to == u && cost.is_some() && !divergent[*from] {
                queue.push_back(*from);
            }
        }
    }

    let values = (0..n)
        .map(|s| {
            if divergent[s] {
                Extremal::Divergent
            } else {
                match &dist[s] {
                    None => Extremal::Unreachable,
                    Some(d) => Extremal::Finite(match mode {
                        ExtremalMode::Shortest => d.clone(),
                        ExtremalMode::Longest => -d,
                    }),
                }
            }
        })
        .collect();
    ExtremalResult {
        mode,
        values,
        successor,
    }
}
