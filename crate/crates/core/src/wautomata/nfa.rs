use std::collections::{BTreeSet, HashMap};
use std::fmt;

use super::AutomatonError;

/// An unweighted P-automaton: reads the stack top-first, starting in the
/// state named after the configuration's control state.
///
/// States `0..controls` are the control states, in the order given at
/// construction. Symbols are referred to by name so that an automaton can
/// be checked against any system's alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nfa {
    states: Vec<String>,
    controls: usize,
    symbols: Vec<String>,
    /// `(from, symbol index, to)`, sorted and deduplicated.
    transitions: BTreeSet<(usize, usize, usize)>,
    finals: BTreeSet<usize>,
    state_index: HashMap<String, usize>,
    symbol_index: HashMap<String, usize>,
}

impl Nfa {
    pub fn new<A, B>(controls: A, symbols: B) -> Self
    where
        A: IntoIterator,
        A::Item: Into<String>,
        B: IntoIterator,
        B::Item: Into<String>,
    {
        let mut nfa = Nfa {
            states: vec![],
            controls: 0,
            symbols: vec![],
            transitions: BTreeSet::new(),
            finals: BTreeSet::new(),
            state_index: HashMap::new(),
            symbol_index: HashMap::new(),
        };
        for c in controls {
            nfa.add_state(c);
        }
        nfa.controls = nfa.states.len();
        for s in symbols {
            nfa.add_symbol(s);
        }
        nfa
    }

    /// Returns the index of `name`, adding a non-control state if new.
    pub fn add_state(&mut self, name: impl Into<String>) -> usize {
        let name = name.into();
        if let Some(&i) = self.state_index.get(&name) {
            return i;
        }
        self.state_index.insert(name.clone(), self.states.len());
        self.states.push(name);
        self.states.len() - 1
    }

    pub fn add_symbol(&mut self, name: impl Into<String>) -> usize {
        let name = name.into();
        if let Some(&i) = self.symbol_index.get(&name) {
            return i;
        }
        self.symbol_index.insert(name.clone(), self.symbols.len());
        self.symbols.push(name);
        self.symbols.len() - 1
    }

    pub fn add_transition(&mut self, from: usize, symbol: &str, to: usize) -> Result<(), AutomatonError> {
        let x = self
            .symbol_index
            .get(symbol)
            .copied()
            .ok_or_else(|| AutomatonError::UnknownSymbol(symbol.to_string()))?;
        if from >= self.states.len() || to >= self.states.len() {
            return Err(AutomatonError::UnknownStateIndex(from.max(to)));
        }
        self.transitions.insert((from, x, to));
        Ok(())
    }

    pub fn set_final(&mut self, state: usize) {
        self.finals.insert(state);
    }

    /// Accepts every configuration matching one of the patterns
    /// `(state, word, any_suffix)`: the control state followed by `word`,
    /// then anything in `Γ*` if `any_suffix` is set, else nothing.
    pub fn from_patterns<'a, A, B>(
        controls: A,
        symbols: B,
        patterns: impl IntoIterator<Item = (&'a str, &'a [String], bool)>,
    ) -> Result<Self, AutomatonError>
    where
        A: IntoIterator,
        A::Item: Into<String>,
        B: IntoIterator,
        B::Item: Into<String>,
    {
        let mut nfa = Nfa::new(controls, symbols);
        let all: Vec<String> = nfa.symbols.clone();
        for (k, (state, word, any_suffix)) in patterns.into_iter().enumerate() {
            let mut cur = nfa.control(state)?;
            for (j, x) in word.iter().enumerate() {
                let next = nfa.add_state(format!("%t{k}.{}", j + 1));
                nfa.add_transition(cur, x, next)?;
                cur = next;
            }
            if any_suffix {
                // Loop on a private sink so control states stay loop-free.
                let sink = nfa.add_state(format!("%t{k}.*"));
                for x in &all {
                    nfa.add_transition(cur, x, sink)?;
                    nfa.add_transition(sink, x, sink)?;
                }
                nfa.set_final(sink);
            }
            nfa.set_final(cur);
        }
        Ok(nfa)
    }

    pub fn control(&self, name: &str) -> Result<usize, AutomatonError> {
        match self.state_index.get(name) {
            Some(&i) if i < self.controls => Ok(i),
            _ => Err(AutomatonError::UnknownState(name.to_string())),
        }
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_controls(&self) -> usize {
        self.controls
    }

    pub fn state_name(&self, i: usize) -> &str {
        &self.states[i]
    }

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub fn symbol_name(&self, i: usize) -> &str {
        &self.symbols[i]
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn transitions(&self) -> impl Iterator<Item = (usize, &str, usize)> + '_ {
        self.transitions
            .iter()
            .map(|&(p, x, q)| (p, self.symbols[x].as_str(), q))
    }

    pub fn is_final(&self, state: usize) -> bool {
        self.finals.contains(&state)
    }

    pub fn finals(&self) -> impl Iterator<Item = usize> + '_ {
        self.finals.iter().copied()
    }

    /// Whether the configuration `state word` is accepted.
    pub fn accepts(&self, state: &str, word: &[&str]) -> bool {
        let Ok(start) = self.control(state) else {
            return false;
        };
        let mut cur: BTreeSet<usize> = BTreeSet::from([start]);
        for x in word {
            let Some(&xi) = self.symbol_index.get(*x) else {
                return false;
            };
            cur = self
                .transitions
                .iter()
                .filter(|(p, y, _)| *y == xi && cur.contains(p))
                .map(|&(_, _, q)| q)
                .collect();
            if cur.is_empty() {
                return false;
            }
        }
        cur.iter().any(|s| self.finals.contains(s))
    }
}

impl fmt::Display for Nfa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "stack {}", self.symbols.join(" "))?;
        for (i, s) in self.states.iter().enumerate() {
            write!(f, "state {s}")?;
            if i < self.controls {
                write!(f, " initial")?;
            }
            if self.finals.contains(&i) {
                write!(f, " final")?;
            }
            writeln!(f)?;
        }
        for (p, x, q) in self.transitions() {
            writeln!(f, "trans {} {x} {}", self.states[p], self.states[q])?;
        }
        Ok(())
    }
}
