use std::collections::BTreeSet;
use std::fmt;

use crate::semiring::{Semiring, Value};
use crate::wpds::{Configuration, Context, PostStarSolution, PostVar, PreStarSolution, StateId, Wpds};

use super::AutomatonError;

/// Name of the accepting state of post* automata.
pub const ACCEPT_STATE: &str = "%accept";

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Transition<S> {
    pub from: usize,
    /// `None` for ε.
    pub label: Option<usize>,
    pub to: usize,
    pub weight: Value<S>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum AcceptedWeight<S> {
    /// No accepting path; the weight is `0̄`.
    Unreachable,
    Weight(Value<S>),
}

impl<S: Semiring> AcceptedWeight<S> {
    pub fn value(&self) -> Value<S> {
        match self {
            AcceptedWeight::Unreachable => Value::zero(),
            AcceptedWeight::Weight(v) => v.clone(),
        }
    }
}

impl<S: Semiring> fmt::Display for AcceptedWeight<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AcceptedWeight::Unreachable => f.write_str("unreachable"),
            AcceptedWeight::Weight(v) => v.fmt(f),
        }
    }
}

/// A weighted automaton whose transitions carry semiring values or ⊥.
///
/// A configuration `p X₁…Xₙ` is read from the initial state named `p`.
/// Transitions of weight `0̄` are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WAutomaton<S> {
    pub(crate) states: Vec<String>,
    pub(crate) symbols: Vec<String>,
    pub(crate) transitions: Vec<Transition<S>>,
    pub(crate) initial: BTreeSet<usize>,
    pub(crate) finals: BTreeSet<usize>,
}

impl<S: Semiring> WAutomaton<S> {
    pub fn new(symbols: Vec<String>) -> Self {
        WAutomaton {
            states: vec![],
            symbols,
            transitions: vec![],
            initial: BTreeSet::new(),
            finals: BTreeSet::new(),
        }
    }

    pub fn add_state(&mut self, name: impl Into<String>, initial: bool, is_final: bool) -> usize {
        let i = self.states.len();
        self.states.push(name.into());
        if initial {
            self.initial.insert(i);
        }
        if is_final {
            self.finals.insert(i);
        }
        i
    }

    /// Adds a transition unless its weight is `0̄`.
    pub fn add_transition(&mut self, from: usize, label: Option<usize>, to: usize, weight: Value<S>) {
        if !weight.is_zero() {
            self.transitions.push(Transition {
                from,
                label,
                to,
                weight,
            });
        }
    }

    pub fn set_final(&mut self, state: usize) {
        self.finals.insert(state);
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn transitions(&self) -> &[Transition<S>] {
        &self.transitions
    }

    pub fn is_initial(&self, s: usize) -> bool {
        self.initial.contains(&s)
    }

    pub fn is_final(&self, s: usize) -> bool {
        self.finals.contains(&s)
    }

    pub fn initial_states(&self) -> impl Iterator<Item = usize> + '_ {
        self.initial.iter().copied()
    }

    pub fn final_states(&self) -> impl Iterator<Item = usize> + '_ {
        self.finals.iter().copied()
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s == name)
    }

    pub fn symbol_index(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s == name)
    }

    pub fn label_name(&self, label: Option<usize>) -> &str {
        label.map_or("%eps", |x| &self.symbols[x])
    }

    /// Parses `p X Y …` against the state and symbol names.
    pub fn parse_configuration(&self, text: &str) -> Result<(usize, Vec<usize>), AutomatonError> {
        let mut words = text.split_whitespace();
        let state = words
            .next()
            .ok_or_else(|| AutomatonError::UnknownState(String::new()))?;
        let s = self
            .state_index(state)
            .filter(|&s| self.is_initial(s))
            .ok_or_else(|| AutomatonError::NotInitial(state.to_string()))?;
        let word = words
            .map(|x| {
                self.symbol_index(x)
                    .ok_or_else(|| AutomatonError::UnknownSymbol(x.to_string()))
            })
            .collect::<Result<_, _>>()?;
        Ok((s, word))
    }

    /// Extends every entry of `cur` along ε-transitions; ε-paths may be
    /// arbitrarily long but are followed at most `|Q|` times.
    fn eps_closure(&self, cur: &mut [Option<Value<S>>]) {
        if !self.transitions.iter().any(|t| t.label.is_none()) {
            return;
        }
        for _ in 0..self.states.len() {
            let mut changed = false;
            for t in self.transitions.iter().filter(|t| t.label.is_none()) {
                let Some(w) = cur[t.from].clone() else { continue };
                let add = w.extend(&t.weight);
                let merged = match &cur[t.to] {
                    None => add,
                    Some(old) => old.combine(&add),
                };
                if cur[t.to].as_ref() != Some(&merged) {
                    cur[t.to] = Some(merged);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
    }

    /// `v_A(c)`: the combine over accepting paths of the product of
    /// transition weights in traversal order.
    pub fn accepted_weight_ids(&self, state: usize, word: &[usize]) -> AcceptedWeight<S> {
        let n = self.states.len();
        let mut cur: Vec<Option<Value<S>>> = vec![None; n];
        cur[state] = Some(Value::one());
        self.eps_closure(&mut cur);
        for &x in word {
            let mut next: Vec<Option<Value<S>>> = vec![None; n];
            for t in self.transitions.iter().filter(|t| t.label == Some(x)) {
                let Some(w) = &cur[t.from] else { continue };
                let add = w.extend(&t.weight);
                next[t.to] = Some(match next[t.to].take() {
                    None => add,
                    Some(old) => old.combine(&add),
                });
            }
            cur = next;
            self.eps_closure(&mut cur);
        }
        let mut result: Option<Value<S>> = None;
        for f in &self.finals {
            if let Some(w) = &cur[*f] {
                result = Some(match result {
                    None => w.clone(),
                    Some(r) => r.combine(w),
                });
            }
        }
        result.map_or(AcceptedWeight::Unreachable, AcceptedWeight::Weight)
    }

    /// Accepted weight of `text` = `p X Y …`.
    pub fn accepted_weight_str(&self, text: &str) -> Result<AcceptedWeight<S>, AutomatonError> {
        let (s, word) = self.parse_configuration(text)?;
        Ok(self.accepted_weight_ids(s, &word))
    }

    /// Accepted weight of a configuration of the system the automaton was
    /// built from; state and symbol names are matched.
    pub fn accepted_weight<T: Semiring>(
        &self,
        wpds: &Wpds<T>,
        c: &Configuration,
    ) -> Result<AcceptedWeight<S>, AutomatonError> {
        let s = self
            .state_index(wpds.state_name(c.state))
            .filter(|&s| self.is_initial(s))
            .ok_or_else(|| AutomatonError::NotInitial(wpds.state_name(c.state).to_string()))?;
        let word = c
            .stack
            .iter()
            .map(|&x| {
                let name = wpds.symbol_name(x);
                self.symbol_index(name)
                    .ok_or_else(|| AutomatonError::UnknownSymbol(name.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.accepted_weight_ids(s, &word))
    }

    /// Maps every stored weight; `0̄` results drop the transition.
    pub fn map_weights<T: Semiring>(&self, mut f: impl FnMut(&Value<S>) -> Value<T>) -> WAutomaton<T> {
        let mut out = WAutomaton {
            states: self.states.clone(),
            symbols: self.symbols.clone(),
            transitions: vec![],
            initial: self.initial.clone(),
            finals: self.finals.clone(),
        };
        for t in &self.transitions {
            out.add_transition(t.from, t.label, t.to, f(&t.weight));
        }
        out
    }
}

/// The pre* automaton: states are the control states, `p -X-> q` carries
/// `[pXq]`, and `target` together with `extra_finals` are final.
pub fn from_pre_star<S: Semiring>(
    wpds: &Wpds<S>,
    solution: &PreStarSolution<S>,
    extra_finals: &[StateId],
) -> WAutomaton<S> {
    let mut a = WAutomaton::new(wpds.symbol_names().to_vec());
    for p in wpds.states() {
        let fin = p == solution.target || extra_finals.contains(&p);
        a.add_state(wpds.state_name(p), true, fin);
    }
    for (&(p, x, q), v) in solution.vars.iter().zip(&solution.values) {
        a.add_transition(p.0, Some(x.0), q.0, v.clone());
    }
    a
}

/// The post* automaton: states are the control states, one state per
/// mid-state `(q,Y)` named `q%Y`, and [`ACCEPT_STATE`], which is final.
pub fn from_post_star<S: Semiring>(wpds: &Wpds<S>, solution: &PostStarSolution<S>) -> WAutomaton<S> {
    let mut a = WAutomaton::new(wpds.symbol_names().to_vec());
    for p in wpds.states() {
        a.add_state(wpds.state_name(p), true, false);
    }
    let base = wpds.num_states();
    for &(q, y) in &solution.mids {
        a.add_state(format!("{}%{}", wpds.state_name(q), wpds.symbol_name(y)), false, false);
    }
    let accept = a.add_state(ACCEPT_STATE, false, true);
    let ctx = |s: Context| match s {
        Context::Source => accept,
        Context::Mid(m) => base + solution.mids.binary_search(&m).expect("known mid-state"),
    };
    for (v, w) in solution.vars.iter().zip(&solution.values) {
        match *v {
            PostVar::Head(p, x, s) => a.add_transition(p.0, Some(x.0), ctx(s), w.clone()),
            PostVar::Empty(p, s) => a.add_transition(p.0, None, ctx(s), w.clone()),
            PostVar::Pushed(m, y, s) => a.add_transition(ctx(Context::Mid(m)), Some(y.0), ctx(s), w.clone()),
        }
    }
    a
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::semiring::IntMinPlus;
    use crate::wpds::model::tests::two_state;
    use crate::wpds::{solve_post_star, solve_pre_star};

    pub(crate) fn tainted() -> WAutomaton<IntMinPlus> {
        let w = two_state();
        let sol = solve_pre_star(&w, w.state("q").unwrap()).unwrap();
        from_pre_star(&w, &sol, &[])
    }

    fn mp(n: i64) -> AcceptedWeight<IntMinPlus> {
        AcceptedWeight::Weight(Value::Finite(IntMinPlus::from(n)))
    }

    #[test]
    fn tainted_transitions() {
        let a = tainted();
        let mut ts: Vec<String> = a
            .transitions()
            .iter()
            .map(|t| format!("{} {} {} {}", a.states[t.from], a.label_name(t.label), a.states[t.to], t.weight))
            .collect();
        ts.sort();
        assert_eq!(ts, ["p X q bot", "p Y p 1", "q Y q -2"]);
    }

    #[test]
    fn tainted_weights() {
        let a = tainted();
        assert_eq!(a.accepted_weight_str("q Y Y").unwrap(), mp(-4));
        assert_eq!(a.accepted_weight_str("q Y").unwrap(), mp(-2));
        assert_eq!(a.accepted_weight_str("p X").unwrap(), AcceptedWeight::Weight(Value::Bottom));
        assert_eq!(a.accepted_weight_str("q").unwrap(), mp(0));
        assert_eq!(a.accepted_weight_str("p").unwrap(), AcceptedWeight::Unreachable);
        assert!(a.accepted_weight_str("r").is_err());
        assert!(a.accepted_weight_str("q Z").is_err());
    }

    #[test]
    fn single_pop_rule() {
        let mut w = Wpds::new(["p"], ["X"]).unwrap();
        w.add_named_rule("p", "X", IntMinPlus::from(5), "p", &[]).unwrap();
        let sol = solve_pre_star(&w, StateId(0)).unwrap();
        let a = from_pre_star(&w, &sol, &[]);
        assert_eq!(a.transitions().len(), 1);
        assert_eq!(a.accepted_weight_str("p X X").unwrap(), mp(10));
    }

    #[test]
    fn empty_solution_accepts_only_target() {
        let w = Wpds::<IntMinPlus>::new(["p", "q"], ["X"]).unwrap();
        let sol = solve_pre_star(&w, StateId(1)).unwrap();
        let a = from_pre_star(&w, &sol, &[]);
        assert!(a.transitions().is_empty());
        assert_eq!(a.accepted_weight_str("q").unwrap(), mp(0));
        assert_eq!(a.accepted_weight_str("q X").unwrap(), AcceptedWeight::Unreachable);
    }

    #[test]
    fn post_star_of_two_state() {
        let w = two_state();
        let sol = solve_post_star(&w, &w.parse_configuration("p X").unwrap()).unwrap();
        let a = from_post_star(&w, &sol);
        // Paths from pX: pX (0), qY (1), pXY (1), qYY (2), qY again (0).
        assert_eq!(a.accepted_weight_str("p X").unwrap(), mp(0));
        assert_eq!(a.accepted_weight_str("p X Y").unwrap(), mp(1));
        assert_eq!(a.accepted_weight_str("q").unwrap(), AcceptedWeight::Weight(Value::Bottom));
        assert_eq!(a.accepted_weight_str("p").unwrap(), AcceptedWeight::Unreachable);
    }
}
