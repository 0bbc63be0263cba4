use crate::semiring::Semiring;
use crate::wautomata::Nfa;

use super::{Rule, StateId, Wpds, WpdsError};

/// Name of the single target control state; the target is `%target ε`.
pub const TARGET_STATE: &str = "%target";

#[derive(Debug, Clone)]
pub struct ReducedTarget<S> {
    pub wpds: Wpds<S>,
    pub target: StateId,
    /// Control states `p` whose empty configuration `pε` is a target.
    /// Pop rules cannot express these, so a pre* automaton must treat
    /// them as additional final states.
    pub accepting_controls: Vec<StateId>,
}

/// Extends `wpds` with `1̄`-weighted pop rules that let a configuration
/// drain its stack into `%target ε` exactly when the target automaton
/// accepts it.
///
/// Every automaton state `s` gets a fresh control `%T{s}`. A transition
/// `s -X-> s′` yields `p X → %T{s′}` when `s` is the control `p`, and
/// `%T{s} X → %T{s′}` in any case; when `s′` is final the same rules also
/// lead to `%target`. Nondeterministic automata are fine: duplicate runs
/// combine idempotently.
pub fn reduce_regular_target<S: Semiring>(
    wpds: &Wpds<S>,
    targets: &Nfa,
) -> Result<ReducedTarget<S>, WpdsError> {
    let mut out = wpds.clone();
    for x in targets.symbols() {
        wpds.symbol(x).map_err(|_| WpdsError::Alphabet(x.clone()))?;
    }
    let mut controls = Vec::with_capacity(targets.num_controls());
    for i in 0..targets.num_controls() {
        let name = targets.state_name(i);
        controls.push(wpds.state(name).map_err(|_| WpdsError::Alphabet(name.to_string()))?);
    }
    let fresh: Vec<StateId> = targets
        .state_names()
        .iter()
        .map(|s| out.add_state(format!("%T{{{s}}}")))
        .collect();
    let target = out.add_state(TARGET_STATE);
    for (s, x, s2) in targets.transitions() {
        let x = wpds.symbol(x)?;
        let mut sources = vec![fresh[s]];
        if s < controls.len() {
            sources.push(controls[s]);
        }
        for from in sources {
            out.add_rule(Rule::new(from, x, fresh[s2], vec![], S::one()))?;
            if targets.is_final(s2) {
                out.add_rule(Rule::new(from, x, target, vec![], S::one()))?;
            }
        }
    }
    let accepting_controls = (0..controls.len())
        .filter(|&i| targets.is_final(i))
        .map(|i| controls[i])
        .collect();
    Ok(ReducedTarget {
        wpds: out,
        target,
        accepting_controls,
    })
}
