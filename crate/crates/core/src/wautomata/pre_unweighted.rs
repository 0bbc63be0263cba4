use crate::semiring::{BoolReach, Semiring, Value};
use crate::wpds::{reduce_regular_target, solve_pre_star, Wpds};

use super::{AutomatonError, Nfa};

/// An automaton for the configurations of `wpds` from which some
/// configuration accepted by `targets` is reachable.
///
/// Solves pre* over the boolean semiring on the system extended by
/// [`reduce_regular_target`]. The result has one state per control state
/// of the extended system; its control states are those of `wpds`.
pub fn unweighted_pre_star<S: Semiring>(wpds: &Wpds<S>, targets: &Nfa) -> Result<Nfa, AutomatonError> {
    let reach = wpds.map_weights(|_, _| BoolReach(true));
    let red = reduce_regular_target(&reach, targets)?;
    let sol = solve_pre_star(&red.wpds, red.target)?;
    let mut nfa = Nfa::new(wpds.state_names().iter().cloned(), wpds.symbol_names().iter().cloned());
    for name in &red.wpds.state_names()[wpds.num_states()..] {
        nfa.add_state(name.clone());
    }
    for (&(p, x, q), v) in sol.vars.iter().zip(&sol.values) {
        // Boolean iterates stabilise within n rounds, so no ⊥ arises.
        if *v == Value::Finite(BoolReach(true)) {
            nfa.add_transition(p.0, red.wpds.symbol_name(x), q.0)?;
        }
    }
    nfa.set_final(red.target.0);
    for c in red.accepting_controls {
        nfa.set_final(c.0);
    }
    Ok(nfa)
}
