use std::collections::{HashMap, VecDeque};

use crate::semiring::Semiring;

use super::{AutomatonError, Nfa, WAutomaton};

/// Synchronized product of a weighted automaton with an unweighted one.
///
/// Initial pairs `(p, p)` keep the name `p`; other pairs are named
/// `a&b`. Only pairs reachable from an initial pair are built. Weights
/// come from `a`, and ε-transitions of `a` leave `b`'s component alone.
pub fn product_with_unweighted<S: Semiring>(a: &WAutomaton<S>, b: &Nfa) -> Result<WAutomaton<S>, AutomatonError> {
    let mut bsym: Vec<Option<usize>> = vec![None; a.symbols().len()];
    for x in b.symbols() {
        let i = a
            .symbol_index(x)
            .ok_or_else(|| AutomatonError::AlphabetMismatch(x.clone()))?;
        bsym[i] = b.symbols().iter().position(|y| y == x);
    }
    for c in 0..b.num_controls() {
        let name = b.state_name(c);
        if a.state_index(name).filter(|&s| a.is_initial(s)).is_none() {
            return Err(AutomatonError::AlphabetMismatch(name.to_string()));
        }
    }
    // b's successors by (state, b symbol index).
    let mut bnext: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (s, x, t) in b.transitions() {
        let xi = b.symbols().iter().position(|y| y == x).expect("own symbol");
        bnext.entry((s, xi)).or_default().push(t);
    }

    let mut out = WAutomaton::new(a.symbols().to_vec());
    let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
    let mut queue = VecDeque::new();
    for s in a.initial_states() {
        let name = &a.states()[s];
        match b.control(name) {
            Ok(c) => {
                let id = out.add_state(name.clone(), true, a.is_final(s) && b.is_final(c));
                ids.insert((s, c), id);
                queue.push_back((s, c));
            }
            // Controls unknown to b accept nothing.
            Err(_) => {
                out.add_state(name.clone(), true, false);
            }
        }
    }
    while let Some((s, c)) = queue.pop_front() {
        let from = ids[&(s, c)];
        for t in a.transitions().iter().filter(|t| t.from == s) {
            let targets: Vec<usize> = match t.label {
                None => vec![c],
                Some(x) => bsym[x]
                    .and_then(|bx| bnext.get(&(c, bx)))
                    .cloned()
                    .unwrap_or_default(),
            };
            for c2 in targets {
                let to = match ids.get(&(t.to, c2)) {
                    Some(&id) => id,
                    None => {
                        let name = format!("{}&{}", a.states()[t.to], b.state_name(c2));
                        let id = out.add_state(name, false, a.is_final(t.to) && b.is_final(c2));
                        ids.insert((t.to, c2), id);
                        queue.push_back((t.to, c2));
                        id
                    }
                };
                out.add_transition(from, t.label, to, t.weight.clone());
            }
        }
    }
    Ok(out)
}
