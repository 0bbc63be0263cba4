use std::collections::BTreeMap;

use crate::semiring::Semiring;

use super::{MidState, Rule, StateId, SymbolId, Wpds, WpdsError};

/// Name of the bottom-of-stack marker added by [`reverse_wpds`].
pub const BOTTOM_SYMBOL: &str = "#";

#[derive(Debug, Clone)]
pub struct ReversedWpds<S> {
    pub wpds: Wpds<S>,
    pub bottom: SymbolId,
    /// The extra control state for each push target `(q, Y)`.
    pub mid_states: BTreeMap<MidState, StateId>,
}

/// A system that runs the moves of `wpds` backwards.
///
/// Original states and symbols keep their ids. Whenever `pα →σ qβ` in the
/// original, `qβ# →τ pα#` in the reversal with the weights of `τ` being
/// those of `σ` in reverse order:
///
/// * `pX →ᵈ qY` becomes `qY →ᵈ pX`,
/// * `pX →ᵈ qε` becomes `qY →ᵈ pXY` for every `Y`, including `#`,
/// * `pX →ᵈ qYZ` becomes `qY →¹ (q,Y)ε` and `(q,Y)Z →ᵈ pX`.
pub fn reverse_wpds<S: Semiring>(wpds: &Wpds<S>) -> Result<ReversedWpds<S>, WpdsError> {
    if !wpds.is_normalized() {
        return Err(WpdsError::NotNormalized);
    }
    let mut out = Wpds::new(wpds.state_names().iter().cloned(), wpds.symbol_names().iter().cloned())?;
    let bottom = out.add_symbol(BOTTOM_SYMBOL);
    let mut mid_states = BTreeMap::new();
    for r in wpds.rules() {
        if let [y, _] = r.push.as_slice() {
            mid_states.entry((r.to, *y)).or_insert_with(|| {
                out.add_state(format!("{}%{}", wpds.state_name(r.to), wpds.symbol_name(*y)))
            });
        }
    }
    let all_symbols: Vec<SymbolId> = out.symbols().collect();
    for r in wpds.rules() {
        match r.push.as_slice() {
            [y] => {
                out.add_rule(Rule::new(r.to, *y, r.from, vec![r.symbol], r.weight.clone()))?;
            }
            [] => {
                for &y in &all_symbols {
                    out.add_rule(Rule::new(r.to, y, r.from, vec![r.symbol, y], r.weight.clone()))?;
                }
            }
            [y, z] => {
                let mid = mid_states[&(r.to, *y)];
                out.add_rule(Rule::new(r.to, *y, mid, vec![], S::one()))?;
                out.add_rule(Rule::new(mid, *z, r.from, vec![r.symbol], r.weight.clone()))?;
            }
            _ => unreachable!("normalized"),
        }
    }
    Ok(ReversedWpds {
        wpds: out,
        bottom,
        mid_states,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::IntMinPlus;

    fn rules_of(w: &Wpds<IntMinPlus>) -> Vec<String> {
        w.rules().iter().map(|r| w.rule_to_string(r)).collect()
    }

    #[test]
    fn swap_is_reversed() {
        let mut w = Wpds::new(["p", "q"], ["X", "Y"]).unwrap();
        w.add_named_rule("p", "X", IntMinPlus::from(4), "q", &["Y"]).unwrap();
        let r = reverse_wpds(&w).unwrap();
        assert_eq!(rules_of(&r.wpds), ["q Y -> p X @ 4"]);
    }

    #[test]
    fn pop_becomes_push_under_every_symbol() {
        let mut w = Wpds::new(["p", "q"], ["X", "Y"]).unwrap();
        w.add_named_rule("p", "X", IntMinPlus::from(2), "q", &[]).unwrap();
        let r = reverse_wpds(&w).unwrap();
        assert_eq!(
            rules_of(&r.wpds),
            ["q X -> p X X @ 2", "q Y -> p X Y @ 2", "q # -> p X # @ 2"]
        );
    }

    #[test]
    fn push_becomes_pop_then_swap() {
        let mut w = Wpds::new(["p", "q"], ["X", "Y", "Z"]).unwrap();
        w.add_named_rule("p", "X", IntMinPlus::from(7), "q", &["Y", "Z"]).unwrap();
        let r = reverse_wpds(&w).unwrap();
        assert_eq!(rules_of(&r.wpds), ["q Y -> q%Y @ 0", "q%Y Z -> p X @ 7"]);
        assert_eq!(r.wpds.state_name(r.mid_states[&(StateId(1), SymbolId(1))]), "q%Y");
    }

    #[test]
    fn reversed_path_replays() {
        // pX → pXY → qYY → qY in the original.
        let w = crate::wpds::model::tests::two_state();
        let r = reverse_wpds(&w).unwrap();
        let rw = &r.wpds;
        let start = rw.parse_configuration("q Y #").unwrap();
        let mut frontier = vec![(start, IntMinPlus::from(0))];
        let goal = rw.parse_configuration("p X #").unwrap();
        let mut best = IntMinPlus::Infinity;
        for _ in 0..6 {
            let mut next = vec![];
            for (c, wt) in &frontier {
                if *c == goal {
                    best = best.combine(wt);
                }
                for (i, c2) in rw.step(c) {
                    next.push((c2, wt.extend(&rw.rules()[i].weight)));
                }
            }
            frontier = next;
        }
        // Shortest original path pX → qY has weight 1; via pXY → qYY → qY it is 0.
        assert_eq!(best, IntMinPlus::from(0));
    }
}
