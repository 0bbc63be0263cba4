//! The finite pre* system over pop-sequence variables `[pXq]`.

use std::collections::{BTreeSet, HashMap};

use crate::fixpoint::{all_witnesses, safe_kleene, Factor, KleeneRun, Monomial, Polynomial, PolynomialSystem, SolveOutcome};
use crate::semiring::{Semiring, Value};

use super::{Configuration, StateId, SymbolId, Wpds, WpdsError};

/// `[pXq]`: the combined weight of all pop sequences `pX →* qε`.
pub type PopVar = (StateId, SymbolId, StateId);

#[derive(Debug, Clone)]
pub struct PreStarSystem<S> {
    pub system: PolynomialSystem<S>,
    pub vars: Vec<PopVar>,
    pub index: HashMap<PopVar, usize>,
}

/// Heads `pX` that are the left-hand side of some rule. Variables for
/// any other head are identically `0̄`: such a head has no move, so no
/// pop sequence starts there.
pub fn useful_heads<S: Semiring>(wpds: &Wpds<S>) -> BTreeSet<(StateId, SymbolId)> {
    wpds.rules().iter().map(|r| (r.from, r.symbol)).collect()
}

/// Builds one equation per `[pXq]` with `pX` a useful head:
/// pop rules contribute `d`, swap rules `d ⊗ [rYq]`, push rules
/// `d ⊗ ⊕ₛ [rYs] ⊗ [sZq]`.
pub fn build_pre_star_system<S: Semiring>(wpds: &Wpds<S>) -> Result<PreStarSystem<S>, WpdsError> {
    if !wpds.is_normalized() {
        return Err(WpdsError::NotNormalized);
    }
    let heads = useful_heads(wpds);
    let mut vars = Vec::with_capacity(heads.len() * wpds.num_states());
    for &(p, x) in &heads {
        for q in wpds.states() {
            vars.push((p, x, q));
        }
    }
    let index: HashMap<PopVar, usize> = vars.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let var = |p, x, q| index.get(&(p, x, q)).map(|&i| Factor::<S>::Var(i));

    let mut components = Vec::with_capacity(vars.len());
    for &(p, x, q) in &vars {
        let mut monomials = Vec::new();
        for r in wpds.rules().iter().filter(|r| r.from == p && r.symbol == x) {
            let d = Factor::Const(r.weight.clone());
            match r.push.as_slice() {
                [] => {
                    if r.to == q {
                        monomials.push(Monomial::new(vec![d]));
                    }
                }
                [y] => {
                    if let Some(v) = var(r.to, *y, q) {
                        monomials.push(Monomial::new(vec![d, v]));
                    }
                }
                [y, z] => {
                    for s in wpds.states() {
                        if let (Some(a), Some(b)) = (var(r.to, *y, s), var(s, *z, q)) {
                            monomials.push(Monomial::new(vec![d.clone(), a, b]));
                        }
                    }
                }
                _ => unreachable!("normalized"),
            }
        }
        components.push(Polynomial::new(monomials));
    }
    let names = vars
        .iter()
        .map(|&(p, x, q)| {
            format!(
                "[{} {} {}]",
                wpds.state_name(p),
                wpds.symbol_name(x),
                wpds.state_name(q)
            )
        })
        .collect();
    let system = PolynomialSystem::new(names, components).expect("indices are in range");
    Ok(PreStarSystem {
        system,
        vars,
        index,
    })
}

/// Solved pop-sequence values for a target `p_f ε`.
#[derive(Debug, Clone)]
pub struct PreStarSolution<S> {
    pub target: StateId,
    pub vars: Vec<PopVar>,
    pub index: HashMap<PopVar, usize>,
    pub values: Vec<Value<S>>,
    /// Components marked ⊥, ascending.
    pub witnesses: Vec<usize>,
    pub run: KleeneRun<S>,
    pub system: PolynomialSystem<S>,
}

impl<S: Semiring> PreStarSolution<S> {
    /// `[pXq]`, or `0̄` for variables that were never generated.
    pub fn value(&self, p: StateId, x: SymbolId, q: StateId) -> Value<S> {
        self.index
            .get(&(p, x, q))
            .map_or_else(Value::zero, |&i| self.values[i].clone())
    }
}

/// Solves the pre* system with safe Kleene iteration.
///
/// Semirings with exact divergence get every witness marked ⊥ and exact
/// values elsewhere. For the others, components that changed in the last
/// round are reported ⊥ and the rest carry their last iterate.
pub fn solve_pre_star<S: Semiring>(
    wpds: &Wpds<S>,
    target: StateId,
) -> Result<PreStarSolution<S>, WpdsError> {
    if target.0 >= wpds.num_states() {
        return Err(WpdsError::UnknownStateId(target.0));
    }
    let PreStarSystem {
        system,
        vars,
        index,
    } = build_pre_star_system(wpds)?;
    let (values, witnesses, run) = solve_marking_witnesses(&system);
    Ok(PreStarSolution {
        target,
        vars,
        index,
        values,
        witnesses,
        run,
        system,
    })
}

pub(crate) fn solve_marking_witnesses<S: Semiring>(
    system: &PolynomialSystem<S>,
) -> (Vec<Value<S>>, Vec<usize>, KleeneRun<S>) {
    if S::EXACT_DIVERGENCE {
        let report = all_witnesses(system).expect("exact divergence");
        return (report.values, report.witnesses, report.run);
    }
    let run = safe_kleene(system);
    let n = system.len();
    let values: Vec<Value<S>> = match &run.outcome {
        SolveOutcome::GreatestFixedPoint(v) => v.iter().cloned().map(Value::Finite).collect(),
        SolveOutcome::Witness { .. } => run.trace.iterates[n]
            .iter()
            .zip(&run.trace.iterates[n + 1])
            .map(|(a, b)| if a == b { Value::Finite(b.clone()) } else { Value::Bottom })
            .collect(),
    };
    let witnesses = (0..n).filter(|&i| values[i].is_bottom()).collect();
    (values, witnesses, run)
}

/// Meet over all paths from `c` to `p_f ε`, summing over all state
/// sequences: `⊕ [p X₁ p₁] ⊗ [p₁ X₂ p₂] ⊗ … ⊗ [p_{n−1} Xₙ p_f]`.
pub fn movp<S: Semiring>(
    wpds: &Wpds<S>,
    solution: &PreStarSolution<S>,
    c: &Configuration,
) -> Result<Value<S>, WpdsError> {
    if c.state.0 >= wpds.num_states() {
        return Err(WpdsError::UnknownStateId(c.state.0));
    }
    if let Some(x) = c.stack.iter().find(|x| x.0 >= wpds.num_symbols()) {
        return Err(WpdsError::UnknownSymbolId(x.0));
    }
    let target = solution.target;
    let Some((&last, init)) = c.stack.split_last() else {
        return Ok(if c.state == target { Value::one() } else { Value::zero() });
    };
    // Enumerate p₁ … p_{n−1} odometer-style.
    let k = init.len();
    let np = wpds.num_states();
    let mut seq = vec![0usize; k];
    let mut total = Value::zero();
    loop {
        let mut acc = Value::one();
        let mut cur = c.state;
        for (i, &x) in init.iter().enumerate() {
            let next = StateId(seq[i]);
            acc = acc.extend(&solution.value(cur, x, next));
            cur = next;
        }
        acc = acc.extend(&solution.value(cur, last, target));
        total = total.combine(&acc);
        // Advance.
        let mut i = 0;
        while i < k {
            seq[i] += 1;
            if seq[i] < np {
                break;
            }
            seq[i] = 0;
            i += 1;
        }
        if i == k {
            break;
        }
    }
    Ok(total)
}
