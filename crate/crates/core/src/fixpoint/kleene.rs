use crate::semiring::{Semiring, Value};

use super::{FixpointError, PolynomialSystem};

/// The iterates `ks⁰ = 0̄, ks¹ = f(ks⁰), …` in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KleeneTrace<S> {
    pub iterates: Vec<Vec<S>>,
}

impl<S: Semiring> KleeneTrace<S> {
    /// Whether `ks^{k+1} ⊑ ks^k` holds componentwise for every step.
    pub fn is_descending(&self) -> bool {
        self.iterates
            .windows(2)
            .all(|w| w[1].iter().zip(&w[0]).all(|(next, prev)| next.leq(prev)))
    }

    pub fn last(&self) -> &[S] {
        self.iterates.last().expect("a trace always holds ks⁰")
    }
}

/// Computes `ks⁰ … ks^k`.
pub fn kleene_sequence<S: Semiring>(system: &PolynomialSystem<S>, k: usize) -> KleeneTrace<S> {
    let mut iterates = Vec::with_capacity(k + 1);
    iterates.push(system.zero_vector());
    for _ in 0..k {
        let next = system.evaluate_unchecked(iterates.last().unwrap());
        iterates.push(next);
    }
    KleeneTrace { iterates }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome<S> {
    /// `ks^n`, which satisfies `f(ks^n) = ks^n`.
    GreatestFixedPoint(Vec<S>),
    /// The smallest 0-based index `i` with `ks^{n+1}_i ≠ ks^n_i`.
    Witness { component: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KleeneRun<S> {
    pub outcome: SolveOutcome<S>,
    /// `ks⁰ … ks^{n+1}`.
    pub trace: KleeneTrace<S>,
    /// Number of evaluations of the whole system; always `n + 1`.
    pub evaluations: usize,
}

/// Safe Kleene iteration: exactly `n + 1` rounds from `0̄`, then compares
/// the last two iterates.
///
/// Requires a totally ordered semiring in which extend preserves
/// inequality; all shipped instances qualify.
pub fn safe_kleene<S: Semiring>(system: &PolynomialSystem<S>) -> KleeneRun<S> {
    let n = system.len();
    let trace = kleene_sequence(system, n + 1);
    let (prev, last) = (&trace.iterates[n], &trace.iterates[n + 1]);
    let outcome = match (0..n).find(|&i| prev[i] != last[i]) {
        Some(component) => SolveOutcome::Witness { component },
        None => SolveOutcome::GreatestFixedPoint(prev.clone()),
    };
    KleeneRun {
        outcome,
        trace,
        evaluations: n + 1,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessReport<S> {
    /// Indices of all witness components, ascending.
    pub witnesses: Vec<usize>,
    /// Exact values for non-witness components, `⊥` for witnesses.
    pub values: Vec<Value<S>>,
    pub run: KleeneRun<S>,
}

/// Safe Kleene iteration extended to find every witness component.
///
/// After the first `n + 1` rounds, components that still change are set
/// to ⊥ and the main loop runs up to `n + 1` more times; any component
/// that changes again becomes ⊥ as well. ⊥ behaves as the limit element
/// (−∞ for min-plus, +∞ for max-plus), so the result is exact only for
/// semirings with [`Semiring::EXACT_DIVERGENCE`].
pub fn all_witnesses<S: Semiring>(
    system: &PolynomialSystem<S>,
) -> Result<WitnessReport<S>, FixpointError> {
    if !S::EXACT_DIVERGENCE {
        return Err(FixpointError::UnsupportedSemiring(S::NAME));
    }
    let run = safe_kleene(system);
    let n = system.len();
    let prev = &run.trace.iterates[n];
    let last = &run.trace.iterates[n + 1];
    let mut values: Vec<Value<S>> = prev
        .iter()
        .zip(last)
        .map(|(a, b)| {
            if a == b {
                Value::Finite(b.clone())
            } else {
                Value::Bottom
            }
        })
        .collect();
    if matches!(run.outcome, SolveOutcome::Witness { .. }) {
        for _ in 0..=n {
            let next = system.evaluate_values(&values);
            let mut changed = false;
            for (cur, new) in values.iter_mut().zip(next) {
                if *cur != new && !cur.is_bottom() {
                    *cur = Value::Bottom;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
    }
    let witnesses = (0..n).filter(|&i| values[i].is_bottom()).collect();
    Ok(WitnessReport {
        witnesses,
        values,
        run,
    })
}
