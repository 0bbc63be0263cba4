use num_bigint::BigInt;

use crate::semiring::{IntMinPlus, IntegerWeight};
use crate::wautomata::{bellman_ford_extremal, from_post_star, Extremal, ExtremalMode, WAutomaton};
use crate::wpds::{solve_post_star, Configuration, Wpds};

use super::search::{find_path, witness_path};
use super::{AnalysisError, Evidence, LabelledWpds, Status, Verdict};

/// Extra stack height the evidence search may use beyond the larger of
/// the start and the offending configuration.
const SEARCH_STACK_SLACK: usize = 8;

/// The post* automaton of `{start}` over min-plus, built on the
/// normalized system. ⊥ transitions stay in place; Bellman-Ford reads
/// them as −∞.
pub(crate) fn post_star_automaton(
    wpds: &Wpds<IntMinPlus>,
    start: &Configuration,
) -> Result<WAutomaton<IntMinPlus>, AnalysisError> {
    let normalized = wpds.normalize();
    let sol = solve_post_star(&normalized, start)?;
    Ok(from_post_star(&normalized, &sol))
}

/// Reads the configuration spelled by an extremal path from `state`.
fn path_configuration<S: IntegerWeight>(a: &WAutomaton<S>, state: usize, edges: &[usize]) -> String {
    let mut s = a.states()[state].clone();
    for &e in edges {
        if let Some(x) = a.transitions()[e].label {
            s.push(' ');
            s.push_str(&a.symbols()[x]);
        }
    }
    s
}

/// Checks that `a` accepts no configuration with negative weight, and
/// turns a violation into evidence found by searching `wpds` from `start`.
pub(crate) fn negative_acceptance(
    check: &str,
    property: &str,
    wpds: &Wpds<IntMinPlus>,
    start: &Configuration,
    a: &WAutomaton<IntMinPlus>,
    viable: impl Fn(&Configuration) -> bool,
) -> Verdict {
    let bf = bellman_ford_extremal(a, ExtremalMode::Shortest);
    let zero = BigInt::from(0);
    // Prefer a finite offender, since it comes with a concrete configuration.
    let offender = a
        .initial_states()
        .find(|&s| matches!(bf.value(s), Extremal::Finite(d) if *d < zero))
        .or_else(|| a.initial_states().find(|&s| *bf.value(s) == Extremal::Divergent));
    let Some(state) = offender else {
        return Verdict::safe(check);
    };
    let (weight, configuration) = match bf.value(state) {
        Extremal::Finite(d) => {
            let edges = bf.witness_path(a, state).expect("finite values have paths");
            (d.to_string(), Some(path_configuration(a, state, &edges)))
        }
        _ => ("-inf".to_string(), None),
    };
    // The automaton may spell configurations of the normalized system;
    // those do not parse against `wpds` and any viable negative end will do.
    let target = configuration.as_deref().and_then(|c| wpds.parse_configuration(c).ok());
    let max_stack = target.as_ref().map_or(0, |t| t.stack.len()).max(start.stack.len()) + SEARCH_STACK_SLACK;
    let path = target
        .as_ref()
        .and_then(|t| find_path(wpds, start, max_stack, |c, d| c == t && *d < zero))
        .or_else(|| find_path(wpds, start, max_stack, |c, d| *d < zero && viable(c)))
        .map(|rules| witness_path(wpds, start, rules));
    Verdict {
        check: check.to_string(),
        status: violation_status(&path),
        label: None,
        evidence: Some(Evidence {
            property: property.to_string(),
            configuration,
            weight,
            path,
            word: None,
        }),
        warnings: vec![],
    }
}

/// `unsafe` when a concrete path backs the violation, else `diverges`.
pub(crate) fn violation_status(path: &Option<super::WitnessPath>) -> Status {
    if path.is_some() {
        Status::Unsafe
    } else {
        Status::Diverges
    }
}

/// Whether some configuration reachable from `initial` has a negative
/// accumulated weight, with `±2ⁿ` weights on alloc/free rules.
pub fn check_memory_safety(w: &LabelledWpds, initial: &Configuration) -> Result<Verdict, AnalysisError> {
    let wpds: Wpds<IntMinPlus> = w.memory_weights();
    let a = post_star_automaton(&wpds, initial)?;
    Ok(negative_acceptance(
        "alloc",
        "a reachable configuration has negative weight",
        &wpds,
        initial,
        &a,
        |_| true,
    ))
}

/// Whether every `end label` is preceded by a matching `begin label` on
/// every path from `initial`. A label without tagged rules is trivially
/// safe.
pub fn check_correspondence(w: &LabelledWpds, initial: &Configuration, label: &str) -> Result<Verdict, AnalysisError> {
    let wpds: Wpds<IntMinPlus> = w.label_weights(label);
    let a = post_star_automaton(&wpds, initial)?;
    let mut v = negative_acceptance(
        "corr",
        &format!("an `end {label}` is reachable without a matching `begin {label}`"),
        &wpds,
        initial,
        &a,
        |_| true,
    );
    v.label = Some(label.to_string());
    Ok(v)
}
