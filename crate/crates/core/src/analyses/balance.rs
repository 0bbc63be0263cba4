use num_bigint::BigInt;

use crate::semiring::{IntMaxPlus, IntegerWeight, Semiring};
use crate::wautomata::{
    bellman_ford_extremal, from_post_star, product_with_unweighted, unweighted_pre_star, Extremal, ExtremalMode,
    Nfa, WAutomaton,
};
use crate::wpds::{solve_post_star, Configuration, StateId, Wpds};

use super::cfg::{cfg_to_wpds, Cfg, CfgWpds};
use super::memory::{negative_acceptance, violation_status};
use super::search::{find_path, witness_path};
use super::{AnalysisError, Evidence, Verdict};

const CHECK: &str = "balance";
/// Stack height the evidence search may use.
const SEARCH_MAX_STACK: usize = 12;

fn post_star<S: Semiring>(w: &Wpds<S>, start: &Configuration) -> Result<WAutomaton<S>, AnalysisError> {
    Ok(from_post_star(w, &solve_post_star(w, start)?))
}

/// The first final control state whose extremal accepted weight is not 0.
fn nonzero_extremum<S: IntegerWeight>(
    a: &WAutomaton<S>,
    w: &Wpds<S>,
    finals: &[StateId],
    mode: ExtremalMode,
) -> Option<Extremal> {
    let bf = bellman_ford_extremal(a, mode);
    finals.iter().find_map(|&f| {
        let s = a.state_index(w.state_name(f)).expect("control states are automaton states");
        match bf.value(s) {
            Extremal::Finite(d) if *d == BigInt::from(0) => None,
            Extremal::Unreachable => None,
            v => Some(v.clone()),
        }
    })
}

/// Decides whether every word of the grammar is balanced when all
/// opening and all closing tags are treated alike.
///
/// Property (i): all accepted words weigh 0, checked by shortest paths
/// over min-plus and longest paths over max-plus from the final control
/// state. Property (ii): no configuration on a path to acceptance has
/// negative weight, checked on the product of the post* automaton with
/// the unweighted pre* automaton of the final configurations.
pub fn check_shape_balancedness(g: &Cfg) -> Result<Verdict, AnalysisError> {
    let cw = cfg_to_wpds(g)?;
    let mut v = shape_verdict(&cw)?;
    v.warnings = cw.warnings.clone();
    Ok(v)
}

fn shape_verdict(cw: &CfgWpds) -> Result<Verdict, AnalysisError> {
    let norm = cw.wpds.normalize();
    let min_a = post_star(&norm, &cw.initial)?;
    if let Some(v) = nonzero_extremum(&min_a, &norm, &cw.finals, ExtremalMode::Shortest) {
        return Ok(property_i(cw, v, ExtremalMode::Shortest));
    }
    let max_w: Wpds<IntMaxPlus> = norm.map_weights(|_, r| {
        IntMaxPlus::from_integer(r.weight.as_integer().expect("rules carry finite weights").clone())
    });
    let max_a = post_star(&max_w, &cw.initial)?;
    if let Some(v) = nonzero_extremum(&max_a, &max_w, &cw.finals, ExtremalMode::Longest) {
        return Ok(property_i(cw, v, ExtremalMode::Longest));
    }

    let empty: Vec<String> = vec![];
    let finals = cw.finals.iter().map(|&f| (norm.state_name(f), empty.as_slice(), true));
    let targets = Nfa::from_patterns(norm.state_names().iter().cloned(), norm.symbol_names().iter().cloned(), finals)?;
    let pre = unweighted_pre_star(&norm, &targets)?;
    let product = product_with_unweighted(&min_a, &pre)?;
    let viable = |c: &Configuration| {
        let word: Vec<&str> = c.stack.iter().map(|&x| cw.wpds.symbol_name(x)).collect();
        pre.accepts(cw.wpds.state_name(c.state), &word)
    };
    let mut v = negative_acceptance(
        CHECK,
        "(ii) a configuration on a path to acceptance has negative weight",
        &cw.wpds,
        &cw.initial,
        &product,
        viable,
    );
    if let Some(e) = v.evidence.as_mut() {
        e.word = e.path.as_ref().map(|p| cw.word(&p.rules).join(" "));
    }
    Ok(v)
}

fn property_i(cw: &CfgWpds, found: Extremal, mode: ExtremalMode) -> Verdict {
    let zero = BigInt::from(0);
    let weight = match (&found, mode) {
        (Extremal::Finite(d), _) => d.to_string(),
        (_, ExtremalMode::Shortest) => "-inf".to_string(),
        (_, ExtremalMode::Longest) => "+inf".to_string(),
    };
    let wrong_sign = |d: &BigInt| match mode {
        ExtremalMode::Shortest => *d < zero,
        ExtremalMode::Longest => *d > zero,
    };
    let accepted = |c: &Configuration| cw.finals.contains(&c.state) && c.stack.is_empty();
    let path = find_path(&cw.wpds, &cw.initial, SEARCH_MAX_STACK, |c, d| accepted(c) && wrong_sign(d))
        .map(|rules| witness_path(&cw.wpds, &cw.initial, rules));
    let which = match mode {
        ExtremalMode::Shortest => "shortest",
        ExtremalMode::Longest => "longest",
    };
    Verdict {
        check: CHECK.to_string(),
        status: violation_status(&path),
        label: None,
        evidence: Some(Evidence {
            property: format!("(i) an accepted word has non-zero weight ({which} accepted weight is {weight})"),
            configuration: cw.finals.first().map(|&f| cw.wpds.state_name(f).to_string()),
            weight,
            word: path.as_ref().map(|p| cw.word(&p.rules).join(" ")),
            path,
        }),
        warnings: vec![],
    }
}
