//! Random instance generators shared by the property suites and the
//! acceptance target.
#![allow(dead_code)]

use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use std::collections::BTreeSet;

use wpds::fixpoint::{kleene_sequence, Factor, KleeneRun, KleeneTrace, Monomial, Polynomial, PolynomialSystem};
use wpds::semiring::{IntMinPlus, Semiring};
use wpds::wautomata::{from_post_star, Nfa};
use wpds::wpds::{
    brute_force_movp, build_pre_star_system, configuration_iterate, movp, pop_weight_bounded, reduce_regular_target, reverse_wpds, solve_post_star, solve_pre_star, Configuration, StateId, SymbolId,
    Wpds, BOTTOM_SYMBOL,
};

pub const STATES: [&str; 3] = ["p", "q", "r"];
pub const SYMBOLS: [&str; 4] = ["X", "Y", "Z", "W"];

/// A min-plus coefficient in `{−3..3, ∞}`.
pub fn coefficient() -> impl Strategy<Value = IntMinPlus> {
    prop_oneof![
        6 => (-3i64..=3).prop_map(IntMinPlus::from),
        1 => Just(IntMinPlus::Infinity),
    ]
}

/// A monomial `c ⊗ X_i ⊗ X_j` of degree at most 2 over `n` variables.
fn monomial(n: usize) -> impl Strategy<Value = Monomial<IntMinPlus>> {
    (coefficient(), prop::collection::vec(0..n, 0..=2)).prop_map(|(c, vars)| {
        let mut factors = vec![Factor::Const(c)];
        factors.extend(vars.into_iter().map(Factor::Var));
        Monomial::new(factors)
    })
}

/// A min-plus system with `1..=max_n` variables, degree ≤ 2 and up to
/// three monomials per component.
pub fn system(max_n: usize) -> impl Strategy<Value = PolynomialSystem<IntMinPlus>> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::vec(monomial(n), 0..=3), n).prop_map(|comps| {
            PolynomialSystem::with_default_names(comps.into_iter().map(Polynomial::new).collect())
                .expect("well-formed")
        })
    })
}

/// `(from, symbol, to, push, weight)` with at most two pushed symbols.
type RuleSpec = (usize, usize, usize, Vec<usize>, i64);

fn rule_spec(np: usize, ns: usize, max_push: usize) -> impl Strategy<Value = RuleSpec> {
    (0..np, 0..ns, 0..np, prop::collection::vec(0..ns, 0..=max_push), -2i64..=2)
}

fn build_wpds(np: usize, ns: usize, rules: Vec<RuleSpec>) -> Wpds<IntMinPlus> {
    let mut w = Wpds::new(STATES[..np].iter().copied(), SYMBOLS[..ns].iter().copied()).expect("fresh names");
    for (p, x, q, push, d) in rules {
        let push: Vec<&str> = push.iter().map(|&y| SYMBOLS[y]).collect();
        w.add_named_rule(STATES[p], SYMBOLS[x], IntMinPlus::from(d), STATES[q], &push)
            .expect("names exist");
    }
    w
}

/// A normalized WPDS with ≤ 3 states, ≤ 4 symbols, ≤ 8 rules and
/// weights in `{−2..2}`.
pub fn small_wpds() -> impl Strategy<Value = Wpds<IntMinPlus>> {
    wpds_with(2)
}

/// As [`small_wpds`] but rules may push up to `max_push` symbols.
pub fn wpds_with(max_push: usize) -> impl Strategy<Value = Wpds<IntMinPlus>> {
    (1..=3usize, 1..=4usize).prop_flat_map(move |(np, ns)| {
        prop::collection::vec(rule_spec(np, ns, max_push), 0..=8).prop_map(move |r| build_wpds(np, ns, r))
    })
}

/// Every configuration over the system's own alphabet with at most
/// `depth` stack symbols.
pub fn configurations<S: Semiring>(w: &Wpds<S>, depth: usize) -> Vec<Configuration> {
    let symbols: Vec<SymbolId> = (0..w.num_symbols()).map(SymbolId).collect();
    let mut stacks: Vec<Vec<SymbolId>> = vec![vec![]];
    let mut layer = stacks.clone();
    for _ in 0..depth {
        let mut next = vec![];
        for s in &layer {
            for &x in &symbols {
                let mut t = s.clone();
                t.push(x);
                next.push(t);
            }
        }
        stacks.extend(next.iter().cloned());
        layer = next;
    }
    let mut out = vec![];
    for p in 0..w.num_states() {
        for s in &stacks {
            out.push(Configuration::new(StateId(p), s.clone()));
        }
    }
    out
}

/// A grammar over opening tag `a`, closing tag `b` and neutral `c` with
/// ≤ 4 nonterminals and ≤ 8 productions, in the text format.
pub fn grammar_text() -> impl Strategy<Value = String> {
    const NTS: [&str; 4] = ["S", "A", "B", "C"];
    const TS: [&str; 3] = ["a", "b", "c"];
    (1..=4usize).prop_flat_map(|n| {
        let sym = prop_oneof![(0..n).prop_map(|i| NTS[i]), (0..3usize).prop_map(|i| TS[i])];
        let body = prop::collection::vec(sym, 0..=3);
        prop::collection::vec((0..n, body), 1..=8).prop_map(|mut prods| {
            prods[0].0 = 0;
            let mut text = String::from("start S\nopen a\nclose b\n");
            for (lhs, body) in prods {
                let rhs = if body.is_empty() { "@".to_string() } else { body.join(" ") };
                text.push_str(&format!("{} -> {}\n", NTS[lhs], rhs));
            }
            text
        })
    })
}

/// `count` values drawn from `strategy` with a fixed seed, so that the
/// acceptance suite sees the same instances on every run.
pub fn sample<S: Strategy>(strategy: S, count: usize, seed: u8) -> Vec<S::Value> {
    let rng = TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]);
    let mut runner = TestRunner::new_with_rng(Config::default(), rng);
    (0..count)
        .map(|_| strategy.new_tree(&mut runner).expect("strategy generates").current())
        .collect()
}

/// Solver runs and disagreements from one pre*/post* duality check.
pub struct Duality {
    pub mismatches: Vec<String>,
    pub runs: Vec<KleeneRun<IntMinPlus>>,
    /// Pre* equation count and its bound on the reversed system.
    pub equations: (usize, usize),
}

/// Compares the post* automaton of `source` with pre* on the reversed
/// system towards `source #`, on all configurations of stack depth ≤ 3.
pub fn duality(w: &Wpds<IntMinPlus>, source: &Configuration) -> Duality {
    let post = solve_post_star(w, source).expect("normalized");
    let a = from_post_star(w, &post);

    let rev = reverse_wpds(w).expect("normalized");
    let names: Vec<String> = source.stack.iter().map(|&x| w.symbol_name(x).to_string()).chain([BOTTOM_SYMBOL.to_string()]).collect();
    let pattern = [(w.state_name(source.state), names.as_slice(), false)];
    let nfa = Nfa::from_patterns(
        rev.wpds.state_names().iter().cloned(),
        rev.wpds.symbol_names().iter().cloned(),
        pattern,
    )
    .expect("names exist");
    let reduced = reduce_regular_target(&rev.wpds, &nfa).expect("alphabet matches");
    let pre = solve_pre_star(&reduced.wpds, reduced.target).expect("normalized");

    let mut mismatches = vec![];
    for c in configurations(w, 3) {
        let forward = a.accepted_weight(w, &c).expect("controls are initial").value();
        let mut stack = c.stack.clone();
        stack.push(rev.bottom);
        let backward = movp(&reduced.wpds, &pre, &Configuration::new(c.state, stack)).expect("known ids");
        if forward != backward {
            mismatches.push(format!("{}: post* {forward}, reversed pre* {backward}", w.configuration_to_string(&c)));
        }
    }
    Duality {
        mismatches,
        equations: (pre.system.len(), pre_equation_bound(&reduced.wpds)),
        runs: vec![post.run, pre.run],
    }
}

/// `|P|` times the number of distinct heads `pX` occurring in Δ.
pub fn pre_equation_bound<S: Semiring>(w: &Wpds<S>) -> usize {
    let heads: BTreeSet<_> = w.rules().iter().map(|r| (r.from, r.symbol)).collect();
    w.num_states() * heads.len()
}

/// Disagreements between the Kleene iterates of the per-configuration
/// system and bounded path enumeration, for `k ≤ 6`, every empty target
/// `p ε` and every configuration of stack depth ≤ 3.
pub fn bounded_path_violations(w: &Wpds<IntMinPlus>) -> Vec<String> {
    let mut out = vec![];
    for t in 0..w.num_states() {
        let target = Configuration::new(StateId(t), vec![]);
        for c in configurations(w, 3) {
            for k in 0..=6 {
                let iterate = configuration_iterate(w, &target, &c, k);
                let paths = brute_force_movp(w, &c, &target, k).expect("small instance");
                if iterate != paths {
                    out.push(format!(
                        "{} to {} k={k}: iterate {iterate}, paths {paths}",
                        w.configuration_to_string(&c),
                        w.state_name(StateId(t))
                    ));
                }
            }
        }
    }
    out
}

/// Checks `⊕{v(σ) : |σ| ≤ lower(k)} ⊑ ks^k[pXq] ⊑ ⊕{v(σ) : |σ| ≤ k − 1}`
/// over pop sequences for `k ≤ 6`. Returns the violations and the run
/// of the pre* system used.
pub fn pop_sandwich_violations(
    w: &Wpds<IntMinPlus>,
    lower: impl Fn(usize) -> usize,
) -> (Vec<String>, KleeneTrace<IntMinPlus>, usize) {
    let sys = build_pre_star_system(w).expect("normalized");
    let ks = kleene_sequence(&sys.system, 6);
    let mut out = vec![];
    for (i, &(p, x, q)) in sys.vars.iter().enumerate() {
        for k in 1..=6 {
            let lo = pop_weight_bounded(w, p, x, q, lower(k)).expect("normalized");
            let hi = pop_weight_bounded(w, p, x, q, k - 1).expect("normalized");
            let v = &ks.iterates[k][i];
            if !lo.leq(v) || !v.leq(&hi) {
                out.push(format!(
                    "[{} {} {}] k={k}: bounds {lo} and {hi}, iterate {v}",
                    w.state_name(p),
                    w.symbol_name(x),
                    w.state_name(q)
                ));
            }
        }
    }
    (out, ks, sys.system.len())
}
