mod common;

use proptest::prelude::*;

use wpds::semiring::{IntMinPlus, Semiring, Value};
use wpds::wpds::{brute_force_movp, build_pre_star_system, movp, solve_pre_star, Configuration, StateId};

use common::{configurations, duality, bounded_path_violations, pop_sandwich_violations, pre_equation_bound, small_wpds};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn iterates_equal_bounded_paths(w in small_wpds()) {
        let bad = bounded_path_violations(&w);
        prop_assert!(bad.is_empty(), "{:?}", bad);
    }

    /// A tree of height k has at most 2^k − 1 nodes, one rule each.
    #[test]
    fn pop_iterates_sandwiched_by_tree_size(w in small_wpds()) {
        let (bad, ks, _) = pop_sandwich_violations(&w, |k| (1 << k) - 1);
        prop_assert!(bad.is_empty(), "{:?}", bad);
        prop_assert!(ks.is_descending());
    }

    #[test]
    fn post_star_is_pre_star_of_reversal(w in small_wpds(), p in 0usize..3, x in 0usize..4) {
        let src = Configuration::new(
            StateId(p % w.num_states()),
            vec![wpds::wpds::SymbolId(x % w.num_symbols())],
        );
        let d = duality(&w, &src);
        prop_assert!(d.mismatches.is_empty(), "{:?}", d.mismatches);
        prop_assert!(d.equations.0 <= d.equations.1);
    }

    #[test]
    fn equation_count_bounded(w in small_wpds()) {
        let sys = build_pre_star_system(&w).unwrap();
        prop_assert!(sys.system.len() <= pre_equation_bound(&w));
    }

    /// Solved values never undercut what bounded enumeration finds.
    #[test]
    fn movp_is_below_every_bounded_sum(w in small_wpds()) {
        let sol = solve_pre_star(&w, StateId(0)).unwrap();
        let target = Configuration::new(StateId(0), vec![]);
        for c in configurations(&w, 2) {
            let paths = brute_force_movp(&w, &c, &target, 7).unwrap();
            if let Value::Finite(v) = movp(&w, &sol, &c).unwrap() {
                prop_assert!(v.leq(&paths), "{}: {} vs {}", w.configuration_to_string(&c), v, paths);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// Splitting long pushes lengthens paths by at most `m − 1` steps
    /// per rule, so bounded sums are sandwiched rather than equal.
    #[test]
    fn normalization_preserves_bounded_sums(w in common::wpds_with(3)) {
        let n = w.normalize();
        let stretch = w.rules().iter().map(|r| r.push.len()).max().unwrap_or(1).saturating_sub(1).max(1);
        let target = Configuration::new(StateId(0), vec![]);
        for c in configurations(&w, 2) {
            for len in 1..=8 {
                let orig = |l| brute_force_movp(&w, &c, &target, l);
                let (Ok(lo), Ok(mid), Ok(hi)) = (orig(len * stretch), brute_force_movp(&n, &c, &target, len * stretch), orig(len)) else {
                    continue;
                };
                prop_assert!(lo.leq(&mid) && mid.leq(&hi),
                    "{} len={}: {} {} {}", w.configuration_to_string(&c), len, lo, mid, hi);
            }
        }
    }
}

#[test]
fn bottom_movp_only_where_paths_exist() {
    // pX →⁻¹ pX loops forever before popping; pY has no pop.
    let mut w = wpds::wpds::Wpds::<IntMinPlus>::new(["p"], ["X", "Y"]).unwrap();
    w.add_named_rule("p", "X", IntMinPlus::from(-1), "p", &["X"]).unwrap();
    w.add_named_rule("p", "X", IntMinPlus::from(0), "p", &[]).unwrap();
    let sol = solve_pre_star(&w, StateId(0)).unwrap();
    assert!(movp(&w, &sol, &w.parse_configuration("p X").unwrap()).unwrap().is_bottom());
    assert!(movp(&w, &sol, &w.parse_configuration("p Y").unwrap()).unwrap().is_zero());
}
