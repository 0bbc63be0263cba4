//! Bounded search for replayable evidence paths.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::semiring::IntegerWeight;
use crate::wpds::{Configuration, Wpds};

use super::WitnessPath;

/// Upper bound on distinct `(configuration, weight)` nodes explored.
pub const SEARCH_NODE_CAP: usize = 100_000;

/// Breadth-first search from `start` for a path whose end configuration
/// and accumulated weight satisfy `goal`. Returns the rule indices of a
/// shortest such path, or `None` once [`SEARCH_NODE_CAP`] nodes or
/// `max_stack` stack height are exhausted.
pub fn find_path<S: IntegerWeight>(
    wpds: &Wpds<S>,
    start: &Configuration,
    max_stack: usize,
    mut goal: impl FnMut(&Configuration, &BigInt) -> bool,
) -> Option<Vec<usize>> {
    type Node = (Configuration, BigInt);
    let root: Node = (start.clone(), BigInt::from(0));
    if goal(&root.0, &root.1) {
        return Some(vec![]);
    }
    // Parent links: node -> (predecessor, rule).
    let mut parent: HashMap<Node, Option<(Node, usize)>> = HashMap::from([(root.clone(), None)]);
    let mut layer = vec![root];
    while !layer.is_empty() && parent.len() < SEARCH_NODE_CAP {
        let mut next = vec![];
        for node in &layer {
            for (i, c2) in wpds.step(&node.0) {
                if c2.stack.len() > max_stack {
                    continue;
                }
                let d = wpds.rules()[i].weight.as_integer()?;
                let n2: Node = (c2, &node.1 + d);
                if parent.contains_key(&n2) {
                    continue;
                }
                parent.insert(n2.clone(), Some((node.clone(), i)));
                if goal(&n2.0, &n2.1) {
                    let mut rules = vec![];
                    let mut cur = n2;
                    while let Some(Some((prev, r))) = parent.get(&cur) {
                        rules.push(*r);
                        cur = prev.clone();
                    }
                    rules.reverse();
                    return Some(rules);
                }
                next.push(n2);
            }
        }
        layer = next;
    }
    None
}

/// Replays `rules` from `start` and renders the result.
pub fn witness_path<S: IntegerWeight>(wpds: &Wpds<S>, start: &Configuration, rules: Vec<usize>) -> WitnessPath {
    let end = wpds.replay(start, &rules).expect("search yields replayable paths");
    let weight = wpds.path_weight(&rules);
    WitnessPath {
        start: wpds.configuration_to_string(start),
        steps: rules.iter().map(|&i| wpds.rule_to_string(&wpds.rules()[i])).collect(),
        rules,
        end: wpds.configuration_to_string(&end),
        weight: weight.to_string(),
    }
}
