//! Brute-force oracle: combine of the yields of all derivation trees of
//! bounded height.
//!
//! A derivation tree for `Xᵢ` picks a monomial of `fᵢ` at its root and one
//! subtree per variable occurrence of that monomial. Its yield multiplies
//! the constants and subtree yields in monomial order. The combine of the
//! yields of all trees of height at most `k` equals the `k`-th Kleene
//! iterate, which makes this an independent check of the iteration.

use std::collections::HashSet;

use crate::semiring::Semiring;

use super::{Factor, FixpointError, Monomial, PolynomialSystem};

/// Default bound on enumerated yield combinations.
pub const DEFAULT_ENUM_CAP: u64 = 1_000_000;

/// The cap in effect: `WPDS_ENUM_CAP` if set and valid, else the default.
pub fn enumeration_cap() -> u64 {
    std::env::var("WPDS_ENUM_CAP")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_ENUM_CAP)
}

/// The set of yields of all trees with root `Xᵢ` and height `≤ h`, for
/// every `i` and `h ≤ k`. Sets are kept whole; no combine is applied.
pub fn derivation_yields<S: Semiring>(
    system: &PolynomialSystem<S>,
    k: usize,
    cap: u64,
) -> Result<Vec<Vec<HashSet<S>>>, FixpointError> {
    let n = system.len();
    // table[h][i]: yields of height ≤ h; height 0 admits no tree.
    let mut table: Vec<Vec<HashSet<S>>> = vec![vec![HashSet::new(); n]];
    let mut work: u64 = 0;
    for _ in 1..=k {
        let below = table.last().unwrap();
        let mut level = Vec::with_capacity(n);
        for i in 0..n {
            let mut yields = HashSet::new();
            for m in &system.component(i).monomials {
                monomial_yields(m, below, &mut yields, &mut work, cap)?;
            }
            level.push(yields);
        }
        table.push(level);
    }
    Ok(table)
}

fn monomial_yields<S: Semiring>(
    m: &Monomial<S>,
    below: &[HashSet<S>],
    out: &mut HashSet<S>,
    work: &mut u64,
    cap: u64,
) -> Result<(), FixpointError> {
    // Partial products over a prefix of the factors.
    let mut partial: HashSet<S> = HashSet::from([S::one()]);
    for f in &m.factors {
        let mut next = HashSet::new();
        match f {
            Factor::Const(c) => {
                for p in &partial {
                    next.insert(p.extend(c));
                }
            }
            Factor::Var(j) => {
                *work += (partial.len() as u64) * (below[*j].len() as u64);
                if *work > cap {
                    return Err(FixpointError::EnumerationCap(cap));
                }
                for p in &partial {
                    for y in &below[*j] {
                        next.insert(p.extend(y));
                    }
                }
            }
        }
        partial = next;
        if partial.is_empty() {
            return Ok(());
        }
    }
    out.extend(partial);
    Ok(())
}

/// `⊕{Y(t) | t derivation tree of Xᵢ, h(t) ≤ k}`; `0̄` for no trees.
pub fn derivation_tree_value<S: Semiring>(
    system: &PolynomialSystem<S>,
    i: usize,
    k: usize,
) -> Result<S, FixpointError> {
    if i >= system.len() {
        return Err(FixpointError::VariableOutOfRange {
            index: i,
            n: system.len(),
        });
    }
    let table = derivation_yields(system, k, enumeration_cap())?;
    Ok(table[k][i]
        .iter()
        .fold(S::zero(), |acc, y| acc.combine(y)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixpoint::poly::tests::running_example;
    use crate::semiring::IntMinPlus;

    #[test]
    fn running_example_values() {
        let f = running_example();
        assert_eq!(derivation_tree_value(&f, 0, 4).unwrap(), IntMinPlus::from(-3));
        assert_eq!(derivation_tree_value(&f, 1, 1).unwrap(), IntMinPlus::Infinity);
        assert_eq!(derivation_tree_value(&f, 0, 1).unwrap(), IntMinPlus::from(-2));
    }

    #[test]
    fn yields_are_sets_not_minima() {
        let f = running_example();
        let t = derivation_yields(&f, 4, DEFAULT_ENUM_CAP).unwrap();
        // Trees of height ≤ 4 for X1: the leaf (−2) and X2·X3 with
        // X2 = X3+1 and X3 = X1 giving −2 + 1 + −2.
        let mut ys: Vec<_> = t[4][0].iter().map(ToString::to_string).collect();
        ys.sort();
        assert_eq!(ys, ["-2", "-3"]);
    }

    #[test]
    fn cap_is_enforced() {
        let f = running_example();
        assert!(matches!(
            derivation_yields(&f, 6, 1),
            Err(FixpointError::EnumerationCap(1))
        ));
    }

    #[test]
    fn out_of_range_index() {
        assert!(derivation_tree_value(&running_example(), 3, 1).is_err());
    }
}
