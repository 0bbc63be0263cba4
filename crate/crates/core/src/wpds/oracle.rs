//! Brute-force reference computations used as test oracles.

use std::collections::HashMap;

use crate::semiring::Semiring;

use super::{Configuration, StateId, SymbolId, Wpds, WpdsError};

/// Default bound on the number of distinct configurations per layer.
pub const DEFAULT_FRONTIER_CAP: usize = 200_000;

/// `⊕{v(σ) | from →σ c, accept(c), |σ| < max_len}`.
///
/// Explores paths layer by layer. Prefixes ending in the same
/// configuration are combined, which is sound by distributivity.
pub fn brute_force_paths<S: Semiring>(
    wpds: &Wpds<S>,
    from: &Configuration,
    max_len: usize,
    mut accept: impl FnMut(&Configuration) -> bool,
) -> Result<S, WpdsError> {
    let mut total = S::zero();
    let mut layer: HashMap<Configuration, S> = HashMap::from([(from.clone(), S::one())]);
    for len in 0..max_len {
        for (c, w) in &layer {
            if accept(c) {
                total = total.combine(w);
            }
        }
        if len + 1 == max_len {
            break;
        }
        let mut next: HashMap<Configuration, S> = HashMap::new();
        for (c, w) in &layer {
            for (i, c2) in wpds.step(c) {
                let w2 = w.extend(&wpds.rules()[i].weight);
                next.entry(c2)
                    .and_modify(|acc| *acc = acc.combine(&w2))
                    .or_insert(w2);
            }
        }
        if next.len() > DEFAULT_FRONTIER_CAP {
            return Err(WpdsError::Explosion(DEFAULT_FRONTIER_CAP));
        }
        layer = next;
    }
    Ok(total)
}

/// `⊕{v(σ) | from →σ to, |σ| < max_len}`.
pub fn brute_force_movp<S: Semiring>(
    wpds: &Wpds<S>,
    from: &Configuration,
    to: &Configuration,
    max_len: usize,
) -> Result<S, WpdsError> {
    brute_force_paths(wpds, from, max_len, |c| c == to)
}

/// The `k`-th Kleene iterate at `c` of the infinite per-configuration
/// system `[c] = I(c) ⊕ ⊕_{c →ᵈ c′} d ⊗ [c′]`, where `I(c) = 1̄` iff
/// `c = target`. Computed by memoized recursion on `(c, k)`.
pub fn configuration_iterate<S: Semiring>(
    wpds: &Wpds<S>,
    target: &Configuration,
    c: &Configuration,
    k: usize,
) -> S {
    fn go<S: Semiring>(
        wpds: &Wpds<S>,
        target: &Configuration,
        c: &Configuration,
        k: usize,
        memo: &mut HashMap<(Configuration, usize), S>,
    ) -> S {
        if k == 0 {
            return S::zero();
        }
        if let Some(v) = memo.get(&(c.clone(), k)) {
            return v.clone();
        }
        let mut v = if c == target { S::one() } else { S::zero() };
        for (i, c2) in wpds.step(c) {
            let rest = go(wpds, target, &c2, k - 1, memo);
            v = v.combine(&wpds.rules()[i].weight.extend(&rest));
        }
        memo.insert((c.clone(), k), v.clone());
        v
    }
    go(wpds, target, c, k, &mut HashMap::new())
}

/// `⊕{v(σ) | σ a pop sequence pX →σ qε, |σ| ≤ max_len}` for a
/// normalized system.
///
/// Uses exact-length tables: a pop sequence of length `L` starting with a
/// push rule splits uniquely into pop sequences of lengths `L₁ + L₂ = L − 1`.
pub fn pop_weight_bounded<S: Semiring>(
    wpds: &Wpds<S>,
    p: StateId,
    x: SymbolId,
    q: StateId,
    max_len: usize,
) -> Result<S, WpdsError> {
    if !wpds.is_normalized() {
        return Err(WpdsError::NotNormalized);
    }
    let (np, nx) = (wpds.num_states(), wpds.num_symbols());
    let idx = |p: StateId, x: SymbolId, q: StateId| (p.0 * nx + x.0) * np + q.0;
    // exact[L][idx]: combine over pop sequences of length exactly L.
    let mut exact: Vec<Vec<S>> = vec![vec![S::zero(); np * nx * np]];
    for len in 1..=max_len {
        let mut row = vec![S::zero(); np * nx * np];
        for r in wpds.rules() {
            for t in wpds.states() {
                let cell = idx(r.from, r.symbol, t);
                let add = match r.push.as_slice() {
                    [] if len == 1 && r.to == t => r.weight.clone(),
                    [] => continue,
                    [y] => r.weight.extend(&exact[len - 1][idx(r.to, *y, t)]),
                    [y, z] => {
                        let mut acc = S::zero();
                        for l1 in 1..len.saturating_sub(1) {
                            let l2 = len - 1 - l1;
                            for s in wpds.states() {
                                let a = &exact[l1][idx(r.to, *y, s)];
                                let b = &exact[l2][idx(s, *z, t)];
                                acc = acc.combine(&a.extend(b));
                            }
                        }
                        r.weight.extend(&acc)
                    }
                    _ => unreachable!("normalized"),
                };
                row[cell] = row[cell].combine(&add);
            }
        }
        exact.push(row);
    }
    Ok(exact[1..]
        .iter()
        .fold(S::zero(), |acc, row| acc.combine(&row[idx(p, x, q)])))
}
