//! The direct post* system for a single source configuration `p_s X_s`.
//!
//! Variables describe paths into a configuration head, relative to a
//! context `s`, which is either the source (`•`) or a mid-state `(r,Z)`
//! created by a push rule `… → r Z Y`:
//!
//! * `[pX s]`: paths from the context to `pX`,
//! * `[pε s]`: paths from the context to `pε`,
//! * `[(pX)Y s]`: paths from the context to `pXY` ending with a push.

use std::collections::{BTreeSet, HashMap};

use crate::fixpoint::{Factor, KleeneRun, Monomial, Polynomial, PolynomialSystem};
use crate::semiring::{Semiring, Value};

use super::pre_star::solve_marking_witnesses;
use super::{Configuration, StateId, SymbolId, Wpds, WpdsError};

/// A push target `(q, Y)` of some rule `… → q Y Z`.
pub type MidState = (StateId, SymbolId);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Context {
    Source,
    Mid(MidState),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PostVar {
    /// `[pX s]`
    Head(StateId, SymbolId, Context),
    /// `[pε s]`
    Empty(StateId, Context),
    /// `[(pX)Y s]`
    Pushed(MidState, SymbolId, Context),
}

#[derive(Debug, Clone)]
pub struct PostStarSystem<S> {
    pub source: Configuration,
    pub system: PolynomialSystem<S>,
    pub vars: Vec<PostVar>,
    pub index: HashMap<PostVar, usize>,
    /// All mid-states, in ascending order.
    pub mids: Vec<MidState>,
}

/// Builds the post* system from `source`, which must have exactly one
/// stack symbol.
///
/// Only variables whose head can occur are generated: the source head,
/// targets of swap rules, the two tops produced by a push, and symbols
/// exposed by a pop below a mid-state.
pub fn build_post_star_system<S: Semiring>(
    wpds: &Wpds<S>,
    source: &Configuration,
) -> Result<PostStarSystem<S>, WpdsError> {
    if !wpds.is_normalized() {
        return Err(WpdsError::NotNormalized);
    }
    let [xs] = source.stack.as_slice() else {
        return Err(WpdsError::Configuration(
            "post* source must have exactly one stack symbol".to_string(),
        ));
    };
    if source.state.0 >= wpds.num_states() || xs.0 >= wpds.num_symbols() {
        return Err(WpdsError::Configuration("source outside the system".to_string()));
    }
    let (ps, xs) = (source.state, *xs);
    let rules = wpds.rules();

    let mids: BTreeSet<MidState> = rules
        .iter()
        .filter(|r| r.push.len() == 2)
        .map(|r| (r.to, r.push[0]))
        .collect();
    let pop_targets: BTreeSet<StateId> = rules.iter().filter(|r| r.is_pop()).map(|r| r.to).collect();
    // Symbols that sit directly below a mid-state.
    let below: BTreeSet<(MidState, SymbolId)> = rules
        .iter()
        .filter(|r| r.push.len() == 2)
        .map(|r| ((r.to, r.push[0]), r.push[1]))
        .collect();

    let mut heads: BTreeSet<(StateId, SymbolId)> = BTreeSet::new();
    heads.insert((ps, xs));
    for r in rules {
        if let Some(&y) = r.push.first() {
            heads.insert((r.to, y));
        }
    }
    for &(_, z) in &below {
        for &p in &pop_targets {
            heads.insert((p, z));
        }
    }

    let contexts: Vec<Context> = std::iter::once(Context::Source)
        .chain(mids.iter().map(|&m| Context::Mid(m)))
        .collect();
    let mut vars = Vec::new();
    for &(p, x) in &heads {
        for &s in &contexts {
            vars.push(PostVar::Head(p, x, s));
        }
    }
    for &p in &pop_targets {
        for &s in &contexts {
            vars.push(PostVar::Empty(p, s));
        }
    }
    for &(m, y) in &below {
        for &s in &contexts {
            vars.push(PostVar::Pushed(m, y, s));
        }
    }
    let index: HashMap<PostVar, usize> = vars.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let var = |v: PostVar| index.get(&v).map(|&i| Factor::<S>::Var(i));

    let mut components = Vec::with_capacity(vars.len());
    for &v in &vars {
        let mut monomials = Vec::new();
        match v {
            PostVar::Head(p, x, s) => {
                let unit = match s {
                    Context::Source => (p, x) == (ps, xs),
                    Context::Mid(m) => m == (p, x),
                };
                if unit {
                    monomials.push(Monomial::new(vec![Factor::Const(S::one())]));
                }
                for r in rules.iter().filter(|r| r.push.as_slice() == [x] && r.to == p) {
                    if let Some(a) = var(PostVar::Head(r.from, r.symbol, s)) {
                        monomials.push(Monomial::new(vec![a, Factor::Const(r.weight.clone())]));
                    }
                }
                for &m in &mids {
                    if let (Some(a), Some(b)) =
                        (var(PostVar::Pushed(m, x, s)), var(PostVar::Empty(p, Context::Mid(m))))
                    {
                        monomials.push(Monomial::new(vec![a, b]));
                    }
                }
            }
            PostVar::Empty(p, s) => {
                for r in rules.iter().filter(|r| r.is_pop() && r.to == p) {
                    if let Some(a) = var(PostVar::Head(r.from, r.symbol, s)) {
                        monomials.push(Monomial::new(vec![a, Factor::Const(r.weight.clone())]));
                    }
                }
            }
            PostVar::Pushed((p, x), y, s) => {
                for r in rules
                    .iter()
                    .filter(|r| r.to == p && r.push.as_slice() == [x, y])
                {
                    if let Some(a) = var(PostVar::Head(r.from, r.symbol, s)) {
                        monomials.push(Monomial::new(vec![a, Factor::Const(r.weight.clone())]));
                    }
                }
            }
        }
        components.push(Polynomial::new(monomials));
    }

    let ctx_name = |s: Context| match s {
        Context::Source => "•".to_string(),
        Context::Mid((q, y)) => format!("({} {})", wpds.state_name(q), wpds.symbol_name(y)),
    };
    let names = vars
        .iter()
        .map(|v| match *v {
            PostVar::Head(p, x, s) => {
                format!("[{} {} {}]", wpds.state_name(p), wpds.symbol_name(x), ctx_name(s))
            }
            PostVar::Empty(p, s) => format!("[{} ε {}]", wpds.state_name(p), ctx_name(s)),
            PostVar::Pushed((p, x), y, s) => format!(
                "[({} {}) {} {}]",
                wpds.state_name(p),
                wpds.symbol_name(x),
                wpds.symbol_name(y),
                ctx_name(s)
            ),
        })
        .collect();
    let system = PolynomialSystem::new(names, components).expect("indices are in range");
    Ok(PostStarSystem {
        source: source.clone(),
        system,
        vars,
        index,
        mids: mids.into_iter().collect(),
    })
}

#[derive(Debug, Clone)]
pub struct PostStarSolution<S> {
    pub source: Configuration,
    pub vars: Vec<PostVar>,
    pub index: HashMap<PostVar, usize>,
    pub values: Vec<Value<S>>,
    pub witnesses: Vec<usize>,
    pub mids: Vec<MidState>,
    pub run: KleeneRun<S>,
    pub system: PolynomialSystem<S>,
}

impl<S: Semiring> PostStarSolution<S> {
    pub fn value(&self, v: PostVar) -> Value<S> {
        self.index
            .get(&v)
            .map_or_else(Value::zero, |&i| self.values[i].clone())
    }
}

pub fn solve_post_star<S: Semiring>(
    wpds: &Wpds<S>,
    source: &Configuration,
) -> Result<PostStarSolution<S>, WpdsError> {
    let PostStarSystem {
        source,
        system,
        vars,
        index,
        mids,
    } = build_post_star_system(wpds, source)?;
    let (values, witnesses, run) = solve_marking_witnesses(&system);
    Ok(PostStarSolution {
        source,
        vars,
        index,
        values,
        witnesses,
        mids,
        run,
        system,
    })
}
