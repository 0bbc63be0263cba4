use std::fmt;

use super::Semiring;

/// The laws checked by [`axiom_suite`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axiom {
    CombineAssociative,
    CombineCommutative,
    CombineIdempotent,
    CombineNeutral,
    ExtendAssociative,
    ExtendNeutral,
    Distributive,
    Annihilation,
    TotalOrder,
    InequalityPreservation,
}

impl Axiom {
    pub const ALL: [Axiom; 10] = [
        Axiom::CombineAssociative,
        Axiom::CombineCommutative,
        Axiom::CombineIdempotent,
        Axiom::CombineNeutral,
        Axiom::ExtendAssociative,
        Axiom::ExtendNeutral,
        Axiom::Distributive,
        Axiom::Annihilation,
        Axiom::TotalOrder,
        Axiom::InequalityPreservation,
    ];
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::CombineAssociative => "combine associative",
            Axiom::CombineCommutative => "combine commutative",
            Axiom::CombineIdempotent => "combine idempotent",
            Axiom::CombineNeutral => "zero neutral for combine",
            Axiom::ExtendAssociative => "extend associative",
            Axiom::ExtendNeutral => "one neutral for extend",
            Axiom::Distributive => "extend distributes over combine",
            Axiom::Annihilation => "zero annihilates extend",
            Axiom::TotalOrder => "derived order is total",
            Axiom::InequalityPreservation => "extend preserves inequality",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomOutcome<S> {
    pub axiom: Axiom,
    /// The first offending sample tuple, in sample order.
    pub counterexample: Option<Vec<S>>,
}

impl<S> AxiomOutcome<S> {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport<S> {
    pub outcomes: Vec<AxiomOutcome<S>>,
}

impl<S> AxiomReport<S> {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(AxiomOutcome::passed)
    }

    pub fn outcome(&self, axiom: Axiom) -> &AxiomOutcome<S> {
        self.outcomes
            .iter()
            .find(|o| o.axiom == axiom)
            .expect("every axiom is reported")
    }
}

impl<S: fmt::Display> fmt::Display for AxiomReport<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in &self.outcomes {
            match &o.counterexample {
                None => writeln!(f, "pass  {}", o.axiom)?,
                Some(cx) => {
                    let cx: Vec<String> = cx.iter().map(ToString::to_string).collect();
                    writeln!(f, "FAIL  {} on ({})", o.axiom, cx.join(", "))?
                }
            }
        }
        Ok(())
    }
}

/// Checks every [`Axiom`] exhaustively over all pairs and triples drawn
/// from `samples`. The neutral elements are always added to the pool.
pub fn axiom_suite<S: Semiring>(samples: &[S]) -> AxiomReport<S> {
    let mut pool: Vec<S> = samples.to_vec();
    for e in [S::zero(), S::one()] {
        if !pool.contains(&e) {
            pool.push(e);
        }
    }
    let (zero, one) = (S::zero(), S::one());

    let unary = |pred: &dyn Fn(&S) -> bool| -> Option<Vec<S>> {
        pool.iter().find(|a| !pred(a)).map(|a| vec![a.clone()])
    };
    let binary = |pred: &dyn Fn(&S, &S) -> bool| -> Option<Vec<S>> {
        for a in &pool {
            for b in &pool {
                if !pred(a, b) {
                    return Some(vec![a.clone(), b.clone()]);
                }
            }
        }
        None
    };
    let ternary = |pred: &dyn Fn(&S, &S, &S) -> bool| -> Option<Vec<S>> {
        for a in &pool {
            for b in &pool {
                for c in &pool {
                    if !pred(a, b, c) {
                        return Some(vec![a.clone(), b.clone(), c.clone()]);
                    }
                }
            }
        }
        None
    };

    let check = |axiom: Axiom| -> Option<Vec<S>> {
        match axiom {
            Axiom::CombineAssociative => {
                ternary(&|a, b, c| a.combine(b).combine(c) == a.combine(&b.combine(c)))
            }
            Axiom::CombineCommutative => binary(&|a, b| a.combine(b) == b.combine(a)),
            Axiom::CombineIdempotent => unary(&|a| a.combine(a) == *a),
            Axiom::CombineNeutral => {
                unary(&|a| a.combine(&zero) == *a && zero.combine(a) == *a)
            }
            Axiom::ExtendAssociative => {
                ternary(&|a, b, c| a.extend(b).extend(c) == a.extend(&b.extend(c)))
            }
            Axiom::ExtendNeutral => unary(&|a| a.extend(&one) == *a && one.extend(a) == *a),
            Axiom::Distributive => ternary(&|a, b, c| {
                a.extend(&b.combine(c)) == a.extend(b).combine(&a.extend(c))
                    && a.combine(b).extend(c) == a.extend(c).combine(&b.extend(c))
            }),
            Axiom::Annihilation => unary(&|a| a.extend(&zero) == zero && zero.extend(a) == zero),
            Axiom::TotalOrder => binary(&|a, b| a.leq(b) || b.leq(a)),
            Axiom::InequalityPreservation => ternary(&|a, b, c| {
                if a == b || a.is_zero() || b.is_zero() || c.is_zero() {
                    return true;
                }
                a.extend(c) != b.extend(c) && c.extend(a) != c.extend(b)
            }),
        }
    };

    AxiomReport {
        outcomes: Axiom::ALL
            .iter()
            .map(|&axiom| AxiomOutcome {
                axiom,
                counterexample: check(axiom),
            })
            .collect(),
    }
}
