use std::fmt;

use crate::semiring::{Semiring, Value};

use super::FixpointError;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Factor<S> {
    Const(S),
    /// 0-based variable index.
    Var(usize),
}

/// A product `a₁ ⊗ X_{i₁} ⊗ a₂ ⊗ …` of constants and variables in order.
/// The empty product is `1̄`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial<S> {
    pub factors: Vec<Factor<S>>,
}

impl<S: Semiring> Monomial<S> {
    pub fn new(factors: Vec<Factor<S>>) -> Self {
        Monomial { factors }
    }

    pub fn constant(c: S) -> Self {
        Monomial {
            factors: vec![Factor::Const(c)],
        }
    }

    pub fn is_constant(&self) -> bool {
        self.factors.iter().all(|f| matches!(f, Factor::Const(_)))
    }

    pub fn variables(&self) -> impl Iterator<Item = usize> + '_ {
        self.factors.iter().filter_map(|f| match f {
            Factor::Var(i) => Some(*i),
            Factor::Const(_) => None,
        })
    }

    pub fn degree(&self) -> usize {
        self.variables().count()
    }

    /// Number of ⊗ operators.
    pub fn size(&self) -> usize {
        self.factors.len().saturating_sub(1)
    }

    pub fn evaluate(&self, v: &[S]) -> S {
        let mut acc = S::one();
        for f in &self.factors {
            let x = match f {
                Factor::Const(c) => c,
                Factor::Var(i) => &v[*i],
            };
            acc = acc.extend(x);
            if acc.is_zero() {
                break;
            }
        }
        acc
    }

    pub fn evaluate_values(&self, v: &[Value<S>]) -> Value<S> {
        // A 0̄ factor anywhere annihilates, even against ⊥ elsewhere.
        let mut acc = Value::one();
        for f in &self.factors {
            let x = match f {
                Factor::Const(c) => Value::Finite(c.clone()),
                Factor::Var(i) => v[*i].clone(),
            };
            acc = acc.extend(&x);
        }
        acc
    }
}

/// A combine `m₁ ⊕ … ⊕ mₛ`; the empty polynomial is `0̄`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<S> {
    pub monomials: Vec<Monomial<S>>,
}

impl<S: Semiring> Polynomial<S> {
    pub fn new(monomials: Vec<Monomial<S>>) -> Self {
        Polynomial { monomials }
    }

    pub fn zero() -> Self {
        Polynomial { monomials: vec![] }
    }

    /// Number of ⊕ and ⊗ operators.
    pub fn size(&self) -> usize {
        self.monomials.len().saturating_sub(1)
            + self.monomials.iter().map(Monomial::size).sum::<usize>()
    }

    pub fn evaluate(&self, v: &[S]) -> S {
        self.monomials
            .iter()
            .fold(S::zero(), |acc, m| acc.combine(&m.evaluate(v)))
    }

    pub fn evaluate_values(&self, v: &[Value<S>]) -> Value<S> {
        self.monomials
            .iter()
            .fold(Value::zero(), |acc, m| acc.combine(&m.evaluate_values(v)))
    }
}

/// A vector `(f₁, …, fₙ)` of polynomials over variables `X₁ … Xₙ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialSystem<S> {
    names: Vec<String>,
    components: Vec<Polynomial<S>>,
}

impl<S: Semiring> PolynomialSystem<S> {
    /// Fails if the lengths differ or a monomial refers to a variable
    /// outside `0..n`.
    pub fn new(names: Vec<String>, components: Vec<Polynomial<S>>) -> Result<Self, FixpointError> {
        if names.len() != components.len() {
            return Err(FixpointError::Dimension {
                expected: names.len(),
                actual: components.len(),
            });
        }
        let n = names.len();
        for p in &components {
            for m in &p.monomials {
                if let Some(i) = m.variables().find(|&i| i >= n) {
                    return Err(FixpointError::VariableOutOfRange { index: i, n });
                }
            }
        }
        Ok(PolynomialSystem { names, components })
    }

    /// Names the variables `X1 … Xn`.
    pub fn with_default_names(components: Vec<Polynomial<S>>) -> Result<Self, FixpointError> {
        let names = (1..=components.len()).map(|i| format!("X{i}")).collect();
        Self::new(names, components)
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn components(&self) -> &[Polynomial<S>] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Polynomial<S> {
        &self.components[i]
    }

    /// The size `K(f)`: total number of ⊕ and ⊗ operators.
    pub fn size_k(&self) -> usize {
        self.components.iter().map(Polynomial::size).sum()
    }

    pub fn zero_vector(&self) -> Vec<S> {
        vec![S::zero(); self.len()]
    }

    pub fn evaluate(&self, v: &[S]) -> Result<Vec<S>, FixpointError> {
        if v.len() != self.len() {
            return Err(FixpointError::Dimension {
                expected: self.len(),
                actual: v.len(),
            });
        }
        Ok(self.evaluate_unchecked(v))
    }

    pub(crate) fn evaluate_unchecked(&self, v: &[S]) -> Vec<S> {
        self.components.iter().map(|p| p.evaluate(v)).collect()
    }

    pub(crate) fn evaluate_values(&self, v: &[Value<S>]) -> Vec<Value<S>> {
        self.components.iter().map(|p| p.evaluate_values(v)).collect()
    }
}

impl<S: Semiring> fmt::Display for PolynomialSystem<S> {
    /// Prints the equation text format accepted by
    /// [`crate::fixpoint::parse_system`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "semiring {}", S::NAME)?;
        for (name, p) in self.names.iter().zip(&self.components) {
            write!(f, "{name} =")?;
            for (j, m) in p.monomials.iter().enumerate() {
                if j > 0 {
                    write!(f, " |")?;
                }
                if m.factors.is_empty() {
                    write!(f, " ({})", S::one())?;
                }
                for (k, factor) in m.factors.iter().enumerate() {
                    if k > 0 {
                        write!(f, " .")?;
                    }
                    match factor {
                        Factor::Const(c) => write!(f, " ({c})")?,
                        Factor::Var(i) => write!(f, " {}", self.names[*i])?,
                    }
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
