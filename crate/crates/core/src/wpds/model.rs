use std::collections::HashMap;
use std::fmt;

use crate::semiring::Semiring;

use super::WpdsError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymbolId(pub usize);

/// `p X →ᵈ q α`; the first element of `push` becomes the new top.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rule<S> {
    pub from: StateId,
    pub symbol: SymbolId,
    pub to: StateId,
    pub push: Vec<SymbolId>,
    pub weight: S,
}

impl<S> Rule<S> {
    pub fn new(from: StateId, symbol: SymbolId, to: StateId, push: Vec<SymbolId>, weight: S) -> Self {
        Rule {
            from,
            symbol,
            to,
            push,
            weight,
        }
    }

    pub fn is_pop(&self) -> bool {
        self.push.is_empty()
    }
}

/// A control state and a stack, top first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    pub state: StateId,
    pub stack: Vec<SymbolId>,
}

impl Configuration {
    pub fn new(state: StateId, stack: Vec<SymbolId>) -> Self {
        Configuration { state, stack }
    }
}

/// A weighted pushdown system over `S`.
///
/// States and symbols are interned; ids index into the name tables and
/// stay valid when the system is extended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wpds<S> {
    states: Vec<String>,
    symbols: Vec<String>,
    rules: Vec<Rule<S>>,
    state_index: HashMap<String, StateId>,
    symbol_index: HashMap<String, SymbolId>,
}

impl<S> Default for Wpds<S> {
    fn default() -> Self {
        Wpds {
            states: vec![],
            symbols: vec![],
            rules: vec![],
            state_index: HashMap::new(),
            symbol_index: HashMap::new(),
        }
    }
}

impl<S: Semiring> Wpds<S> {
    pub fn new<A, B>(states: A, symbols: B) -> Result<Self, WpdsError>
    where
        A: IntoIterator,
        A::Item: Into<String>,
        B: IntoIterator,
        B::Item: Into<String>,
    {
        let mut w = Wpds::default();
        for s in states {
            let s = s.into();
            if w.state_index.contains_key(&s) {
                return Err(WpdsError::Duplicate(s));
            }
            w.add_state(s);
        }
        for x in symbols {
            let x = x.into();
            if w.symbol_index.contains_key(&x) {
                return Err(WpdsError::Duplicate(x));
            }
            w.add_symbol(x);
        }
        Ok(w)
    }

    /// Returns the id of `name`, adding it if new.
    pub fn add_state(&mut self, name: impl Into<String>) -> StateId {
        let name = name.into();
        if let Some(&id) = self.state_index.get(&name) {
            return id;
        }
        let id = StateId(self.states.len());
        self.state_index.insert(name.clone(), id);
        self.states.push(name);
        id
    }

    /// Returns the id of `name`, adding it if new.
    pub fn add_symbol(&mut self, name: impl Into<String>) -> SymbolId {
        let name = name.into();
        if let Some(&id) = self.symbol_index.get(&name) {
            return id;
        }
        let id = SymbolId(self.symbols.len());
        self.symbol_index.insert(name.clone(), id);
        self.symbols.push(name);
        id
    }

    /// Adds a rule. Rules of weight `0̄` can never contribute and are
    /// dropped with a warning; the return value tells whether the rule
    /// was kept.
    pub fn add_rule(&mut self, rule: Rule<S>) -> Result<bool, WpdsError> {
        for s in [rule.from, rule.to] {
            if s.0 >= self.states.len() {
                return Err(WpdsError::UnknownStateId(s.0));
            }
        }
        for x in std::iter::once(&rule.symbol).chain(&rule.push) {
            if x.0 >= self.symbols.len() {
                return Err(WpdsError::UnknownSymbolId(x.0));
            }
        }
        if rule.weight.is_zero() {
            log::warn!("dropping rule {} with weight 0̄", self.rule_to_string(&rule));
            return Ok(false);
        }
        self.rules.push(rule);
        Ok(true)
    }

    /// Convenience for tests and builders: `add_named_rule("p", "X", 1, "q", &["Y"])`.
    pub fn add_named_rule(
        &mut self,
        from: &str,
        symbol: &str,
        weight: S,
        to: &str,
        push: &[&str],
    ) -> Result<bool, WpdsError> {
        let rule = Rule::new(
            self.state(from)?,
            self.symbol(symbol)?,
            self.state(to)?,
            push.iter().map(|y| self.symbol(y)).collect::<Result<_, _>>()?,
            weight,
        );
        self.add_rule(rule)
    }

    pub fn states(&self) -> impl ExactSizeIterator<Item = StateId> {
        (0..self.states.len()).map(StateId)
    }

    pub fn symbols(&self) -> impl ExactSizeIterator<Item = SymbolId> {
        (0..self.symbols.len()).map(SymbolId)
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_symbols(&self) -> usize {
        self.symbols.len()
    }

    pub fn rules(&self) -> &[Rule<S>] {
        &self.rules
    }

    pub fn state_name(&self, id: StateId) -> &str {
        &self.states[id.0]
    }

    pub fn symbol_name(&self, id: SymbolId) -> &str {
        &self.symbols[id.0]
    }

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub fn symbol_names(&self) -> &[String] {
        &self.symbols
    }

    pub fn state(&self, name: &str) -> Result<StateId, WpdsError> {
        self.state_index
            .get(name)
            .copied()
            .ok_or_else(|| WpdsError::UnknownState(name.to_string()))
    }

    pub fn symbol(&self, name: &str) -> Result<SymbolId, WpdsError> {
        self.symbol_index
            .get(name)
            .copied()
            .ok_or_else(|| WpdsError::UnknownSymbol(name.to_string()))
    }

    pub fn is_normalized(&self) -> bool {
        self.rules.iter().all(|r| r.push.len() <= 2)
    }

    /// Splits every rule `pX →ᵈ q Y₁…Yₘ` with `m > 2` into `m − 1` push
    /// rules through fresh symbols `%N1, %N2, …`:
    /// `pX →ᵈ q N_{m−2} Yₘ`, `q N_k →¹ q N_{k−1} Y_{k+1}`, …,
    /// `q N₁ →¹ q Y₁ Y₂`.
    pub fn normalize(&self) -> Wpds<S> {
        let mut out = Wpds {
            states: self.states.clone(),
            symbols: self.symbols.clone(),
            rules: Vec::with_capacity(self.rules.len()),
            state_index: self.state_index.clone(),
            symbol_index: self.symbol_index.clone(),
        };
        let mut fresh = 0usize;
        let mut fresh_symbol = |w: &mut Wpds<S>| loop {
            fresh += 1;
            let name = format!("%N{fresh}");
            if !w.symbol_index.contains_key(&name) {
                return w.add_symbol(name);
            }
        };
        for r in &self.rules {
            let m = r.push.len();
            if m <= 2 {
                out.rules.push(r.clone());
                continue;
            }
            // n[k] stands for N_{k+1}.
            let n: Vec<SymbolId> = (0..m - 2).map(|_| fresh_symbol(&mut out)).collect();
            out.rules.push(Rule::new(
                r.from,
                r.symbol,
                r.to,
                vec![n[m - 3], r.push[m - 1]],
                r.weight.clone(),
            ));
            for k in (2..=m - 2).rev() {
                out.rules.push(Rule::new(
                    r.to,
                    n[k - 1],
                    r.to,
                    vec![n[k - 2], r.push[k]],
                    S::one(),
                ));
            }
            out.rules
                .push(Rule::new(r.to, n[0], r.to, vec![r.push[0], r.push[1]], S::one()));
        }
        out
    }

    /// All one-step successors of `c`, each with the index of the rule used.
    pub fn step(&self, c: &Configuration) -> Vec<(usize, Configuration)> {
        let Some((&top, rest)) = c.stack.split_first() else {
            return vec![];
        };
        self.rules
            .iter()
            .enumerate()
            .filter(|(_, r)| r.from == c.state && r.symbol == top)
            .map(|(i, r)| {
                let mut stack = r.push.clone();
                stack.extend_from_slice(rest);
                (i, Configuration::new(r.to, stack))
            })
            .collect()
    }

    /// Parses `p X Y …` (state, then stack top first).
    pub fn parse_configuration(&self, text: &str) -> Result<Configuration, WpdsError> {
        let mut words = text.split_whitespace();
        let state = words
            .next()
            .ok_or_else(|| WpdsError::Configuration("empty configuration".to_string()))?;
        let state = self.state(state)?;
        let stack = words.map(|x| self.symbol(x)).collect::<Result<_, _>>()?;
        Ok(Configuration::new(state, stack))
    }

    pub fn configuration_to_string(&self, c: &Configuration) -> String {
        let mut s = self.state_name(c.state).to_string();
        for x in &c.stack {
            s.push(' ');
            s.push_str(self.symbol_name(*x));
        }
        s
    }

    pub fn rule_to_string(&self, r: &Rule<S>) -> String {
        let mut s = format!(
            "{} {} -> {}",
            self.state_name(r.from),
            self.symbol_name(r.symbol),
            self.state_name(r.to)
        );
        for y in &r.push {
            s.push(' ');
            s.push_str(self.symbol_name(*y));
        }
        s.push_str(" @ ");
        s.push_str(&r.weight.to_string());
        s
    }

    /// The same system with every weight mapped through `f`; rules mapped
    /// to `0̄` are dropped.
    pub fn map_weights<T: Semiring>(&self, mut f: impl FnMut(usize, &Rule<S>) -> T) -> Wpds<T> {
        let mut out = Wpds {
            states: self.states.clone(),
            symbols: self.symbols.clone(),
            rules: Vec::with_capacity(self.rules.len()),
            state_index: self.state_index.clone(),
            symbol_index: self.symbol_index.clone(),
        };
        for (i, r) in self.rules.iter().enumerate() {
            let w = f(i, r);
            if !w.is_zero() {
                out.rules.push(Rule::new(r.from, r.symbol, r.to, r.push.clone(), w));
            }
        }
        out
    }

    /// Weight of a rule sequence: `d₁ ⊗ … ⊗ dₙ`, `1̄` when empty.
    pub fn path_weight(&self, rules: &[usize]) -> S {
        rules
            .iter()
            .fold(S::one(), |acc, &i| acc.extend(&self.rules[i].weight))
    }

    /// Replays `rules` from `start`; fails if some rule does not apply.
    pub fn replay(&self, start: &Configuration, rules: &[usize]) -> Result<Configuration, WpdsError> {
        let mut c = start.clone();
        for &i in rules {
            let r = self
                .rules
                .get(i)
                .ok_or_else(|| WpdsError::Configuration(format!("no rule #{i}")))?;
            if c.stack.first() != Some(&r.symbol) || c.state != r.from {
                return Err(WpdsError::Configuration(format!(
                    "rule `{}` does not apply to `{}`",
                    self.rule_to_string(r),
                    self.configuration_to_string(&c)
                )));
            }
            let mut stack = r.push.clone();
            stack.extend_from_slice(&c.stack[1..]);
            c = Configuration::new(r.to, stack);
        }
        Ok(c)
    }
}

impl<S: Semiring> fmt::Display for Wpds<S> {
    /// The WPDS text format; see [`crate::wpds::parse_wpds`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "semiring {}", S::NAME)?;
        writeln!(f, "states {}", self.states.join(" "))?;
        writeln!(f, "stack {}", self.symbols.join(" "))?;
        for r in &self.rules {
            writeln!(f, "{}", self.rule_to_string(r))?;
        }
        Ok(())
    }
}
