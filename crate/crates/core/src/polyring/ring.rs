use std::fmt;
use std::sync::Arc;

use super::field::CoefficientField;
use super::monomial::Monomial;
use super::poly::Polynomial;
use crate::error::{Error, Result};

#[derive(Debug, PartialEq, Eq, Hash)]
struct RingData {
    field: CoefficientField,
    vars: Vec<String>,
}

/// A polynomial ring `k[v_0, ..., v_{n-1}]` with an ordered variable list
/// fixed at construction. Cheap to clone.
#[derive(Debug, Clone, Eq)]
pub struct Ring(Arc<RingData>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl std::hash::Hash for Ring {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

fn is_ident(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric())
}

impl Ring {
    pub fn new<S: AsRef<str>>(field: CoefficientField, vars: impl IntoIterator<Item = S>) -> Result<Self> {
        let vars: Vec<String> = vars.into_iter().map(|v| v.as_ref().trim().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if !is_ident(v) {
                return Err(Error::InvalidRing(format!("`{v}` is not a valid variable name")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidRing(format!("variable `{v}` declared twice")));
            }
        }
        Ok(Ring(Arc::new(RingData { field, vars })))
    }

    pub fn field(&self) -> &CoefficientField {
        &self.0.field
    }

    pub fn vars(&self) -> &[String] {
        &self.0.vars
    }

    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.vars.iter().position(|v| v == name)
    }

    /// The variable `name` as a polynomial.
    pub fn var(&self, name: &str) -> Result<Polynomial> {
        let i = self.var_index(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(self.gen(i))
    }

    pub fn gen(&self, i: usize) -> Polynomial {
        let m = Monomial::variable(self.nvars(), i, 1).expect("exponent 1");
        Polynomial::from_terms(self, [(m, self.field().one())])
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self)
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::one(self)
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        super::parse::parse_polynomial(self, text)
    }

    /// A name based on `base` that is not yet a variable of this ring.
    pub fn fresh_name(&self, base: &str) -> String {
        if self.var_index(base).is_none() {
            return base.to_string();
        }
        (0..)
            .map(|k| format!("{base}{k}"))
            .find(|cand| self.var_index(cand).is_none())
            .expect("infinitely many candidates")
    }

    /// This ring with `extra` variables appended (fresh names are chosen
    /// on collision). Returns the new ring and the indices of the appended
    /// variables.
    pub fn extend(&self, extra: &[&str]) -> (Ring, Vec<usize>) {
        let mut vars = self.vars().to_vec();
        let mut idx = Vec::with_capacity(extra.len());
        for base in extra {
            let probe = Ring(Arc::new(RingData { field: self.field().clone(), vars: vars.clone() }));
            let name = probe.fresh_name(base);
            idx.push(vars.len());
            vars.push(name);
        }
        (Ring(Arc::new(RingData { field: self.field().clone(), vars })), idx)
    }

    /// The subring on `keep` (indices into this ring), in the given order.
    pub fn subring(&self, keep: &[usize]) -> Ring {
        let vars = keep.iter().map(|&i| self.0.vars[i].clone()).collect();
        Ring(Arc::new(RingData { field: self.field().clone(), vars }))
    }

    /// For each variable of `self`, its index in `target` by name.
    pub fn name_map(&self, target: &Ring) -> Vec<Option<usize>> {
        self.vars().iter().map(|v| target.var_index(v)).collect()
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let field = match self.field() {
            CoefficientField::Prime(p) => format!("GF({p})"),
            CoefficientField::Rationals => "QQ".to_string(),
        };
        write!(f, "{field}[{}]", self.vars().join(","))
    }
}
