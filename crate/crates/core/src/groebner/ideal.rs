use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use super::buchberger::{groebner_basis, reduce};
use crate::error::{Error, Result};
use crate::polyring::{parse_polynomial_list, MonomialOrder, Polynomial, Ring};

type Basis = Arc<Vec<Polynomial>>;

/// Write-once store of reduced bases, one per monomial order. Shared by
/// clones of an ideal, which always have the same generators.
#[derive(Default)]
struct GbCache(Mutex<HashMap<MonomialOrder, Basis>>);

/// A finitely generated ideal of a polynomial ring.
#[derive(Clone)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Polynomial>,
    cache: Arc<GbCache>,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Ideal").field("ring", &self.ring.to_string()).field("gens", &self.to_string()).finish()
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", gens.join(", "))
    }
}

impl Ideal {
    pub fn new(ring: &Ring, gens: Vec<Polynomial>) -> Result<Self> {
        if gens.iter().any(|g| g.ring() != ring) {
            return Err(Error::RingMismatch);
        }
        Ok(Ideal { ring: ring.clone(), gens, cache: Arc::default() })
    }

    pub fn parse(ring: &Ring, text: &str) -> Result<Self> {
        Self::new(ring, parse_polynomial_list(ring, text)?)
    }

    pub fn zero(ring: &Ring) -> Self {
        Ideal { ring: ring.clone(), gens: Vec::new(), cache: Arc::default() }
    }

    pub fn unit(ring: &Ring) -> Self {
        Ideal { ring: ring.clone(), gens: vec![Polynomial::one(ring)], cache: Arc::default() }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    /// Reduced Groebner basis under `order`, computed on first request.
    pub fn groebner_basis(&self, order: &MonomialOrder) -> Basis {
        if let Some(gb) = self.cache.0.lock().expect("gb cache poisoned").get(order) {
            return gb.clone();
        }
        // computed outside the lock; a concurrent fill produces the same basis
        let gb = Arc::new(groebner_basis(&self.ring, &self.gens, order));
        self.cache.0.lock().expect("gb cache poisoned").entry(order.clone()).or_insert(gb).clone()
    }

    pub fn gb(&self) -> Basis {
        self.groebner_basis(&MonomialOrder::GrevLex)
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        reduce(f, &self.gb(), &MonomialOrder::GrevLex)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.contains_under(f, &MonomialOrder::GrevLex)
    }

    pub fn contains_under(&self, f: &Polynomial, order: &MonomialOrder) -> bool {
        f.is_zero() || reduce(f, &self.groebner_basis(order), order).is_zero()
    }

    pub fn is_unit(&self) -> bool {
        let gb = self.gb();
        gb.len() == 1 && gb[0].is_constant() && !gb[0].is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.iter().all(Polynomial::is_zero)
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn equals(&self, other: &Ideal) -> bool {
        self.ring == other.ring && self.contains_ideal(other) && other.contains_ideal(self)
    }

    pub fn with_generators(&self, extra: impl IntoIterator<Item = Polynomial>) -> Result<Ideal> {
        let mut gens = self.gens.clone();
        gens.extend(extra);
        Ideal::new(&self.ring, gens)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.with_generators(other.gens.iter().cloned())
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let gens = self.gens.iter().flat_map(|a| other.gens.iter().map(move |b| a * b)).collect();
        Ideal::new(&self.ring, gens)
    }

    pub fn power(&self, k: u32) -> Ideal {
        let mut acc = Ideal::unit(&self.ring);
        for _ in 0..k {
            acc = acc.product(self).expect("same ring");
        }
        acc
    }

    /// Generators of `I ∩ k[other variables]`, as an ideal of the same
    /// ring, via a block order with `block` variables largest.
    pub fn eliminate(&self, block: &[usize]) -> Ideal {
        let order = MonomialOrder::elimination(block.iter().copied());
        let gb = self.groebner_basis(&order);
        let gens = gb.iter().filter(|g| !block.iter().any(|&v| g.involves(v))).cloned().collect();
        Ideal::new(&self.ring, gens).expect("same ring")
    }

    /// The contraction `I ∩ subring`, where the subring's variables are
    /// matched to this ring's by name.
    pub fn contract(&self, subring: &Ring) -> Result<Ideal> {
        let map = self.ring.name_map(subring);
        let block: Vec<usize> = map.iter().enumerate().filter(|(_, t)| t.is_none()).map(|(i, _)| i).collect();
        let elim = self.eliminate(&block);
        let gens = elim.gens.iter().map(|g| g.map_vars(subring, &map)).collect::<Result<Vec<_>>>()?;
        Ideal::new(subring, gens)
    }

    /// Moves the ideal into `target` by variable names.
    pub fn embed(&self, target: &Ring) -> Result<Ideal> {
        let gens = self.gens.iter().map(|g| g.embed(target)).collect::<Result<Vec<_>>>()?;
        Ideal::new(target, gens)
    }

    /// Image under the substitution `var_i -> images[i]`.
    pub fn substitute(&self, target: &Ring, images: &[Polynomial]) -> Result<Ideal> {
        let gens = self.gens.iter().map(|g| g.substitute(target, images)).collect::<Result<Vec<_>>>()?;
        Ideal::new(target, gens)
    }

    /// `(I : g^∞)`, computed as `(I + (w*g - 1)) ∩ k[vars]` with a fresh
    /// variable `w`.
    pub fn saturate(&self, g: &Polynomial) -> Result<Ideal> {
        if g.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (ext, idx) = self.ring.extend(&["w"]);
        let w = ext.gen(idx[0]);
        let lifted = self.embed(&ext)?;
        let inverse = &(&w * &g.embed(&ext)?) - &ext.one();
        lifted.with_generators([inverse])?.contract(&self.ring)
    }

    /// `I ∩ J` as `(t*I + (1-t)*J) ∩ k[vars]`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let (ext, idx) = self.ring.extend(&["t"]);
        let t = ext.gen(idx[0]);
        let one_minus_t = &ext.one() - &t;
        let mut gens = Vec::with_capacity(self.gens.len() + other.gens.len());
        for f in &self.gens {
            gens.push(&t * &f.embed(&ext)?);
        }
        for f in &other.gens {
            gens.push(&one_minus_t * &f.embed(&ext)?);
        }
        Ideal::new(&ext, gens)?.contract(&self.ring)
    }

    /// Whether `I` and `J` induce the same ideal after inverting `g`,
    /// i.e. whether their `g`-saturations agree.
    pub fn localized_equal(&self, other: &Ideal, g: &Polynomial) -> Result<bool> {
        Ok(self.saturate(g)?.equals(&other.saturate(g)?))
    }
}
