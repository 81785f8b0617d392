use std::cmp::Ordering;

use crate::polyring::{Coeff, CoefficientField, Monomial, MonomialOrder, Polynomial, Ring, Term};

/// Polynomial terms sorted descending under a working order.
type Terms = Vec<Term>;

struct Ctx<'a> {
    field: &'a CoefficientField,
    order: &'a MonomialOrder,
}

#[derive(Clone)]
struct Elem {
    terms: Terms,
    sig: u64,
}

impl Elem {
    fn new(terms: Terms) -> Self {
        let sig = terms[0].0.signature();
        Elem { terms, sig }
    }

    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn lc(&self) -> &Coeff {
        &self.terms[0].1
    }
}

impl Ctx<'_> {
    fn sort(&self, mut terms: Terms) -> Terms {
        terms.sort_by(|a, b| self.order.compare(&b.0, &a.0));
        terms
    }

    /// `a - coef * q * b`, all term lists descending.
    fn sub_mul(&self, a: &[Term], coef: &Coeff, q: &Monomial, b: &[Term]) -> Terms {
        let field = self.field;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let mut i = 0;
        let mut bi = b.iter().map(|(m, c)| (m.mul(q), field.neg(&field.mul(c, coef)))).peekable();
        while i < a.len() {
            let Some((bm, _)) = bi.peek() else { break };
            match self.order.compare(&a[i].0, bm) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => out.push(bi.next().expect("peeked")),
                Ordering::Equal => {
                    let (m, c) = bi.next().expect("peeked");
                    let s = field.add(&a[i].1, &c);
                    if !field.is_zero(&s) {
                        out.push((m, s));
                    }
                    i += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(bi);
        out
    }

    fn find_reducer<'b>(&self, m: &Monomial, basis: &'b [Elem]) -> Option<&'b Elem> {
        let sig = m.signature();
        basis.iter().find(|g| g.sig & !sig == 0 && g.lm().divides(m))
    }

    /// Full reduction of `f` by `basis`.
    fn normal_form(&self, f: Terms, basis: &[Elem]) -> Terms {
        let mut p = f;
        let mut off = 0;
        let mut rem = Vec::new();
        while off < p.len() {
            let (m, c) = &p[off];
            match self.find_reducer(m, basis) {
                Some(g) => {
                    let q = m.div(g.lm()).expect("divisible");
                    let coef = if self.field.is_one(g.lc()) {
                        c.clone()
                    } else {
                        self.field.div(c, g.lc()).expect("nonzero leading coefficient")
                    };
                    p = self.sub_mul(&p[off + 1..], &coef, &q, &g.terms[1..]);
                    off = 0;
                }
                None => {
                    rem.push(p[off].clone());
                    off += 1;
                }
            }
        }
        rem
    }

    fn monic(&self, mut terms: Terms) -> Terms {
        if let Some((_, lc)) = terms.first() {
            if !self.field.is_one(lc) {
                let inv = self.field.inv(lc).expect("nonzero leading coefficient");
                for (_, c) in terms.iter_mut() {
                    *c = self.field.mul(c, &inv);
                }
            }
        }
        terms
    }

    fn s_poly(&self, f: &Elem, g: &Elem) -> Terms {
        let lcm = f.lm().lcm(g.lm());
        let qf = lcm.div(f.lm()).expect("lcm");
        let qg = lcm.div(g.lm()).expect("lcm");
        // both monic: S = qf*f - qg*g with the leading terms cancelling
        let scaled: Terms = f.terms[1..].iter().map(|(m, c)| (m.mul(&qf), c.clone())).collect();
        self.sub_mul(&scaled, &self.field.one(), &qg, &g.terms[1..])
    }
}

fn to_terms(ctx: &Ctx, p: &Polynomial) -> Terms {
    ctx.sort(p.terms().to_vec())
}

/// Multivariate division: a normal form of `f` modulo `basis` under
/// `order`. No term of the result is divisible by a leading term of the
/// basis.
pub fn reduce(f: &Polynomial, basis: &[Polynomial], order: &MonomialOrder) -> Polynomial {
    let ctx = Ctx { field: f.ring().field(), order };
    let elems: Vec<Elem> = basis.iter().filter(|g| !g.is_zero()).map(|g| Elem::new(to_terms(&ctx, g))).collect();
    let rem = ctx.normal_form(to_terms(&ctx, f), &elems);
    Polynomial::from_terms(f.ring(), rem)
}

#[derive(Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Builder<'a> {
    ctx: Ctx<'a>,
    elems: Vec<Elem>,
    active: Vec<bool>,
    /// sorted so that the next pair to process, the one with the smallest
    /// lcm under the working order, is last
    pairs: Vec<Pair>,
}

impl Builder<'_> {
    fn active_elems(&self) -> Vec<Elem> {
        self.elems.iter().zip(&self.active).filter(|(_, &a)| a).map(|(e, _)| e.clone()).collect()
    }

    fn make_pair(&self, i: usize, j: usize) -> Pair {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        let lcm = self.elems[i].lm().lcm(self.elems[j].lm());
        Pair { i, j, lcm }
    }

    /// Gebauer-Moeller installation of a new basis element, applying the
    /// coprime and chain criteria.
    fn update(&mut self, h: Elem) {
        let hi = self.elems.len();
        self.elems.push(h);
        self.active.push(true);
        let h_lm = self.elems[hi].lm().clone();

        let candidates: Vec<Pair> = (0..hi).filter(|&g| self.active[g]).map(|g| self.make_pair(g, hi)).collect();
        let other = |p: &Pair| if p.i == hi { p.j } else { p.i };

        let mut kept: Vec<Pair> = Vec::new();
        for (k, p) in candidates.iter().enumerate() {
            let coprime = h_lm.is_coprime(self.elems[other(p)].lm());
            let dominated = candidates[k + 1..].iter().chain(kept.iter()).any(|q| q.lcm.divides(&p.lcm));
            if coprime || !dominated {
                kept.push(p.clone());
            }
        }
        let fresh: Vec<Pair> =
            kept.into_iter().filter(|p| !h_lm.is_coprime(self.elems[other(p)].lm())).collect();

        let elems = &self.elems;
        self.pairs.retain(|p| {
            !h_lm.divides(&p.lcm)
                || elems[p.i].lm().lcm(&h_lm) == p.lcm
                || h_lm.lcm(elems[p.j].lm()) == p.lcm
        });
        self.pairs.extend(fresh);
        let order = self.ctx.order;
        self.pairs.sort_by(|a, b| {
            order.compare(&b.lcm, &a.lcm).then_with(|| (b.i, b.j).cmp(&(a.i, a.j)))
        });

        for g in 0..hi {
            if self.active[g] && h_lm.divides(self.elems[g].lm()) {
                self.active[g] = false;
            }
        }
    }
}

/// Reduced Groebner basis of the ideal generated by `gens`, monic and
/// sorted by ascending leading monomial. The output depends only on the
/// ideal and the order.
pub fn groebner_basis(ring: &Ring, gens: &[Polynomial], order: &MonomialOrder) -> Vec<Polynomial> {
    let ctx = Ctx { field: ring.field(), order };
    let mut input: Vec<Terms> = gens.iter().filter(|g| !g.is_zero()).map(|g| to_terms(&ctx, g)).collect();
    if input.iter().any(|t| t.len() == 1 && t[0].0.is_one()) {
        return vec![Polynomial::one(ring)];
    }
    input.sort_by(|a, b| order.compare(&a[0].0, &b[0].0).then_with(|| a.len().cmp(&b.len())));

    let mut b = Builder { ctx, elems: Vec::new(), active: Vec::new(), pairs: Vec::new() };
    for f in input {
        let active = b.active_elems();
        let r = b.ctx.normal_form(f, &active);
        if r.is_empty() {
            continue;
        }
        if r[0].0.is_one() {
            return vec![Polynomial::one(ring)];
        }
        let r = b.ctx.monic(r);
        b.update(Elem::new(r));
    }

    while let Some(pair) = b.pairs.pop() {
        let s = b.ctx.s_poly(&b.elems[pair.i], &b.elems[pair.j]);
        if s.is_empty() {
            continue;
        }
        let active = b.active_elems();
        let r = b.ctx.normal_form(s, &active);
        if r.is_empty() {
            continue;
        }
        if r[0].0.is_one() {
            return vec![Polynomial::one(ring)];
        }
        let r = b.ctx.monic(r);
        b.update(Elem::new(r));
    }

    // minimal basis -> reduced basis
    let minimal = b.active_elems();
    let mut reduced: Vec<Terms> = Vec::with_capacity(minimal.len());
    for (k, g) in minimal.iter().enumerate() {
        let others: Vec<Elem> =
            minimal.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, e)| e.clone()).collect();
        let tail = b.ctx.normal_form(g.terms[1..].to_vec(), &others);
        let mut t = Vec::with_capacity(tail.len() + 1);
        t.push(g.terms[0].clone());
        t.extend(tail);
        reduced.push(t);
    }
    reduced.sort_by(|a, b| order.compare(&a[0].0, &b[0].0));
    reduced.into_iter().map(|t| Polynomial::from_terms(ring, t)).collect()
}

/// `true` when every S-polynomial of `basis` reduces to zero against it.
pub fn is_groebner_basis(basis: &[Polynomial], order: &MonomialOrder) -> bool {
    let basis: Vec<&Polynomial> = basis.iter().filter(|g| !g.is_zero()).collect();
    for (i, f) in basis.iter().enumerate() {
        for g in &basis[i + 1..] {
            if !s_polynomial(f, g, order).map(|s| reduce_owned(&s, &basis, order).is_zero()).unwrap_or(true) {
                return false;
            }
        }
    }
    true
}

fn reduce_owned(f: &Polynomial, basis: &[&Polynomial], order: &MonomialOrder) -> Polynomial {
    let owned: Vec<Polynomial> = basis.iter().map(|p| (*p).clone()).collect();
    reduce(f, &owned, order)
}

/// `lcm/lt(f) * f - lcm/lt(g) * g` with both leading terms normalised.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, order: &MonomialOrder) -> Option<Polynomial> {
    let field = f.ring().field();
    let (mf, cf) = f.leading_term(order)?;
    let (mg, cg) = g.leading_term(order)?;
    let lcm = mf.lcm(mg);
    let a = f.mul_term(&lcm.div(mf)?, &field.inv(cf).ok()?);
    let b = g.mul_term(&lcm.div(mg)?, &field.inv(cg).ok()?);
    Some(&a - &b)
}
