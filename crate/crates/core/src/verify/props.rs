//! Seeded randomized checks of the algebraic laws the verification rests
//! on: Groebner bases, Fitting ideals, and derivatives.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::fitmod::{PolyMatrix, PresentedAlgebra, PresentedModule};
use crate::groebner::{is_groebner_basis, reduce, Ideal};
use crate::polyring::{CoefficientField, Monomial, MonomialOrder, Polynomial, Ring};

pub const DEFAULT_SEED: u64 = 0x0f17_7000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PropsConfig {
    pub seed: u64,
    pub gb_cases: usize,
    pub fitting_cases: usize,
    pub derivative_cases: usize,
}

impl Default for PropsConfig {
    fn default() -> Self {
        PropsConfig { seed: DEFAULT_SEED, gb_cases: 200, fitting_cases: 100, derivative_cases: 200 }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PropsSummary {
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
}

impl PropsSummary {
    pub fn ok(&self) -> bool {
        self.suites.iter().all(|s| s.failures.is_empty())
    }

    pub fn cases(&self, name: &str) -> usize {
        self.suites.iter().find(|s| s.name == name).map_or(0, |s| s.cases)
    }
}

const FIELDS: [CoefficientField; 4] =
    [CoefficientField::Prime(2), CoefficientField::Prime(3), CoefficientField::Prime(5), CoefficientField::Rationals];

fn random_poly(rng: &mut ChaCha8Rng, ring: &Ring, max_exp: u32, max_terms: usize) -> Polynomial {
    let field = ring.field();
    let nterms = rng.gen_range(1..=max_terms);
    let terms: Vec<_> = (0..nterms)
        .map(|_| {
            let exps: Vec<u32> = (0..ring.nvars()).map(|_| rng.gen_range(0..=max_exp)).collect();
            let c = field.from_i64(rng.gen_range(-4..=4));
            (Monomial::from_exponents(&exps).expect("small exponents"), c)
        })
        .collect();
    Polynomial::from_terms(ring, terms)
}

/// Reduced bases are Groebner bases (every S-polynomial reduces to zero)
/// and contain the generators, under three orders.
fn gb_suite(rng: &mut ChaCha8Rng, cases: usize) -> SuiteResult {
    let mut failures = Vec::new();
    for case in 0..cases {
        let field = FIELDS.choose(rng).expect("nonempty").clone();
        let ring = Ring::new(field.clone(), ["x", "y", "z"]).expect("valid");
        // rational runs suffer coefficient growth, so keep them smaller
        let (exp, terms) = if field.characteristic() == 0 { (2, 2) } else { (3, 3) };
        let gens: Vec<_> = (0..rng.gen_range(1..=3)).map(|_| random_poly(rng, &ring, exp, terms)).collect();
        let ideal = Ideal::new(&ring, gens).expect("same ring");
        for order in [MonomialOrder::GrevLex, MonomialOrder::Lex, MonomialOrder::elimination([0])] {
            let gb = ideal.groebner_basis(&order);
            let contains_gens = ideal.generators().iter().all(|g| reduce(g, &gb, &order).is_zero());
            if !is_groebner_basis(&gb, &order) || !contains_gens {
                failures.push(format!("case {case}: {ideal} over {field} under {order:?}"));
            }
        }
    }
    SuiteResult { name: "groebner".into(), cases, failures }
}

fn random_module(rng: &mut ChaCha8Rng, ring: &Ring, relations: &Ideal) -> PresentedModule {
    let rows = rng.gen_range(1..=3);
    let cols = rng.gen_range(0..=3);
    let mut m = PolyMatrix::zeros(ring, rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            let entry = if rng.gen_bool(0.3) { ring.zero() } else { random_poly(rng, ring, 2, 2) };
            m.set(r, c, entry).expect("same ring");
        }
    }
    PresentedModule::with_default_labels(PresentedAlgebra::new(relations.clone()), m).expect("same ring")
}

/// Chain law, shift law, presentation independence and base change for
/// Fitting ideals.
fn fitting_suite(rng: &mut ChaCha8Rng, cases: usize) -> SuiteResult {
    let mut failures = Vec::new();
    for case in 0..cases {
        let p = *[2u64, 3, 5].choose(rng).expect("nonempty");
        let ring = Ring::new(CoefficientField::Prime(p), ["x", "y"]).expect("valid");
        let relations = if rng.gen_bool(0.5) {
            Ideal::zero(&ring)
        } else {
            Ideal::new(&ring, vec![random_poly(rng, &ring, 3, 2)]).expect("same ring")
        };
        let m = random_module(rng, &ring, &relations);
        let top = m.ngens() as i64;
        let mut fail = |what: &str| failures.push(format!("case {case} ({what}): {:?}", m.matrix()));

        if !(-1..=top).all(|i| m.fitting_ideal(i + 1).contains_ideal(&m.fitting_ideal(i))) {
            fail("chain");
        }
        let extra = rng.gen_range(1..=2);
        let shifted = m.direct_sum_free(extra);
        if !(-1..=top).all(|i| shifted.fitting_ideal(i + extra as i64).equals(&m.fitting_ideal(i))) {
            fail("shift");
        }
        if m.matrix().ncols() > 0 {
            // append a combination of existing relation columns
            let a = random_poly(rng, &ring, 1, 2);
            let b = random_poly(rng, &ring, 1, 2);
            let (i, j) = (rng.gen_range(0..m.matrix().ncols()), rng.gen_range(0..m.matrix().ncols()));
            let combo = m.matrix().column(i).iter().zip(m.matrix().column(j)).map(|(u, v)| &(&a * u) + &(&b * &v)).collect();
            let mut bigger = m.matrix().clone();
            bigger.push_column(combo).expect("same shape");
            let m2 = PresentedModule::new(m.algebra().clone(), bigger, m.row_labels().to_vec()).expect("same ring");
            if !(0..=top).all(|i| m2.fitting_ideal(i).equals(&m.fitting_ideal(i))) {
                fail("presentation independence");
            }
        }
        let images: Vec<_> = (0..2).map(|_| random_poly(rng, &ring, 2, 2)).collect();
        match m.base_change(&ring, &images) {
            Ok(changed) => {
                let good = (0..=top).all(|i| {
                    let pushed = m.fitting_ideal(i).substitute(&ring, &images).expect("same ring");
                    changed.fitting_ideal(i).equals(&pushed)
                });
                if !good {
                    fail("base change");
                }
            }
            Err(e) => fail(&format!("base change error {e}")),
        }
    }
    SuiteResult { name: "fitting".into(), cases, failures }
}

/// Leibniz rule, and `d(f^p) = 0` in characteristic `p`.
fn derivative_suite(rng: &mut ChaCha8Rng, cases: usize) -> SuiteResult {
    let mut failures = Vec::new();
    for case in 0..cases {
        let field = FIELDS.choose(rng).expect("nonempty").clone();
        let ring = Ring::new(field.clone(), ["x", "y", "z"]).expect("valid");
        let f = random_poly(rng, &ring, 4, 4);
        let g = random_poly(rng, &ring, 4, 4);
        let v = rng.gen_range(0..3);
        let lhs = (&f * &g).derivative(v);
        let rhs = &(&f.derivative(v) * &g) + &(&f * &g.derivative(v));
        if lhs != rhs {
            failures.push(format!("case {case}: Leibniz for {f} and {g} over {field}"));
        }
        let p = field.characteristic();
        if p != 0 && !f.pow(p as u32).derivative(v).is_zero() {
            failures.push(format!("case {case}: d({f})^{p} != 0"));
        }
    }
    SuiteResult { name: "derivative".into(), cases, failures }
}

pub fn run_props(config: &PropsConfig) -> PropsSummary {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let suites = vec![
        gb_suite(&mut rng, config.gb_cases),
        fitting_suite(&mut rng, config.fitting_cases),
        derivative_suite(&mut rng, config.derivative_cases),
    ];
    PropsSummary { seed: config.seed, suites }
}
