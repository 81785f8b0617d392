//! Exact coefficient arithmetic and sparse multivariate polynomials.

mod field;
mod monomial;
mod order;
mod parse;
mod poly;
mod ring;

pub use field::{is_prime, Coeff, CoefficientField};
pub use monomial::{Monomial, MAX_EXPONENT};
pub use order::{BaseOrder, MonomialOrder};
pub use parse::{parse_polynomial, parse_polynomial_list};
pub use poly::{Polynomial, Term};
pub use ring::Ring;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use proptest::prelude::*;

    fn ring(field: CoefficientField, vars: &[&str]) -> Ring {
        Ring::new(field, vars.iter().copied()).unwrap()
    }

    fn qxy() -> Ring {
        ring(CoefficientField::Rationals, &["x", "y"])
    }

    #[test]
    fn difference_of_squares() {
        let r = qxy();
        let f = r.parse("x + y").unwrap();
        let g = r.parse("x - y").unwrap();
        assert_eq!(&f * &g, r.parse("x^2 - y^2").unwrap());
    }

    #[test]
    fn frobenius_square_in_char_two() {
        let r = ring(CoefficientField::Prime(2), &["x"]);
        let f = r.parse("x + 1").unwrap();
        // (x+1)^2 = x^2 + 2x + 1, and 2 = 0 in F_2
        let expanded = r.parse("x^2 + 2*x + 1").unwrap();
        assert_eq!(f.pow(2), expanded);
        assert_eq!(f.pow(2), r.parse("x^2 + 1").unwrap());
    }

    #[test]
    fn additive_identity_and_mismatch() {
        let r = qxy();
        let f = r.parse("3*x*y - 1/2").unwrap();
        assert_eq!(&f + &r.zero(), f);
        let other = ring(CoefficientField::Rationals, &["x", "z"]);
        assert_eq!(f.try_add(&other.parse("x").unwrap()), Err(Error::RingMismatch));
        assert_eq!(f.try_mul(&other.parse("x").unwrap()), Err(Error::RingMismatch));
    }

    #[test]
    fn derivative_examples() {
        for p in [2u64, 3, 5] {
            let r = ring(CoefficientField::Prime(p), &["x"]);
            let f = r.gen(0).pow(p as u32);
            assert!(f.derivative(0).is_zero());
        }
        let r = qxy();
        assert_eq!(r.parse("x^2").unwrap().derivative(0), r.parse("2*x").unwrap());
        assert!(r.parse("y^3").unwrap().derivative(0).is_zero());
    }

    #[test]
    fn parse_examples() {
        let r = ring(CoefficientField::Prime(2), &["x1", "x2", "T1", "T2"]);
        let f = r.parse("x1^2*T2 - x2*T1").unwrap();
        assert_eq!(f.terms().len(), 2);
        assert_eq!(f.to_string(), "x1^2*T2 + x2*T1");
        assert!(r.parse("0").unwrap().is_zero());

        let r5 = ring(CoefficientField::Prime(5), &["x1"]);
        assert_eq!(r5.parse("3/2*x1").unwrap(), r5.parse("4*x1").unwrap());
        assert_eq!(r5.parse("3/2*x1").unwrap().to_string(), "-x1");
    }

    #[test]
    fn parse_errors() {
        let r = qxy();
        assert!(matches!(r.parse("x + * y"), Err(Error::Syntax { pos: 4, .. })));
        assert!(matches!(r.parse("x + z"), Err(Error::UnknownVariable(v)) if v == "z"));
        assert!(matches!(r.parse(""), Err(Error::Syntax { .. })));
        assert!(matches!(r.parse("x $ y"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(r.parse("x^99999999999"), Err(Error::ExponentOverflow)));
        assert!(matches!(r.parse("1/0"), Err(Error::NonInvertibleDenominator(_))));
        let r5 = ring(CoefficientField::Prime(5), &["x"]);
        assert!(matches!(r5.parse("1/5*x"), Err(Error::NonInvertibleDenominator(_))));
    }

    #[test]
    fn printing_is_descending_grevlex() {
        let r = ring(CoefficientField::Rationals, &["x", "y", "z"]);
        let f = r.parse("z + x*z + y^2 + 1 - 2/3*x^3").unwrap();
        assert_eq!(f.to_string(), "-2/3*x^3 + y^2 + x*z + z + 1");
    }

    #[test]
    fn substitution_is_a_ring_map() {
        let r = qxy();
        let f = r.parse("x^2*y - 3").unwrap();
        let images = [r.parse("x + y").unwrap(), r.parse("2").unwrap()];
        let got = f.substitute(&r, &images).unwrap();
        assert_eq!(got, r.parse("2*x^2 + 4*x*y + 2*y^2 - 3").unwrap());
    }

    // ---- randomized properties ----

    const VARS: [&str; 3] = ["x", "y", "z"];

    fn arb_field() -> impl Strategy<Value = CoefficientField> {
        prop_oneof![
            Just(CoefficientField::Rationals),
            Just(CoefficientField::Prime(2)),
            Just(CoefficientField::Prime(3)),
            Just(CoefficientField::Prime(7)),
        ]
    }

    fn arb_poly(field: CoefficientField) -> impl Strategy<Value = Polynomial> {
        let r = ring(field, &VARS);
        prop::collection::vec((prop::collection::vec(0u32..4, 3), -5i64..6, 1i64..4), 0..6).prop_map(move |ts| {
            let field = r.field().clone();
            let terms = ts.into_iter().map(|(e, n, d)| {
                let c = field.from_ratio(&n.into(), &d.into()).unwrap_or_else(|_| field.from_i64(n));
                (Monomial::from_exponents(&e).unwrap(), c)
            });
            Polynomial::from_terms(&r, terms.collect::<Vec<_>>())
        })
    }

    fn arb_triple() -> impl Strategy<Value = (Polynomial, Polynomial, Polynomial)> {
        arb_field().prop_flat_map(|f| (arb_poly(f.clone()), arb_poly(f.clone()), arb_poly(f)))
    }

    proptest! {
        #![proptest_config(crate::test_util::seeded(256))]

        #[test]
        fn ring_axioms((f, g, h) in arb_triple()) {
            prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
            prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
            prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
            prop_assert_eq!(&f * &g, &g * &f);
            prop_assert_eq!(&f + &g, &g + &f);
            prop_assert!((&f - &f).is_zero());
        }

        #[test]
        fn leibniz((f, g, _h) in arb_triple(), var in 0usize..3) {
            let lhs = (&f * &g).derivative(var);
            let rhs = &(&f.derivative(var) * &g) + &(&f * &g.derivative(var));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn print_parse_round_trip((f, g, _h) in arb_triple()) {
            for p in [f, g] {
                let text = p.to_string();
                prop_assert_eq!(p.ring().parse(&text).unwrap(), p);
            }
        }
    }
}
