//! Kähler differentials of a presented algebra `P/J`, via the Jacobian of
//! the chosen generators of `J`.

use crate::fitmod::{PolyMatrix, PresentedAlgebra, PresentedModule};
use crate::groebner::Ideal;

/// `Ω¹` of `A = P/J` as the cokernel of the Jacobian: one generator
/// `d(var)` per ambient variable, one relation per generator `f` of `J`,
/// with entry `(v, f) = ∂f/∂v`. Derivatives are taken in the coefficient
/// field, so `d(x^p) = 0` in characteristic `p`.
pub fn kaehler_presentation(algebra: &PresentedAlgebra) -> PresentedModule {
    let ring = algebra.ring();
    let rels = algebra.relations().generators();
    let rows = (0..ring.nvars()).map(|v| rels.iter().map(|f| f.derivative(v)).collect()).collect();
    let matrix = if rels.is_empty() {
        PolyMatrix::zeros(ring, ring.nvars(), 0)
    } else {
        PolyMatrix::from_rows(ring, rows).expect("rectangular, same ring")
    };
    let labels = ring.vars().iter().map(|v| format!("d{v}")).collect();
    PresentedModule::new(algebra.clone(), matrix, labels).expect("shape matches")
}

/// `Fitt_i(Ω¹_A)`, as an ideal of the ambient ring containing `J`.
pub fn kaehler_fitting(algebra: &PresentedAlgebra, i: i64) -> Ideal {
    kaehler_presentation(algebra).fitting_ideal(i)
}
