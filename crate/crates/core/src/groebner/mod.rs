//! Buchberger's algorithm and ideal operations built on it: membership,
//! equality, elimination, saturation, intersection and comparison after
//! localization.

mod buchberger;
mod ideal;

pub use buchberger::{groebner_basis, is_groebner_basis, reduce, s_polynomial};
pub use ideal::Ideal;
