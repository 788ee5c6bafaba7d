//! Exact scalars: Gaussian rationals, multivariate polynomials, rational
//! functions on the base, and vector fields acting on them.

mod derivation;
mod field;
mod gaussian;
mod parse;
pub mod poly;

pub use derivation::BaseDerivation;
pub use field::RationalField;
pub use gaussian::GaussianRational;
pub use parse::{parse_field, parse_scalar};
pub use poly::{Monomial, Poly};

/// Evaluates `f` at `point`, failing with `DenominatorZeroAtPoint` on a pole.
pub fn field_eval(f: &RationalField, point: &[GaussianRational]) -> crate::Result<GaussianRational> {
    f.eval(point)
}

pub fn apply_base_derivation(x: &BaseDerivation, f: &RationalField) -> RationalField {
    x.apply(f)
}

pub fn bracket_base(x: &BaseDerivation, y: &BaseDerivation) -> BaseDerivation {
    x.bracket(y)
}
