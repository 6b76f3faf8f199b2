//! Exact sparse multivariate polynomials over the rationals.

mod monomial;
mod parse;
mod polynomial;
mod ring;

pub use monomial::Monomial;
pub use parse::parse;
pub use polynomial::{Polynomial, Term};
pub use ring::{MonomialOrder, Ring, DEFAULT_MAX_EXPONENT};

/// Arbitrary-precision rational coefficient, always in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;
