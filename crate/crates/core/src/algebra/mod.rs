//! Exact polynomial arithmetic over the rationals.

mod expansion;
mod gcd;
mod monomial;
mod parse;
mod polynomial;
mod var;

use num_bigint::BigInt;
use thiserror::Error;

pub use expansion::{divisor_expansion, monomial_content, poly_substitute};
pub use gcd::{gcd, gcd_all, gcd_is_constant, GcdCheck};
pub use monomial::Monomial;
pub use parse::{parse_poly, ParseError, VariableTable};
pub use polynomial::Polynomial;
pub use var::{exceptional_label, is_reserved_name, Var, VarKind, VarLabel};

#[allow(unused_imports)]
pub(crate) use polynomial::pow_rational;

/// Arbitrary-precision rational coefficient.
pub type Rational = num_rational::BigRational;

/// Exponent vectors are sparse monomials restricted to divisor variables.
pub type Exponent = Monomial;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("every polynomial in the family is zero")]
    AllZero,
}
