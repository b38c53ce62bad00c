//! Exact coefficient field: polynomials over ℚ and their reduced quotients,
//! closed under the partial derivations `∂/∂x_i`.

mod gcd;
mod polynomial;
mod rational;

pub use gcd::{content_in, gcd};
pub use polynomial::{MultivarPolynomial, PolyDisplay, Rational};
pub use rational::{RationalDisplay, RationalFunction};

pub(crate) use polynomial::fmt_rational;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
}

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
