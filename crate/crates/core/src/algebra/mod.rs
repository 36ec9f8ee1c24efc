//! Exact rationals and polynomials, plus high-precision complex numbers.

pub mod complex;
pub mod polynomial;
pub mod rational;

pub use complex::ComplexApprox;
pub use polynomial::Polynomial;
pub use rational::{format_rational, parse_rational, rat, ratio, Rational};
