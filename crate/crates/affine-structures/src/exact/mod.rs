//! Exact arithmetic: arbitrary-precision rationals, canonical linear algebra,
//! univariate polynomials, and rational functions in a deformation parameter.

pub mod matrix;
pub mod poly;
pub mod ratfun;
pub mod rational;

pub use matrix::{MatrixError, RatMatrix};
pub use poly::{char_poly, signature_symmetric, Poly};
pub use ratfun::{RatFunError, RatFunction, RfMatrix};
pub use rational::{
    format_rational, parse_rational, rat, rat_int, sign, to_f64, ParseRationalError, Rational,
};
