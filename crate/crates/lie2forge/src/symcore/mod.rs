//! Exact rational scalars, sparse multivariate polynomials on named affine
//! charts, and rational linear algebra.

mod chart;
mod matrix;
mod poly;
mod rational;

pub use chart::Chart;
pub use matrix::RatMatrix;
pub use poly::{Monomial, Polynomial};
pub use rational::{format_rational, parse_rational, rat, Rational};
