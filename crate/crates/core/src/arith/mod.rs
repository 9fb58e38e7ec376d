//! Exact scalars, multivariate polynomials over ℚ and Gröbner bases.

mod groebner;
mod poly;
mod rational;
pub mod univariate;

pub use groebner::{buchberger, ideal_equal, poly_reduce, GroebnerBasis};
pub use poly::{Monomial, MonomialOrder, MultiPoly, PolyRing};
pub use rational::{int, is_integer, parse_rational, rat, Rational};
