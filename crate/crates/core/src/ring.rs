//! Coefficient rings for structure constants: concrete rationals or
//! polynomials in unknowns. Evaluation code is written once against
//! [`Ring`] and shared by the concrete checker and the symbolic solver.

use core::fmt::Debug;

use num_traits::Zero;

use crate::arith::{MultiPoly, PolyRing, Rational};

pub trait Ring {
    type Elem: Clone + Debug;

    fn zero(&self) -> Self::Elem;
    fn from_rational(&self, r: &Rational) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, a: &Self::Elem, r: &Rational) -> Self::Elem;

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.scale(a, &-Rational::from_integer(1.into()))
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
}

/// The field ℚ.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn from_rational(&self, r: &Rational) -> Rational {
        r.clone()
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn scale(&self, a: &Rational, r: &Rational) -> Rational {
        a * r
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
}

impl Ring for PolyRing {
    type Elem = MultiPoly;

    fn zero(&self) -> MultiPoly {
        PolyRing::zero(self)
    }
    fn from_rational(&self, r: &Rational) -> MultiPoly {
        self.constant(r.clone())
    }
    fn is_zero(&self, a: &MultiPoly) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a + b
    }
    fn mul(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a * b
    }
    fn scale(&self, a: &MultiPoly, r: &Rational) -> MultiPoly {
        a.scale(r)
    }
    fn neg(&self, a: &MultiPoly) -> MultiPoly {
        -a
    }
}
