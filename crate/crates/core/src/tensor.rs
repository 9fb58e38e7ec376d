//! Structure-constant tensors: `e_i op e_j = Σ_k c[i][j][k] e_k`.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::arith::Rational;
use crate::ring::{Ring, Rationals};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor<E> {
    dim: usize,
    data: Vec<E>,
}

pub type StructTensor = Tensor<Rational>;

impl<E: Clone> Tensor<E> {
    pub fn filled(dim: usize, value: E) -> Self {
        Tensor { dim, data: alloc::vec![value; dim * dim * dim] }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    data.push(f(i, j, k));
                }
            }
        }
        Tensor { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        assert!(i < self.dim && j < self.dim && k < self.dim, "tensor index out of range");
        (i * self.dim + j) * self.dim + k
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &E {
        &self.data[self.idx(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, value: E) {
        let n = self.idx(i, j, k);
        self.data[n] = value;
    }

    /// Coordinates of `e_i op e_j`.
    pub fn product(&self, i: usize, j: usize) -> &[E] {
        let start = self.idx(i, j, 0);
        &self.data[start..start + self.dim]
    }

    pub fn map<F: Clone>(&self, f: impl FnMut(&E) -> F) -> Tensor<F> {
        Tensor { dim: self.dim, data: self.data.iter().map(f).collect() }
    }

    /// The opposite operation `x op' y = y op x`.
    pub fn opposite(&self) -> Self {
        Tensor::from_fn(self.dim, |i, j, k| self.get(j, i, k).clone())
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize, usize), &E)> {
        let d = self.dim;
        self.data.iter().enumerate().map(move |(n, e)| ((n / (d * d), (n / d) % d, n % d), e))
    }
}

/// Bilinear evaluation `u op v` over any coefficient ring.
pub fn bilinear<R: Ring>(ring: &R, t: &Tensor<R::Elem>, u: &[R::Elem], v: &[R::Elem]) -> Vec<R::Elem> {
    let d = t.dim();
    let mut out: Vec<R::Elem> = (0..d).map(|_| ring.zero()).collect();
    for (i, ui) in u.iter().enumerate() {
        if ring.is_zero(ui) {
            continue;
        }
        for (j, vj) in v.iter().enumerate() {
            if ring.is_zero(vj) {
                continue;
            }
            let w = ring.mul(ui, vj);
            for (k, c) in t.product(i, j).iter().enumerate() {
                if !ring.is_zero(c) {
                    out[k] = ring.add(&out[k], &ring.mul(&w, c));
                }
            }
        }
    }
    out
}

impl StructTensor {
    pub fn zero(dim: usize) -> Self {
        Tensor::filled(dim, Rational::zero())
    }

    /// Builds a tensor from `(i, j, k, c)` entries, zero-based.
    pub fn from_entries(dim: usize, entries: &[(usize, usize, usize, Rational)]) -> Self {
        let mut t = Self::zero(dim);
        for (i, j, k, c) in entries {
            let cur = t.get(*i, *j, *k).clone();
            t.set(*i, *j, *k, cur + c);
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "tensor dimension mismatch");
        Tensor { dim: self.dim, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::from_integer(1.into())))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|a| a * c)
    }

    pub fn is_commutative(&self) -> bool {
        *self == self.opposite()
    }

    pub fn eval(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        bilinear(&Rationals, self, u, v)
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|c| !c.is_zero()).count()
    }
}
