//! Seedable generators of small random structures.

use rand::Rng;

use crate::algebra::{AlgebraSpace, BilinForm};
use crate::arith::{int, Rational};
use crate::linalg::Matrix;
use crate::tensor::StructTensor;

fn entry<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Rational {
    int(rng.gen_range(-bound..=bound))
}

/// Tensor with integer entries in `[-bound, bound]`.
pub fn random_tensor<R: Rng + ?Sized>(rng: &mut R, dim: usize, bound: i64) -> StructTensor {
    StructTensor::from_fn(dim, |_, _, _| entry(rng, bound))
}

/// Tensor where each entry is nonzero with probability `density`.
pub fn random_sparse_tensor<R: Rng + ?Sized>(rng: &mut R, dim: usize, bound: i64, density: f64) -> StructTensor {
    StructTensor::from_fn(dim, |_, _, _| if rng.gen_bool(density) { entry(rng, bound) } else { int(0) })
}

pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| entry(rng, bound))
}

/// Redraws until the determinant is nonzero.
pub fn random_invertible<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: i64) -> Matrix {
    loop {
        let m = random_matrix(rng, n, n, bound.max(1));
        if m.inverse().is_some() {
            return m;
        }
    }
}

pub fn random_form<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: i64) -> BilinForm {
    BilinForm::new(random_matrix(rng, n, n, bound)).expect("square")
}

pub fn random_symmetric_form<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: i64) -> BilinForm {
    let m = random_matrix(rng, n, n, bound);
    BilinForm::new(m.add(&m.transpose()).expect("square")).expect("square")
}

/// Associative product with all triple products zero: the first `k` basis
/// vectors multiply into the span of the rest, which annihilates everything.
/// The result is conjugated by a random invertible map.
pub fn random_two_nilpotent<R: Rng + ?Sized>(rng: &mut R, dim: usize, bound: i64, commutative: bool) -> StructTensor {
    if dim < 2 {
        return StructTensor::zero(dim);
    }
    let k = rng.gen_range(1..dim);
    let mut t = StructTensor::zero(dim);
    for i in 0..k {
        for j in 0..k {
            if commutative && j < i {
                continue;
            }
            for c in k..dim {
                let v = entry(rng, bound);
                if commutative {
                    t.set(j, i, c, v.clone());
                }
                t.set(i, j, c, v);
            }
        }
    }
    let g = random_invertible(rng, dim, 1);
    AlgebraSpace::standard(dim)
        .with_op("m", t)
        .and_then(|a| a.transport(&g))
        .expect("invertible transport")
        .op("m")
        .expect("kept")
        .clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::{binding, check_structure};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn two_nilpotent_is_two_nilpotent() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for dim in 1..=3 {
            for commutative in [false, true] {
                let t = random_two_nilpotent(&mut rng, dim, 2, commutative);
                if commutative {
                    assert!(t.is_commutative());
                }
                let alg = AlgebraSpace::standard(dim).with_op("mul", t).unwrap();
                assert!(check_structure(&alg, "two-nilpotent", &binding(&[]), None).unwrap().holds);
                assert!(check_structure(&alg, "associative", &binding(&[]), None).unwrap().holds);
            }
        }
    }

    #[test]
    fn invertible_and_seeded() {
        let mut a = ChaCha8Rng::seed_from_u64(1);
        let mut b = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(random_tensor(&mut a, 2, 3), random_tensor(&mut b, 2, 3));
        assert!(random_invertible(&mut a, 3, 1).inverse().is_some());
        assert!(random_symmetric_form(&mut a, 3, 2).is_symmetric());
    }
}
