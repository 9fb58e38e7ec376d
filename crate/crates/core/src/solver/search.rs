use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{extract_system, index_name, sample::DEFAULT_GRID, tensor_var_names, PolySystem, SolutionIdeal, SymbolicAlgebra};
use crate::algebra::{AlgebraSpace, AnnihilatorDims};
use crate::arith::{int, MultiPoly, PolyRing, Rational};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::names;
use crate::ring::Ring;
use crate::structures::{binding, check_structure, lookup};
use crate::tensor::{bilinear, StructTensor};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverLimits {
    /// Largest dimension for searches over full unknown tensors.
    pub max_free_dim: usize,
    /// Largest dimension for isomorphism searches.
    pub max_iso_dim: usize,
    /// Values tried for unconstrained variables when sampling.
    pub grid: Vec<Rational>,
    pub sample_limit: usize,
}

impl Default for SolverLimits {
    fn default() -> Self {
        SolverLimits { max_free_dim: 3, max_iso_dim: 3, grid: DEFAULT_GRID.iter().map(|&v| int(v)).collect(), sample_limit: 5 }
    }
}

fn require_associative(alg: &AlgebraSpace, op: &str) -> Result<()> {
    alg.op(op)?;
    if check_structure(alg, "associative", &binding(&[("mul", op)]), None)?.holds {
        Ok(())
    } else {
        Err(Error::NotAssociative(op.to_string()))
    }
}

fn anti_dendriform_ideal(salg: SymbolicAlgebra) -> Result<SolutionIdeal> {
    let sys = extract_system(&salg, &lookup("anti-dendriform")?, &binding(&[("tri_r", names::TRI_R), ("tri_l", names::TRI_L)]), None)?;
    Ok(SolutionIdeal::from_system(&sys)?.with_template(salg))
}

/// Unknown `▷` as `r_ijk` with `◁ = op − ▷`; the ideal of the anti-dendriform
/// identities. Points evaluate to algebras carrying `op`, `rop` and `lop`.
pub fn solve_compatible_anti_dendriform(alg: &AlgebraSpace, op: &str) -> Result<SolutionIdeal> {
    require_associative(alg, op)?;
    let n = alg.dim();
    let ring = PolyRing::new(tensor_var_names("r", n))?;
    let mut salg = SymbolicAlgebra::new(alg.basis().to_vec(), ring.clone());
    let prod = salg.lift(alg.op(op)?);
    let r = salg.unknown_tensor("r", &BTreeMap::new())?;
    let l = crate::tensor::Tensor::from_fn(n, |i, j, k| ring.sub(prod.get(i, j, k), r.get(i, j, k)));
    salg.set_op(op, prod)?;
    salg.set_op(names::TRI_R, r)?;
    salg.set_op(names::TRI_L, l)?;
    anti_dendriform_ideal(salg)
}

/// Both tensors unknown (`r_ijk`, `l_ijk`), with pinned entries substituted.
pub fn solve_anti_dendriform_free(dim: usize, pins: &BTreeMap<String, Rational>, limits: &SolverLimits) -> Result<SolutionIdeal> {
    if dim > limits.max_free_dim {
        return Err(Error::DimensionCap { dim, cap: limits.max_free_dim });
    }
    let all: Vec<String> = tensor_var_names("r", dim).into_iter().chain(tensor_var_names("l", dim)).collect();
    for k in pins.keys() {
        if !all.contains(k) {
            return Err(Error::UnknownVariable(k.clone()));
        }
    }
    let ring = PolyRing::new(all.iter().filter(|v| !pins.contains_key(*v)).cloned())?;
    let mut salg = SymbolicAlgebra::new((1..=dim).map(|i| format!("e{i}")).collect(), ring);
    let r = salg.unknown_tensor("r", pins)?;
    let l = salg.unknown_tensor("l", pins)?;
    salg.set_op(names::TRI_R, r)?;
    salg.set_op(names::TRI_L, l)?;
    let mut ideal = anti_dendriform_ideal(salg)?;
    ideal.pinned = pins.clone();
    Ok(ideal)
}

fn apply_poly(ring: &PolyRing, m: &[Vec<MultiPoly>], v: &[MultiPoly]) -> Vec<MultiPoly> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(ring.zero(), |acc, (a, b)| ring.add(&acc, &ring.mul(a, b))))
        .collect()
}

fn column(m: &[Vec<MultiPoly>], j: usize) -> Vec<MultiPoly> {
    m.iter().map(|row| row[j].clone()).collect()
}

/// Entries `aij` (row i, column j) of an unknown anti-Rota-Baxter operator.
pub fn solve_anti_rb(alg: &AlgebraSpace, op: &str) -> Result<SolutionIdeal> {
    require_associative(alg, op)?;
    let n = alg.dim();
    let mut vars = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            vars.push(index_name("a", &[i, j], n));
        }
    }
    let ring = PolyRing::new(vars)?;
    let p: Vec<Vec<MultiPoly>> = (0..n).map(|i| (0..n).map(|j| ring.var(i * n + j)).collect()).collect();
    let t = alg.op(op)?.map(|c| ring.constant(c.clone()));
    let unit = |i: usize| -> Vec<MultiPoly> { (0..n).map(|k| if k == i { ring.one() } else { ring.zero() }).collect() };
    let mut sys = PolySystem::new(ring.clone());
    for i in 0..n {
        for j in 0..n {
            let (pi, pj) = (column(&p, i), column(&p, j));
            let lhs = bilinear(&ring, &t, &pi, &pj);
            let inner: Vec<MultiPoly> = bilinear(&ring, &t, &pi, &unit(j))
                .iter()
                .zip(bilinear(&ring, &t, &unit(i), &pj))
                .map(|(a, b)| ring.add(a, &b))
                .collect();
            for (a, b) in lhs.iter().zip(apply_poly(&ring, &p, &inner)) {
                sys.push(ring.add(a, &b));
            }
        }
    }
    SolutionIdeal::from_system(&sys)
}

/// The operator encoded by a point of [`solve_anti_rb`].
pub fn anti_rb_matrix(n: usize, point: &[Rational]) -> Matrix {
    Matrix::from_fn(n, n, |i, j| point[i * n + j].clone())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantVector {
    pub dim: usize,
    pub annihilators: Vec<(String, AnnihilatorDims)>,
    /// Dimension of the span of all basis products.
    pub product_span: usize,
    /// Dimension of the span of all products of three basis vectors, both bracketings.
    pub triple_span: usize,
    pub sum_commutative: bool,
}

fn span_dim(vs: Vec<Vector>, n: usize) -> Result<usize> {
    if vs.is_empty() {
        return Ok(0);
    }
    Ok(Matrix::from_rows(&vs, n)?.rank())
}

pub fn iso_invariants(alg: &AlgebraSpace, ops: &[&str]) -> Result<InvariantVector> {
    let n = alg.dim();
    let mut annihilators = Vec::new();
    let mut tensors = Vec::new();
    for op in ops {
        annihilators.push((op.to_string(), alg.annihilator_dims(op)?));
        tensors.push(alg.op(op)?);
    }
    let mut products = Vec::new();
    let mut triples = Vec::new();
    for t in &tensors {
        for i in 0..n {
            for j in 0..n {
                products.push(t.product(i, j).to_vec());
            }
        }
    }
    for a in &tensors {
        for b in &tensors {
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        triples.push(b.eval(a.product(i, j), &alg.unit(k)));
                        triples.push(a.eval(&alg.unit(i), b.product(j, k)));
                    }
                }
            }
        }
    }
    let sum = tensors.iter().fold(StructTensor::zero(n), |acc, t| acc.add(t));
    Ok(InvariantVector {
        dim: n,
        annihilators,
        product_span: span_dim(products, n)?,
        triple_span: span_dim(triples, n)?,
        sum_commutative: sum.is_commutative(),
    })
}

#[derive(Clone, Debug)]
pub struct IsoReport {
    /// Ideal in `t, g11, ..., gnn` of invertible `g` with
    /// `g(x op_a y) = g(x) op_b g(y)`.
    pub ideal: SolutionIdeal,
    /// Rational isomorphism found by grid sampling, if any.
    pub witness: Option<Matrix>,
}

fn det(ring: &PolyRing, m: &[Vec<MultiPoly>]) -> MultiPoly {
    let n = m.len();
    if n == 0 {
        return ring.one();
    }
    let mut acc = ring.zero();
    for j in 0..n {
        let minor: Vec<Vec<MultiPoly>> = m[1..].iter().map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, p)| p.clone()).collect()).collect();
        let term = ring.mul(&m[0][j], &det(ring, &minor));
        acc = if j % 2 == 0 { ring.add(&acc, &term) } else { ring.sub(&acc, &term) };
    }
    acc
}

/// The map `g` encoded by a point of an isomorphism ideal.
pub fn iso_matrix(n: usize, point: &[Rational]) -> Matrix {
    Matrix::from_fn(n, n, |i, j| point[1 + i * n + j].clone())
}

pub fn iso_search(a: &AlgebraSpace, b: &AlgebraSpace, ops: &[&str], limits: &SolverLimits) -> Result<IsoReport> {
    let n = a.dim();
    if b.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: b.dim() });
    }
    if n > limits.max_iso_dim {
        return Err(Error::DimensionCap { dim: n, cap: limits.max_iso_dim });
    }
    let mut vars = alloc::vec!["t".to_string()];
    for i in 1..=n {
        for j in 1..=n {
            vars.push(index_name("g", &[i, j], n));
        }
    }
    let ring = PolyRing::new(vars)?;
    let g: Vec<Vec<MultiPoly>> = (0..n).map(|i| (0..n).map(|j| ring.var(1 + i * n + j)).collect()).collect();
    let mut sys = PolySystem::new(ring.clone());
    for op in ops {
        let ta = a.op(op)?;
        let tb = b.op(op)?.map(|c| ring.constant(c.clone()));
        for i in 0..n {
            for j in 0..n {
                let img: Vec<MultiPoly> = ta.product(i, j).iter().map(|c| ring.constant(c.clone())).collect();
                let lhs = apply_poly(&ring, &g, &img);
                let rhs = bilinear(&ring, &tb, &column(&g, i), &column(&g, j));
                for (l, r) in lhs.iter().zip(&rhs) {
                    sys.push(ring.sub(l, r));
                }
            }
        }
    }
    sys.push(ring.sub(&ring.mul(&det(&ring, &g), &ring.var(0)), &ring.one()));
    let ideal = SolutionIdeal::from_system(&sys)?;
    let witness = ideal.sample_points(&limits.grid, 1)?.first().map(|p| iso_matrix(n, p));
    Ok(IsoReport { ideal, witness })
}
