//! Based vector spaces carrying named bilinear operations and forms.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::Zero;

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::linalg::{self, dot, Matrix, Vector};
use crate::tensor::StructTensor;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// Bilinear form given by its Gram matrix, `gram[i][j] = B(e_i, e_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinForm {
    gram: Matrix,
}

impl BilinForm {
    pub fn new(gram: Matrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::Shape(format!("Gram matrix must be square, got {}x{}", gram.rows(), gram.cols())));
        }
        Ok(BilinForm { gram })
    }

    pub fn zero(dim: usize) -> Self {
        BilinForm { gram: Matrix::zeros(dim, dim) }
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn eval(&self, u: &[Rational], v: &[Rational]) -> Result<Rational> {
        Ok(dot(u, &self.gram.apply(v)?))
    }

    pub fn is_symmetric(&self) -> bool {
        self.gram == self.gram.transpose()
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.gram == self.gram.transpose().neg()
    }

    /// Exact determinant test.
    pub fn is_nondegenerate(&self) -> bool {
        self.gram.determinant().map(|d| !d.is_zero()).unwrap_or(false)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnnihilatorDims {
    pub left: usize,
    pub right: usize,
    pub image: usize,
}

/// Finite-dimensional space over ℚ with named operations. Every tensor has
/// the space's dimension; basis and op names are unique.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpace {
    basis: Vec<String>,
    ops: BTreeMap<String, StructTensor>,
    forms: BTreeMap<String, BilinForm>,
}

/// A basis of the span of `vs`.
fn independent(vs: Vec<Vector>, n: usize) -> Vec<Vector> {
    let mut out: Vec<Vector> = Vec::new();
    for v in vs {
        let mut cand = out.clone();
        cand.push(v);
        if Matrix::from_columns(&cand, n).expect("uniform length").rank() == cand.len() {
            out = cand;
        }
    }
    out
}

fn check_name(kind: &str, name: &str) -> Result<()> {
    if name.is_empty() || name.contains(',') || name.chars().any(char::is_whitespace) {
        return Err(Error::InvalidBasis(format!("invalid {kind} name `{name}`")));
    }
    Ok(())
}

impl AlgebraSpace {
    pub fn new<S: Into<String>>(basis: impl IntoIterator<Item = S>) -> Result<Self> {
        let basis: Vec<String> = basis.into_iter().map(Into::into).collect();
        for (i, b) in basis.iter().enumerate() {
            check_name("basis", b)?;
            if basis[..i].contains(b) {
                return Err(Error::InvalidBasis(format!("repeated basis name `{b}`")));
            }
        }
        Ok(AlgebraSpace { basis, ops: BTreeMap::new(), forms: BTreeMap::new() })
    }

    /// Space with basis `e1..en`.
    pub fn standard(dim: usize) -> Self {
        AlgebraSpace {
            basis: (1..=dim).map(|i| format!("e{i}")).collect(),
            ops: BTreeMap::new(),
            forms: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == name)
    }

    pub fn add_op(&mut self, name: &str, t: StructTensor) -> Result<()> {
        check_name("operation", name)?;
        if t.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: t.dim() });
        }
        if self.ops.contains_key(name) {
            return Err(Error::DuplicateOp(name.to_string()));
        }
        self.ops.insert(name.to_string(), t);
        Ok(())
    }

    /// Inserts or replaces an operation.
    pub fn set_op(&mut self, name: &str, t: StructTensor) -> Result<()> {
        self.ops.remove(name);
        self.add_op(name, t)
    }

    pub fn with_op(mut self, name: &str, t: StructTensor) -> Result<Self> {
        self.add_op(name, t)?;
        Ok(self)
    }

    pub fn add_form(&mut self, name: &str, b: BilinForm) -> Result<()> {
        check_name("form", name)?;
        if b.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: b.dim() });
        }
        if self.forms.contains_key(name) {
            return Err(Error::DuplicateOp(name.to_string()));
        }
        self.forms.insert(name.to_string(), b);
        Ok(())
    }

    pub fn with_form(mut self, name: &str, b: BilinForm) -> Result<Self> {
        self.add_form(name, b)?;
        Ok(self)
    }

    pub fn op(&self, name: &str) -> Result<&StructTensor> {
        self.ops.get(name).ok_or_else(|| Error::UnknownOp(name.to_string()))
    }

    pub fn has_op(&self, name: &str) -> bool {
        self.ops.contains_key(name)
    }

    pub fn ops(&self) -> &BTreeMap<String, StructTensor> {
        &self.ops
    }

    pub fn op_names(&self) -> Vec<String> {
        self.ops.keys().cloned().collect()
    }

    pub fn form(&self, name: &str) -> Result<&BilinForm> {
        self.forms.get(name).ok_or_else(|| Error::UnknownOp(name.to_string()))
    }

    pub fn forms(&self) -> &BTreeMap<String, BilinForm> {
        &self.forms
    }

    /// Copy keeping only the listed operations and no forms.
    pub fn restrict_ops(&self, names: &[&str]) -> Result<Self> {
        let mut out = AlgebraSpace { basis: self.basis.clone(), ops: BTreeMap::new(), forms: BTreeMap::new() };
        for n in names {
            out.add_op(n, self.op(n)?.clone())?;
        }
        Ok(out)
    }

    pub fn unit(&self, i: usize) -> Vector {
        linalg::unit(self.dim(), i)
    }

    fn check_vec(&self, v: &[Rational]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: v.len() });
        }
        Ok(())
    }

    pub fn eval_op(&self, op: &str, u: &[Rational], v: &[Rational]) -> Result<Vector> {
        let t = self.op(op)?;
        self.check_vec(u)?;
        self.check_vec(v)?;
        Ok(t.eval(u, v))
    }

    /// `L_op(x): y ↦ x op y` or `R_op(x): y ↦ y op x`.
    pub fn mult_operator(&self, op: &str, side: Side, x: &[Rational]) -> Result<Matrix> {
        let t = self.op(op)?;
        self.check_vec(x)?;
        let cols: Vec<Vector> = (0..self.dim())
            .map(|j| {
                let e = self.unit(j);
                match side {
                    Side::Left => t.eval(x, &e),
                    Side::Right => t.eval(&e, x),
                }
            })
            .collect();
        Matrix::from_columns(&cols, self.dim())
    }

    /// `(dim Ann^L, dim Ann^R, dim A·A)`.
    pub fn annihilator_dims(&self, op: &str) -> Result<AnnihilatorDims> {
        let t = self.op(op)?;
        let n = self.dim();
        let left = Matrix::from_fn(n * n, n, |row, i| t.get(i, row / n.max(1), row % n.max(1)).clone());
        let right = Matrix::from_fn(n * n, n, |row, i| t.get(row / n.max(1), i, row % n.max(1)).clone());
        let image = Matrix::from_fn(n * n, n, |row, k| t.get(row / n.max(1), row % n.max(1), k).clone());
        Ok(AnnihilatorDims { left: n - left.rank(), right: n - right.rank(), image: image.rank() })
    }

    /// Whether every product of `dim + 1` elements vanishes, i.e. the chain
    /// `A ⊇ A·A ⊇ (A·A)·A ⊇ ...` reaches zero.
    pub fn is_nilpotent(&self, op: &str) -> Result<bool> {
        let t = self.op(op)?;
        let n = self.dim();
        let mut span: Vec<Vector> = (0..n).map(|i| self.unit(i)).collect();
        for _ in 0..n {
            let mut next = Vec::new();
            for a in &span {
                for j in 0..n {
                    next.push(t.eval(a, &self.unit(j)));
                }
            }
            span = independent(next, n);
            if span.is_empty() {
                return Ok(true);
            }
        }
        Ok(span.is_empty())
    }

    /// Structure transported along an invertible `g`:
    /// `x op' y = g(g⁻¹x op g⁻¹y)` and `B'(x, y) = B(g⁻¹x, g⁻¹y)`.
    pub fn transport(&self, g: &Matrix) -> Result<Self> {
        let n = self.dim();
        if g.rows() != n || g.cols() != n {
            return Err(Error::Shape(format!("transport needs a {n}x{n} matrix")));
        }
        let ginv = g.inverse().ok_or_else(|| Error::Shape("transport map is not invertible".to_string()))?;
        let pre: Vec<Vector> = (0..n).map(|i| ginv.column(i)).collect();
        let mut out = AlgebraSpace { basis: self.basis.clone(), ops: BTreeMap::new(), forms: BTreeMap::new() };
        for (name, t) in &self.ops {
            let mut nt = StructTensor::zero(n);
            for i in 0..n {
                for j in 0..n {
                    let img = g.apply(&t.eval(&pre[i], &pre[j]))?;
                    for (k, c) in img.into_iter().enumerate() {
                        nt.set(i, j, k, c);
                    }
                }
            }
            out.ops.insert(name.clone(), nt);
        }
        for (name, b) in &self.forms {
            let gram = ginv.transpose().mul(b.gram())?.mul(&ginv)?;
            out.forms.insert(name.clone(), BilinForm { gram });
        }
        Ok(out)
    }
}
