//! Polynomial systems for unknown structure constants and operator entries,
//! solved through reduced Gröbner bases.
//!
//! Returned bases are closed under two radical steps: every variable lying in
//! the radical is adjoined (tested with the Rabinowitsch trick), and when the
//! ideal is zero-dimensional the squarefree part of each univariate eliminant
//! is adjoined, which yields the full radical. Neither step changes the
//! solution set.

mod sample;
mod search;

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::algebra::AlgebraSpace;
use crate::arith::univariate;
use crate::arith::{buchberger, GroebnerBasis, Monomial, MonomialOrder, MultiPoly, PolyRing, Rational};
use crate::error::{Error, Result};
use crate::identity::eval_expr;
use crate::linalg::Matrix;
use crate::structures::{Binding, StructureDef};
use crate::tensor::{StructTensor, Tensor};

pub use sample::DEFAULT_GRID;
pub use search::{
    anti_rb_matrix, iso_invariants, iso_matrix, iso_search, solve_anti_dendriform_free, solve_anti_rb,
    solve_compatible_anti_dendriform, InvariantVector, IsoReport, SolverLimits,
};

pub type PolyTensor = Tensor<MultiPoly>;

/// Operations whose structure constants are polynomials in a shared ring.
#[derive(Clone, Debug)]
pub struct SymbolicAlgebra {
    basis: Vec<String>,
    ring: PolyRing,
    ops: BTreeMap<String, PolyTensor>,
}

/// `prefix` followed by 1-based indices: `r112` while `dim < 10`,
/// `r_1_1_12` beyond that.
pub fn index_name(prefix: &str, idx: &[usize], dim: usize) -> String {
    let mut s = String::from(prefix);
    for i in idx {
        if dim >= 10 {
            s.push('_');
        }
        s.push_str(&i.to_string());
    }
    s
}

/// `prefix` + `ijk` names (1-based) for every entry of a `dim`-tensor.
pub fn tensor_var_names(prefix: &str, dim: usize) -> Vec<String> {
    let mut out = Vec::new();
    for i in 1..=dim {
        for j in 1..=dim {
            for k in 1..=dim {
                out.push(index_name(prefix, &[i, j, k], dim));
            }
        }
    }
    out
}

impl SymbolicAlgebra {
    pub fn new(basis: Vec<String>, ring: PolyRing) -> Self {
        SymbolicAlgebra { basis, ring, ops: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn ops(&self) -> &BTreeMap<String, PolyTensor> {
        &self.ops
    }

    pub fn op(&self, name: &str) -> Result<&PolyTensor> {
        self.ops.get(name).ok_or_else(|| Error::UnknownOp(name.to_string()))
    }

    pub fn lift(&self, t: &StructTensor) -> PolyTensor {
        t.map(|c| self.ring.constant(c.clone()))
    }

    pub fn set_op(&mut self, name: &str, t: PolyTensor) -> Result<()> {
        if t.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: t.dim() });
        }
        self.ops.insert(name.to_string(), t);
        Ok(())
    }

    /// Tensor whose entries are the ring variables `prefix_ijk`; entries
    /// listed in `pinned` become constants instead.
    pub fn unknown_tensor(&self, prefix: &str, pinned: &BTreeMap<String, Rational>) -> Result<PolyTensor> {
        let n = self.dim();
        let names = tensor_var_names(prefix, n);
        let mut data = Vec::with_capacity(names.len());
        for name in &names {
            data.push(match pinned.get(name) {
                Some(c) => self.ring.constant(c.clone()),
                None => self.ring.var_named(name)?,
            });
        }
        Ok(Tensor::from_fn(n, |i, j, k| data[(i * n + j) * n + k].clone()))
    }

    /// Concrete algebra at a point of the ring.
    pub fn eval(&self, point: &[Rational]) -> Result<AlgebraSpace> {
        let mut alg = AlgebraSpace::new(self.basis.clone())?;
        for (name, t) in &self.ops {
            let mut data = Vec::new();
            for (_, p) in t.entries() {
                data.push(p.eval(point)?);
            }
            let n = self.dim();
            alg.add_op(name, StructTensor::from_fn(n, |i, j, k| data[(i * n + j) * n + k].clone()))?;
        }
        Ok(alg)
    }
}

/// Generators of an ideal, deduplicated up to scaling.
#[derive(Clone, Debug)]
pub struct PolySystem {
    ring: PolyRing,
    polys: Vec<MultiPoly>,
}

impl PolySystem {
    pub fn new(ring: PolyRing) -> Self {
        PolySystem { ring, polys: Vec::new() }
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn polys(&self) -> &[MultiPoly] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// Adds `p` unless it is zero or a multiple of a stored generator.
    pub fn push(&mut self, p: MultiPoly) {
        if p.is_zero() {
            return;
        }
        let m = p.monic(MonomialOrder::GrevLex);
        if !self.polys.contains(&m) {
            self.polys.push(m);
        }
    }
}

/// One polynomial per identity, basis tuple and output coordinate.
pub fn extract_system(salg: &SymbolicAlgebra, def: &StructureDef, binding: &Binding, q: Option<&Rational>) -> Result<PolySystem> {
    let ring = salg.ring();
    let ids = def.instantiate(q)?;
    let table = def.bind(ring, salg.dim(), salg.ops(), binding)?;
    let n = salg.dim();
    let units: Vec<Vec<MultiPoly>> = (0..n)
        .map(|i| (0..n).map(|k| if k == i { ring.one() } else { ring.zero() }).collect())
        .collect();
    let mut sys = PolySystem::new(ring.clone());
    for li in &ids {
        let k = li.id.arity();
        let mut tuple = alloc::vec![0usize; k];
        loop {
            if n == 0 {
                break;
            }
            let args: Vec<Vec<MultiPoly>> = tuple.iter().map(|&i| units[i].clone()).collect();
            for p in eval_expr(ring, &table, n, li.id.expr(), &args)? {
                sys.push(p);
            }
            // odometer, last index fastest
            let mut pos = k;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                tuple[pos] += 1;
                if tuple[pos] < n {
                    break;
                }
                tuple[pos] = 0;
            }
            if tuple.iter().all(|&i| i == 0) {
                break;
            }
        }
    }
    Ok(sys)
}

/// Reduced Gröbner basis of a solved system with its radical closure.
#[derive(Clone, Debug)]
pub struct SolutionIdeal {
    /// Grevlex basis after radical closure.
    pub basis: GroebnerBasis,
    /// Grevlex basis of the raw system.
    pub raw: GroebnerBasis,
    pub free_vars: Vec<String>,
    pub consistent: bool,
    /// Entries fixed before solving; they are not ring variables.
    pub pinned: BTreeMap<String, Rational>,
    template: Option<SymbolicAlgebra>,
}

impl SolutionIdeal {
    pub fn from_system(sys: &PolySystem) -> Result<Self> {
        let raw = buchberger(sys.ring(), sys.polys(), MonomialOrder::GrevLex)?;
        let basis = radical_closure(&raw)?;
        Ok(SolutionIdeal {
            free_vars: if basis.is_unit() { Vec::new() } else { basis.free_var_names() },
            consistent: !basis.is_unit(),
            basis,
            raw,
            pinned: BTreeMap::new(),
            template: None,
        })
    }

    fn with_template(mut self, t: SymbolicAlgebra) -> Self {
        self.template = Some(t);
        self
    }

    pub fn ring(&self) -> &PolyRing {
        self.basis.ring()
    }

    /// Whether the point lies on the solution set.
    pub fn contains_point(&self, point: &[Rational]) -> Result<bool> {
        if point.len() != self.ring().nvars() {
            return Err(Error::DimensionMismatch { expected: self.ring().nvars(), found: point.len() });
        }
        self.basis.vanishes_at(point)
    }

    /// Whether a polynomial lies in the (closed) ideal.
    pub fn contains(&self, p: &MultiPoly) -> Result<bool> {
        self.basis.contains(p)
    }

    /// Algebra described by a point, for solves over structure constants.
    pub fn algebra_at(&self, point: &[Rational]) -> Result<Option<AlgebraSpace>> {
        self.template.as_ref().map(|t| t.eval(point)).transpose()
    }

    pub fn template(&self) -> Option<&SymbolicAlgebra> {
        self.template.as_ref()
    }

    pub fn point_map(&self, point: &[Rational]) -> BTreeMap<String, Rational> {
        self.ring().vars().iter().cloned().zip(point.iter().cloned()).collect()
    }

    /// Rational points found by branching on rational roots of univariate
    /// elements of lex bases and on `grid` values for unconstrained variables.
    pub fn sample_points(&self, grid: &[Rational], limit: usize) -> Result<Vec<Vec<Rational>>> {
        if !self.consistent {
            return Ok(Vec::new());
        }
        sample::sample(&self.basis, grid, limit)
    }
}

fn fresh_name(ring: &PolyRing, base: &str) -> String {
    let mut s = base.to_string();
    while ring.var_index(&s).is_some() {
        s.push('_');
    }
    s
}

/// Whether `p` lies in the radical: `1 ∈ I + ⟨1 − t·p⟩`.
pub fn in_radical(gens: &[MultiPoly], ring: &PolyRing, p: &MultiPoly) -> Result<bool> {
    let t = fresh_name(ring, "_t");
    let ext = ring.extend([t])?;
    let mut lifted = Vec::with_capacity(gens.len() + 1);
    for g in gens {
        lifted.push(g.lift(&ext)?);
    }
    let tp = ext.var(ring.nvars()).try_mul(&p.lift(&ext)?)?;
    lifted.push(ext.one().try_sub(&tp)?);
    Ok(buchberger(&ext, &lifted, MonomialOrder::GrevLex)?.is_unit())
}

/// Generator of `I ∩ k[x_v]` for a zero-dimensional basis, from the normal
/// forms of the powers of `x_v`.
fn eliminant(gb: &GroebnerBasis, v: usize) -> Result<Vec<Rational>> {
    let ring = gb.ring();
    let x = ring.var(v);
    let mut power = ring.one();
    let mut forms: Vec<MultiPoly> = Vec::new();
    loop {
        let nf = gb.reduce(&power)?;
        let mut monos: Vec<Monomial> = Vec::new();
        for f in forms.iter().chain(core::iter::once(&nf)) {
            for (m, _) in f.terms() {
                if !monos.contains(m) {
                    monos.push(m.clone());
                }
            }
        }
        let cols: Vec<Vec<Rational>> = forms.iter().map(|f| monos.iter().map(|m| f.coefficient(m)).collect()).collect();
        let target: Vec<Rational> = monos.iter().map(|m| nf.coefficient(m)).collect();
        let d = forms.len();
        let solved = if d == 0 {
            target.iter().all(Zero::is_zero).then(Vec::new)
        } else {
            Matrix::from_columns(&cols, monos.len())?.solve(&target)
        };
        if let Some(c) = solved {
            // x^d = Σ c_i x^i on the quotient
            let mut poly: Vec<Rational> = c.into_iter().map(|a| -a).collect();
            poly.push(Rational::one());
            return Ok(poly);
        }
        forms.push(nf);
        power = power.try_mul(&x)?;
    }
}

fn radical_closure(gb: &GroebnerBasis) -> Result<GroebnerBasis> {
    if gb.is_unit() || gb.is_empty() {
        return Ok(gb.clone());
    }
    let ring = gb.ring().clone();
    let mut gens = gb.generators().to_vec();
    let mut changed = false;
    for v in 0..ring.nvars() {
        let x = ring.var(v);
        if gb.contains(&x)? || !gb.generators().iter().any(|g| g.variables().contains(&v)) {
            continue;
        }
        if in_radical(&gens, &ring, &x)? {
            gens.push(x);
            changed = true;
        }
    }
    let mut cur = if changed { buchberger(&ring, &gens, MonomialOrder::GrevLex)? } else { gb.clone() };
    if cur.is_zero_dimensional() && !cur.is_unit() {
        let mut extra = cur.generators().to_vec();
        let mut grew = false;
        for v in 0..ring.nvars() {
            let m = eliminant(&cur, v)?;
            let s = univariate::squarefree_part(&m);
            if univariate::degree(&s) < univariate::degree(&m) {
                extra.push(MultiPoly::from_univariate(&ring, v, &s));
                grew = true;
            }
        }
        if grew {
            cur = buchberger(&ring, &extra, MonomialOrder::GrevLex)?;
        }
    }
    Ok(cur)
}
