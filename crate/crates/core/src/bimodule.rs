//! Bimodules over an associative operation, semidirect products, and the
//! anti-O-operator layer.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::Zero;

use crate::algebra::{AlgebraSpace, Side};
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::linalg::{self, LinearMap, Matrix, Vector};
use crate::names;
use crate::structures::{binding, check_structure};
use crate::tensor::StructTensor;
use crate::transforms::op_sum;
use crate::verdict::{Failure, Verdict};

/// `(V, l, r)` over `(base, op)`; `l[i]` and `r[i]` act for the basis vector `e_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    base: AlgebraSpace,
    op: String,
    names: Vec<String>,
    l: Vec<Matrix>,
    r: Vec<Matrix>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorReport {
    pub is_operator: bool,
    /// Only true for operators.
    pub is_strong: bool,
    pub failure: Option<Failure>,
}

fn flat(m: &Matrix) -> Vec<Rational> {
    m.to_rows().concat()
}

fn fail(identity: &str, tuple: Vec<usize>, residual: Vec<Rational>) -> Failure {
    Failure { identity: identity.to_string(), tuple, residual }
}

impl Bimodule {
    pub fn new(base: AlgebraSpace, op: &str, names: Vec<String>, l: Vec<Matrix>, r: Vec<Matrix>) -> Result<Self> {
        base.op(op)?;
        let n = base.dim();
        let m = names.len();
        if l.len() != n || r.len() != n {
            return Err(Error::Shape(format!("expected {n} left and right action matrices")));
        }
        if l.iter().chain(&r).any(|a| a.rows() != m || a.cols() != m) {
            return Err(Error::Shape(format!("action matrices must be {m}x{m}")));
        }
        AlgebraSpace::new(names.clone())?;
        Ok(Bimodule { base, op: op.to_string(), names, l, r })
    }

    /// `(A, L_op, R_op)`.
    pub fn regular(alg: &AlgebraSpace, op: &str) -> Result<Self> {
        let mut l = Vec::new();
        let mut r = Vec::new();
        for i in 0..alg.dim() {
            l.push(alg.mult_operator(op, Side::Left, &alg.unit(i))?);
            r.push(alg.mult_operator(op, Side::Right, &alg.unit(i))?);
        }
        Bimodule::new(alg.clone(), op, alg.basis().to_vec(), l, r)
    }

    pub fn zero(alg: &AlgebraSpace, op: &str, names: Vec<String>) -> Result<Self> {
        let z = Matrix::zeros(names.len(), names.len());
        let n = alg.dim();
        Bimodule::new(alg.clone(), op, names, alloc::vec![z.clone(); n], alloc::vec![z; n])
    }

    /// `(A, −L_▷, −R_◁)` over the sum operation, stored as `sum` on the base.
    pub fn anti_dendriform(alg: &AlgebraSpace, tri_r: &str, tri_l: &str) -> Result<Self> {
        let base = op_sum(alg, tri_r, tri_l)?;
        let mut l = Vec::new();
        let mut r = Vec::new();
        for i in 0..alg.dim() {
            l.push(alg.mult_operator(tri_r, Side::Left, &alg.unit(i))?.neg());
            r.push(alg.mult_operator(tri_l, Side::Right, &alg.unit(i))?.neg());
        }
        Bimodule::new(base, names::SUM, alg.basis().to_vec(), l, r)
    }

    pub fn base(&self) -> &AlgebraSpace {
        &self.base
    }

    pub fn op(&self) -> &str {
        &self.op
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn space_dim(&self) -> usize {
        self.names.len()
    }

    pub fn l(&self) -> &[Matrix] {
        &self.l
    }

    pub fn r(&self) -> &[Matrix] {
        &self.r
    }

    fn combine(&self, mats: &[Matrix], x: &[Rational]) -> Matrix {
        let m = self.space_dim();
        let mut out = Matrix::zeros(m, m);
        for (c, a) in x.iter().zip(mats) {
            if !c.is_zero() {
                out = out.add(&a.scale(c)).expect("same shape");
            }
        }
        out
    }

    /// `l(x)` for any `x` in the base.
    pub fn l_of(&self, x: &[Rational]) -> Matrix {
        self.combine(&self.l, x)
    }

    /// `r(x)` for any `x` in the base.
    pub fn r_of(&self, x: &[Rational]) -> Matrix {
        self.combine(&self.r, x)
    }

    fn product(&self, x: &[Rational], y: &[Rational]) -> Vector {
        self.base.op(&self.op).expect("checked at construction").eval(x, y)
    }

    /// The three bimodule equations on all basis pairs.
    pub fn check(&self) -> Verdict {
        let n = self.base.dim();
        for i in 0..n {
            for j in 0..n {
                let xy = self.product(&self.base.unit(i), &self.base.unit(j));
                let eqs = [
                    ("l(x·y) = l(x)l(y)", self.l_of(&xy), self.l[i].mul(&self.l[j])),
                    ("r(x·y) = r(y)r(x)", self.r_of(&xy), self.r[j].mul(&self.r[i])),
                    ("l(x)r(y) = r(y)l(x)", self.l[i].mul(&self.r[j]).expect("square"), self.r[j].mul(&self.l[i])),
                ];
                for (label, lhs, rhs) in eqs {
                    let d = lhs.sub(&rhs.expect("square")).expect("same shape");
                    if !d.is_zero() {
                        return Verdict::fail(fail(label, alloc::vec![i, j], flat(&d)));
                    }
                }
            }
        }
        Verdict::pass()
    }

    fn require_valid(&self) -> Result<()> {
        match self.check().failure {
            None => Ok(()),
            Some(f) => Err(Error::InvalidBimodule(format!("{} fails at {:?}", f.identity, f.tuple))),
        }
    }

    /// `(V*, r*, l*)`.
    pub fn dual(&self) -> Bimodule {
        Bimodule {
            base: self.base.clone(),
            op: self.op.clone(),
            names: self.names.iter().map(|n| format!("{n}*")).collect(),
            l: self.r.iter().map(Matrix::transpose).collect(),
            r: self.l.iter().map(Matrix::transpose).collect(),
        }
    }

    /// `A ⋉ V` with `(x,u)·(y,v) = (x·y, l(x)v + r(y)u)`, operation `mul`.
    pub fn semidirect(&self) -> Result<AlgebraSpace> {
        self.require_valid()?;
        Ok(self.semidirect_unchecked())
    }

    fn semidirect_unchecked(&self) -> AlgebraSpace {
        let n = self.base.dim();
        let m = self.space_dim();
        let mut basis: Vec<String> = self.base.basis().to_vec();
        for name in &self.names {
            let mut s = name.clone();
            while basis.contains(&s) {
                s.push('\'');
            }
            basis.push(s);
        }
        let c = self.base.op(&self.op).expect("checked at construction");
        let mut t = StructTensor::zero(n + m);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    t.set(i, j, k, c.get(i, j, k).clone());
                }
            }
            for b in 0..m {
                for k in 0..m {
                    t.set(i, n + b, n + k, self.l[i].get(k, b).clone());
                    t.set(n + b, i, n + k, self.r[i].get(k, b).clone());
                }
            }
        }
        AlgebraSpace::new(basis).expect("names are unique").with_op(names::MUL, t).expect("fresh space")
    }

    /// Anti-O-operator equation on basis pairs and strongness on basis triples.
    pub fn check_anti_o(&self, t: &LinearMap) -> Result<OperatorReport> {
        let n = self.base.dim();
        let m = self.space_dim();
        if t.rows() != n || t.cols() != m {
            return Err(Error::Shape(format!("T must be {n}x{m}")));
        }
        let tu: Vec<Vector> = (0..m).map(|a| t.column(a)).collect();
        let mut failure = None;
        'op: for a in 0..m {
            for b in 0..m {
                let lhs = self.product(&tu[a], &tu[b]);
                let inner = linalg::add_vec(&self.l_of(&tu[a]).column(b), &self.r_of(&tu[b]).column(a));
                let d = linalg::add_vec(&lhs, &t.apply(&inner)?);
                if !linalg::is_zero_vec(&d) {
                    failure = Some(fail("T(u)·T(v) = -T(l(T(u))v + r(T(v))u)", alloc::vec![a, b], d));
                    break 'op;
                }
            }
        }
        let is_operator = failure.is_none();
        let mut strong = true;
        if is_operator {
            'strong: for a in 0..m {
                for b in 0..m {
                    let lab = self.l_of(&self.product(&tu[a], &tu[b]));
                    for c in 0..m {
                        let rbc = self.r_of(&self.product(&tu[b], &tu[c]));
                        let d = linalg::sub_vec(&lab.column(c), &rbc.column(a));
                        if !linalg::is_zero_vec(&d) {
                            strong = false;
                            failure = Some(fail("l(T(u)·T(v))w = r(T(v)·T(w))u", alloc::vec![a, b, c], d));
                            break 'strong;
                        }
                    }
                }
            }
        }
        Ok(OperatorReport { is_operator, is_strong: is_operator && strong, failure })
    }

    /// `D(x·y) = -(l(x)D(y) + r(y)D(x))` on basis pairs.
    pub fn check_anti_1_cocycle(&self, d: &LinearMap) -> Result<Verdict> {
        let n = self.base.dim();
        let m = self.space_dim();
        if d.rows() != m || d.cols() != n {
            return Err(Error::Shape(format!("D must be {m}x{n}")));
        }
        for i in 0..n {
            for j in 0..n {
                let xy = self.product(&self.base.unit(i), &self.base.unit(j));
                let rhs = linalg::add_vec(&self.l[i].apply(&d.column(j))?, &self.r[j].apply(&d.column(i))?);
                let res = linalg::add_vec(&d.apply(&xy)?, &rhs);
                if !linalg::is_zero_vec(&res) {
                    return Ok(Verdict::fail(fail("D(x·y) = -(l(x)D(y) + r(y)D(x))", alloc::vec![i, j], res)));
                }
            }
        }
        Ok(Verdict::pass())
    }

    /// `u ▷ v = −l(T(u))v` and `u ◁ v = −r(T(v))u` on the module, as `rop`, `lop`.
    pub fn induced_ops(&self, t: &LinearMap) -> Result<AlgebraSpace> {
        let rep = self.check_anti_o(t)?;
        if !rep.is_operator {
            let f = rep.failure.expect("failing report carries a failure");
            return Err(Error::NotAnOperator(format!("{} fails at {:?}", f.identity, f.tuple)));
        }
        let m = self.space_dim();
        let mut rop = StructTensor::zero(m);
        let mut lop = StructTensor::zero(m);
        for a in 0..m {
            let la = self.l_of(&t.column(a)).neg();
            let ra = self.r_of(&t.column(a)).neg();
            for b in 0..m {
                for k in 0..m {
                    rop.set(a, b, k, la.get(k, b).clone());
                    lop.set(b, a, k, ra.get(k, b).clone());
                }
            }
        }
        AlgebraSpace::new(self.names.clone())?.with_op(names::TRI_R, rop)?.with_op(names::TRI_L, lop)
    }

    /// The semidirect product and `T̂(x, u) = (T(u), 0)` on it.
    pub fn embed_hat(&self, t: &LinearMap) -> Result<(AlgebraSpace, LinearMap)> {
        let n = self.base.dim();
        let m = self.space_dim();
        if t.rows() != n || t.cols() != m {
            return Err(Error::Shape(format!("T must be {n}x{m}")));
        }
        let alg = self.semidirect()?;
        let hat = Matrix::from_fn(n + m, n + m, |i, j| if i < n && j >= n { t.get(i, j - n).clone() } else { Rational::zero() });
        Ok((alg, hat))
    }
}

/// The algebra on `A ⊕ A` with `(x,a)·(y,b) = (x▷y + x◁y, −x▷b − a◁y)`, operation `mul`.
pub fn double_space(alg: &AlgebraSpace, tri_r: &str, tri_l: &str) -> Result<AlgebraSpace> {
    Ok(Bimodule::anti_dendriform(alg, tri_r, tri_l)?.semidirect_unchecked())
}

/// Anti-Rota-Baxter equation `P(x)·P(y) = −P(P(x)·y + x·P(y))` and strongness.
pub fn check_anti_rb(p: &LinearMap, alg: &AlgebraSpace, op: &str) -> Result<OperatorReport> {
    if !p.is_square() || p.rows() != alg.dim() {
        return Err(Error::Shape(format!("P must be {0}x{0}", alg.dim())));
    }
    if !check_structure(alg, "associative", &binding(&[("mul", op)]), None)?.holds {
        return Err(Error::NotAssociative(op.to_string()));
    }
    Bimodule::regular(alg, op)?.check_anti_o(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::structures::Binding;

    fn two(dim: usize, r: &[(usize, usize, usize, Rational)], l: &[(usize, usize, usize, Rational)]) -> AlgebraSpace {
        AlgebraSpace::standard(dim)
            .with_op("rop", StructTensor::from_entries(dim, r))
            .unwrap()
            .with_op("lop", StructTensor::from_entries(dim, l))
            .unwrap()
    }

    fn a2() -> AlgebraSpace {
        AlgebraSpace::standard(2).with_op("mul", StructTensor::from_entries(2, &[(0, 0, 1, int(1))])).unwrap()
    }

    fn ex224() -> AlgebraSpace {
        AlgebraSpace::standard(2).with_op("mul", StructTensor::from_entries(2, &[(0, 0, 0, int(1)), (0, 1, 1, int(1))])).unwrap()
    }

    fn assoc(alg: &AlgebraSpace) -> bool {
        check_structure(alg, "associative", &Binding::new(), None).unwrap().holds
    }

    #[test]
    fn bimodule_examples() {
        assert!(Bimodule::regular(&a2(), "mul").unwrap().check().holds);
        assert!(Bimodule::zero(&ex224(), "mul", alloc::vec!["v".into()]).unwrap().check().holds);
        let b3 = two(2, &[(0, 0, 1, int(1))], &[]);
        assert!(Bimodule::anti_dendriform(&b3, "rop", "lop").unwrap().check().holds);
        // ▷ = ·, ◁ = 0 on an idempotent is not anti-dendriform
        let bad = two(1, &[(0, 0, 0, int(1))], &[]);
        let v = Bimodule::anti_dendriform(&bad, "rop", "lop").unwrap().check();
        assert!(!v.holds);
    }

    #[test]
    fn duals() {
        let m = Bimodule::regular(&a2(), "mul").unwrap();
        let d = m.dual();
        assert!(d.check().holds);
        assert_eq!(d.names(), &["e1*".to_string(), "e2*".to_string()]);
        let dd = d.dual();
        assert_eq!(dd.l(), m.l());
        assert_eq!(dd.r(), m.r());
        let z = Bimodule::zero(&a2(), "mul", alloc::vec!["v".into()]).unwrap();
        assert!(z.dual().l().iter().all(Matrix::is_zero));
    }

    #[test]
    fn semidirect_products() {
        let s = Bimodule::zero(&a2(), "mul", alloc::vec!["v".into()]).unwrap().semidirect().unwrap();
        assert_eq!(s.dim(), 3);
        assert_eq!(s.op("mul").unwrap(), &StructTensor::from_entries(3, &[(0, 0, 1, int(1))]));
        // (A1)_2 against its dual anti-dendriform bimodule
        let a12 = two(2, &[(0, 0, 1, int(1))], &[(0, 0, 1, int(-1))]);
        let s = Bimodule::anti_dendriform(&a12, "rop", "lop").unwrap().dual().semidirect().unwrap();
        assert_eq!(s.basis(), &["e1", "e2", "e1*", "e2*"]);
        assert_eq!(s.op("mul").unwrap(), &StructTensor::from_entries(4, &[(0, 3, 2, int(1)), (3, 0, 2, int(-1))]));
        assert!(assoc(&s));
        let reg = Bimodule::regular(&a2(), "mul").unwrap().semidirect().unwrap();
        assert_eq!(reg.basis(), &["e1", "e2", "e1'", "e2'"]);
        assert!(assoc(&reg));
    }

    #[test]
    fn doubles() {
        let b2 = two(2, &[], &[(0, 0, 1, int(1))]);
        let d = double_space(&b2, "rop", "lop").unwrap();
        assert_eq!(d.dim(), 4);
        assert!(assoc(&d));
        let triv = two(2, &[], &[]);
        assert!(double_space(&triv, "rop", "lop").unwrap().op("mul").unwrap().is_zero());
        let e = ex224();
        let not_ad = two(2, &[(0, 0, 0, int(1)), (0, 1, 1, int(1))], &[]);
        assert!(!check_structure(&not_ad, "anti-dendriform", &Binding::new(), None).unwrap().holds);
        assert!(!assoc(&double_space(&not_ad, "rop", "lop").unwrap()));
        assert!(assoc(&e));
    }

    #[test]
    fn identity_is_strong_anti_o() {
        let ex3d = two(
            3,
            &[(0, 0, 1, rat(1, 2)), (0, 0, 2, int(1)), (0, 1, 2, int(2)), (1, 0, 2, int(-1))],
            &[(0, 0, 1, rat(1, 2)), (0, 0, 2, int(-1)), (1, 0, 2, int(2)), (0, 1, 2, int(-1))],
        );
        for alg in [two(2, &[], &[(0, 0, 1, int(1))]), two(2, &[(0, 0, 1, int(1))], &[(0, 0, 1, int(3))]), ex3d] {
            let m = Bimodule::anti_dendriform(&alg, "rop", "lop").unwrap();
            let id = Matrix::identity(alg.dim());
            let rep = m.check_anti_o(&id).unwrap();
            assert!(rep.is_operator && rep.is_strong);
            let ind = m.induced_ops(&id).unwrap();
            assert_eq!(ind.op("rop").unwrap(), alg.op("rop").unwrap());
            assert_eq!(ind.op("lop").unwrap(), alg.op("lop").unwrap());
            assert!(m.check_anti_1_cocycle(&id).unwrap().holds);
        }
    }

    #[test]
    fn zero_maps() {
        let m = Bimodule::regular(&a2(), "mul").unwrap();
        let z = Matrix::zeros(2, 2);
        let rep = m.check_anti_o(&z).unwrap();
        assert!(rep.is_operator && rep.is_strong);
        assert!(m.check_anti_1_cocycle(&z).unwrap().holds);
        assert!(m.induced_ops(&z).unwrap().ops().values().all(StructTensor::is_zero));
        let (s, hat) = m.embed_hat(&z).unwrap();
        assert!(hat.is_zero());
        assert!(check_anti_rb(&hat, &s, "mul").unwrap().is_operator);
    }

    #[test]
    fn cocycle_identity_fails() {
        let m = Bimodule::regular(&a2(), "mul").unwrap();
        let v = m.check_anti_1_cocycle(&Matrix::identity(2)).unwrap();
        let f = v.failure.unwrap();
        assert_eq!(f.tuple, alloc::vec![0, 0]);
        assert_eq!(f.residual, alloc::vec![int(0), int(3)]);
    }

    #[test]
    fn anti_rb_examples() {
        let p = Matrix::from_rows(&[alloc::vec![int(0), int(0)], alloc::vec![int(1), int(0)]], 2).unwrap();
        let rep = check_anti_rb(&p, &ex224(), "mul").unwrap();
        assert!(rep.is_operator && rep.is_strong);
        let rep = check_anti_rb(&Matrix::zeros(2, 2), &ex224(), "mul").unwrap();
        assert!(rep.is_operator && rep.is_strong);
        let rep = check_anti_rb(&Matrix::identity(2), &ex224(), "mul").unwrap();
        assert!(!rep.is_operator && !rep.is_strong);
        assert_eq!(rep.failure.unwrap().residual, alloc::vec![int(3), int(0)]);
        let lie = AlgebraSpace::standard(2).with_op("mul", StructTensor::from_entries(2, &[(0, 1, 1, int(1)), (1, 0, 1, int(-1))])).unwrap();
        assert_eq!(check_anti_rb(&Matrix::zeros(2, 2), &lie, "mul"), Err(Error::NotAssociative("mul".into())));
    }

    #[test]
    fn hat_of_identity_on_a1_2() {
        let a12 = two(2, &[(0, 0, 1, int(1))], &[(0, 0, 1, int(-1))]);
        let m = Bimodule::anti_dendriform(&a12, "rop", "lop").unwrap();
        let (s, hat) = m.embed_hat(&Matrix::identity(2)).unwrap();
        let rep = check_anti_rb(&hat, &s, "mul").unwrap();
        assert!(rep.is_operator);
        // the sum product of (A1)_2 vanishes, so every triple product is zero
        assert!(rep.is_strong);
        assert_eq!(rep.is_operator, m.check_anti_o(&Matrix::identity(2)).unwrap().is_operator);
    }
}
