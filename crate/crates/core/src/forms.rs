//! Bilinear-form predicates and the structures they induce.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::Zero;

use crate::algebra::{AlgebraSpace, BilinForm};
use crate::arith::{int, Rational};
use crate::bimodule::Bimodule;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, Vector};
use crate::names;
use crate::structures::{binding, check_structure};
use crate::tensor::StructTensor;
use crate::verdict::{Failure, Verdict};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormReport {
    pub symmetric: bool,
    pub antisymmetric: bool,
    pub nondegenerate: bool,
    /// `B(x·y,z) + B(y·z,x) + B(z·x,y) = 0`.
    pub connes: bool,
    pub commutative_connes: bool,
    /// Symmetric and cyclic for the commutator of the operation.
    pub commutative_2cocycle: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvarianceReport {
    pub invariant: Verdict,
    /// `B(x◁y,z) = B(z▷x,y)`, implied by invariance.
    pub lemma: Verdict,
}

fn form_value(g: &Matrix, u: &[Rational], v: &[Rational]) -> Rational {
    linalg::dot(u, &g.apply(v).expect("dimension checked"))
}

fn check_dim(b: &BilinForm, alg: &AlgebraSpace) -> Result<()> {
    if b.dim() != alg.dim() {
        return Err(Error::DimensionMismatch { expected: alg.dim(), found: b.dim() });
    }
    Ok(())
}

/// First basis triple where `f` is nonzero.
fn scan3(n: usize, label: &str, mut f: impl FnMut(usize, usize, usize) -> Rational) -> Verdict {
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let r = f(i, j, k);
                if !r.is_zero() {
                    return Verdict::fail(Failure { identity: label.to_string(), tuple: alloc::vec![i, j, k], residual: alloc::vec![r] });
                }
            }
        }
    }
    Verdict::pass()
}

fn cyclic(g: &Matrix, t: &StructTensor, label: &str) -> Verdict {
    let n = t.dim();
    let e = |i: usize| linalg::unit(n, i);
    scan3(n, label, |i, j, k| {
        form_value(g, t.product(i, j), &e(k)) + form_value(g, t.product(j, k), &e(i)) + form_value(g, t.product(k, i), &e(j))
    })
}

pub fn classify_form(b: &BilinForm, alg: &AlgebraSpace, op: &str) -> Result<FormReport> {
    check_dim(b, alg)?;
    let t = alg.op(op)?;
    let g = b.gram();
    let symmetric = b.is_symmetric();
    let connes = cyclic(g, t, "connes").holds;
    let bracket = t.sub(&t.opposite());
    let cocycle = cyclic(g, &bracket, "2-cocycle").holds;
    Ok(FormReport {
        symmetric,
        antisymmetric: b.is_antisymmetric(),
        nondegenerate: b.is_nondegenerate(),
        connes,
        commutative_connes: symmetric && connes,
        commutative_2cocycle: symmetric && cocycle,
    })
}

/// `B(x▷y,z) = −B(y,z·x)` and `B(x◁y,z) = −B(x,y·z)` on basis triples.
pub fn check_invariance_anti_dendriform(b: &BilinForm, alg: &AlgebraSpace, tri_r: &str, tri_l: &str) -> Result<InvarianceReport> {
    check_dim(b, alg)?;
    let r = alg.op(tri_r)?;
    let l = alg.op(tri_l)?;
    let dot = r.add(l);
    let g = b.gram();
    let n = alg.dim();
    let e = |i: usize| linalg::unit(n, i);
    let invariant = scan3(n, "B(x▷y,z) = -B(y,z·x)", |i, j, k| {
        form_value(g, r.product(i, j), &e(k)) + form_value(g, &e(j), dot.product(k, i))
    })
    .and(scan3(n, "B(x◁y,z) = -B(x,y·z)", |i, j, k| {
        form_value(g, l.product(i, j), &e(k)) + form_value(g, &e(i), dot.product(j, k))
    }));
    let lemma = scan3(n, "B(x◁y,z) = B(z▷x,y)", |i, j, k| {
        form_value(g, l.product(i, j), &e(k)) - form_value(g, r.product(k, i), &e(j))
    });
    Ok(InvarianceReport { invariant, lemma })
}

/// `B(x∘y,z) = B(y,[x,z])` with `[x,z] = x∘z − z∘x`.
pub fn check_invariance_anti_pre_lie(b: &BilinForm, alg: &AlgebraSpace, circ: &str) -> Result<Verdict> {
    check_dim(b, alg)?;
    let c = alg.op(circ)?;
    let br = c.sub(&c.opposite());
    let g = b.gram();
    let n = alg.dim();
    let e = |i: usize| linalg::unit(n, i);
    Ok(scan3(n, "B(x∘y,z) = B(y,[x,z])", |i, j, k| form_value(g, c.product(i, j), &e(k)) - form_value(g, &e(j), br.product(i, k))))
}

/// Tensor `w` with `B(e_i ⋆ e_j, e_k) = rhs(i, j, k)`, solved through `Gᵀ`.
fn solve_by_form(g: &Matrix, n: usize, rhs: impl Fn(usize, usize, usize) -> Rational) -> Result<StructTensor> {
    let gt = g.transpose();
    let mut t = StructTensor::zero(n);
    for i in 0..n {
        for j in 0..n {
            let b: Vector = (0..n).map(|k| rhs(i, j, k)).collect();
            let w = gt.solve(&b).ok_or(Error::DegenerateForm)?;
            for (k, c) in w.into_iter().enumerate() {
                t.set(i, j, k, c);
            }
        }
    }
    Ok(t)
}

fn require_nondegenerate(b: &BilinForm) -> Result<()> {
    if b.is_nondegenerate() {
        Ok(())
    } else {
        Err(Error::DegenerateForm)
    }
}

/// The compatible anti-dendriform structure of a nondegenerate commutative
/// Connes cocycle, stored as `rop` and `lop` next to `op`.
pub fn reconstruct_anti_dendriform(b: &BilinForm, alg: &AlgebraSpace, op: &str) -> Result<AlgebraSpace> {
    let rep = classify_form(b, alg, op)?;
    require_nondegenerate(b)?;
    if !rep.commutative_connes {
        let why = if rep.symmetric { "cyclic sum does not vanish" } else { "form is not symmetric" };
        return Err(Error::NotCocycle(why.to_string()));
    }
    let t = alg.op(op)?;
    let g = b.gram();
    let n = alg.dim();
    let e = |i: usize| linalg::unit(n, i);
    let rop = solve_by_form(g, n, |i, j, k| -form_value(g, &e(j), t.product(k, i)))?;
    let lop = solve_by_form(g, n, |i, j, k| -form_value(g, &e(i), t.product(j, k)))?;
    let mut out = alg.clone();
    out.set_op(names::TRI_R, rop)?;
    out.set_op(names::TRI_L, lop)?;
    let b_ops = binding(&[("tri_r", names::TRI_R), ("tri_l", names::TRI_L)]);
    if !check_structure(&out, "anti-dendriform", &b_ops, None)?.holds {
        return Err(Error::Postcondition("reconstruction is not anti-dendriform".to_string()));
    }
    if &out.op(names::TRI_R)?.add(out.op(names::TRI_L)?) != t {
        return Err(Error::Postcondition("reconstructed operations do not sum to the product".to_string()));
    }
    if !check_invariance_anti_dendriform(b, &out, names::TRI_R, names::TRI_L)?.invariant.holds {
        return Err(Error::Postcondition("form is not invariant on the reconstruction".to_string()));
    }
    Ok(out)
}

/// `x∘y` defined by `B(x∘y,z) = B(y,[x,z])` from a nondegenerate commutative
/// 2-cocycle on the commutator of `op`, stored as `circ`.
pub fn compatible_anti_pre_lie(b: &BilinForm, alg: &AlgebraSpace, op: &str) -> Result<AlgebraSpace> {
    let rep = classify_form(b, alg, op)?;
    require_nondegenerate(b)?;
    if !rep.commutative_2cocycle {
        return Err(Error::NotCocycle("not a commutative 2-cocycle on the commutator".to_string()));
    }
    let t = alg.op(op)?;
    let br = t.sub(&t.opposite());
    let g = b.gram();
    let n = alg.dim();
    let e = |i: usize| linalg::unit(n, i);
    let circ = solve_by_form(g, n, |i, j, k| form_value(g, &e(j), br.product(i, k)))?;
    let mut out = alg.clone();
    out.set_op(names::CIRC, circ)?;
    Ok(out)
}

/// `A ⋉ A*` for the dual of `(A, −L_▷, −R_◁)` with the pairing form
/// `B(x + a*, y + b*) = ⟨x, b*⟩ + ⟨a*, y⟩`.
pub fn form_on_semidirect(alg: &AlgebraSpace, tri_r: &str, tri_l: &str) -> Result<(AlgebraSpace, BilinForm)> {
    let b_ops = binding(&[("tri_r", tri_r), ("tri_l", tri_l)]);
    if !check_structure(alg, "anti-dendriform", &b_ops, None)?.holds {
        return Err(Error::NotStructure("anti-dendriform".to_string()));
    }
    let s = Bimodule::anti_dendriform(alg, tri_r, tri_l)?.dual().semidirect()?;
    let n = alg.dim();
    let gram = Matrix::from_fn(2 * n, 2 * n, |i, j| if i + n == j || j + n == i { int(1) } else { Rational::zero() });
    let form = BilinForm::new(gram)?;
    let rep = classify_form(&form, &s, names::MUL)?;
    if !(rep.nondegenerate && rep.commutative_connes) {
        return Err(Error::Postcondition("pairing is not a nondegenerate commutative Connes cocycle".to_string()));
    }
    Ok((s, form))
}

/// Nondegeneracy plus `ψ(x) = B(x,·)` intertwining `(A, −L_▷, −R_◁)` with
/// `(A*, R_·*, L_·*)`.
pub fn form_equivalence_check(b: &BilinForm, alg: &AlgebraSpace, tri_r: &str, tri_l: &str) -> Result<Verdict> {
    check_dim(b, alg)?;
    let src = Bimodule::anti_dendriform(alg, tri_r, tri_l)?;
    let target = Bimodule::regular(src.base(), names::SUM)?.dual();
    let psi = b.gram().transpose();
    if !b.is_nondegenerate() {
        return Ok(Verdict::fail(Failure { identity: "nondegenerate".to_string(), tuple: Vec::new(), residual: Vec::new() }));
    }
    let n = alg.dim();
    for i in 0..n {
        let pairs: [(&str, &Matrix, &Matrix); 2] = [
            ("ψ(l(x)v) = l*(x)ψ(v)", &src.l()[i], &target.l()[i]),
            ("ψ(r(x)v) = r*(x)ψ(v)", &src.r()[i], &target.r()[i]),
        ];
        for (label, a, c) in pairs {
            let d = psi.mul(a)?.sub(&c.mul(&psi)?)?;
            if !d.is_zero() {
                return Ok(Verdict::fail(Failure { identity: label.to_string(), tuple: alloc::vec![i], residual: d.to_rows().concat() }));
            }
        }
    }
    Ok(Verdict::pass())
}

/// Short text for a form report.
pub fn describe(rep: &FormReport) -> String {
    let flags = [
        ("symmetric", rep.symmetric),
        ("antisymmetric", rep.antisymmetric),
        ("nondegenerate", rep.nondegenerate),
        ("connes", rep.connes),
        ("commutative_connes", rep.commutative_connes),
        ("commutative_2cocycle", rep.commutative_2cocycle),
    ];
    flags.iter().map(|(n, v)| format!("{n}: {v}")).collect::<Vec<_>>().join("\n")
}
