//! Derived operations and q-algebra transforms. Each transform returns a copy
//! of the input carrying the new operations next to the source ones; a target
//! name already in use is overwritten.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::algebra::AlgebraSpace;
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::names;
use crate::tensor::StructTensor;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TransformKind {
    Sum,
    Commutator,
    AssocPreLie,
    AssocAntiPreLie,
    QPair,
    QPairAlt,
    QSingle,
}

impl TransformKind {
    pub const ALL: [TransformKind; 7] = [
        TransformKind::Sum,
        TransformKind::Commutator,
        TransformKind::AssocPreLie,
        TransformKind::AssocAntiPreLie,
        TransformKind::QPair,
        TransformKind::QPairAlt,
        TransformKind::QSingle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TransformKind::Sum => "sum",
            TransformKind::Commutator => "commutator",
            TransformKind::AssocPreLie => "pre-lie",
            TransformKind::AssocAntiPreLie => "anti-pre-lie",
            TransformKind::QPair => "q-pair",
            TransformKind::QPairAlt => "q-pair-alt",
            TransformKind::QSingle => "q-single",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }

    pub fn needs_q(self) -> bool {
        matches!(self, TransformKind::QPair | TransformKind::QPairAlt | TransformKind::QSingle)
    }

    /// Number of source operations.
    pub fn arity(self) -> usize {
        match self {
            TransformKind::Commutator | TransformKind::QSingle => 1,
            _ => 2,
        }
    }

    pub fn default_targets(self) -> Vec<String> {
        let t: &[&str] = match self {
            TransformKind::Sum => &[names::SUM],
            TransformKind::Commutator => &[names::BRACKET],
            TransformKind::AssocPreLie => &[names::STAR],
            TransformKind::AssocAntiPreLie => &[names::CIRC],
            TransformKind::QPair | TransformKind::QPairAlt => &[names::TRI_R, names::TRI_L],
            TransformKind::QSingle => &[names::DIAMOND],
        };
        t.iter().map(|s| s.to_string()).collect()
    }

    /// First source list fully present in `alg`.
    pub fn default_sources(self, alg: &AlgebraSpace) -> Option<Vec<String>> {
        let pairs: &[&[&str]] = match self {
            TransformKind::Sum => &[&[names::TRI_R, names::TRI_L], &[names::SUCC, names::PREC]],
            TransformKind::AssocAntiPreLie => &[&[names::TRI_R, names::TRI_L]],
            TransformKind::AssocPreLie | TransformKind::QPair | TransformKind::QPairAlt => &[&[names::SUCC, names::PREC]],
            TransformKind::Commutator | TransformKind::QSingle => {
                &[&[names::MUL], &[names::STAR], &[names::CIRC], &[names::SUM]]
            }
        };
        pairs
            .iter()
            .find(|p| p.iter().all(|n| alg.has_op(n)))
            .map(|p| p.iter().map(|s| s.to_string()).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformSpec {
    pub kind: TransformKind,
    pub q: Option<Rational>,
    pub sources: Vec<String>,
    pub targets: Vec<String>,
}

impl TransformSpec {
    /// Spec with default target names.
    pub fn new(kind: TransformKind, sources: &[&str], q: Option<Rational>) -> Self {
        TransformSpec { kind, q, sources: sources.iter().map(|s| s.to_string()).collect(), targets: kind.default_targets() }
    }

    pub fn with_targets(mut self, targets: &[&str]) -> Self {
        self.targets = targets.iter().map(|s| s.to_string()).collect();
        self
    }
}

/// Warning text for q values where the q-algebra correspondence degenerates.
pub fn q_warning(q: &Rational) -> Option<&'static str> {
    if q.abs().is_one() {
        Some("q = ±1: the q-algebra transform is not invertible and the q-algebra theory does not apply")
    } else if q.is_zero() {
        Some("q = 0: the transform is the identity")
    } else {
        None
    }
}

pub fn apply(alg: &AlgebraSpace, spec: &TransformSpec) -> Result<AlgebraSpace> {
    let k = spec.kind;
    if spec.sources.len() != k.arity() {
        return Err(Error::Shape(alloc::format!("{} takes {} source operations", k.name(), k.arity())));
    }
    let ntargets = k.default_targets().len();
    if spec.targets.len() != ntargets {
        return Err(Error::Shape(alloc::format!("{} creates {} operations", k.name(), ntargets)));
    }
    let q = match (k.needs_q(), &spec.q) {
        (true, Some(q)) => q.clone(),
        (true, None) => return Err(Error::MissingQ(k.name().to_string())),
        (false, Some(_)) => return Err(Error::UnexpectedQ(k.name().to_string())),
        (false, None) => Rational::zero(),
    };
    let a = alg.op(&spec.sources[0])?;
    let b = if k.arity() == 2 { alg.op(&spec.sources[1])? } else { a };
    let out: Vec<StructTensor> = match k {
        TransformKind::Sum => alloc::vec![a.add(b)],
        TransformKind::Commutator => alloc::vec![a.sub(&a.opposite())],
        TransformKind::AssocPreLie | TransformKind::AssocAntiPreLie => alloc::vec![a.sub(&b.opposite())],
        TransformKind::QPair => alloc::vec![a.add(&b.scale(&q)), b.add(&a.scale(&q))],
        TransformKind::QPairAlt => alloc::vec![a.add(&a.opposite().scale(&q)), b.add(&b.opposite().scale(&q))],
        TransformKind::QSingle => alloc::vec![a.add(&a.opposite().scale(&q))],
    };
    let mut res = alg.clone();
    for (name, t) in spec.targets.iter().zip(out) {
        res.set_op(name, t)?;
    }
    Ok(res)
}

/// `x · y = x op1 y + x op2 y`, stored as `sum`.
pub fn op_sum(alg: &AlgebraSpace, op1: &str, op2: &str) -> Result<AlgebraSpace> {
    apply(alg, &TransformSpec::new(TransformKind::Sum, &[op1, op2], None))
}

/// `[x, y] = x op y − y op x`, stored as `bracket`.
pub fn commutator(alg: &AlgebraSpace, op: &str) -> Result<AlgebraSpace> {
    apply(alg, &TransformSpec::new(TransformKind::Commutator, &[op], None))
}

/// `x ∗ y = x ≻ y − y ≺ x`, stored as `star`.
pub fn assoc_pre_lie(alg: &AlgebraSpace, succ: &str, prec: &str) -> Result<AlgebraSpace> {
    apply(alg, &TransformSpec::new(TransformKind::AssocPreLie, &[succ, prec], None))
}

/// `x ∘ y = x ▷ y − y ◁ x`, stored as `circ`.
pub fn assoc_anti_pre_lie(alg: &AlgebraSpace, tri_r: &str, tri_l: &str) -> Result<AlgebraSpace> {
    apply(alg, &TransformSpec::new(TransformKind::AssocAntiPreLie, &[tri_r, tri_l], None))
}

/// `x ▷ y = x ≻ y + q x ≺ y`, `x ◁ y = x ≺ y + q x ≻ y`, stored as `rop`, `lop`.
pub fn q_pair(alg: &AlgebraSpace, succ: &str, prec: &str, q: &Rational) -> Result<AlgebraSpace> {
    apply(alg, &TransformSpec::new(TransformKind::QPair, &[succ, prec], Some(q.clone())))
}

/// `x ▷' y = x ≻ y + q y ≻ x`, `x ◁' y = x ≺ y + q y ≺ x`, stored as `rop`, `lop`.
pub fn q_pair_alt(alg: &AlgebraSpace, succ: &str, prec: &str, q: &Rational) -> Result<AlgebraSpace> {
    apply(alg, &TransformSpec::new(TransformKind::QPairAlt, &[succ, prec], Some(q.clone())))
}

/// `x ⋄ y = x • y + q y • x`, stored as `diamond`.
pub fn q_single(alg: &AlgebraSpace, op: &str, q: &Rational) -> Result<AlgebraSpace> {
    apply(alg, &TransformSpec::new(TransformKind::QSingle, &[op], Some(q.clone())))
}
