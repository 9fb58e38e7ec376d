use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{Expr, IdentityExpr};
use crate::algebra::AlgebraSpace;
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::names;
use crate::ring::{Rationals, Ring};
use crate::tensor::{bilinear, Tensor};
use crate::verdict::{Failure, Verdict};

/// Operations available to an expression, by name.
pub type OpTable<E> = BTreeMap<String, Tensor<E>>;

/// Evaluates `expr` with `args[i]` substituted for variable `i`.
pub fn eval_expr<R: Ring>(ring: &R, ops: &OpTable<R::Elem>, dim: usize, expr: &Expr, args: &[Vec<R::Elem>]) -> Result<Vec<R::Elem>> {
    Ok(match expr {
        Expr::Var(i) => args
            .get(*i)
            .cloned()
            .ok_or(Error::DimensionMismatch { expected: i + 1, found: args.len() })?,
        Expr::Apply { op, lhs, rhs } => {
            let t = ops.get(op).ok_or_else(|| Error::UnknownOp(op.clone()))?;
            let l = eval_expr(ring, ops, dim, lhs, args)?;
            let r = eval_expr(ring, ops, dim, rhs, args)?;
            bilinear(ring, t, &l, &r)
        }
        Expr::Scale(c, inner) => eval_expr(ring, ops, dim, inner, args)?.iter().map(|x| ring.scale(x, c)).collect(),
        Expr::Neg(inner) => eval_expr(ring, ops, dim, inner, args)?.iter().map(|x| ring.neg(x)).collect(),
        Expr::Sum(items) => {
            let mut acc: Vec<R::Elem> = (0..dim).map(|_| ring.zero()).collect();
            for item in items {
                let v = eval_expr(ring, ops, dim, item, args)?;
                for (a, b) in acc.iter_mut().zip(&v) {
                    *a = ring.add(a, b);
                }
            }
            acc
        }
    })
}

/// Calls `f` on every tuple in `0..dim` of length `k`, first index
/// slowest. Stops early when `f` returns `false`.
pub fn for_each_tuple(dim: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) {
    if dim == 0 && k > 0 {
        return;
    }
    let mut t = alloc::vec![0usize; k];
    loop {
        if !f(&t) {
            return;
        }
        let mut pos = k;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            t[pos] += 1;
            if t[pos] < dim {
                break;
            }
            t[pos] = 0;
        }
    }
}

fn unit<R: Ring>(ring: &R, dim: usize, i: usize) -> Vec<R::Elem> {
    let one = ring.from_rational(&Rational::from_integer(1.into()));
    (0..dim).map(|k| if k == i { one.clone() } else { ring.zero() }).collect()
}

fn check_ops<E>(id: &IdentityExpr, ops: &OpTable<E>) -> Result<()> {
    for op in id.ops() {
        if !ops.contains_key(&op) {
            return Err(Error::UnknownOp(op));
        }
    }
    Ok(())
}

/// First basis tuple (lexicographic) with a nonzero value, and the value.
pub fn first_failure<R: Ring>(ring: &R, ops: &OpTable<R::Elem>, dim: usize, id: &IdentityExpr) -> Result<Option<(Vec<usize>, Vec<R::Elem>)>> {
    check_ops(id, ops)?;
    let units: Vec<Vec<R::Elem>> = (0..dim).map(|i| unit(ring, dim, i)).collect();
    let mut found = None;
    let mut error = None;
    for_each_tuple(dim, id.arity(), |t| {
        let args: Vec<Vec<R::Elem>> = t.iter().map(|&i| units[i].clone()).collect();
        match eval_expr(ring, ops, dim, id.expr(), &args) {
            Ok(v) if v.iter().any(|x| !ring.is_zero(x)) => {
                found = Some((t.to_vec(), v));
                false
            }
            Ok(_) => true,
            Err(e) => {
                error = Some(e);
                false
            }
        }
    });
    match error {
        Some(e) => Err(e),
        None => Ok(found),
    }
}

/// Conventional operation behind a symbol, used when the algebra has no
/// operation literally named by the symbol.
fn symbol_default(op: &str) -> Option<&'static str> {
    match op {
        "." => Some(names::MUL),
        ">" => Some(names::TRI_R),
        "<" => Some(names::TRI_L),
        "*" => Some(names::STAR),
        _ => None,
    }
}

fn table(alg: &AlgebraSpace, id: &IdentityExpr) -> Result<OpTable<Rational>> {
    let mut t = OpTable::new();
    for op in id.ops() {
        let tensor = match (alg.has_op(&op), symbol_default(&op)) {
            (false, Some(alias)) if alg.has_op(alias) => alg.op(alias)?,
            _ => alg.op(&op)?,
        };
        t.insert(op.clone(), tensor.clone());
    }
    Ok(t)
}

/// Checks the identity on all basis tuples of `alg`.
pub fn check_identity(id: &IdentityExpr, alg: &AlgebraSpace) -> Result<Verdict> {
    let ops = table(alg, id)?;
    Ok(match first_failure(&Rationals, &ops, alg.dim(), id)? {
        None => Verdict::pass(),
        Some((tuple, residual)) => Verdict::fail(Failure { identity: id.to_string(), tuple, residual }),
    })
}

/// Value of the identity's expression at arbitrary vectors.
pub fn eval_identity(id: &IdentityExpr, alg: &AlgebraSpace, args: &[Vector]) -> Result<Vector> {
    if args.len() != id.arity() {
        return Err(Error::DimensionMismatch { expected: id.arity(), found: args.len() });
    }
    for a in args {
        if a.len() != alg.dim() {
            return Err(Error::DimensionMismatch { expected: alg.dim(), found: a.len() });
        }
    }
    let ops = table(alg, id)?;
    eval_expr(&Rationals, &ops, alg.dim(), id.expr(), args)
}

