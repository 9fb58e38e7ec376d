//! Multilinear identities over named bilinear operations.
//!
//! Grammar:
//!
//! ```text
//! identity := vars ':' expr ('=' expr)*
//! vars     := IDENT (',' IDENT)*
//! expr     := signed (('+' | '-') signed)*
//! signed   := '-' signed | term
//! term     := NUMBER ['/' NUMBER] '*' term | product
//! product  := atom [OP atom]
//! atom     := IDENT | '0' | '(' expr ')'
//! OP       := IDENT | '\'' name '\'' | '>' | '<' | '.' | '*'
//! ```
//!
//! Distinct operations have no precedence, so nested products need
//! parentheses: `(x>y)<z`. A number followed by `*` is a scalar, so `2*x`
//! scales while `x*y` applies the operation `*`.
//!
//! When checked against an algebra without an operation literally named
//! `.`, `>`, `<` or `*`, those symbols fall back to `mul`, `rop`, `lop`
//! and `star`.

mod eval;
mod parse;

use alloc::collections::BTreeSet;
use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::Rational;

pub use eval::{check_identity, eval_expr, eval_identity, first_failure, for_each_tuple, OpTable};
pub use parse::{parse_identity, parse_identity_chain};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Var(usize),
    Apply { op: String, lhs: Box<Expr>, rhs: Box<Expr> },
    Scale(Rational, Box<Expr>),
    Sum(Vec<Expr>),
    Neg(Box<Expr>),
}

impl Expr {
    pub fn zero() -> Expr {
        Expr::Sum(Vec::new())
    }

    fn is_zero_literal(&self) -> bool {
        matches!(self, Expr::Sum(v) if v.is_empty())
    }

    fn collect_ops(&self, out: &mut BTreeSet<String>) {
        match self {
            Expr::Var(_) => {}
            Expr::Apply { op, lhs, rhs } => {
                out.insert(op.clone());
                lhs.collect_ops(out);
                rhs.collect_ops(out);
            }
            Expr::Scale(_, c) | Expr::Neg(c) => c.collect_ops(out),
            Expr::Sum(v) => v.iter().for_each(|c| c.collect_ops(out)),
        }
    }
}

/// A multilinear expression asserted to vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityExpr {
    vars: Vec<String>,
    expr: Expr,
}

impl IdentityExpr {
    pub fn parse(src: &str) -> crate::Result<Self> {
        parse_identity(src)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn expr(&self) -> &Expr {
        &self.expr
    }

    pub fn ops(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.expr.collect_ops(&mut out);
        out
    }
}

fn is_symbol_op(op: &str) -> bool {
    matches!(op, ">" | "<" | "." | "*")
}

fn is_ident(s: &str) -> bool {
    let mut c = s.chars();
    matches!(c.next(), Some(ch) if ch.is_ascii_alphabetic() || ch == '_')
        && c.all(|ch| ch.is_ascii_alphanumeric() || ch == '_')
}

struct Printer<'a> {
    vars: &'a [String],
}

impl Printer<'_> {
    fn expr(&self, e: &Expr, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match e {
            Expr::Sum(items) if !items.is_empty() => {
                for (i, item) in items.iter().enumerate() {
                    match (i, item) {
                        (0, _) => self.signed(item, f)?,
                        (_, Expr::Neg(inner)) => {
                            f.write_str(" - ")?;
                            self.signed(inner, f)?;
                        }
                        _ => {
                            f.write_str(" + ")?;
                            self.signed(item, f)?;
                        }
                    }
                }
                Ok(())
            }
            _ => self.signed(e, f),
        }
    }

    fn signed(&self, e: &Expr, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match e {
            Expr::Neg(inner) => {
                f.write_str("-")?;
                self.signed(inner, f)
            }
            Expr::Sum(items) if !items.is_empty() => self.paren(e, f),
            _ => self.term(e, f),
        }
    }

    fn term(&self, e: &Expr, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match e {
            Expr::Scale(c, inner) => {
                write!(f, "{c}*")?;
                match inner.as_ref() {
                    Expr::Neg(_) => self.paren(inner, f),
                    Expr::Sum(items) if !items.is_empty() => self.paren(inner, f),
                    _ => self.term(inner, f),
                }
            }
            Expr::Apply { op, lhs, rhs } => {
                self.operand(lhs, f)?;
                if is_symbol_op(op) {
                    f.write_str(op)?;
                } else if is_ident(op) {
                    write!(f, " {op} ")?;
                } else {
                    write!(f, " '{op}' ")?;
                }
                self.operand(rhs, f)
            }
            _ => self.operand(e, f),
        }
    }

    fn operand(&self, e: &Expr, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match e {
            Expr::Var(i) => f.write_str(&self.vars[*i]),
            Expr::Sum(items) if items.is_empty() => f.write_str("0"),
            _ => self.paren(e, f),
        }
    }

    fn paren(&self, e: &Expr, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        self.expr(e, f)?;
        f.write_str(")")
    }
}

impl fmt::Display for IdentityExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.vars.join(","))?;
        Printer { vars: &self.vars }.expr(&self.expr, f)
    }
}
