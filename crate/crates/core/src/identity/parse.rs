use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Expr, IdentityExpr};
use crate::arith::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Quoted(String),
    Num(BigInt),
    Sym(char),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    col: usize,
    // byte offsets into the source
    start: usize,
}

fn err(col: usize, message: impl Into<String>) -> Error {
    Error::Parse { column: col, message: message.into() }
}

fn lex(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (start, c) = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut j = i;
            while j < chars.len() && (chars[j].1.is_ascii_alphanumeric() || chars[j].1 == '_') {
                j += 1;
            }
            out.push(Token { tok: Tok::Ident(chars[i..j].iter().map(|p| p.1).collect()), col, start });
            i = j;
        } else if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].1.is_ascii_digit() {
                j += 1;
            }
            let digits: String = chars[i..j].iter().map(|p| p.1).collect();
            let n = digits.parse::<BigInt>().map_err(|_| err(col, "bad number"))?;
            out.push(Token { tok: Tok::Num(n), col, start });
            i = j;
        } else if c == '\'' {
            let mut j = i + 1;
            while j < chars.len() && chars[j].1 != '\'' {
                j += 1;
            }
            if j == chars.len() {
                return Err(err(col, "unterminated quoted operation name"));
            }
            let name: String = chars[i + 1..j].iter().map(|p| p.1).collect();
            if name.is_empty() || name.chars().any(char::is_whitespace) {
                return Err(err(col, "quoted operation names must be nonempty without spaces"));
            }
            out.push(Token { tok: Tok::Quoted(name), col, start });
            i = j + 1;
        } else if ",:()+-=/><.*".contains(c) {
            out.push(Token { tok: Tok::Sym(c), col, start });
            i += 1;
        } else {
            return Err(err(col, format!("unexpected character `{c}`")));
        }
    }
    out.push(Token { tok: Tok::End, col: chars.len() + 1, start: src.len() });
    Ok(out)
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<Token>,
    pos: usize,
    vars: Vec<String>,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, n: usize) -> &Tok {
        let i = (self.pos + n).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn col(&self) -> usize {
        self.toks[self.pos].col
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        if *self.peek() == Tok::Sym(c) {
            self.next();
            Ok(())
        } else {
            Err(err(self.col(), format!("expected `{c}`, found {}", describe(self.peek()))))
        }
    }

    fn var_decls(&mut self) -> Result<()> {
        loop {
            let col = self.col();
            match self.next() {
                Tok::Ident(name) => {
                    if self.vars.contains(&name) {
                        return Err(err(col, format!("variable `{name}` declared twice")));
                    }
                    self.vars.push(name);
                }
                t => return Err(err(col, format!("expected a variable name, found {}", describe(&t)))),
            }
            match self.peek() {
                Tok::Sym(',') => {
                    self.next();
                }
                Tok::Sym(':') => {
                    self.next();
                    return Ok(());
                }
                t => return Err(err(self.col(), format!("expected `,` or `:`, found {}", describe(t)))),
            }
        }
    }

    /// Parses `expr`; at top level every summand is checked for
    /// multilinearity so errors point at the offending term.
    fn expr(&mut self, top: bool) -> Result<Expr> {
        let mut items = Vec::new();
        let mut negate = false;
        loop {
            let col = self.col();
            let mut t = self.signed()?;
            if top {
                self.check_multilinear(&t, col)?;
            }
            if negate {
                t = Expr::Neg(Box::new(t));
            }
            items.push(t);
            match self.peek() {
                Tok::Sym('+') => negate = false,
                Tok::Sym('-') => negate = true,
                _ => break,
            }
            self.next();
        }
        Ok(if items.len() == 1 { items.pop().expect("one item") } else { Expr::Sum(items) })
    }

    fn signed(&mut self) -> Result<Expr> {
        if *self.peek() == Tok::Sym('-') {
            self.next();
            return Ok(Expr::Neg(Box::new(self.signed()?)));
        }
        self.term()
    }

    fn term(&mut self) -> Result<Expr> {
        if let Tok::Num(n) = self.peek().clone() {
            let scalar = match self.peek_at(1) {
                Tok::Sym('*') => Some(Rational::from_integer(n)),
                Tok::Sym('/') => {
                    let col = self.toks[self.pos + 1].col;
                    let Tok::Num(d) = self.peek_at(2).clone() else {
                        return Err(err(col, "expected a denominator after `/`"));
                    };
                    if d.is_zero() {
                        return Err(err(col, "zero denominator"));
                    }
                    if *self.peek_at(3) != Tok::Sym('*') {
                        return Err(err(self.toks[self.pos + 3].col, "expected `*` after a rational scalar"));
                    }
                    self.next();
                    self.next();
                    Some(Rational::new(n, d))
                }
                _ => None,
            };
            if let Some(c) = scalar {
                self.next();
                self.expect_sym('*')?;
                return Ok(Expr::Scale(c, Box::new(self.term()?)));
            }
        }
        self.product()
    }

    fn op_token(&self) -> Option<String> {
        match self.peek() {
            Tok::Ident(s) | Tok::Quoted(s) => Some(s.clone()),
            Tok::Sym(c @ ('>' | '<' | '.' | '*')) => Some(c.to_string()),
            _ => None,
        }
    }

    fn product(&mut self) -> Result<Expr> {
        let lhs = self.atom()?;
        let Some(op) = self.op_token() else {
            return Ok(lhs);
        };
        self.next();
        let rhs = self.atom()?;
        if self.op_token().is_some() {
            return Err(err(self.col(), "nested operations need parentheses, e.g. `(x>y)<z`"));
        }
        Ok(Expr::Apply { op, lhs: Box::new(lhs), rhs: Box::new(rhs) })
    }

    fn atom(&mut self) -> Result<Expr> {
        let col = self.col();
        match self.next() {
            Tok::Ident(name) => match self.vars.iter().position(|v| *v == name) {
                Some(i) => Ok(Expr::Var(i)),
                None => Err(err(col, format!("unknown variable `{name}`"))),
            },
            Tok::Num(n) if n.is_zero() => Ok(Expr::zero()),
            Tok::Num(_) => Err(err(col, "a bare scalar is not a vector; write `c*expr`")),
            Tok::Sym('(') => {
                let e = self.expr(false)?;
                self.expect_sym(')')?;
                Ok(e)
            }
            t => Err(err(col, format!("expected a variable, `0` or `(`, found {}", describe(&t)))),
        }
    }

    fn check_multilinear(&self, e: &Expr, col: usize) -> Result<()> {
        let n = self.vars.len();
        for m in expand(e, n) {
            let mut problems = Vec::new();
            for (i, &c) in m.iter().enumerate() {
                if c == 0 {
                    problems.push(format!("`{}` missing", self.vars[i]));
                } else if c > 1 {
                    problems.push(format!("`{}` repeated", self.vars[i]));
                }
            }
            if !problems.is_empty() {
                return Err(err(col, format!("term is not multilinear: {}", problems.join(", "))));
            }
        }
        Ok(())
    }
}

/// Variable occurrence counts of every product monomial with a nonzero
/// scalar, before like terms are combined.
fn expand(e: &Expr, n: usize) -> Vec<Vec<u32>> {
    match e {
        Expr::Var(i) => {
            let mut m = alloc::vec![0; n];
            m[*i] = 1;
            alloc::vec![m]
        }
        Expr::Apply { lhs, rhs, .. } => {
            let l = expand(lhs, n);
            let r = expand(rhs, n);
            let mut out = Vec::with_capacity(l.len() * r.len());
            for a in &l {
                for b in &r {
                    out.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
                }
            }
            out
        }
        Expr::Scale(c, inner) => {
            if c.is_zero() {
                Vec::new()
            } else {
                expand(inner, n)
            }
        }
        Expr::Neg(inner) => expand(inner, n),
        Expr::Sum(items) => items.iter().flat_map(|i| expand(i, n)).collect(),
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Quoted(s) => format!("`'{s}'`"),
        Tok::Num(n) => format!("`{n}`"),
        Tok::Sym(c) => format!("`{c}`"),
        Tok::End => "end of input".to_string(),
    }
}

fn parser(src: &str) -> Result<Parser<'_>> {
    let toks = lex(src)?;
    let mut p = Parser { src, toks, pos: 0, vars: Vec::new() };
    p.var_decls()?;
    Ok(p)
}

fn difference(lhs: Expr, rhs: Expr) -> Expr {
    if rhs.is_zero_literal() {
        lhs
    } else {
        Expr::Sum(alloc::vec![lhs, Expr::Neg(Box::new(rhs))])
    }
}

/// Parses `vars: lhs [= rhs]` into the identity `lhs - rhs = 0`.
pub fn parse_identity(src: &str) -> Result<IdentityExpr> {
    let mut p = parser(src)?;
    let lhs = p.expr(true)?;
    let expr = match p.peek() {
        Tok::End => lhs,
        Tok::Sym('=') => {
            p.next();
            let rhs = p.expr(true)?;
            if *p.peek() == Tok::Sym('=') {
                return Err(err(p.col(), "more than one `=`; use a chain for several equalities"));
            }
            difference(lhs, rhs)
        }
        t => return Err(err(p.col(), format!("unexpected {}", describe(t)))),
    };
    if *p.peek() != Tok::End {
        return Err(err(p.col(), format!("unexpected {}", describe(p.peek()))));
    }
    Ok(IdentityExpr { vars: p.vars, expr })
}

/// Parses `vars: e0 = e1 = ... = en` into the identities `e0 - ek = 0`,
/// each labelled `e0 = ek` with the source text of both members.
pub fn parse_identity_chain(src: &str) -> Result<Vec<(String, IdentityExpr)>> {
    let mut p = parser(src)?;
    let mut members = Vec::new();
    loop {
        let start = p.toks[p.pos].start;
        let e = p.expr(true)?;
        let end = p.toks[p.pos].start;
        members.push((p.src[start..end].trim().to_string(), e));
        match p.peek() {
            Tok::Sym('=') => {
                p.next();
            }
            Tok::End => break,
            t => return Err(err(p.col(), format!("unexpected {}", describe(t)))),
        }
    }
    let mut it = members.into_iter();
    let (first_src, first) = it.next().expect("at least one member");
    let rest: Vec<_> = it.collect();
    if rest.is_empty() {
        return Ok(alloc::vec![(first_src, IdentityExpr { vars: p.vars, expr: first })]);
    }
    Ok(rest
        .into_iter()
        .map(|(src, e)| {
            (format!("{first_src} = {src}"), IdentityExpr { vars: p.vars.clone(), expr: difference(first.clone(), e) })
        })
        .collect())
}
