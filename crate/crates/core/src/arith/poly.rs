use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Exponent vector, one entry per ring variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(alloc::vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = alloc::vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(e: Vec<u32>) -> Self {
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Index of the only variable present, if the monomial is a pure power.
    pub fn single_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    fn extended(&self, extra: usize) -> Monomial {
        let mut e = self.0.clone();
        e.extend(core::iter::repeat_n(0, extra));
        Monomial(e)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    GrLex,
    #[default]
    GrevLex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => lex(a, b),
            MonomialOrder::GrLex => a.degree().cmp(&b.degree()).then_with(|| lex(a, b)),
            MonomialOrder::GrevLex => a.degree().cmp(&b.degree()).then_with(|| {
                for (x, y) in a.0.iter().zip(&b.0).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
        }
    }
}

fn lex(a: &Monomial, b: &Monomial) -> Ordering {
    for (x, y) in a.0.iter().zip(&b.0) {
        if x != y {
            return x.cmp(y);
        }
    }
    Ordering::Equal
}

/// Polynomial ring ℚ[x1..xn] identified by its ordered variable names.
#[derive(Clone, Debug)]
pub struct PolyRing {
    vars: Arc<[String]>,
}

impl PartialEq for PolyRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars
    }
}

impl Eq for PolyRing {}

impl PolyRing {
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = S>) -> Result<Self> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        for (i, v) in vars.iter().enumerate() {
            if v.is_empty() || vars[..i].contains(v) {
                return Err(Error::InvalidBasis(alloc::format!("bad or repeated variable `{v}`")));
            }
        }
        Ok(PolyRing { vars: vars.into() })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn zero(&self) -> MultiPoly {
        MultiPoly { ring: self.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(&self, c: Rational) -> MultiPoly {
        let mut p = self.zero();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(self.nvars()), c);
        }
        p
    }

    pub fn one(&self) -> MultiPoly {
        self.constant(Rational::one())
    }

    pub fn var(&self, i: usize) -> MultiPoly {
        let mut p = self.zero();
        p.terms.insert(Monomial::var(self.nvars(), i), Rational::one());
        p
    }

    pub fn var_named(&self, name: &str) -> Result<MultiPoly> {
        let i = self.var_index(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(self.var(i))
    }

    pub fn term(&self, m: Monomial, c: Rational) -> MultiPoly {
        let mut p = self.zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// The ring with extra variables appended after the existing ones.
    pub fn extend<S: Into<String>>(&self, extra: impl IntoIterator<Item = S>) -> Result<PolyRing> {
        let mut v: Vec<String> = self.vars.to_vec();
        v.extend(extra.into_iter().map(Into::into));
        PolyRing::new(v)
    }

    /// Parses a monomial string such as `a11^2*b12` or `1`.
    pub fn parse_monomial(&self, s: &str) -> Result<Monomial> {
        let mut e = alloc::vec![0u32; self.nvars()];
        let s = s.trim();
        if s == "1" {
            return Ok(Monomial(e));
        }
        for factor in s.split('*') {
            let factor = factor.trim();
            let (name, pow) = match factor.split_once('^') {
                Some((n, p)) => {
                    let p = p.trim().parse::<u32>().map_err(|_| Error::UnknownVariable(factor.to_string()))?;
                    (n.trim(), p)
                }
                None => (factor, 1),
            };
            let i = self.var_index(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
            e[i] += pow;
        }
        Ok(Monomial(e))
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut out = String::new();
        for (i, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !out.is_empty() {
                out.push('*');
            }
            out.push_str(&self.vars[i]);
            if e > 1 {
                out.push('^');
                out.push_str(&e.to_string());
            }
        }
        if out.is_empty() {
            out.push('1');
        }
        out
    }
}

/// Polynomial over ℚ. No zero coefficient is ever stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    ring: PolyRing,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value, if the polynomial has degree ≤ 0.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    /// Terms sorted from the leading one down.
    pub fn sorted_terms(&self, order: MonomialOrder) -> Vec<(&Monomial, &Rational)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|a, b| order.cmp(b.0, a.0));
        t
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return self.ring.zero();
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn monic(&self, order: MonomialOrder) -> MultiPoly {
        match self.leading_term(order) {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    fn check_ring(&self, other: &MultiPoly) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_ring(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_term(&mut terms, m.clone(), c.clone());
        }
        Ok(MultiPoly { ring: self.ring.clone(), terms })
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_ring(other)?;
        let mut terms = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                add_term(&mut terms, m1.mul(m2), c1 * c2);
            }
        }
        Ok(MultiPoly { ring: self.ring.clone(), terms })
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = self.ring.one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates at a point given as one value per ring variable.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.ring.nvars() {
            return Err(Error::DimensionMismatch { expected: self.ring.nvars(), found: point.len() });
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t *= x;
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Substitutes a rational value for one variable. The ring is unchanged.
    pub fn substitute(&self, var: usize, value: &Rational) -> MultiPoly {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[var];
            let mut coeff = c.clone();
            for _ in 0..e {
                coeff *= value;
            }
            let mut m2 = m.clone();
            m2.0[var] = 0;
            add_term(&mut terms, m2, coeff);
        }
        MultiPoly { ring: self.ring.clone(), terms }
    }

    /// Indices of variables that occur in some term.
    pub fn variables(&self) -> Vec<usize> {
        let n = self.ring.nvars();
        (0..n).filter(|&i| self.terms.keys().any(|m| m.0[i] > 0)).collect()
    }

    /// Same polynomial viewed in a ring with more variables appended.
    pub fn lift(&self, ring: &PolyRing) -> Result<MultiPoly> {
        let n = self.ring.nvars();
        if ring.nvars() < n || ring.vars[..n] != self.ring.vars[..] {
            return Err(Error::RingMismatch);
        }
        let extra = ring.nvars() - n;
        Ok(MultiPoly {
            ring: ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.extended(extra), c.clone())).collect(),
        })
    }

    /// Univariate coefficients (ascending) when only `var` occurs.
    pub fn univariate_coeffs(&self, var: usize) -> Option<Vec<Rational>> {
        let mut out: Vec<Rational> = Vec::new();
        for (m, c) in &self.terms {
            if m.0.iter().enumerate().any(|(i, &e)| i != var && e > 0) {
                return None;
            }
            let d = m.0[var] as usize;
            if out.len() <= d {
                out.resize(d + 1, Rational::zero());
            }
            out[d] = c.clone();
        }
        Some(out)
    }

    pub fn from_univariate(ring: &PolyRing, var: usize, coeffs: &[Rational]) -> MultiPoly {
        let mut p = ring.zero();
        for (d, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut m = Monomial::one(ring.nvars());
                m.0[var] = d as u32;
                p.terms.insert(m, c.clone());
            }
        }
        p
    }

    /// Terms as `monomial-string -> rational-string`.
    pub fn to_term_strings(&self) -> BTreeMap<String, String> {
        self.terms.iter().map(|(m, c)| (self.ring.format_monomial(m), c.to_string())).collect()
    }

    pub fn from_term_strings<'a>(
        ring: &PolyRing,
        terms: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<MultiPoly> {
        let mut p = ring.zero();
        for (m, c) in terms {
            let m = ring.parse_monomial(m)?;
            let c = super::parse_rational(c)?;
            add_term(&mut p.terms, m, c);
        }
        Ok(p)
    }

    pub(crate) fn from_parts(ring: PolyRing, terms: BTreeMap<Monomial, Rational>) -> MultiPoly {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        MultiPoly { ring, terms }
    }
}

fn add_term(terms: &mut BTreeMap<Monomial, Rational>, m: Monomial, c: Rational) {
    if c.is_zero() {
        return;
    }
    match terms.entry(m) {
        alloc::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        alloc::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms(MonomialOrder::GrevLex);
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if idx == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                f.write_str(&self.ring.format_monomial(m))?;
            } else {
                write!(f, "{a}*{}", self.ring.format_monomial(m))?;
            }
        }
        Ok(())
    }
}

// Operator impls assume both sides share a ring; mixing rings is a logic error.
impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_add(rhs).expect("polynomials from different rings")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_sub(rhs).expect("polynomials from different rings")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_mul(rhs).expect("polynomials from different rings")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use alloc::format;

    fn xy() -> PolyRing {
        PolyRing::new(["x", "y", "z"]).unwrap()
    }

    #[test]
    fn grevlex_breaks_ties_from_the_right() {
        let r = xy();
        let m = |s| r.parse_monomial(s).unwrap();
        let o = MonomialOrder::GrevLex;
        assert_eq!(o.cmp(&m("x^2"), &m("x*y")), Ordering::Greater);
        assert_eq!(o.cmp(&m("x*z"), &m("y^2")), Ordering::Less);
        assert_eq!(o.cmp(&m("x"), &m("y^2")), Ordering::Less);
        assert_eq!(MonomialOrder::Lex.cmp(&m("x"), &m("y^2")), Ordering::Greater);
        assert_eq!(MonomialOrder::GrLex.cmp(&m("x*z"), &m("y^2")), Ordering::Greater);
    }

    #[test]
    fn arithmetic_and_display() {
        let r = xy();
        let x = r.var(0);
        let y = r.var(1);
        let p = &(&x + &y) * &(&x - &y);
        assert_eq!(format!("{p}"), "x^2 - y^2");
        let q = &p.scale(&rat(-1, 2)) + &r.constant(int(3));
        assert_eq!(format!("{q}"), "-1/2*x^2 + 1/2*y^2 + 3");
        assert!((&p - &p).is_zero());
        assert_eq!(p.eval(&[int(3), int(1), int(0)]).unwrap(), int(8));
    }

    #[test]
    fn term_strings_roundtrip() {
        let r = xy();
        let p = &(&r.var(0).pow(2) * &r.var(2)) - &r.constant(rat(3, 2));
        let s = p.to_term_strings();
        assert_eq!(s.get("x^2*z").map(String::as_str), Some("1"));
        assert_eq!(s.get("1").map(String::as_str), Some("-3/2"));
        let back = MultiPoly::from_term_strings(&r, s.iter().map(|(a, b)| (a.as_str(), b.as_str()))).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn substitution_keeps_ring() {
        let r = xy();
        let p = &(&r.var(0) * &r.var(1)) + &r.var(1);
        let s = p.substitute(0, &int(2));
        assert_eq!(s, r.var(1).scale(&int(3)));
        assert_eq!(s.variables(), alloc::vec![1]);
    }

    #[test]
    fn mismatched_rings_error() {
        let a = PolyRing::new(["x"]).unwrap();
        let b = PolyRing::new(["y"]).unwrap();
        assert_eq!(a.var(0).try_add(&b.var(0)), Err(Error::RingMismatch));
    }
}
