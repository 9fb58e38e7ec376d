//! Dense univariate polynomials over ℚ, coefficients in ascending degree.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Rational;

pub fn trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub fn degree(p: &[Rational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn derivative(p: &[Rational]) -> Vec<Rational> {
    let mut d: Vec<Rational> = p.iter().enumerate().skip(1).map(|(i, c)| c * Rational::from_integer(BigInt::from(i))).collect();
    trim(&mut d);
    d
}

pub fn eval(p: &[Rational], x: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

/// Quotient and remainder. Panics on a zero divisor.
pub fn divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let db = degree(b).expect("division by zero polynomial");
    let mut r: Vec<Rational> = a.to_vec();
    trim(&mut r);
    let mut q = alloc::vec![Rational::zero(); r.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = &r[dr] / &b[db];
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate().take(db + 1) {
            r[i + shift] -= &c * bc;
        }
        q[shift] = c;
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub fn monic(p: &[Rational]) -> Vec<Rational> {
    match degree(p) {
        Some(d) => {
            let inv = p[d].recip();
            p[..=d].iter().map(|c| c * &inv).collect()
        }
        None => Vec::new(),
    }
}

/// Monic gcd; gcd(0, 0) = 0.
pub fn gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while degree(&y).is_some() {
        let (_, r) = divrem(&x, &y);
        x = y;
        y = r;
    }
    monic(&x)
}

/// Product of the distinct irreducible factors, monic.
pub fn squarefree_part(p: &[Rational]) -> Vec<Rational> {
    let g = gcd(p, &derivative(p));
    if degree(&g).unwrap_or(0) == 0 {
        return monic(p);
    }
    monic(&divrem(p, &g).0)
}

/// Distinct rational roots in increasing order. Candidates come from the
/// rational root theorem; integers with more than `DIVISOR_LIMIT` are
/// skipped, in which case roots may be missed.
pub fn rational_roots(p: &[Rational]) -> Vec<Rational> {
    let mut p = squarefree_part(p);
    let mut roots = Vec::new();
    if degree(&p).unwrap_or(0) == 0 {
        return roots;
    }
    if p[0].is_zero() {
        roots.push(Rational::zero());
        p.remove(0);
    }
    // clear denominators
    let lcm = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let (Some(a0), Some(an)) = (ints.first(), ints.last()) else {
        return roots;
    };
    if let (Some(ps), Some(qs)) = (divisors(a0), divisors(an)) {
        let mut cands: Vec<Rational> = Vec::new();
        for pd in &ps {
            for qd in &qs {
                let r = Rational::new(pd.clone(), qd.clone());
                cands.push(r.clone());
                cands.push(-r);
            }
        }
        cands.sort();
        cands.dedup();
        for c in cands {
            if eval(&p, &c).is_zero() {
                roots.push(c);
            }
        }
    }
    roots.sort();
    roots
}

const DIVISOR_LIMIT: u64 = 1_000_000_000_000;

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64().filter(|&n| n <= DIVISOR_LIMIT)?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}
