use alloc::collections::btree_map::Entry;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::{One, Zero};

use super::poly::{Monomial, MonomialOrder, MultiPoly, PolyRing};
use super::Rational;
use crate::error::{Error, Result};

type Terms = Vec<(Monomial, Rational)>;

/// Polynomial as terms sorted ascending, so the leading term is last.
#[derive(Clone, Debug)]
struct Work {
    terms: Terms,
    /// [`mask`] of the leading monomial.
    lm_mask: u64,
}

impl Work {
    fn new(terms: Terms) -> Work {
        let lm_mask = terms.last().map_or(0, |(m, _)| mask(m));
        Work { terms, lm_mask }
    }

    fn from_poly(p: &MultiPoly, order: MonomialOrder) -> Work {
        let mut terms: Terms = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&a.0, &b.0));
        Work::new(terms)
    }

    fn lm(&self) -> &Monomial {
        &self.terms.last().expect("nonzero polynomial").0
    }

    fn lc(&self) -> &Rational {
        &self.terms.last().expect("nonzero polynomial").1
    }

    fn make_monic(&mut self) {
        let inv = self.lc().recip();
        if !inv.is_one() {
            for t in &mut self.terms {
                t.1 *= &inv;
            }
        }
    }

    fn to_poly(&self, ring: &PolyRing) -> MultiPoly {
        MultiPoly::from_parts(ring.clone(), self.terms.iter().cloned().collect())
    }
}

/// Monomial ordered by a runtime monomial order, for ordered containers.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Keyed {
    m: Monomial,
    order: MonomialOrder,
}

impl Ord for Keyed {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order.cmp(&self.m, &other.m)
    }
}

impl PartialOrd for Keyed {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial under reduction; only the terms a step touches are visited.
struct Accum {
    terms: BTreeMap<Keyed, Rational>,
    order: MonomialOrder,
}

impl Accum {
    fn new(terms: Terms, order: MonomialOrder) -> Self {
        Accum { terms: terms.into_iter().map(|(m, c)| (Keyed { m, order }, c)).collect(), order }
    }

    /// `self -= c * m * g`, skipping the leading term of `g` when `skip_lead`.
    fn sub_mul(&mut self, c: &Rational, m: &Monomial, g: &Work, skip_lead: bool) {
        let n = g.terms.len() - usize::from(skip_lead);
        for (gm, gc) in &g.terms[..n] {
            let key = Keyed { m: gm.mul(m), order: self.order };
            let delta = gc * c;
            match self.terms.entry(key) {
                Entry::Vacant(e) => {
                    e.insert(-delta);
                }
                Entry::Occupied(mut e) => {
                    *e.get_mut() -= delta;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
            }
        }
    }
}

/// Full reduction of `p` by `basis`. Each top reduction cancels the leading
/// term exactly, so it is dropped rather than recomputed.
fn normal_form(p: Terms, basis: &[Work], order: MonomialOrder) -> Terms {
    reduce_accum(Accum::new(p, order), basis)
}

fn reduce_accum(mut acc: Accum, basis: &[Work]) -> Terms {
    let mut rem: Terms = Vec::new();
    while let Some((Keyed { m: lm, .. }, lc)) = acc.terms.pop_last() {
        let mm = mask(&lm);
        match basis.iter().find(|g| g.lm_mask & !mm == 0 && g.lm().divides(&lm)) {
            Some(g) => {
                let m = lm.div(g.lm()).expect("divisible");
                let c = &lc / g.lc();
                acc.sub_mul(&c, &m, g, true);
            }
            None => rem.push((lm, lc)),
        }
    }
    rem.reverse();
    rem
}

/// Normal form of the S-polynomial of monic `f` and `g`.
fn s_poly_nf(f: &Work, g: &Work, lcm: &Monomial, basis: &[Work], order: MonomialOrder) -> Terms {
    let mf = lcm.div(f.lm()).expect("lcm");
    let mg = lcm.div(g.lm()).expect("lcm");
    let n = f.terms.len() - 1;
    let scaled: Terms = f.terms[..n].iter().map(|(m, c)| (m.mul(&mf), c / f.lc())).collect();
    let mut acc = Accum::new(scaled, order);
    acc.sub_mul(&g.lc().recip(), &mg, g, true);
    reduce_accum(acc, basis)
}

fn check_rings<'a>(ring: &PolyRing, polys: impl IntoIterator<Item = &'a MultiPoly>) -> Result<()> {
    for p in polys {
        if p.ring() != ring {
            return Err(Error::RingMismatch);
        }
    }
    Ok(())
}

/// Normal form of `p` by repeated top reduction against `basis` (tried in
/// the given order). Every term of the result is irreducible.
pub fn poly_reduce(p: &MultiPoly, basis: &[MultiPoly], order: MonomialOrder) -> Result<MultiPoly> {
    check_rings(p.ring(), basis)?;
    let work: Vec<Work> = basis.iter().filter(|b| !b.is_zero()).map(|b| Work::from_poly(b, order)).collect();
    let r = normal_form(Work::from_poly(p, order).terms, &work, order);
    Ok(Work::new(r).to_poly(p.ring()))
}

/// Reduced Gröbner basis: monic, inter-reduced, sorted by leading monomial
/// from largest to smallest.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: PolyRing,
    order: MonomialOrder,
    generators: Vec<MultiPoly>,
    work: Vec<Work>,
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.order == other.order && self.generators == other.generators
    }
}

impl Eq for GroebnerBasis {}

impl GroebnerBasis {
    fn from_work(ring: &PolyRing, order: MonomialOrder, mut work: Vec<Work>) -> Self {
        work.sort_by(|a, b| order.cmp(b.lm(), a.lm()));
        let generators = work.iter().map(|w| w.to_poly(ring)).collect();
        GroebnerBasis { ring: ring.clone(), order, generators, work }
    }

    fn unit(ring: &PolyRing, order: MonomialOrder) -> Self {
        let one = Work::new(alloc::vec![(Monomial::one(ring.nvars()), Rational::one())]);
        Self::from_work(ring, order, alloc::vec![one])
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// True iff the ideal is the whole ring (basis `{1}`).
    pub fn is_unit(&self) -> bool {
        self.work.len() == 1 && self.work[0].lm().is_one()
    }

    pub fn leading_monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.work.iter().map(Work::lm)
    }

    pub fn reduce(&self, p: &MultiPoly) -> Result<MultiPoly> {
        if p.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        let r = normal_form(Work::from_poly(p, self.order).terms, &self.work, self.order);
        Ok(Work::new(r).to_poly(&self.ring))
    }

    pub fn contains(&self, p: &MultiPoly) -> Result<bool> {
        Ok(self.reduce(p)?.is_zero())
    }

    /// Variables that occur in no leading monomial.
    pub fn free_vars(&self) -> Vec<usize> {
        (0..self.ring.nvars())
            .filter(|&i| self.work.iter().all(|w| w.lm().exponents()[i] == 0))
            .collect()
    }

    pub fn free_var_names(&self) -> Vec<String> {
        self.free_vars().into_iter().map(|i| self.ring.vars()[i].clone()).collect()
    }

    /// Finite quotient: every variable has a pure power among the leading
    /// monomials. The unit ideal counts as zero-dimensional.
    pub fn is_zero_dimensional(&self) -> bool {
        if self.is_unit() {
            return true;
        }
        (0..self.ring.nvars()).all(|i| self.work.iter().any(|w| w.lm().single_var() == Some(i)))
    }

    /// True iff every generator vanishes at the point.
    pub fn vanishes_at(&self, point: &[Rational]) -> Result<bool> {
        for g in &self.generators {
            if !g.eval(point)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Bit `i mod 64` set when variable `i` occurs; a necessary condition for
/// divisibility that is cheap to test.
fn mask(m: &Monomial) -> u64 {
    m.exponents().iter().enumerate().fold(0, |acc, (i, &e)| if e > 0 { acc | 1 << (i % 64) } else { acc })
}

type Queue = BTreeSet<(u32, Keyed, usize, usize)>;

/// Pair bookkeeping with the Gebauer-Möller criteria.
struct Pairs {
    queue: Queue,
    active: Vec<bool>,
    order: MonomialOrder,
}

impl Pairs {
    /// Registers `basis[h]`: drops pairs it makes redundant and adds the
    /// surviving pairs `(k, h)` for active `k`.
    fn update(&mut self, basis: &[Work], h: usize) {
        let lh = basis[h].lm();
        let mut cands: Vec<(usize, Monomial)> =
            (0..h).filter(|&k| self.active[k]).map(|k| (k, basis[k].lm().lcm(lh))).collect();
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        while let Some((k, l)) = cands.pop() {
            let coprime = basis[k].lm().is_coprime(lh);
            if coprime || !cands.iter().chain(&kept).any(|(_, l2)| l2.divides(&l)) {
                kept.push((k, l));
            }
        }
        let order = self.order;
        self.queue.retain(|(_, Keyed { m: l, .. }, i, j)| {
            !(lh.divides(l) && &basis[*i].lm().lcm(lh) != l && &basis[*j].lm().lcm(lh) != l)
        });
        for (k, l) in kept {
            if !basis[k].lm().is_coprime(lh) {
                self.queue.insert((l.degree(), Keyed { m: l, order }, k, h));
            }
        }
        for (active, w) in self.active.iter_mut().zip(basis) {
            if *active && lh.divides(w.lm()) {
                *active = false;
            }
        }
        self.active.push(true);
    }
}

/// Buchberger's algorithm with the normal selection strategy and the
/// Gebauer-Möller criteria. Empty input gives the zero ideal.
pub fn buchberger(ring: &PolyRing, gens: &[MultiPoly], order: MonomialOrder) -> Result<GroebnerBasis> {
    check_rings(ring, gens)?;
    let mut basis: Vec<Work> = Vec::new();
    let mut pairs = Pairs { queue: Queue::new(), active: Vec::new(), order };
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let mut w = Work::from_poly(g, order);
        w.make_monic();
        if w.lm().is_one() {
            return Ok(GroebnerBasis::unit(ring, order));
        }
        basis.push(w);
        pairs.update(&basis, basis.len() - 1);
    }
    while let Some((_, Keyed { m: lcm, .. }, i, j)) = pairs.queue.pop_first() {
        let r = s_poly_nf(&basis[i], &basis[j], &lcm, &basis, order);
        if r.is_empty() {
            continue;
        }
        let mut w = Work::new(r);
        w.make_monic();
        if w.lm().is_one() {
            return Ok(GroebnerBasis::unit(ring, order));
        }
        basis.push(w);
        pairs.update(&basis, basis.len() - 1);
    }
    let active: Vec<Work> = basis.into_iter().zip(pairs.active).filter(|(_, a)| *a).map(|(w, _)| w).collect();
    Ok(GroebnerBasis::from_work(ring, order, reduce_basis(active, order)))
}

fn reduce_basis(basis: Vec<Work>, order: MonomialOrder) -> Vec<Work> {
    let n = basis.len();
    let keep: Vec<bool> = (0..n)
        .map(|i| {
            !(0..n).any(|j| {
                j != i && basis[j].lm().divides(basis[i].lm()) && (basis[j].lm() != basis[i].lm() || j < i)
            })
        })
        .collect();
    let minimal: Vec<Work> = basis.into_iter().zip(keep).filter(|(_, k)| *k).map(|(w, _)| w).collect();
    // No leading monomial divides another, so only tails need reducing and
    // a tail term is never divisible by its own leading monomial.
    let mut out = Vec::with_capacity(minimal.len());
    for w in &minimal {
        let (lead, tail) = w.terms.split_last().expect("nonzero polynomial");
        let mut terms = normal_form(tail.to_vec(), &minimal, order);
        terms.push(lead.clone());
        let mut w = Work::new(terms);
        w.make_monic();
        out.push(w);
    }
    out
}

/// Equality of reduced bases; both must use the same ring and order.
pub fn ideal_equal(a: &GroebnerBasis, b: &GroebnerBasis) -> Result<bool> {
    if a.order != b.order {
        return Err(Error::OrderMismatch);
    }
    if a.ring != b.ring {
        return Err(Error::RingMismatch);
    }
    Ok(a.generators == b.generators)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use alloc::format;

    fn ring(vars: &[&str]) -> PolyRing {
        PolyRing::new(vars.iter().copied()).unwrap()
    }

    fn parse(r: &PolyRing, terms: &[(&str, i64)]) -> MultiPoly {
        let mut p = r.zero();
        for (m, c) in terms {
            p = &p + &r.term(r.parse_monomial(m).unwrap(), int(*c));
        }
        p
    }

    #[test]
    fn reduce_examples() {
        let r = ring(&["x", "y"]);
        let x = r.var(0);
        let y = r.var(1);
        let o = MonomialOrder::GrevLex;
        assert!(poly_reduce(&x.pow(2), core::slice::from_ref(&x), o).unwrap().is_zero());
        assert_eq!(poly_reduce(&(&x.pow(2) + &y), core::slice::from_ref(&x), o).unwrap(), y);
        let a = ring(&["a11", "a12"]);
        let p = &a.var(0).pow(2) + &(&a.var(0) * &a.var(1));
        assert!(poly_reduce(&p, &[a.var(0)], o).unwrap().is_zero());
    }

    #[test]
    fn buchberger_examples() {
        let r = ring(&["x", "y"]);
        let x = r.var(0);
        let y = r.var(1);
        let o = MonomialOrder::GrevLex;
        let gb = buchberger(&r, &[&x + &y, &x - &y], o).unwrap();
        assert_eq!(gb.generators(), &[x.clone(), y.clone()]);
        let gb = buchberger(&r, &[&x.pow(2) - &x, x.clone()], o).unwrap();
        assert_eq!(gb.generators(), core::slice::from_ref(&x));
        let gb = buchberger(&r, &[], o).unwrap();
        assert!(gb.is_empty() && !gb.is_unit());
        let gb = buchberger(&r, &[&x - &r.one(), x.clone()], o).unwrap();
        assert!(gb.is_unit());
    }

    #[test]
    fn one_dim_system_has_trivial_radical() {
        // α² = −α²−αβ = −β²−αβ = β² as differences against the first member
        let r = ring(&["a", "b"]);
        let sys = [
            parse(&r, &[("a^2", 2), ("a*b", 1)]),
            parse(&r, &[("a^2", 1), ("a*b", 1), ("b^2", 1)]),
            parse(&r, &[("a^2", 1), ("b^2", -1)]),
        ];
        let gb = buchberger(&r, &sys, MonomialOrder::GrevLex).unwrap();
        assert!(!gb.is_unit());
        assert!(gb.contains(&r.var(0).pow(3)).unwrap());
        assert!(gb.contains(&r.var(1).pow(3)).unwrap());
        assert!(!gb.contains(&r.var(0)).unwrap());
        for s in &sys {
            assert!(gb.contains(s).unwrap());
        }
    }

    #[test]
    fn cyclic3_known_basis() {
        let r = ring(&["x", "y", "z"]);
        let (x, y, z) = (r.var(0), r.var(1), r.var(2));
        let f1 = &(&x + &y) + &z;
        let f2 = &(&(&x * &y) + &(&y * &z)) + &(&z * &x);
        let f3 = &(&(&x * &y) * &z) - &r.one();
        let gb = buchberger(&r, &[f1, f2, f3], MonomialOrder::Lex).unwrap();
        let shown: Vec<String> = gb.generators().iter().map(|g| format!("{g}")).collect();
        assert_eq!(shown, ["x + y + z", "y^2 + y*z + z^2", "z^3 - 1"]);
    }

    #[test]
    fn ideal_equal_checks_order() {
        let r = ring(&["x"]);
        let a = buchberger(&r, &[r.var(0)], MonomialOrder::GrevLex).unwrap();
        let b = buchberger(&r, &[r.var(0).pow(2)], MonomialOrder::GrevLex).unwrap();
        let c = buchberger(&r, &[r.var(0)], MonomialOrder::Lex).unwrap();
        assert!(ideal_equal(&a, &a).unwrap());
        assert!(!ideal_equal(&a, &b).unwrap());
        assert_eq!(ideal_equal(&a, &c), Err(Error::OrderMismatch));
        assert_eq!(a.reduce(&r.var(0).scale(&rat(1, 3))).unwrap(), r.zero());
    }
}
