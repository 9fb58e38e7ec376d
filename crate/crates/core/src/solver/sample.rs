use alloc::vec::Vec;

use crate::arith::univariate::rational_roots;
use crate::arith::{buchberger, GroebnerBasis, MonomialOrder, MultiPoly, PolyRing, Rational};
use crate::error::Result;

/// Values tried for unconstrained variables.
pub const DEFAULT_GRID: [i64; 5] = [0, 1, -1, 2, -2];

/// Lex bases computed per sampling call at most.
const GB_BUDGET: usize = 2000;

struct Walk<'a> {
    ring: &'a PolyRing,
    grid: &'a [Rational],
    limit: usize,
    budget: usize,
    assigned: Vec<Option<Rational>>,
    out: Vec<Vec<Rational>>,
}

pub(super) fn sample(basis: &GroebnerBasis, grid: &[Rational], limit: usize) -> Result<Vec<Vec<Rational>>> {
    let ring = basis.ring();
    let mut w = Walk { ring, grid, limit, budget: GB_BUDGET, assigned: alloc::vec![None; ring.nvars()], out: Vec::new() };
    w.step(basis.generators().to_vec())?;
    Ok(w.out)
}

impl Walk<'_> {
    /// Assigns the last free variable, which is the smallest in lex order, so
    /// constraints on it alone appear as univariate basis elements.
    fn step(&mut self, gens: Vec<MultiPoly>) -> Result<()> {
        if self.out.len() >= self.limit || self.budget == 0 {
            return Ok(());
        }
        self.budget -= 1;
        let gb = buchberger(self.ring, &gens, MonomialOrder::Lex)?;
        if gb.is_unit() {
            return Ok(());
        }
        let Some(v) = (0..self.assigned.len()).rev().find(|&i| self.assigned[i].is_none()) else {
            self.out.push(self.assigned.iter().map(|a| a.clone().expect("every variable assigned")).collect());
            return Ok(());
        };
        let uni = gb.generators().iter().find_map(|g| g.univariate_coeffs(v).filter(|c| c.len() > 1));
        let candidates = match uni {
            Some(c) => rational_roots(&c),
            None => self.grid.to_vec(),
        };
        for c in candidates {
            let next: Vec<MultiPoly> = gb.generators().iter().map(|g| g.substitute(v, &c)).filter(|g| !g.is_zero()).collect();
            self.assigned[v] = Some(c);
            self.step(next)?;
            self.assigned[v] = None;
            if self.out.len() >= self.limit || self.budget == 0 {
                break;
            }
        }
        Ok(())
    }
}
