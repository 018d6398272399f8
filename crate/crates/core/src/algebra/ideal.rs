use std::sync::Arc;

use super::groebner::{buchberger, GroebnerBasis};
use super::monomial::{Monomial, MonomialOrder};
use super::poly::Poly;
use super::space::{ensure_same, VarSpace};
use crate::error::{Error, Result};

/// A finitely generated polynomial ideal.
#[derive(Clone, Debug)]
pub struct Ideal {
    space: Arc<VarSpace>,
    generators: Vec<Poly>,
    order: MonomialOrder,
}

impl Ideal {
    /// Zero generators are dropped; at least one nonzero generator must remain.
    pub fn new(space: &Arc<VarSpace>, generators: Vec<Poly>) -> Result<Self> {
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            ensure_same(space, g.space())?;
            if !g.is_zero() {
                gens.push(g);
            }
        }
        if gens.is_empty() {
            return Err(Error::EmptyIdeal);
        }
        Ok(Ideal {
            space: space.clone(),
            generators: gens,
            order: MonomialOrder::GrevLex,
        })
    }

    pub fn with_order(mut self, order: MonomialOrder) -> Self {
        self.order = order;
        self
    }

    pub fn space(&self) -> &Arc<VarSpace> {
        &self.space
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// `self + other`.
    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        ensure_same(&self.space, &other.space)?;
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ok(Ideal::new(&self.space, gens)?.with_order(self.order))
    }

    pub fn with_generators(&self, extra: impl IntoIterator<Item = Poly>) -> Result<Ideal> {
        let mut gens = self.generators.clone();
        gens.extend(extra);
        Ok(Ideal::new(&self.space, gens)?.with_order(self.order))
    }

    pub fn groebner(&self) -> Result<GroebnerBasis> {
        buchberger(self)
    }

    pub fn contains(&self, f: &Poly) -> Result<bool> {
        ideal_member(f, self)
    }

    pub fn dimension(&self) -> Result<usize> {
        ideal_dimension(self)
    }

    /// Every generator of `other` lies in `self`.
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        ensure_same(&self.space, &other.space)?;
        let gb = self.groebner()?;
        for g in other.generators() {
            if !gb.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `f ∈ ideal`, decided by reduction against the reduced Gröbner basis.
pub fn ideal_member(f: &Poly, ideal: &Ideal) -> Result<bool> {
    ensure_same(f.space(), ideal.space())?;
    ideal.groebner()?.contains(f)
}

/// Krull dimension of the zero set: the largest set of variables `S` such that
/// no leading monomial of the Gröbner basis involves only variables of `S`.
pub fn ideal_dimension(ideal: &Ideal) -> Result<usize> {
    let gb = ideal.groebner()?;
    if gb.is_unit() {
        return Err(Error::EmptyVariety);
    }
    Ok(dimension_of_initial(&gb.leading_monomials(), ideal.space().len()))
}

/// Dimension of the monomial ideal generated by `leading`: `nvars` minus the
/// smallest set of variables meeting every support.
pub fn dimension_of_initial(leading: &[Monomial], nvars: usize) -> usize {
    let supports: Vec<u64> = leading
        .iter()
        .map(|m| m.support().fold(0u64, |acc, i| acc | (1 << i)))
        .collect();
    assert!(nvars <= 64, "dimension search supports at most 64 variables");
    let mut best = usize::MAX;
    min_cover(&supports, 0, 0, &mut best);
    nvars - best
}

fn min_cover(edges: &[u64], chosen: u64, size: usize, best: &mut usize) {
    if size >= *best {
        return;
    }
    match edges.iter().find(|&&e| e & chosen == 0) {
        None => *best = size,
        Some(&e) => {
            let mut rest = e;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                rest &= rest - 1;
                min_cover(edges, chosen | bit, size + 1, best);
            }
        }
    }
}
