//! Buchberger's algorithm with the coprime and chain criteria, returning the
//! reduced basis.

use std::collections::BTreeSet;


use super::coeff::GaussianRational;
use super::division::{sorted_terms, sub_scaled_tail, SortedTerms};
use super::ideal::Ideal;
use super::monomial::{GrevLexOrd, LexOrd, Monomial, MonomialOrder, TermOrder};
use super::poly::Poly;
use super::Limits;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ideal: Ideal,
    basis: Vec<Poly>,
    order: MonomialOrder,
}

impl GroebnerBasis {
    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    /// Reduced basis, sorted by ascending leading monomial.
    pub fn basis(&self) -> &[Poly] {
        &self.basis
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis
            .iter()
            .map(|g| g.leading_term(self.order).expect("nonzero").0.clone())
            .collect()
    }

    /// True when the basis is `{1}`.
    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant()
    }

    /// Normal form of `f` with respect to the basis.
    pub fn reduce(&self, f: &Poly) -> Result<Poly> {
        let (_, r) = super::division::poly_divmod(f, &self.basis, self.order)?;
        Ok(r)
    }

    pub fn contains(&self, f: &Poly) -> Result<bool> {
        Ok(self.reduce(f)?.is_zero())
    }
}

struct Element {
    terms: SortedTerms,
}

impl Element {
    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }
}

fn make_monic(mut t: SortedTerms) -> SortedTerms {
    let inv = t[0].1.inv().expect("nonzero leading coefficient");
    if !t[0].1.is_one() {
        for (_, c) in t.iter_mut() {
            *c = &*c * &inv;
        }
    }
    t
}

fn reduce_full<O: TermOrder>(
    terms: &SortedTerms,
    basis: &[Element],
    skip: Option<usize>,
    limits: &Limits,
) -> Result<SortedTerms> {
    let mut p = super::division::WorkPoly::<O>::new();
    for (m, c) in terms {
        p.insert(super::monomial::Keyed::new(m.clone()), c.clone());
    }
    let mut rem: SortedTerms = Vec::new();
    while let Some((lm, lc)) = p.pop_last() {
        let hit = basis
            .iter()
            .enumerate()
            .find(|(i, b)| Some(*i) != skip && b.lm().divides(&lm.0));
        match hit {
            Some((_, b)) => {
                let t = lm.0.div(b.lm()).expect("divides");
                // basis elements are monic
                sub_scaled_tail(&mut p, &b.terms, &t, &lc);
            }
            None => rem.push((lm.0, lc)),
        }
        if p.len() > limits.max_terms {
            return Err(Error::ResourceLimit(format!(
                "intermediate polynomial exceeds {} terms",
                limits.max_terms
            )));
        }
    }
    Ok(rem)
}

fn s_poly<O: TermOrder>(a: &Element, b: &Element) -> SortedTerms {
    let l = a.lm().lcm(b.lm());
    let ta = l.div(a.lm()).expect("lcm");
    let tb = l.div(b.lm()).expect("lcm");
    let mut p = super::division::WorkPoly::<O>::new();
    for (m, c) in a.terms.iter().skip(1) {
        p.insert(super::monomial::Keyed::new(m.mul(&ta)), c.clone());
    }
    sub_scaled_tail(&mut p, &b.terms, &tb, &GaussianRational::from_integer(1));
    let mut out: SortedTerms = p.into_iter().map(|(k, c)| (k.0, c)).collect();
    out.reverse();
    out
}

fn buchberger_with<O: TermOrder>(gens: &[Poly], limits: &Limits) -> Result<Vec<SortedTerms>> {
    let mut basis: Vec<Element> = Vec::new();
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();

    fn add(terms: SortedTerms, basis: &mut Vec<Element>, pairs: &mut BTreeSet<(usize, usize)>) {
        let idx = basis.len();
        for j in 0..idx {
            pairs.insert((j, idx));
        }
        basis.push(Element {
            terms: make_monic(terms),
        });
    }

    for g in gens {
        let t = sorted_terms::<O>(g);
        let r = reduce_full::<O>(&t, &basis, None, limits)?;
        if !r.is_empty() {
            add(r, &mut basis, &mut pairs);
        }
    }

    while !pairs.is_empty() {
        // normal selection strategy: smallest lcm first
        let &(i, j) = pairs
            .iter()
            .min_by(|a, b| {
                let la = basis[a.0].lm().lcm(basis[a.1].lm());
                let lb = basis[b.0].lm().lcm(basis[b.1].lm());
                O::compare(&la, &lb).then(a.cmp(b))
            })
            .expect("nonempty");
        pairs.remove(&(i, j));

        if basis[i].lm().is_coprime(basis[j].lm()) {
            continue;
        }
        let l = basis[i].lm().lcm(basis[j].lm());
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lm().divides(&l)
                && !pairs.contains(&(i.min(k), i.max(k)))
                && !pairs.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }

        let s = s_poly::<O>(&basis[i], &basis[j]);
        if s.is_empty() {
            continue;
        }
        let r = reduce_full::<O>(&s, &basis, None, limits)?;
        if r.is_empty() {
            continue;
        }
        let total: usize = basis.iter().map(|e| e.terms.len()).sum::<usize>() + r.len();
        if total > limits.max_terms {
            return Err(Error::ResourceLimit(format!(
                "Gröbner basis exceeds {} terms",
                limits.max_terms
            )));
        }
        let is_unit = r.len() == 1 && r[0].0.is_one();
        add(r, &mut basis, &mut pairs);
        if is_unit {
            let one = basis.pop().expect("just pushed");
            return Ok(vec![one.terms]);
        }
    }

    // minimize: drop elements whose leading monomial is divisible by another's
    let mut keep: Vec<bool> = vec![true; basis.len()];
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            if i != j
                && keep[j]
                && basis[j].lm().divides(basis[i].lm())
                && (basis[j].lm() != basis[i].lm() || j < i)
            {
                keep[i] = false;
                break;
            }
        }
    }
    let mut minimal: Vec<Element> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(e, k)| k.then_some(e))
        .collect();

    // inter-reduce tails
    for i in 0..minimal.len() {
        let reduced = reduce_full::<O>(&minimal[i].terms, &minimal, Some(i), limits)?;
        minimal[i].terms = make_monic(reduced);
    }
    minimal.sort_by(|a, b| O::compare(a.lm(), b.lm()));
    Ok(minimal.into_iter().map(|e| e.terms).collect())
}

/// Reduced Gröbner basis of `ideal` under its own monomial order.
pub fn buchberger(ideal: &Ideal) -> Result<GroebnerBasis> {
    buchberger_limited(ideal, &Limits::default())
}

pub fn buchberger_limited(ideal: &Ideal, limits: &Limits) -> Result<GroebnerBasis> {
    let gens = ideal.generators();
    let raw = match ideal.order() {
        MonomialOrder::GrevLex => buchberger_with::<GrevLexOrd>(gens, limits)?,
        MonomialOrder::Lex => buchberger_with::<LexOrd>(gens, limits)?,
    };
    let space = ideal.space();
    let basis = raw
        .into_iter()
        .map(|t| Poly::from_terms(space, t))
        .filter(|p| !p.is_zero())
        .collect();
    Ok(GroebnerBasis {
        ideal: ideal.clone(),
        basis,
        order: ideal.order(),
    })
}

/// Every pairwise S-polynomial reduces to zero (the Gröbner criterion).
pub fn is_groebner(basis: &[Poly], order: MonomialOrder) -> Result<bool> {
    for (i, a) in basis.iter().enumerate() {
        for b in &basis[i + 1..] {
            let (la, ca) = a.leading_term(order).expect("nonzero");
            let (lb, cb) = b.leading_term(order).expect("nonzero");
            let l = la.lcm(lb);
            let s = &a.mul_term(&l.div(la).unwrap(), &ca.inv().unwrap())
                - &b.mul_term(&l.div(lb).unwrap(), &cb.inv().unwrap());
            let (_, r) = super::division::poly_divmod(&s, basis, order)?;
            if !r.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
