//! Multivariate division with remainder.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::coeff::GaussianRational;
use super::monomial::{GrevLexOrd, Keyed, LexOrd, Monomial, MonomialOrder, TermOrder};
use super::poly::Poly;
use super::space::ensure_same;
use crate::error::{Error, Result};

/// Terms sorted in descending `O` order, leading term first.
pub(crate) type SortedTerms = Vec<(Monomial, GaussianRational)>;

pub(crate) fn sorted_terms<O: TermOrder>(p: &Poly) -> SortedTerms {
    let mut t: SortedTerms = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
    t.sort_by(|a, b| O::compare(&b.0, &a.0));
    t
}

pub(crate) type WorkPoly<O> = BTreeMap<Keyed<O>, GaussianRational>;

pub(crate) fn to_work<O: TermOrder>(p: &Poly) -> WorkPoly<O> {
    p.terms()
        .map(|(m, c)| (Keyed::new(m.clone()), c.clone()))
        .collect()
}

/// `p -= c · t · d`, skipping the leading term of `d` (which the caller has
/// already cancelled).
pub(crate) fn sub_scaled_tail<O: TermOrder>(
    p: &mut WorkPoly<O>,
    d: &SortedTerms,
    t: &Monomial,
    c: &GaussianRational,
) {
    for (m, a) in d.iter().skip(1) {
        let key = Keyed::new(m.mul(t));
        let delta = c * a;
        match p.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(-delta);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() -= &delta;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }
}

fn divmod_with<O: TermOrder>(f: &Poly, divisors: &[Poly]) -> (Vec<Poly>, Poly) {
    let space = f.space();
    let divs: Vec<SortedTerms> = divisors.iter().map(sorted_terms::<O>).collect();
    let lead_inv: Vec<GaussianRational> = divs
        .iter()
        .map(|d| d[0].1.inv().expect("divisor leading coefficient is nonzero"))
        .collect();
    let mut quotients = vec![Poly::zero(space); divisors.len()];
    let mut remainder = Poly::zero(space);
    let mut p = to_work::<O>(f);
    while let Some((lm, lc)) = p.pop_last() {
        let hit = divs.iter().position(|d| d[0].0.divides(&lm.0));
        match hit {
            Some(i) => {
                let t = lm.0.div(&divs[i][0].0).expect("divides");
                let c = &lc * &lead_inv[i];
                sub_scaled_tail(&mut p, &divs[i], &t, &c);
                quotients[i].add_term(t, c);
            }
            None => remainder.add_term(lm.0, lc),
        }
    }
    (quotients, remainder)
}

/// Divides `f` by `divisors`: `f = Σ qᵢ·dᵢ + r`, no term of `r` divisible by
/// any leading term of a divisor.
pub fn poly_divmod(
    f: &Poly,
    divisors: &[Poly],
    order: MonomialOrder,
) -> Result<(Vec<Poly>, Poly)> {
    for d in divisors {
        ensure_same(f.space(), d.space())?;
        if d.is_zero() {
            return Err(Error::ZeroDivisor);
        }
    }
    Ok(match order {
        MonomialOrder::GrevLex => divmod_with::<GrevLexOrd>(f, divisors),
        MonomialOrder::Lex => divmod_with::<LexOrd>(f, divisors),
    })
}

/// Exact quotient `f / g`, or `None` when `g` does not divide `f`.
pub fn exact_quotient(f: &Poly, g: &Poly) -> Result<Option<Poly>> {
    let (mut q, r) = poly_divmod(f, std::slice::from_ref(g), MonomialOrder::GrevLex)?;
    Ok(if r.is_zero() { q.pop() } else { None })
}
