use std::cmp::Ordering;
use std::marker::PhantomData;

use serde::{Deserialize, Serialize};

/// Dense exponent vector aligned with a [`VarSpace`](super::VarSpace).
///
/// `Ord` is graded reverse lexicographic; it is the storage order of
/// [`Poly`](super::Poly) terms.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, idx: usize, exp: u32) -> Self {
        let mut e = vec![0; nvars];
        e[idx] = exp;
        Monomial(e)
    }

    pub fn from_exponents(e: Vec<u32>) -> Self {
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, idx: usize) -> u32 {
        self.0[idx]
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Indices with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub(crate) fn exponents_mut(&mut self) -> &mut Vec<u32> {
        &mut self.0
    }
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

fn lex(a: &[u32], b: &[u32]) -> Ordering {
    a.cmp(b)
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        grevlex(&self.0, &other.0)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Monomial order tag.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    #[default]
    GrevLex,
    Lex,
}

impl MonomialOrder {
    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::GrevLex => grevlex(&a.0, &b.0),
            MonomialOrder::Lex => lex(&a.0, &b.0),
        }
    }
}

/// Compile-time monomial order, used by the generic reduction engine.
pub(crate) trait TermOrder: Clone + Copy + Default + 'static {
    fn compare(a: &Monomial, b: &Monomial) -> Ordering;
}

#[derive(Clone, Copy, Default, Debug)]
pub(crate) struct GrevLexOrd;

#[derive(Clone, Copy, Default, Debug)]
pub(crate) struct LexOrd;

impl TermOrder for GrevLexOrd {
    fn compare(a: &Monomial, b: &Monomial) -> Ordering {
        grevlex(&a.0, &b.0)
    }
}

impl TermOrder for LexOrd {
    fn compare(a: &Monomial, b: &Monomial) -> Ordering {
        lex(&a.0, &b.0)
    }
}

/// A monomial ordered by `O`.
#[derive(Clone, Debug)]
pub(crate) struct Keyed<O: TermOrder>(pub Monomial, PhantomData<O>);

impl<O: TermOrder> Keyed<O> {
    pub fn new(m: Monomial) -> Self {
        Keyed(m, PhantomData)
    }
}

impl<O: TermOrder> PartialEq for Keyed<O> {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl<O: TermOrder> Eq for Keyed<O> {}

impl<O: TermOrder> Ord for Keyed<O> {
    fn cmp(&self, other: &Self) -> Ordering {
        O::compare(&self.0, &other.0)
    }
}

impl<O: TermOrder> PartialOrd for Keyed<O> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    #[test]
    fn grevlex_breaks_ties_on_last_variable() {
        // x^2 > x*y > y^2 > x*z in grevlex with x > y > z
        let o = MonomialOrder::GrevLex;
        assert_eq!(o.cmp(&m(&[2, 0, 0]), &m(&[1, 1, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 2, 0]), &m(&[1, 0, 1])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 0, 3]), &m(&[2, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn lex_is_plain_lexicographic() {
        let o = MonomialOrder::Lex;
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
    }

    #[test]
    fn divisibility() {
        assert!(m(&[1, 1]).divides(&m(&[2, 1])));
        assert_eq!(m(&[2, 1]).div(&m(&[1, 1])), Some(m(&[1, 0])));
        assert_eq!(m(&[0, 1]).div(&m(&[1, 0])), None);
        assert_eq!(m(&[2, 0]).lcm(&m(&[1, 3])), m(&[2, 3]));
    }
}
