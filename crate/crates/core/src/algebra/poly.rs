use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::coeff::GaussianRational;
use super::monomial::{Monomial, MonomialOrder};
use super::space::{ensure_same, same_space, VarSpace};
use crate::error::{Error, Result};

/// Sparse multivariate polynomial over the Gaussian rationals.
///
/// Arithmetic operators panic when the operands live in different spaces; the
/// fallible entry points of the crate check spaces up front and report
/// [`Error::SpaceMismatch`].
#[derive(Clone, Debug)]
pub struct Poly {
    space: Arc<VarSpace>,
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        same_space(&self.space, &other.space) && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl Poly {
    pub fn zero(space: &Arc<VarSpace>) -> Self {
        Poly {
            space: space.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(space: &Arc<VarSpace>) -> Self {
        Self::constant(space, GaussianRational::one())
    }

    pub fn constant(space: &Arc<VarSpace>, c: GaussianRational) -> Self {
        let mut p = Self::zero(space);
        p.add_term(Monomial::one(space.len()), c);
        p
    }

    pub fn var(space: &Arc<VarSpace>, idx: usize) -> Self {
        Self::monomial(space, Monomial::var(space.len(), idx, 1), GaussianRational::one())
    }

    pub fn var_named(space: &Arc<VarSpace>, name: &str) -> Result<Self> {
        let idx = space.index_of(name).ok_or_else(|| Error::UndeclaredVariable {
            line: 0,
            column: 0,
            name: name.to_string(),
        })?;
        Ok(Self::var(space, idx))
    }

    pub fn monomial(space: &Arc<VarSpace>, m: Monomial, c: GaussianRational) -> Self {
        let mut p = Self::zero(space);
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I>(space: &Arc<VarSpace>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, GaussianRational)>,
    {
        let mut p = Self::zero(space);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn space(&self) -> &Arc<VarSpace> {
        &self.space
    }

    pub fn nvars(&self) -> usize {
        self.space.len()
    }

    /// Terms in ascending graded-reverse-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn coefficient(&self, m: &Monomial) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn constant_term(&self) -> GaussianRational {
        self.coefficient(&Monomial::one(self.nvars()))
    }

    /// Highest total degree of a term, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Lowest total degree of a term (the order at the origin).
    pub fn low_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.total_degree() == self.low_degree()
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &GaussianRational)> {
        match order {
            MonomialOrder::GrevLex => self.terms.iter().next_back(),
            MonomialOrder::Lex => self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0)),
        }
    }

    pub fn uses_var(&self, idx: usize) -> bool {
        self.terms.keys().any(|m| m.exponent(idx) > 0)
    }

    /// Smallest exponent of `idx` over all terms (0 for the zero polynomial).
    pub fn var_multiplicity(&self, idx: usize) -> u32 {
        self.terms.keys().map(|m| m.exponent(idx)).min().unwrap_or(0)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.nvars(), self.space.len());
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.space);
        }
        Poly {
            space: self.space.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &GaussianRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.space);
        }
        Poly {
            space: self.space.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(&self.space);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Divides by the leading coefficient (graded reverse lex).
    pub fn monic(&self) -> Poly {
        match self.leading_term(MonomialOrder::GrevLex) {
            Some((_, c)) => self.scale(&c.inv().expect("nonzero")),
            None => self.clone(),
        }
    }

    pub fn derivative(&self, idx: usize) -> Poly {
        let mut out = Poly::zero(&self.space);
        for (m, c) in &self.terms {
            let e = m.exponent(idx);
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.exponents_mut()[idx] = e - 1;
            out.add_term(dm, c * &GaussianRational::from_integer(e as i64));
        }
        out
    }

    pub fn evaluate(&self, point: &[GaussianRational]) -> Result<GaussianRational> {
        if point.len() != self.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.nvars(),
                found: point.len(),
            });
        }
        let mut acc = GaussianRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = &t * &point[i].pow(e);
                }
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Substitutes constants for some variables; the space is unchanged.
    pub fn partial_eval(&self, assignment: &[(usize, GaussianRational)]) -> Poly {
        let mut out = Poly::zero(&self.space);
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            let mut c2 = c.clone();
            for (idx, val) in assignment {
                let e = m.exponent(*idx);
                if e > 0 {
                    c2 = &c2 * &val.pow(e);
                    m2.exponents_mut()[*idx] = 0;
                }
            }
            out.add_term(m2, c2);
        }
        out
    }

    /// Moves the polynomial into `target`, sending variable `k` to `map[k]`.
    /// Variables mapped to `None` must not occur.
    pub fn reindex(&self, target: &Arc<VarSpace>, map: &[Option<usize>]) -> Result<Poly> {
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.len()];
            for (k, &ek) in m.exponents().iter().enumerate() {
                if ek == 0 {
                    continue;
                }
                match map.get(k).copied().flatten() {
                    Some(j) => e[j] += ek,
                    None => {
                        return Err(Error::Precondition(format!(
                            "variable `{}` has no image in [{}]",
                            self.space.name(k),
                            target
                        )))
                    }
                }
            }
            out.add_term(Monomial::from_exponents(e), c.clone());
        }
        Ok(out)
    }

    /// Same exponent layout, different space (used by complexification).
    pub(crate) fn with_space(&self, space: &Arc<VarSpace>) -> Poly {
        debug_assert_eq!(space.len(), self.space.len());
        Poly {
            space: space.clone(),
            terms: self.terms.clone(),
        }
    }

    /// Swaps every variable with its partner and conjugates the coefficients.
    pub fn mirror(&self) -> Result<Poly> {
        let n = self.nvars();
        let mut out = Poly::zero(&self.space);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; n];
            for (k, &ek) in m.exponents().iter().enumerate() {
                if ek == 0 {
                    continue;
                }
                let p = self.space.partner(k).ok_or_else(|| {
                    Error::Precondition(format!(
                        "variable `{}` has no conjugate partner",
                        self.space.name(k)
                    ))
                })?;
                e[p] += ek;
            }
            out.add_term(Monomial::from_exponents(e), c.conj());
        }
        Ok(out)
    }

    pub fn map_coefficients(&self, f: impl Fn(&GaussianRational) -> GaussianRational) -> Poly {
        let mut out = Poly::zero(&self.space);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Divides every term by `var^k`, if possible.
    pub fn div_var_power(&self, var: usize, k: u32) -> Option<Poly> {
        let mut out = Poly::zero(&self.space);
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e < k {
                return None;
            }
            let mut m2 = m.clone();
            m2.exponents_mut()[var] = e - k;
            out.add_term(m2, c.clone());
        }
        Some(out)
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        ensure_same(&self.space, &other.space)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        ensure_same(&self.space, &other.space)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        ensure_same(&self.space, &other.space)?;
        Ok(self * other)
    }
}

fn assert_same(a: &Poly, b: &Poly) {
    assert!(
        same_space(&a.space, &b.space),
        "polynomials live in different spaces: [{}] vs [{}]",
        a.space,
        b.space
    );
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        assert_same(self, rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        assert_same(self, rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        assert_same(self, rhs);
        let mut out = Poly::zero(&self.space);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.map_coefficients(|c| -c)
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::expr::print_poly(self))
    }
}
