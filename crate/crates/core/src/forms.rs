//! Exterior forms with polynomial coefficients and the Wirtinger operators.
//!
//! A form is a map from strictly increasing tuples of variable indices to
//! coefficients, so `c·dv_i∧dv_j` with `i < j` is stored under `[i, j]`.
//! Conjugated (or mirror) variables count as antiholomorphic: `∂` differentiates
//! the first half of a paired space, `∂̄` the second half.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::{same_space, GaussianRational, Poly, SpaceKind, VarSpace};
use crate::error::{Error, Result};
use crate::hermitian::{complexify, re_part, ComplexifiedPoly, HermitianPoly};

#[derive(Clone, Debug)]
pub struct DiffForm {
    space: Arc<VarSpace>,
    degree: usize,
    terms: BTreeMap<Vec<usize>, Poly>,
}

impl PartialEq for DiffForm {
    fn eq(&self, other: &Self) -> bool {
        same_space(&self.space, &other.space)
            && self.degree == other.degree
            && self.terms == other.terms
    }
}

impl Eq for DiffForm {}

/// Sign of the permutation sorting `v`, or `None` when an index repeats.
fn sort_sign(v: &mut [usize]) -> Option<bool> {
    let mut negative = false;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            negative = !negative;
            j -= 1;
        }
        if j > 0 && v[j - 1] == v[j] {
            return None;
        }
    }
    Some(negative)
}

impl DiffForm {
    pub fn zero(space: &Arc<VarSpace>, degree: usize) -> Self {
        DiffForm {
            space: space.clone(),
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// The 0-form `f`.
    pub fn function(f: &Poly) -> Self {
        let mut out = Self::zero(f.space(), 0);
        out.add_term(Vec::new(), f.clone());
        out
    }

    /// `dv` for variable `idx`.
    pub fn basis(space: &Arc<VarSpace>, idx: usize) -> Self {
        let mut out = Self::zero(space, 1);
        out.add_term(vec![idx], Poly::one(space));
        out
    }

    /// `c·dv_{i1}∧…∧dv_{ik}` for arbitrary (unsorted) indices.
    pub fn term(c: &Poly, indices: &[usize]) -> Self {
        let mut out = Self::zero(c.space(), indices.len());
        let mut idx = indices.to_vec();
        if let Some(neg) = sort_sign(&mut idx) {
            out.add_term(idx, if neg { -c } else { c.clone() });
        }
        out
    }

    pub fn space(&self) -> &Arc<VarSpace> {
        &self.space
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero coefficients keyed by sorted index tuples.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Poly)> {
        self.terms.iter()
    }

    pub fn coefficients(&self) -> impl Iterator<Item = &Poly> {
        self.terms.values()
    }

    pub fn coefficient(&self, indices: &[usize]) -> Poly {
        self.terms
            .get(indices)
            .cloned()
            .unwrap_or_else(|| Poly::zero(&self.space))
    }

    fn add_term(&mut self, key: Vec<usize>, c: Poly) {
        debug_assert_eq!(key.len(), self.degree);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn check(&self, other: &DiffForm) -> Result<()> {
        if !same_space(&self.space, &other.space) {
            return Err(Error::SpaceMismatch {
                left: self.space.to_string(),
                right: other.space.to_string(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &DiffForm) -> Result<DiffForm> {
        self.check(other)?;
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::Precondition(format!(
                "cannot add forms of degrees {} and {}",
                self.degree, other.degree
            )));
        }
        let mut out = if self.is_zero() { other.clone() } else { self.clone() };
        let rest = if self.is_zero() { self } else { other };
        for (k, c) in &rest.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &DiffForm) -> Result<DiffForm> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> DiffForm {
        self.map(|c| -c)
    }

    /// Multiplies every coefficient by a constant.
    pub fn scale(&self, c: &GaussianRational) -> DiffForm {
        self.map(|p| p.scale(c))
    }

    /// Multiplies every coefficient by a function.
    pub fn mul_poly(&self, f: &Poly) -> Result<DiffForm> {
        let mut out = Self::zero(&self.space, self.degree);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), c.checked_mul(f)?);
        }
        Ok(out)
    }

    /// Applies `f` to every coefficient, keeping the basis tuples.
    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> DiffForm {
        let mut out = Self::zero(&self.space, self.degree);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), f(c));
        }
        out
    }

    /// Exterior product; degrees add and `a∧b = (−1)^{|a||b|} b∧a`.
    pub fn wedge(&self, other: &DiffForm) -> Result<DiffForm> {
        self.check(other)?;
        let mut out = Self::zero(&self.space, self.degree + other.degree);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let mut idx: Vec<usize> = ka.iter().chain(kb).copied().collect();
                if let Some(neg) = sort_sign(&mut idx) {
                    let c = ca * cb;
                    out.add_term(idx, if neg { -&c } else { c });
                }
            }
        }
        Ok(out)
    }

    fn differential(&self, which: Part) -> DiffForm {
        let mut out = Self::zero(&self.space, self.degree + 1);
        for (k, c) in &self.terms {
            for v in which.variables(&self.space) {
                if k.contains(&v) {
                    continue;
                }
                let dc = c.derivative(v);
                if dc.is_zero() {
                    continue;
                }
                let mut idx = vec![v];
                idx.extend(k);
                let neg = sort_sign(&mut idx).expect("v is not in k");
                out.add_term(idx, if neg { -&dc } else { dc });
            }
        }
        out
    }

    /// `∂ω`: derivatives in the holomorphic variables only.
    pub fn d_holo(&self) -> DiffForm {
        self.differential(Part::Holomorphic)
    }

    /// `∂̄ω`: derivatives in the conjugated variables only.
    pub fn d_anti(&self) -> DiffForm {
        self.differential(Part::Anti)
    }

    /// `dω = ∂ω + ∂̄ω`.
    pub fn d(&self) -> DiffForm {
        self.differential(Part::All)
    }
}

#[derive(Clone, Copy)]
enum Part {
    Holomorphic,
    Anti,
    All,
}

impl Part {
    fn variables(self, space: &VarSpace) -> impl Iterator<Item = usize> + '_ {
        (0..space.len()).filter(move |&k| match self {
            Part::Holomorphic => !space.is_conjugate(k),
            Part::Anti => space.is_conjugate(k),
            Part::All => true,
        })
    }
}

/// `∂F`.
pub fn d_holo(f: &Poly) -> DiffForm {
    DiffForm::function(f).d_holo()
}

/// `∂̄F`.
pub fn d_anti(f: &Poly) -> DiffForm {
    DiffForm::function(f).d_anti()
}

/// `dF`.
pub fn d_full(f: &Poly) -> DiffForm {
    DiffForm::function(f).d()
}

pub fn wedge(a: &DiffForm, b: &DiffForm) -> Result<DiffForm> {
    a.wedge(b)
}

/// The Levi 1-form `η = i(∂F − ∂̄F)`.
pub fn levi_form(f: &HermitianPoly) -> DiffForm {
    let p = f.poly();
    d_holo(p)
        .sub(&d_anti(p))
        .expect("same space")
        .scale(&GaussianRational::i())
}

/// `η_C = i[(∂_x + ∂_y)F_C − (∂_z + ∂_w)F_C]`.
pub fn eta_c(fc: &ComplexifiedPoly) -> DiffForm {
    let p = fc.poly();
    d_holo(p)
        .sub(&d_anti(p))
        .expect("same space")
        .scale(&GaussianRational::i())
}

/// A decomposition `F = Re(P) + H` with `P` holomorphic.
#[derive(Clone, Debug)]
pub struct Split {
    /// Holomorphic head, in plain or Hermitian coordinates.
    pub p: Poly,
    /// Remainder, in Hermitian or complexified coordinates.
    pub h: Poly,
}

impl Split {
    /// `H = F − Re(P)`.
    pub fn from_head(f: &HermitianPoly, p: &Poly) -> Result<Split> {
        let re = re_part(p)?;
        let h = f.poly().checked_sub(re.poly())?;
        Ok(Split { p: p.clone(), h })
    }

    /// `½P(x,y) + ½P̄(z,w)` and `H_C` in the space of `fc`, checking that they
    /// add up to `fc`.
    pub fn complexified_parts(&self, fc: &ComplexifiedPoly) -> Result<(Poly, Poly)> {
        let head = complexify(&re_part(&self.p)?).poly().clone();
        let space = fc.space();
        let head = if same_space(head.space(), space) {
            head
        } else {
            return Err(Error::InconsistentSplit(format!(
                "head lives in [{}], expected [{}]",
                head.space(),
                space
            )));
        };
        let hc = match self.h.space().kind() {
            SpaceKind::Complexified => self.h.clone(),
            _ => {
                let s = self.h.space().with_kind(SpaceKind::Complexified);
                if !same_space(&s, space) {
                    return Err(Error::InconsistentSplit(format!(
                        "remainder lives in [{}], expected [{}]",
                        self.h.space(),
                        space
                    )));
                }
                let map: Vec<Option<usize>> = (0..self.h.space().len()).map(Some).collect();
                self.h.reindex(space, &map)?
            }
        };
        let residual = fc.poly().checked_sub(&head)?.checked_sub(&hc)?;
        if !residual.is_zero() {
            return Err(Error::InconsistentSplit(residual.to_string()));
        }
        Ok((head, hc))
    }
}

/// `dF_C = α + β` with `α = ∂F_C` and `β = ∂̄F_C`; with a split, `θ₁ = ∂H_C`
/// and `θ₂ = ∂̄H_C` are the remainder contributions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaBeta {
    pub alpha: DiffForm,
    pub beta: DiffForm,
    pub theta1: Option<DiffForm>,
    pub theta2: Option<DiffForm>,
}

pub fn alpha_beta(fc: &ComplexifiedPoly, split: Option<&Split>) -> Result<AlphaBeta> {
    let p = fc.poly();
    let (theta1, theta2) = match split {
        Some(s) => {
            let (_, hc) = s.complexified_parts(fc)?;
            (Some(d_holo(&hc)), Some(d_anti(&hc)))
        }
        None => (None, None),
    };
    Ok(AlphaBeta {
        alpha: d_holo(p),
        beta: d_anti(p),
        theta1,
        theta2,
    })
}

impl fmt::Display for DiffForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (k, c)) in self.terms.iter().enumerate() {
            let basis: Vec<String> = k
                .iter()
                .map(|&v| format!("d{}", self.space.name(v)))
                .collect();
            let basis = basis.join("∧");
            let text = c.to_string();
            let (neg, body) = if c.len() == 1 {
                match text.strip_prefix('-') {
                    Some(rest) => (true, rest.to_string()),
                    None => (false, text),
                }
            } else {
                (false, format!("({text})"))
            };
            let piece = match (basis.is_empty(), body.as_str()) {
                (true, _) => body.clone(),
                (false, "1") => basis,
                (false, _) => format!("{body}*{basis}"),
            };
            match (n, neg) {
                (0, false) => {}
                (0, true) => f.write_str("-")?,
                (_, false) => f.write_str(" + ")?,
                (_, true) => f.write_str(" - ")?,
            }
            f.write_str(&piece)?;
        }
        Ok(())
    }
}
