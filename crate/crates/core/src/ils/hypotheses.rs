//! Checks whether `F = Re(P) + H` satisfies the hypotheses under which a
//! Levi-flat `{F = 0}` is equivalent to the model `{Re(P) = 0}`.

use std::fmt;

use super::classify::{classify_exact, Classification};
use super::catalog::NormalForm;
use super::Germ;
use crate::algebra::{same_space, GaussianRational, Poly, VarSpace};
use crate::error::{Error, Result};
use crate::hermitian::{re_part, HermitianPoly};
use crate::leviflat::is_levi_flat;

/// Which normal-form statement covers the input.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum NormalFormTheorem {
    /// Any table row with `n ≥ 3`.
    A,
    /// `A∞` with `n = 2`.
    B,
    /// Neither statement covers this row and dimension.
    NotApplicable,
}

impl fmt::Display for NormalFormTheorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormalFormTheorem::A => write!(f, "Theorem A"),
            NormalFormTheorem::B => write!(f, "Theorem B"),
            NormalFormTheorem::NotApplicable => write!(f, "none"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypothesisReport {
    pub classification: Classification,
    /// `H = F − Re(P)`.
    pub h: Poly,
    /// `H(x, 0, x̄, 0)`.
    pub h_on_line: Poly,
    /// `H(x, 0, x̄, 0) ≡ 0`.
    pub vanishes_on_line: bool,
    /// Total degree of `P`, used as the jet order.
    pub jet_order: u32,
    /// Lowest total degree among the terms of `H`, `None` when `H = 0`.
    pub h_low_degree: Option<u32>,
    /// Every term of `H` has degree above `jet_order`.
    pub jet_vanishes: bool,
    /// `P` is not homogeneous, so "degree" is read as total degree.
    pub degree_ambiguous: bool,
    pub levi_flat: bool,
    pub theorem: NormalFormTheorem,
}

impl HypothesisReport {
    pub fn all_hold(&self) -> bool {
        self.vanishes_on_line && self.jet_vanishes && self.levi_flat
    }

    /// The certified conclusion when every hypothesis holds and a statement
    /// applies.
    pub fn conclusion(&self) -> Option<String> {
        (self.all_hold() && self.theorem != NormalFormTheorem::NotApplicable)
            .then(|| "φ(M) = {Re(P) = 0}".to_string())
    }
}

/// Splits `F` as `Re(P) + H` and checks `H(x,0) ≡ 0`, `j^k H = 0` for
/// `k = deg P`, and Levi-flatness of `F`.
pub fn check_theorem_a_hypotheses(f: &HermitianPoly, p: &Germ) -> Result<HypothesisReport> {
    let classification = classify_exact(p).ok_or_else(|| {
        Error::NotInCatalog(format!("{p} is not a table germ up to permutation and scaling"))
    })?;
    let n = p.n();
    let space = VarSpace::germ_hermitian(n);
    if !same_space(f.space(), &space) {
        return Err(Error::SpaceMismatch {
            left: f.space().to_string(),
            right: space.to_string(),
        });
    }
    let re_p = re_part(p.poly())?;
    let h = f.poly().checked_sub(re_p.poly())?;
    let zero = GaussianRational::from_integer(0);
    let off_line: Vec<(usize, GaussianRational)> = (0..space.len())
        .filter(|&k| k != 0 && k != n + 1)
        .map(|k| (k, zero.clone()))
        .collect();
    let h_on_line = h.partial_eval(&off_line);
    let jet_order = p.poly().total_degree().unwrap_or(0);
    let h_low_degree = h.low_degree();
    let levi_flat = is_levi_flat(f)?.is_levi_flat;
    let theorem = match (classification.form, n) {
        (_, n) if n >= 3 => NormalFormTheorem::A,
        (NormalForm::AInf, 2) => NormalFormTheorem::B,
        _ => NormalFormTheorem::NotApplicable,
    };
    Ok(HypothesisReport {
        classification,
        vanishes_on_line: h_on_line.is_zero(),
        h_on_line,
        jet_order,
        jet_vanishes: h_low_degree.is_none_or(|d| d > jet_order),
        h_low_degree,
        degree_ambiguous: !p.poly().is_homogeneous(),
        levi_flat,
        theorem,
        h,
    })
}
