//! Checks every table row in parallel: Levi-flatness of `Re P` and of the
//! quadrics, the dimension of the singular set, finiteness of `c` and the
//! classification round trip.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::VarSpace;
use crate::error::Result;
use crate::expr::parse_in;
use crate::hermitian::{make_hermitian, re_part};
use crate::ils::{build_normal_form, build_quadric, classify_exact, codim_c, IlsConfig, NormalForm, Quadric};
use crate::leviflat::{is_levi_flat, sing_ideal};

/// Expected singular-set dimension (complexified) for a line singularity.
pub const LINE_SING_DIMENSION: usize = 2;

/// The non-Levi-flat control `|z1|² + |z2|²`.
pub const CONTROL: &str = "z1*~z1 + z2*~z2";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GermCheck {
    pub name: String,
    pub spec: String,
    pub n: usize,
    pub levi_flat: bool,
    pub sing_dimension: Option<usize>,
    pub c_value: Option<usize>,
    pub round_trip: bool,
    pub elapsed_ms: u128,
}

impl GermCheck {
    pub fn passed(&self) -> bool {
        self.levi_flat
            && self.sing_dimension == Some(LINE_SING_DIMENSION)
            && self.c_value.is_some()
            && self.round_trip
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadricCheck {
    pub name: String,
    pub n: usize,
    pub polynomial: String,
    pub singular_set: String,
    pub levi_flat: bool,
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ControlCheck {
    pub polynomial: String,
    pub levi_flat: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogSweep {
    pub germs: Vec<GermCheck>,
    pub quadrics: Vec<QuadricCheck>,
    pub control: ControlCheck,
}

impl CatalogSweep {
    /// Every row passes and the control is rejected.
    pub fn passed(&self) -> bool {
        self.germs.iter().all(GermCheck::passed)
            && self.quadrics.iter().all(|q| q.levi_flat)
            && !self.control.levi_flat
    }
}

pub fn check_germ(form: NormalForm, n: usize, config: &IlsConfig) -> Result<GermCheck> {
    let start = Instant::now();
    let p = build_normal_form(form, n)?;
    let re = re_part(p.poly())?;
    let levi_flat = is_levi_flat(&re)?.is_levi_flat;
    let sing_dimension = sing_ideal(&re)?.dimension().ok();
    let c_value = codim_c(&p, config)?.c_value;
    let round_trip = classify_exact(&p).is_some_and(|c| c.form == form && c.n == n);
    Ok(GermCheck {
        name: form.to_string(),
        spec: form.spec(),
        n,
        levi_flat,
        sing_dimension,
        c_value,
        round_trip,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

pub fn check_quadric(q: &Quadric, n: usize) -> Result<QuadricCheck> {
    let start = Instant::now();
    let e = build_quadric(q, n)?;
    let levi_flat = is_levi_flat(&e.poly)?.is_levi_flat;
    Ok(QuadricCheck {
        name: q.to_string(),
        n,
        polynomial: e.poly.to_string(),
        singular_set: e.singular_set.to_string(),
        levi_flat,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

pub fn check_control() -> Result<ControlCheck> {
    let f = make_hermitian(&parse_in(CONTROL, &VarSpace::quadric_hermitian(2))?)?;
    let r = is_levi_flat(&f)?;
    Ok(ControlCheck {
        polynomial: f.to_string(),
        levi_flat: r.is_levi_flat,
        witness: r.witness.map(|w| format!("{} {}: remainder {}", w.basis.join("∧"), w.coefficient, w.remainder)),
    })
}

/// All nine table rows at their smallest parameters and the five quadrics,
/// in dimension `n` (at least 3).
pub fn sweep(n: usize, config: &IlsConfig) -> Result<CatalogSweep> {
    let germs = NormalForm::SMALLEST
        .par_iter()
        .map(|&f| check_germ(f, n, config))
        .collect::<Result<Vec<_>>>()?;
    let quadrics = Quadric::all_defaults()
        .par_iter()
        .map(|q| check_quadric(q, n))
        .collect::<Result<Vec<_>>>()?;
    Ok(CatalogSweep {
        germs,
        quadrics,
        control: check_control()?,
    })
}
