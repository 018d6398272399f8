//! Coordinate charts of the blow-up along a coordinate subspace.
//!
//! The chart keeps variable positions: a center variable `c` other than the
//! chart variable becomes `new_c·u`, the chart variable itself becomes `u`, and
//! variables outside the center are unchanged. Only names change.

use std::collections::HashSet;
use std::sync::Arc;

use crate::algebra::{GaussianRational, Ideal, Monomial, Poly, VarSpace};
use crate::error::{Error, Result};
use crate::forms::DiffForm;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupChart {
    source: Arc<VarSpace>,
    target: Arc<VarSpace>,
    center: Vec<usize>,
    chart_var: usize,
}

const DEFAULT_NAMES: [&str; 3] = ["t", "s", "v"];

impl BlowupChart {
    /// Chart of the blow-up of `source` along `{c = 0 : c ∈ center}`.
    ///
    /// `chart_var` defaults to the first center variable in the mirror half
    /// of a paired space (e.g. `w1` for center `y1, y2, w1, w2`), otherwise to
    /// the first center variable. `names` renames center variables; the
    /// defaults are `u` for the chart variable and `t, s, v, t2, s2, …` for
    /// the others, in center order.
    pub fn new(
        source: &Arc<VarSpace>,
        center: &[&str],
        chart_var: Option<&str>,
        names: &[(&str, &str)],
    ) -> Result<Self> {
        if center.len() < 2 {
            return Err(Error::Parameter(
                "a blow-up center needs at least two variables".into(),
            ));
        }
        let mut idx = Vec::new();
        for &c in center {
            let k = source
                .index_of(c)
                .ok_or_else(|| Error::Parameter(format!("unknown center variable `{c}`")))?;
            if idx.contains(&k) {
                return Err(Error::Parameter(format!("center variable `{c}` repeated")));
            }
            idx.push(k);
        }
        let chart = match chart_var {
            Some(v) => {
                let k = source
                    .index_of(v)
                    .ok_or_else(|| Error::Parameter(format!("unknown chart variable `{v}`")))?;
                if !idx.contains(&k) {
                    return Err(Error::Parameter(format!(
                        "chart variable `{v}` is not in the center"
                    )));
                }
                k
            }
            None => {
                let m = source.holomorphic_count();
                *idx.iter()
                    .find(|&&k| source.is_paired() && k >= m)
                    .unwrap_or(&idx[0])
            }
        };
        let mut new_names: Vec<String> = source.names().to_vec();
        let mut renamed = HashSet::new();
        for &(old, new) in names {
            let k = source
                .index_of(old)
                .filter(|k| idx.contains(k))
                .ok_or_else(|| Error::Parameter(format!("`{old}` is not a center variable")))?;
            new_names[k] = new.to_string();
            renamed.insert(k);
        }
        if !renamed.contains(&chart) {
            new_names[chart] = "u".to_string();
        }
        let mut defaults = (1..).flat_map(|round: usize| {
            DEFAULT_NAMES.iter().map(move |n| {
                if round == 1 {
                    n.to_string()
                } else {
                    format!("{n}{round}")
                }
            })
        });
        for &k in &idx {
            if k == chart || renamed.contains(&k) {
                continue;
            }
            let name = loop {
                let cand = defaults.next().expect("infinite name supply");
                if !new_names.contains(&cand) {
                    break cand;
                }
            };
            new_names[k] = name;
        }
        let target = VarSpace::plain(&new_names)?;
        Ok(BlowupChart {
            source: source.clone(),
            target,
            center: idx,
            chart_var: chart,
        })
    }

    pub fn source(&self) -> &Arc<VarSpace> {
        &self.source
    }

    pub fn target(&self) -> &Arc<VarSpace> {
        &self.target
    }

    /// Index of the exceptional coordinate `u` (same position as the chart
    /// variable it replaces).
    pub fn exceptional(&self) -> usize {
        self.chart_var
    }

    pub fn center(&self) -> &[usize] {
        &self.center
    }

    /// `old -> image` for every center variable, e.g. `y1 -> t*u`.
    pub fn substitution(&self) -> Vec<(String, String)> {
        let u = self.target.name(self.chart_var);
        self.center
            .iter()
            .map(|&k| {
                let image = if k == self.chart_var {
                    u.to_string()
                } else {
                    format!("{}*{}", self.target.name(k), u)
                };
                (self.source.name(k).to_string(), image)
            })
            .collect()
    }

    fn check_source(&self, space: &Arc<VarSpace>) -> Result<()> {
        if crate::algebra::same_space(space, &self.source) {
            Ok(())
        } else {
            Err(Error::SpaceMismatch {
                left: space.to_string(),
                right: self.source.to_string(),
            })
        }
    }
}

/// `p` with every center variable substituted.
pub fn pullback(chart: &BlowupChart, p: &Poly) -> Result<Poly> {
    chart.check_source(p.space())?;
    let u = chart.chart_var;
    let others: Vec<usize> = chart.center.iter().copied().filter(|&k| k != u).collect();
    Ok(Poly::from_terms(
        &chart.target,
        p.terms().map(|(m, c)| {
            let mut e = m.exponents().to_vec();
            e[u] += others.iter().map(|&k| e[k]).sum::<u32>();
            (Monomial::from_exponents(e), c.clone())
        }),
    ))
}

/// Pulled-back differential of variable `k`: `d(c·u) = u·dc + c·du`.
fn pullback_basis(chart: &BlowupChart, k: usize) -> DiffForm {
    let target = &chart.target;
    let u = chart.chart_var;
    if k == u || !chart.center.contains(&k) {
        return DiffForm::basis(target, k);
    }
    let a = DiffForm::term(&Poly::var(target, u), &[k]);
    let b = DiffForm::term(&Poly::var(target, k), &[u]);
    a.add(&b).expect("same space")
}

/// Pullback of a differential form of any degree.
pub fn pullback_form(chart: &BlowupChart, omega: &DiffForm) -> Result<DiffForm> {
    chart.check_source(omega.space())?;
    let mut out = DiffForm::zero(&chart.target, omega.degree());
    for (indices, c) in omega.terms() {
        let mut term = DiffForm::function(&pullback(chart, c)?);
        for &k in indices {
            term = term.wedge(&pullback_basis(chart, k))?;
        }
        out = out.add(&term)?;
    }
    Ok(out)
}

/// Pullback divided by the largest power `u^m`, scaled to leading
/// coefficient 1; returns the transform and `m`.
pub fn strict_transform(chart: &BlowupChart, p: &Poly) -> Result<(Poly, u32)> {
    if p.is_zero() {
        return Err(Error::DegenerateInput("the zero polynomial".into()));
    }
    let q = pullback(chart, p)?;
    let m = q.var_multiplicity(chart.chart_var);
    let q = q.div_var_power(chart.chart_var, m).expect("u^m divides");
    Ok((q.monic(), m))
}

/// Pullback of a 1-form divided by the largest power of `u` common to all
/// coefficients; returns the transform and that exponent.
pub fn strict_transform_form(chart: &BlowupChart, omega: &DiffForm) -> Result<(DiffForm, u32)> {
    if omega.degree() != 1 {
        return Err(Error::Precondition(format!(
            "expected a 1-form, found degree {}",
            omega.degree()
        )));
    }
    let q = pullback_form(chart, omega)?;
    let u = chart.chart_var;
    let m = q.coefficients().map(|c| c.var_multiplicity(u)).min().unwrap_or(0);
    let out = q.map(|c| c.div_var_power(u, m).expect("u^m divides"));
    Ok((out, m))
}

/// The ideal generated by `f` and every coefficient of `omega`.
pub fn transform_singular_ideal(chart: &BlowupChart, omega: &DiffForm, f: &Poly) -> Result<Ideal> {
    if !crate::algebra::same_space(omega.space(), &chart.target)
        || !crate::algebra::same_space(f.space(), &chart.target)
    {
        return Err(Error::SpaceMismatch {
            left: f.space().to_string(),
            right: chart.target.to_string(),
        });
    }
    let mut gens = vec![f.clone()];
    gens.extend(omega.coefficients().cloned());
    Ideal::new(&chart.target, gens)
}

/// `H₁ = π*H / u^k`; errors with the actual multiplicity when `u^k` does not
/// divide the pullback.
pub fn divided_pullback(chart: &BlowupChart, h: &Poly, k: u32) -> Result<Poly> {
    let q = pullback(chart, h)?;
    if q.is_zero() {
        return Ok(q);
    }
    let m = q.var_multiplicity(chart.chart_var);
    if m < k {
        return Err(Error::Multiplicity {
            var: chart.target.name(chart.chart_var).to_string(),
            expected: k,
            actual: m,
        });
    }
    Ok(q.div_var_power(chart.chart_var, k).expect("u^k divides"))
}

/// Substitutes polynomials (in the chart space) for some chart variables.
pub fn substitute(p: &Poly, assignment: &[(usize, Poly)]) -> Poly {
    let space = p.space();
    let mut out = Poly::zero(space);
    for (m, c) in p.terms() {
        let mut term = Poly::constant(space, c.clone());
        let mut rest = m.exponents().to_vec();
        for (k, value) in assignment {
            let e = rest[*k];
            if e > 0 {
                term = &term * &value.pow(e);
                rest[*k] = 0;
            }
        }
        term = term.mul_term(&Monomial::from_exponents(rest), &GaussianRational::from_integer(1));
        out = &out + &term;
    }
    out
}
