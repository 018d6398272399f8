//! Linear algebra in the Artinian truncation `R / m^N`.

use std::collections::HashMap;

use num_traits::Zero;

use super::coeff::GaussianRational;
use super::ideal::Ideal;
use super::monomial::Monomial;
use super::space::ensure_same;
use super::Limits;
use crate::error::{Error, Result};

type SparseRow = Vec<(usize, GaussianRational)>;

/// Row echelon form built one row at a time. Pivot rows are normalized to a
/// leading coefficient of one.
#[derive(Default)]
pub(crate) struct SparseEchelon {
    pivots: HashMap<usize, SparseRow>,
}

impl SparseEchelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Returns true when the row was independent of the rows already present.
    pub fn insert(&mut self, mut row: SparseRow) -> bool {
        loop {
            let Some((lead, c)) = row.first().cloned() else {
                return false;
            };
            match self.pivots.get(&lead) {
                Some(p) => row = sub_scaled(&row, &c, p),
                None => {
                    let inv = c.inv().expect("nonzero entry");
                    for (_, v) in row.iter_mut() {
                        *v = &*v * &inv;
                    }
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
    }
}

/// `a - c·b` where both rows share the same leading column.
fn sub_scaled(a: &SparseRow, c: &GaussianRational, b: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (1, 1);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map(|t| t.0);
        let cb = b.get(j).map(|t| t.0);
        match (ca, cb) {
            (Some(x), Some(y)) if x == y => {
                let v = &a[i].1 - &(c * &b[j].1);
                if !v.is_zero() {
                    out.push((x, v));
                }
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => {
                out.push((x, a[i].1.clone()));
                i += 1;
            }
            (Some(_), None) => {
                out.push(a[i].clone());
                i += 1;
            }
            (_, Some(y)) => {
                out.push((y, -(c * &b[j].1)));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// All exponent vectors in `nvars` variables with total degree `< bound`,
/// ordered by ascending degree.
pub fn monomials_below(nvars: usize, bound: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for d in 0..bound {
        let mut cur = vec![0u32; nvars];
        push_degree(&mut out, &mut cur, 0, d);
    }
    out
}

fn push_degree(out: &mut Vec<Monomial>, cur: &mut Vec<u32>, pos: usize, left: u32) {
    if cur.is_empty() {
        if left == 0 {
            out.push(Monomial::from_exponents(Vec::new()));
        }
        return;
    }
    if pos + 1 == cur.len() {
        cur[pos] = left;
        out.push(Monomial::from_exponents(cur.clone()));
        cur[pos] = 0;
        return;
    }
    for e in (0..=left).rev() {
        cur[pos] = e;
        push_degree(out, cur, pos + 1, left - e);
    }
    cur[pos] = 0;
}

struct Truncation {
    columns: HashMap<Monomial, usize>,
    multipliers: Vec<Monomial>,
    bound: u32,
}

impl Truncation {
    fn new(nvars: usize, bound: u32, limits: &Limits) -> Result<Self> {
        if bound > limits.max_degree {
            return Err(Error::ResourceLimit(format!(
                "degree bound {bound} exceeds the cap {}",
                limits.max_degree
            )));
        }
        let multipliers = monomials_below(nvars, bound);
        if multipliers.len() > limits.max_terms {
            return Err(Error::ResourceLimit(format!(
                "{} monomials below degree {bound} exceed the term cap {}",
                multipliers.len(),
                limits.max_terms
            )));
        }
        let columns = multipliers
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        Ok(Truncation {
            columns,
            multipliers,
            bound,
        })
    }

    /// Feeds the image of `ideal` in `R / m^N` into `echelon`.
    fn insert_ideal(&self, ideal: &Ideal, echelon: &mut SparseEchelon) {
        for g in ideal.generators() {
            let low = g.low_degree().expect("generators are nonzero");
            if low >= self.bound {
                continue;
            }
            for m in &self.multipliers {
                if m.degree() + low >= self.bound {
                    // multipliers are sorted by degree
                    break;
                }
                let mut row: SparseRow = g
                    .terms()
                    .filter_map(|(t, c)| {
                        let tm = t.mul(m);
                        self.columns.get(&tm).map(|&col| (col, c.clone()))
                    })
                    .collect();
                row.sort_by_key(|e| e.0);
                echelon.insert(row);
            }
        }
    }
}

/// `dim (numerator + m^N) / (denominator + m^N)` over the Gaussian rationals.
pub fn truncated_quotient_dim(
    numerator: &Ideal,
    denominator: &Ideal,
    degree_bound: u32,
) -> Result<usize> {
    truncated_quotient_dim_limited(numerator, denominator, degree_bound, &Limits::default())
}

pub fn truncated_quotient_dim_limited(
    numerator: &Ideal,
    denominator: &Ideal,
    degree_bound: u32,
    limits: &Limits,
) -> Result<usize> {
    ensure_same(numerator.space(), denominator.space())?;
    if degree_bound == 0 {
        return Err(Error::Precondition("degree bound must be at least 1".into()));
    }
    let trunc = Truncation::new(numerator.space().len(), degree_bound, limits)?;
    let mut echelon = SparseEchelon::default();
    trunc.insert_ideal(denominator, &mut echelon);
    let den_rank = echelon.rank();
    trunc.insert_ideal(numerator, &mut echelon);
    Ok(echelon.rank() - den_rank)
}

/// `d_N` for every `N` in `1..=max_bound` from a single elimination.
///
/// Columns are ordered by ascending degree and pivots are the lowest-degree
/// entries, so the image of the row space in `R / m^N` has exactly the pivots
/// of degree `< N` as a basis.
pub fn truncated_quotient_dims(
    numerator: &Ideal,
    denominator: &Ideal,
    max_bound: u32,
    limits: &Limits,
) -> Result<Vec<usize>> {
    ensure_same(numerator.space(), denominator.space())?;
    if max_bound == 0 {
        return Err(Error::Precondition("degree bound must be at least 1".into()));
    }
    let trunc = Truncation::new(numerator.space().len(), max_bound, limits)?;
    let degree_of = |col: usize| trunc.multipliers[col].degree() as usize;
    let bound = max_bound as usize;
    let mut echelon = SparseEchelon::default();
    trunc.insert_ideal(denominator, &mut echelon);
    let mut den_count = vec![0usize; bound];
    for col in echelon.pivot_columns() {
        den_count[degree_of(col)] += 1;
    }
    trunc.insert_ideal(numerator, &mut echelon);
    let mut all_count = vec![0usize; bound];
    for col in echelon.pivot_columns() {
        all_count[degree_of(col)] += 1;
    }
    let mut out = Vec::with_capacity(bound);
    let (mut den_sum, mut all_sum) = (0, 0);
    for d in 0..bound {
        den_sum += den_count[d];
        all_sum += all_count[d];
        out.push(all_sum - den_sum);
    }
    Ok(out)
}
