//! Exact recognition of table germs up to permutations of `y` and diagonal
//! scalings.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use super::catalog::{build_normal_form, NormalForm};
use super::{in_i2, Germ};
use crate::algebra::{rational_root, GaussianRational, Monomial, Poly};

/// A match `c·f(b·x, a_1·y_{π(1)}, …) = P` against a table row `P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub form: NormalForm,
    pub n: usize,
    /// `permutation[j-1] = π(j)`: `y_j` of the input becomes `y_{π(j)}`.
    pub permutation: Vec<usize>,
    pub x_scale: GaussianRational,
    pub y_scales: Vec<GaussianRational>,
    pub factor: GaussianRational,
}

impl Classification {
    /// Human-readable substitution, e.g. `x -> x, y1 -> 2*y2, y2 -> y1`.
    pub fn description(&self) -> String {
        fn scaled(c: &GaussianRational, v: &str) -> String {
            if c.is_one() {
                v.to_string()
            } else if c.is_real() {
                format!("{c}*{v}")
            } else {
                format!("({c})*{v}")
            }
        }
        let mut parts = vec![format!("x -> {}", scaled(&self.x_scale, "x"))];
        for (j, (&p, a)) in self.permutation.iter().zip(&self.y_scales).enumerate() {
            parts.push(format!("y{} -> {}", j + 1, scaled(a, &format!("y{p}"))));
        }
        let mut s = parts.join(", ");
        if !self.factor.is_one() {
            s.push_str(&format!(", times {}", self.factor));
        }
        s
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (n={}) via {}", self.form, self.n, self.description())
    }
}

/// Rows whose support could match a germ of total degree `d` in `n` variables.
fn candidates(n: usize, d: u32) -> Vec<NormalForm> {
    let mut out = vec![NormalForm::AInf, NormalForm::DInf];
    out.extend((2..=d).map(|k| NormalForm::J { k }));
    out.extend((4..=d).map(|k| NormalForm::TK2 { k }));
    out.extend((1..=d).map(|k| NormalForm::Z { k }));
    out.push(NormalForm::W1);
    for r in 3..=d {
        out.extend((r..=d).map(|q| NormalForm::TQR { q, r }));
    }
    out.extend((2..=d).map(|k| NormalForm::Q { k }));
    out.push(NormalForm::S1);
    out.retain(|f| n >= f.min_n());
    out
}

fn column(support: &[Vec<u32>], j: usize) -> Vec<(u32, u32)> {
    let mut c: Vec<(u32, u32)> = support.iter().map(|e| (e[j], e[0])).collect();
    c.sort_unstable();
    c
}

/// All `π` (as `perm[j] = π(j)`, index 0 fixed) mapping `src` onto `dst`.
fn matching_permutations(src: &[Vec<u32>], dst: &BTreeSet<Vec<u32>>, n: usize) -> Vec<Vec<usize>> {
    let dst_vec: Vec<Vec<u32>> = dst.iter().cloned().collect();
    let src_cols: Vec<_> = (0..=n).map(|j| column(src, j)).collect();
    let dst_cols: Vec<_> = (0..=n).map(|j| column(&dst_vec, j)).collect();
    if src_cols[0] != dst_cols[0] {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut perm = vec![0usize; n + 1];
    let mut used = vec![false; n + 1];
    #[allow(clippy::too_many_arguments)]
    fn go(
        j: usize,
        n: usize,
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        src_cols: &[Vec<(u32, u32)>],
        dst_cols: &[Vec<(u32, u32)>],
        src: &[Vec<u32>],
        dst: &BTreeSet<Vec<u32>>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if j > n {
            let all = src.iter().all(|e| {
                let mut m = vec![0u32; n + 1];
                m[0] = e[0];
                for k in 1..=n {
                    m[perm[k]] = e[k];
                }
                dst.contains(&m)
            });
            if all {
                out.push(perm.clone());
            }
            return;
        }
        for t in 1..=n {
            if !used[t] && src_cols[j] == dst_cols[t] {
                used[t] = true;
                perm[j] = t;
                go(j + 1, n, perm, used, src_cols, dst_cols, src, dst, out);
                used[t] = false;
            }
        }
    }
    go(
        1, n, &mut perm, &mut used, &src_cols, &dst_cols, src, dst, &mut out,
    );
    out
}

fn int_pow(c: &GaussianRational, e: &BigInt) -> Option<GaussianRational> {
    let k: u32 = e.abs().try_into().ok()?;
    let p = c.pow(k);
    if e.is_negative() {
        p.inv()
    } else {
        Some(p)
    }
}

/// Gaussian rationals `v` with `v^d = w` of the form `r·u`, `r ∈ ℚ`,
/// `u ∈ {±1, ±i, ±1±i}`.
fn roots(w: &GaussianRational, d: u32) -> Vec<GaussianRational> {
    let g = |a: i64, b: i64| GaussianRational::new(BigRational::from_integer(a.into()), BigRational::from_integer(b.into()));
    let units = [
        g(1, 0),
        g(-1, 0),
        g(0, 1),
        g(0, -1),
        g(1, 1),
        g(1, -1),
        g(-1, 1),
        g(-1, -1),
    ];
    let mut out: Vec<GaussianRational> = Vec::new();
    for u in units {
        let Some(q) = u.pow(d).inv().map(|inv| w * &inv) else {
            continue;
        };
        if !q.is_real() {
            continue;
        }
        if let Some(r) = rational_root(q.re(), d) {
            let v = &GaussianRational::real(r) * &u;
            if v.pow(d) == *w && !out.contains(&v) {
                out.push(v);
            }
        }
    }
    out
}

/// Column echelon form of an integer matrix: returns `(A·U, U)` with `U`
/// unimodular and `A·U` lower echelon.
fn column_echelon(a: &[Vec<i64>]) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let cols = a.first().map_or(0, Vec::len);
    let mut m = a.to_vec();
    let mut u: Vec<Vec<i64>> = (0..cols)
        .map(|i| (0..cols).map(|j| i64::from(i == j)).collect())
        .collect();
    // Replaces columns (i, j) by (p·col_i + r·col_j, q·col_i + s·col_j).
    fn op(mat: &mut [Vec<i64>], i: usize, j: usize, [p, q, r, s]: [i64; 4]) {
        for row in mat.iter_mut() {
            let (x, y) = (row[i], row[j]);
            row[i] = p * x + r * y;
            row[j] = q * x + s * y;
        }
    }
    let mut rank = 0;
    for i in 0..m.len() {
        if rank == cols {
            break;
        }
        for j in rank + 1..cols {
            if m[i][j] == 0 {
                continue;
            }
            let (x, y) = (m[i][rank], m[i][j]);
            let (g, s, t) = ext_gcd(x, y);
            // [x y]·[[s, -y/g], [t, x/g]] = [g 0], determinant 1.
            let step = [s, -y / g, t, x / g];
            op(&mut m, rank, j, step);
            op(&mut u, rank, j, step);
        }
        if m[i][rank] != 0 {
            rank += 1;
        }
    }
    (m, u)
}

/// `(g, s, t)` with `g = gcd(a, b) ≥ 0` and `s·a + t·b = g`.
fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a.abs(), a.signum(), 0)
    } else {
        let (g, s, t) = ext_gcd(b, a % b);
        (g, t, s - (a / b) * t)
    }
}

/// Feeds every solution `(c, b, a_1, …, a_n)` of `c·κ_t·b^{e_0}·Π a_j^{e_j} = 1`
/// of the searched shape to `accept` until it returns `true`.
///
/// With the unknowns written as `y^U` for the unimodular `U` of a column
/// echelon form the system becomes triangular. Unknowns `y_k` beyond the
/// rank occur in no equation, so setting them to 1 loses no solutions.
fn solve_scalings(
    rows: &[(Vec<u32>, GaussianRational)],
    n: usize,
    accept: &mut dyn FnMut(&[GaussianRational]) -> bool,
) -> bool {
    let a: Vec<Vec<i64>> = rows
        .iter()
        .map(|(e, _)| {
            let mut r = vec![1];
            r.extend(e.iter().map(|&x| i64::from(x)));
            r
        })
        .collect();
    let Some(targets) = rows.iter().map(|(_, c)| c.inv()).collect::<Option<Vec<_>>>() else {
        return false;
    };
    let (l, u) = column_echelon(&a);
    let mut y = vec![GaussianRational::from_integer(1); n + 2];
    go(0, 0, &l, &u, &targets, &mut y, accept)
}

fn go(
    i: usize,
    rank: usize,
    l: &[Vec<i64>],
    u: &[Vec<i64>],
    targets: &[GaussianRational],
    y: &mut [GaussianRational],
    accept: &mut dyn FnMut(&[GaussianRational]) -> bool,
) -> bool {
    let product = |exps: &[i64], y: &[GaussianRational]| {
        exps.iter()
            .zip(y)
            .try_fold(GaussianRational::from_integer(1), |acc, (&e, v)| {
                Some(&acc * &int_pow(v, &BigInt::from(e))?)
            })
    };
    if i == l.len() {
        let x: Option<Vec<GaussianRational>> = u.iter().map(|row| product(row, y)).collect();
        return x.is_some_and(|x| accept(&x));
    }
    let Some(rest) = product(&l[i][..rank], y)
        .and_then(|known| known.inv())
        .map(|inv| &targets[i] * &inv)
    else {
        return false;
    };
    let e = l[i].get(rank).copied().unwrap_or(0);
    if e == 0 {
        return rest.is_one() && go(i + 1, rank, l, u, targets, y, accept);
    }
    let w = if e < 0 { rest.inv() } else { Some(rest) };
    let (Some(w), Ok(d)) = (w, u32::try_from(e.unsigned_abs())) else {
        return false;
    };
    for r in roots(&w, d) {
        y[rank] = r;
        if go(i + 1, rank + 1, l, u, targets, y, accept) {
            return true;
        }
    }
    y[rank] = GaussianRational::from_integer(1);
    false
}

fn apply(
    f: &Germ,
    perm: &[usize],
    factor: &GaussianRational,
    x_scale: &GaussianRational,
    y_scales: &[GaussianRational],
) -> Poly {
    let n = f.n();
    let terms = f.poly().terms().map(|(m, c)| {
        let e = m.exponents();
        let mut out = vec![0u32; n + 1];
        out[0] = e[0];
        let mut coef = c * factor;
        coef = &coef * &x_scale.pow(e[0]);
        for j in 1..=n {
            out[perm[j]] = e[j];
            coef = &coef * &y_scales[j - 1].pow(e[j]);
        }
        (Monomial::from_exponents(out), coef)
    });
    Poly::from_terms(f.space(), terms)
}

/// First table row that `f` equals after a permutation of `y1, …, yn`,
/// scalings of each variable and an overall factor. `None` when no row
/// matches in this group, including when `f ∉ I²`.
pub fn classify_exact(f: &Germ) -> Option<Classification> {
    if f.poly().is_zero() || !in_i2(f) {
        return None;
    }
    let n = f.n();
    let rows: Vec<(Vec<u32>, GaussianRational)> = f
        .poly()
        .terms()
        .map(|(m, c)| (m.exponents().to_vec(), c.clone()))
        .collect();
    let src: Vec<Vec<u32>> = rows.iter().map(|(e, _)| e.clone()).collect();
    let d = f.poly().total_degree().unwrap_or(0);
    for form in candidates(n, d) {
        let support = form.support(n);
        if support.len() != src.len() {
            continue;
        }
        let dst: BTreeSet<Vec<u32>> = support.into_iter().collect();
        let target = build_normal_form(form, n).ok()?;
        for perm in matching_permutations(&src, &dst, n) {
            let mut found = None;
            solve_scalings(&rows, n, &mut |x| {
                if apply(f, &perm, &x[0], &x[1], &x[2..]) != *target.poly() {
                    return false;
                }
                found = Some(Classification {
                    form,
                    n,
                    permutation: perm[1..].to_vec(),
                    x_scale: x[1].clone(),
                    y_scales: x[2..].to_vec(),
                    factor: x[0].clone(),
                });
                true
            });
            if found.is_some() {
                return found;
            }
        }
    }
    None
}
