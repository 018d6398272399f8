//! Independent computation of `d_N = dim (I² + m^N)/(τ(f) + m^N)` by dense
//! linear algebra on truncated multiples, sharing no code with the library's
//! elimination.

use leviscope::{Monomial, Poly};

use super::properties::{monomials_of_degree, reduce, row_of, Row};

fn in_i2(m: &Monomial) -> bool {
    m.exponents()[1..].iter().sum::<u32>() >= 2
}

fn truncate(p: &Poly, bound: u32) -> Row {
    row_of(p)
        .into_iter()
        .filter(|(m, _)| m.exponents().iter().sum::<u32>() < bound)
        .collect()
}

/// `τ(f)` straight from its definition: `v·∂f/∂x` for every variable `v`
/// and `y_i·∂f/∂y_j`.
pub fn tau_generators(f: &Poly) -> Vec<Poly> {
    let space = f.space();
    let vars = f.nvars();
    let fx = f.derivative(0);
    let mut gens: Vec<Poly> = (0..vars).map(|v| &Poly::var(space, v) * &fx).collect();
    for j in 1..vars {
        let fy = f.derivative(j);
        for i in 1..vars {
            gens.push(&Poly::var(space, i) * &fy);
        }
    }
    gens
}

/// `d_N` for a germ `f` in the variables `x, y1, …, yn`.
pub fn truncated_codim(f: &Poly, bound: u32) -> usize {
    let vars = f.nvars();
    let one = leviscope::GaussianRational::from_integer(1);
    let ambient = (0..bound)
        .flat_map(|d| monomials_of_degree(vars, d))
        .filter(in_i2)
        .count();
    let mut basis: Vec<(Monomial, Row)> = Vec::new();
    for g in tau_generators(f) {
        let Some(low) = g.low_degree() else { continue };
        for d in 0..bound.saturating_sub(low) {
            for m in monomials_of_degree(vars, d) {
                let r = reduce(truncate(&g.mul_term(&m, &one), bound), &basis);
                let Some((pivot, c)) = r.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) else {
                    continue;
                };
                assert!(r.keys().all(in_i2), "τ(f) must lie in I²");
                let inv = c.inv().unwrap();
                basis.push((pivot, r.into_iter().map(|(m, a)| (m, &a * &inv)).collect()));
            }
        }
    }
    ambient - basis.len()
}
