#![allow(dead_code)]

pub mod oracle;
pub mod properties;

use std::sync::Arc;

use leviscope::{GaussianRational, Monomial, Poly, VarSpace};
use num_rational::BigRational;
use proptest::prelude::*;

pub const CASES: u32 = 200;

pub fn config() -> ProptestConfig {
    ProptestConfig::with_cases(CASES)
}

pub fn rational() -> impl Strategy<Value = BigRational> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

pub fn coeff() -> impl Strategy<Value = GaussianRational> {
    (rational(), rational(), any::<bool>())
        .prop_map(|(re, im, real)| GaussianRational::new(re, if real { BigRational::from_integer(0.into()) } else { im }))
}

pub fn nonzero_rational() -> impl Strategy<Value = GaussianRational> {
    prop_oneof![-3i64..=-1, 1i64..=3]
        .prop_flat_map(|n| (Just(n), 1i64..=3))
        .prop_map(|(n, d)| GaussianRational::from_ratio(n, d))
}

/// Up to `terms` terms with every exponent at most `max_exp`.
pub fn poly_in(space: Arc<VarSpace>, terms: usize, max_exp: u32) -> impl Strategy<Value = Poly> {
    let n = space.len();
    prop::collection::vec((prop::collection::vec(0..=max_exp, n), coeff()), 0..=terms).prop_map(
        move |ts| {
            Poly::from_terms(
                &space,
                ts.into_iter().map(|(e, c)| (Monomial::from_exponents(e), c)),
            )
        },
    )
}

/// Homogeneous of degree `deg`, up to `terms` terms.
pub fn homogeneous_in(space: Arc<VarSpace>, deg: u32, terms: usize) -> impl Strategy<Value = Poly> {
    let n = space.len();
    prop::collection::vec((prop::collection::vec(0..100u32, n), coeff()), 1..=terms).prop_map(
        move |ts| {
            Poly::from_terms(
                &space,
                ts.into_iter().map(|(w, c)| (Monomial::from_exponents(split(deg, &w)), c)),
            )
        },
    )
}

/// Splits `deg` into `w.len()` parts, driven by the weights `w`.
fn split(deg: u32, w: &[u32]) -> Vec<u32> {
    let mut e = vec![0u32; w.len()];
    for step in 0..deg as usize {
        let k = (w[step % w.len()] as usize + step) % w.len();
        e[k] += 1;
    }
    e
}

pub fn xyz() -> Arc<VarSpace> {
    VarSpace::plain(&["x", "y", "z"]).unwrap()
}

pub fn hermitian2() -> Arc<VarSpace> {
    VarSpace::hermitian(&["z1", "z2"]).unwrap()
}
