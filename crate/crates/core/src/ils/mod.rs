//! Line singularities along `L = {y = 0}` in coordinates `(x, y1, …, yn)`:
//! the ideal `I = (y1, …, yn)`, the tangent ideal `τ(f) = m·∂f/∂x + I·∂f/∂y`
//! and the codimension `c(f) = dim I²/τ(f)`, evaluated in `R / m^N` for
//! growing `N`.

mod catalog;
mod classify;
mod hypotheses;

use std::sync::Arc;

use crate::algebra::{truncated_quotient_dims, Ideal, Limits, Poly, SpaceKind, VarSpace};
use crate::error::{Error, Result};
use crate::hermitian::holomorphic_restrict;

pub use catalog::{
    build_normal_form, build_quadric, quadric_models_for_line, NormalForm, Quadric, QuadricEntry,
};
pub use classify::{classify_exact, Classification};
pub use hypotheses::{check_theorem_a_hypotheses, HypothesisReport, NormalFormTheorem};

/// A holomorphic germ in `x, y1, …, yn`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Germ {
    poly: Poly,
    n: usize,
    /// `f(x, 0)`.
    on_line: Poly,
}

fn is_germ_layout(space: &VarSpace) -> bool {
    let names = space.holomorphic_names();
    !names.is_empty()
        && names[0] == "x"
        && names[1..]
            .iter()
            .enumerate()
            .all(|(k, v)| *v == format!("y{}", k + 1))
}

impl Germ {
    /// Accepts a polynomial in `x, y1, …, yn` (plain, or Hermitian without
    /// conjugates).
    pub fn new(poly: &Poly) -> Result<Self> {
        let poly = holomorphic_restrict(poly)?;
        if !is_germ_layout(poly.space()) || poly.space().kind() != SpaceKind::Plain {
            return Err(Error::InvalidSpace(format!(
                "expected coordinates x, y1, ..., yn, found [{}]",
                poly.space()
            )));
        }
        let n = poly.nvars() - 1;
        if n == 0 {
            return Err(Error::InvalidSpace("a germ needs at least one y variable".into()));
        }
        let zero = crate::algebra::GaussianRational::from_integer(0);
        let on_line = poly.partial_eval(&(1..=n).map(|k| (k, zero.clone())).collect::<Vec<_>>());
        Ok(Germ { poly, n, on_line })
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn space(&self) -> &Arc<VarSpace> {
        self.poly.space()
    }

    pub fn on_line(&self) -> &Poly {
        &self.on_line
    }
}

impl std::fmt::Display for Germ {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.poly.fmt(f)
    }
}

/// Every term is divisible by some `y_i·y_j`.
pub fn in_i2(f: &Germ) -> bool {
    f.poly
        .terms()
        .all(|(m, _)| m.exponents()[1..].iter().sum::<u32>() >= 2)
}

/// `I² = (y_i·y_j)`.
pub fn i_squared(space: &Arc<VarSpace>) -> Result<Ideal> {
    let n = space.len() - 1;
    let mut gens = Vec::new();
    for i in 1..=n {
        for j in i..=n {
            gens.push(&Poly::var(space, i) * &Poly::var(space, j));
        }
    }
    Ideal::new(space, gens)
}

/// Generators `v·∂f/∂x` for `v ∈ {x, y1, …, yn}` and `y_i·∂f/∂y_j`.
pub fn tau_ideal(f: &Germ) -> Result<Ideal> {
    if f.poly.is_zero() {
        return Err(Error::DegenerateInput("the zero germ is not a singularity".into()));
    }
    if !in_i2(f) {
        return Err(Error::Domain(format!("{} is not in I²", f.poly)));
    }
    let space = f.space();
    let fx = f.poly.derivative(0);
    let mut gens = Vec::new();
    for v in 0..=f.n {
        gens.push(&Poly::var(space, v) * &fx);
    }
    for j in 1..=f.n {
        let fy = f.poly.derivative(j);
        for i in 1..=f.n {
            gens.push(&Poly::var(space, i) * &fy);
        }
    }
    Ideal::new(space, gens)
}

/// Stabilization settings for [`codim_c`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IlsConfig {
    /// Number of further agreeing values required after `d_N`.
    pub window: u32,
    /// First truncation degree tried.
    pub start: u32,
    /// Largest truncation degree.
    pub degree_cap: u32,
}

impl Default for IlsConfig {
    fn default() -> Self {
        IlsConfig {
            window: 2,
            start: 3,
            degree_cap: 12,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IlsReport {
    pub in_i2: bool,
    /// `None` when the sequence did not stabilize below the cap.
    pub c_value: Option<usize>,
    /// The `N` at which `d_N` first agreed with the following window.
    pub stabilized_at: Option<u32>,
    /// `Some(true)` only when `c` stabilized; `None` means unknown.
    pub is_ils: Option<bool>,
    /// `(N, d_N)` for every bound examined.
    pub history: Vec<(u32, usize)>,
}

/// `c(f) = dim I²/τ(f)` via `d_N = dim (I² + m^N)/(τ(f) + m^N)`.
pub fn codim_c(f: &Germ, config: &IlsConfig) -> Result<IlsReport> {
    codim_c_limited(f, config, &Limits::default())
}

pub fn codim_c_limited(f: &Germ, config: &IlsConfig, limits: &Limits) -> Result<IlsReport> {
    let tau = tau_ideal(f)?;
    let i2 = i_squared(f.space())?;
    if config.start == 0 || config.degree_cap < config.start {
        return Err(Error::Parameter(format!(
            "degree window {}..={} is empty",
            config.start, config.degree_cap
        )));
    }
    if config.degree_cap > limits.max_degree {
        return Err(Error::ResourceLimit(format!(
            "degree cap {} exceeds the configured maximum {}",
            config.degree_cap, limits.max_degree
        )));
    }
    // Try a small bound first; most inputs stabilize well below the cap.
    let mut bound = (config.start + config.window + 3).min(config.degree_cap);
    loop {
        let dims = truncated_quotient_dims(&i2, &tau, bound, limits)?;
        let d = |n: u32| dims[n as usize - 1];
        let history: Vec<(u32, usize)> = (config.start..=bound).map(|n| (n, d(n))).collect();
        let found = (config.start..=bound.saturating_sub(config.window))
            .find(|&n| (1..=config.window).all(|w| d(n + w) == d(n)));
        if let Some(n) = found {
            return Ok(IlsReport {
                in_i2: true,
                c_value: Some(d(n)),
                stabilized_at: Some(n),
                is_ils: Some(true),
                history,
            });
        }
        if bound >= config.degree_cap {
            return Ok(IlsReport {
                in_i2: true,
                c_value: None,
                stabilized_at: None,
                is_ils: None,
                history,
            });
        }
        bound = (bound + 3).min(config.degree_cap);
    }
}
