//! Exact symbolic computations for real-analytic Levi-flat hypersurfaces and
//! isolated line singularities.
//!
//! Everything is computed over the Gaussian rationals: polynomial algebra and
//! Gröbner bases ([`algebra`]), a text front end ([`expr`]), Hermitian
//! polynomials and their complexifications, Wirtinger differential forms, the
//! Levi-flatness test, the line-singularity invariants with their normal-form
//! catalogs, and blow-up charts.

pub mod algebra;
pub mod blowup;
pub mod error;
pub mod expr;
pub mod forms;
pub mod hermitian;
pub mod ils;
pub mod leviflat;
pub mod sweep;

pub use algebra::{
    GaussianRational, GroebnerBasis, Ideal, Limits, Monomial, MonomialOrder, Poly, SpaceKind,
    VarSpace,
};
pub use error::{Error, Result};
