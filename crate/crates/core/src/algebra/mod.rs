//! Exact polynomial algebra over the Gaussian rationals.

pub mod coeff;
pub mod division;
pub mod groebner;
pub mod ideal;
pub mod monomial;
pub mod poly;
pub mod space;
pub mod truncated;

pub use coeff::{rational_root, GaussianRational};
pub use division::{exact_quotient, poly_divmod};
pub use groebner::{buchberger, buchberger_limited, is_groebner, GroebnerBasis};
pub use ideal::{dimension_of_initial, ideal_dimension, ideal_member, Ideal};
pub use monomial::{Monomial, MonomialOrder};
pub use poly::Poly;
pub use space::{germ_names, same_space, SpaceKind, VarSpace};
pub use truncated::{
    monomials_below, truncated_quotient_dim, truncated_quotient_dim_limited, truncated_quotient_dims,
};

/// Guardrails for the exact engines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest number of terms any intermediate result may hold.
    pub max_terms: usize,
    /// Largest truncation degree accepted by the local computations.
    pub max_degree: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_terms: 1_000_000,
            max_degree: 64,
        }
    }
}
