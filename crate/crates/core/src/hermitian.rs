//! Real-valued polynomials `F(z, z̄)` and their complexifications.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{GaussianRational, Poly, SpaceKind, VarSpace};
use crate::error::{Error, Result};
use crate::expr::monomial_text;

/// Unit factor applied to make a polynomial real-valued.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Unit {
    #[default]
    One,
    MinusOne,
    I,
    MinusI,
}

impl Unit {
    pub const ALL: [Unit; 4] = [Unit::One, Unit::MinusOne, Unit::I, Unit::MinusI];

    pub fn value(self) -> GaussianRational {
        match self {
            Unit::One => GaussianRational::from_integer(1),
            Unit::MinusOne => GaussianRational::from_integer(-1),
            Unit::I => GaussianRational::i(),
            Unit::MinusI => -GaussianRational::i(),
        }
    }
}

impl std::fmt::Display for Unit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Unit::One => "1",
            Unit::MinusOne => "-1",
            Unit::I => "i",
            Unit::MinusI => "-i",
        })
    }
}

/// A polynomial in paired variables `(v, ~v)` that is invariant under
/// swapping each variable with its conjugate and conjugating coefficients,
/// hence real on the diagonal `~v = conj(v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianPoly {
    poly: Poly,
    normalization: Unit,
}

impl HermitianPoly {
    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn into_poly(self) -> Poly {
        self.poly
    }

    /// The unit the input was multiplied by.
    pub fn normalization(&self) -> Unit {
        self.normalization
    }

    pub fn space(&self) -> &Arc<VarSpace> {
        self.poly.space()
    }

    /// Number of complex coordinates.
    pub fn dimension(&self) -> usize {
        self.space().holomorphic_count()
    }

    /// `F(p, conj p)`, a real number.
    pub fn evaluate(&self, point: &[GaussianRational]) -> Result<GaussianRational> {
        self.poly.evaluate(&diagonal_point(point, self.dimension())?)
    }
}

impl std::fmt::Display for HermitianPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.poly.fmt(f)
    }
}

/// `(p, conj p)` for a point `p` of the holomorphic coordinates.
pub fn diagonal_point(point: &[GaussianRational], m: usize) -> Result<Vec<GaussianRational>> {
    if point.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: point.len(),
        });
    }
    Ok(point
        .iter()
        .cloned()
        .chain(point.iter().map(GaussianRational::conj))
        .collect())
}

/// The reality condition: the conjugate mirror of `p` is `p` itself.
pub fn satisfies_reality(p: &Poly) -> bool {
    p.mirror().map(|m| m == *p).unwrap_or(false)
}

fn require_hermitian(space: &Arc<VarSpace>) -> Result<()> {
    if space.kind() == SpaceKind::Hermitian {
        Ok(())
    } else {
        Err(Error::InvalidSpace(format!(
            "expected conjugate-paired variables, found [{space}]"
        )))
    }
}

/// Normalizes `p` by the first unit in `1, -1, i, -i` that makes it satisfy
/// the reality condition. The zero set is unchanged.
pub fn make_hermitian(p: &Poly) -> Result<HermitianPoly> {
    require_hermitian(p.space())?;
    if p.is_zero() {
        return Err(Error::DegenerateInput("the zero polynomial".into()));
    }
    for u in Unit::ALL {
        let q = p.scale(&u.value());
        if satisfies_reality(&q) {
            return Ok(HermitianPoly {
                poly: q,
                normalization: u,
            });
        }
    }
    Err(reality_violation(p))
}

fn reality_violation(p: &Poly) -> Error {
    let mirror = p.mirror().expect("paired space");
    let space = p.space();
    for (m, c) in p.terms().rev() {
        let image = swap(m, space);
        let mc = mirror.coefficient(m);
        if mc != *c {
            return Error::NotRealValued {
                monomial: monomial_text(m, space),
                coefficient: c.to_string(),
                mirror: monomial_text(&image, space),
                mirror_coefficient: p.coefficient(&image).to_string(),
            };
        }
    }
    unreachable!("a polynomial failing the reality test has a mismatched term")
}

fn swap(m: &crate::algebra::Monomial, space: &VarSpace) -> crate::algebra::Monomial {
    let mut e = vec![0u32; m.nvars()];
    for (k, &ek) in m.exponents().iter().enumerate() {
        if ek > 0 {
            e[space.partner(k).expect("paired space")] = ek;
        }
    }
    crate::algebra::Monomial::from_exponents(e)
}

/// `F_C`: the conjugated variables of `F` replaced by independent ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexifiedPoly {
    poly: Poly,
    origin: HermitianPoly,
}

impl ComplexifiedPoly {
    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn origin(&self) -> &HermitianPoly {
        &self.origin
    }

    pub fn space(&self) -> &Arc<VarSpace> {
        self.poly.space()
    }

    /// Accepts a polynomial already written in complexified variables; its
    /// diagonal restriction must satisfy the reality condition as is.
    pub fn from_poly(p: &Poly) -> Result<Self> {
        if p.space().kind() != SpaceKind::Complexified {
            return Err(Error::InvalidSpace(format!(
                "expected complexified variables, found [{}]",
                p.space()
            )));
        }
        let herm = p.with_space(&p.space().with_kind(SpaceKind::Hermitian));
        if herm.is_zero() {
            return Err(Error::DegenerateInput("the zero polynomial".into()));
        }
        if !satisfies_reality(&herm) {
            return Err(reality_violation(&herm));
        }
        Ok(ComplexifiedPoly {
            poly: p.clone(),
            origin: HermitianPoly {
                poly: herm,
                normalization: Unit::One,
            },
        })
    }
}

impl std::fmt::Display for ComplexifiedPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.poly.fmt(f)
    }
}

/// Renames each conjugated variable to its independent partner.
pub fn complexify(f: &HermitianPoly) -> ComplexifiedPoly {
    let space = f.space().with_kind(SpaceKind::Complexified);
    ComplexifiedPoly {
        poly: f.poly.with_space(&space),
        origin: f.clone(),
    }
}

/// Inverse of [`complexify`]: the partners become conjugates again.
pub fn diagonal_restrict(fc: &ComplexifiedPoly) -> HermitianPoly {
    let space = fc.space().with_kind(SpaceKind::Hermitian);
    HermitianPoly {
        poly: fc.poly.with_space(&space),
        normalization: fc.origin.normalization,
    }
}

fn first_conjugate(p: &Poly) -> Option<String> {
    let space = p.space();
    (0..space.len())
        .find(|&k| space.is_conjugate(k) && p.uses_var(k))
        .map(|k| space.name(k).to_string())
}

/// `Re(h) = ½h + ½·conj(h)` for a holomorphic `h`, in the Hermitian space
/// over the holomorphic coordinates of `h`.
pub fn re_part(h: &Poly) -> Result<HermitianPoly> {
    if let Some(v) = first_conjugate(h) {
        return Err(Error::NotHolomorphic(v));
    }
    let src = h.space();
    let space = if src.kind() == SpaceKind::Hermitian {
        src.clone()
    } else {
        src.with_kind(SpaceKind::Hermitian)
    };
    let map: Vec<Option<usize>> = (0..src.holomorphic_count()).map(Some).collect();
    let mut map = map;
    map.resize(src.len(), None);
    let lifted = h.reindex(&space, &map)?;
    let half = GaussianRational::from_ratio(1, 2);
    let poly = (&lifted + &lifted.mirror()?).scale(&half);
    Ok(HermitianPoly {
        poly,
        normalization: Unit::One,
    })
}

/// Moves a polynomial that only uses holomorphic variables into the plain
/// space over those variables.
pub fn holomorphic_restrict(p: &Poly) -> Result<Poly> {
    if let Some(v) = first_conjugate(p) {
        return Err(Error::NotHolomorphic(v));
    }
    let src = p.space();
    if src.kind() == SpaceKind::Plain {
        return Ok(p.clone());
    }
    let target = src.with_kind(SpaceKind::Plain);
    let m = src.holomorphic_count();
    let map: Vec<Option<usize>> = (0..src.len()).map(|k| (k < m).then_some(k)).collect();
    p.reindex(&target, &map)
}
