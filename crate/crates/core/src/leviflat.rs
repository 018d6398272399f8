//! Levi-flatness, singular sets and Segre varieties of real hypersurfaces
//! `M = {F = 0}`.

use std::sync::Arc;

use num_traits::Zero;
use rayon::prelude::*;

use crate::algebra::{poly_divmod, GaussianRational, Ideal, MonomialOrder, Poly, VarSpace};
use crate::error::{Error, Result};
use crate::forms::{alpha_beta, d_anti, d_full, d_holo, DiffForm, Split};
use crate::hermitian::{
    complexify, diagonal_point, holomorphic_restrict, ComplexifiedPoly, HermitianPoly,
};

/// A coefficient of the obstruction form that `F` does not divide.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// The differentials, e.g. `["dz1", "dz2", "d~z1", "d~z2"]`.
    pub basis: Vec<String>,
    pub coefficient: Poly,
    /// Remainder of the coefficient after division by `F`.
    pub remainder: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeviFlatReport {
    pub is_levi_flat: bool,
    /// Present exactly when `is_levi_flat` is false.
    pub witness: Option<Witness>,
    /// Largest total degree among the coefficients of the obstruction form
    /// (0 when the form vanishes).
    pub obstruction_degree: u32,
    /// Number of nonzero coefficients of the obstruction form.
    pub obstruction_terms: usize,
    /// The test is exact for irreducible `F`; irreducibility is not checked.
    pub assumes_irreducible: bool,
}

/// `Ω = (∂F − ∂̄F) ∧ ∂∂̄F ∧ dF`.
pub fn obstruction_form(f: &HermitianPoly) -> DiffForm {
    let p = f.poly();
    let levi = d_holo(p).sub(&d_anti(p)).expect("same space");
    let ddbar = d_anti(p).d_holo();
    levi.wedge(&ddbar)
        .and_then(|w| w.wedge(&d_full(p)))
        .expect("same space")
}

/// Decides whether the Levi distribution of `{F = 0}` is integrable on the
/// smooth part: every coefficient of the obstruction form must be divisible
/// by `F`.
pub fn is_levi_flat(f: &HermitianPoly) -> Result<LeviFlatReport> {
    let p = f.poly();
    if p.is_constant() {
        return Err(Error::DegenerateInput(
            "a constant function does not define a hypersurface".into(),
        ));
    }
    let omega = obstruction_form(f);
    let divisor = std::slice::from_ref(p);
    let mut witness = None;
    for (k, c) in omega.terms() {
        let (_, r) = poly_divmod(c, divisor, MonomialOrder::GrevLex)?;
        if !r.is_zero() {
            witness = Some(Witness {
                basis: k.iter().map(|&v| format!("d{}", p.space().name(v))).collect(),
                coefficient: c.clone(),
                remainder: r,
            });
            break;
        }
    }
    Ok(LeviFlatReport {
        is_levi_flat: witness.is_none(),
        witness,
        obstruction_degree: omega
            .coefficients()
            .filter_map(Poly::total_degree)
            .max()
            .unwrap_or(0),
        obstruction_terms: omega.terms().count(),
        assumes_irreducible: true,
    })
}

/// `(F_C, ∂F_C/∂v for every v)` in the complexified space; its zero set is
/// the complexified singular set.
pub fn sing_ideal(f: &HermitianPoly) -> Result<Ideal> {
    let fc = complexify(f);
    sing_ideal_c(&fc)
}

pub fn sing_ideal_c(fc: &ComplexifiedPoly) -> Result<Ideal> {
    let p = fc.poly();
    let mut gens = vec![p.clone()];
    gens.extend((0..p.nvars()).map(|k| p.derivative(k)));
    Ideal::new(fc.space(), gens)
}

/// The two parts `X₁`, `X₂` of the singular set of `η_C` on the complexified
/// hypersurface, without the open conditions that separate them.
#[derive(Clone, Debug)]
pub struct EtaComponents {
    /// `(F_C, coefficients of α)`.
    pub x1: Ideal,
    /// `(F_C, coefficients of β)`.
    pub x2: Ideal,
    /// `X₁` lives where at least one of these is nonzero.
    pub x1_open: Vec<Poly>,
    /// `X₂` lives where at least one of these is nonzero.
    pub x2_open: Vec<Poly>,
}

fn with_coefficients(fc: &Poly, form: &DiffForm) -> Result<Ideal> {
    let mut gens = vec![fc.clone()];
    gens.extend(form.coefficients().cloned());
    Ideal::new(fc.space(), gens)
}

pub fn sing_eta_components(fc: &ComplexifiedPoly, split: &Split) -> Result<EtaComponents> {
    let ab = alpha_beta(fc, Some(split))?;
    Ok(EtaComponents {
        x1: with_coefficients(fc.poly(), &ab.alpha)?,
        x2: with_coefficients(fc.poly(), &ab.beta)?,
        x1_open: ab.beta.coefficients().cloned().collect(),
        x2_open: ab.alpha.coefficients().cloned().collect(),
    })
}

/// Codimension of `V(x)` inside the complexified hypersurface `{F_C = 0}`;
/// `None` when `V(x)` is empty.
pub fn codim_in_hypersurface(x: &Ideal) -> Result<Option<usize>> {
    match x.dimension() {
        Ok(d) => Ok(Some(x.space().len() - 1 - d)),
        Err(Error::EmptyVariety) => Ok(None),
        Err(e) => Err(e),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegreReport {
    pub point: Vec<GaussianRational>,
    /// `F_C(z, conj p)` in the holomorphic coordinates.
    pub variety: Poly,
    /// The variety is all of the ambient space.
    pub degenerate: bool,
}

/// `Q_p = {z : F_C(z, conj p) = 0}`.
pub fn segre_variety(f: &HermitianPoly, point: &[GaussianRational]) -> Result<SegreReport> {
    let m = f.dimension();
    if point.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: point.len(),
        });
    }
    let assignment: Vec<(usize, GaussianRational)> = point
        .iter()
        .enumerate()
        .map(|(k, c)| (k + m, c.conj()))
        .collect();
    let variety = holomorphic_restrict(&f.poly().partial_eval(&assignment))?;
    Ok(SegreReport {
        point: point.to_vec(),
        degenerate: variety.is_zero(),
        variety,
    })
}

/// Segre degeneracy at each sample point, which must lie on the singular set.
pub fn degenerate_locus_scan(
    f: &HermitianPoly,
    sample: &[Vec<GaussianRational>],
) -> Result<Vec<(Vec<GaussianRational>, bool)>> {
    let sing = sing_ideal(f)?;
    let m = f.dimension();
    sample
        .par_iter()
        .map(|p| {
            let full = diagonal_point(p, m)?;
            for g in sing.generators() {
                if !g.evaluate(&full)?.is_zero() {
                    return Err(Error::Precondition(format!(
                        "point ({}) is not singular: {} does not vanish there",
                        format_point(p),
                        g
                    )));
                }
            }
            Ok((p.clone(), segre_variety(f, p)?.degenerate))
        })
        .collect()
}

pub fn format_point(p: &[GaussianRational]) -> String {
    p.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")
}

/// Sufficient test for `{g = 0} ⊆ M`: `F_C ∈ (g(z), ḡ(w))`. A false answer
/// is inconclusive.
pub fn branch_in_m(f: &HermitianPoly, g: &Poly) -> Result<bool> {
    let g = holomorphic_restrict(g)?;
    if g.is_constant() {
        return Err(Error::Precondition("the branch polynomial must be nonconstant".into()));
    }
    let fc = complexify(f);
    let space: &Arc<VarSpace> = fc.space();
    if g.space().names() != space.holomorphic_names() {
        return Err(Error::SpaceMismatch {
            left: g.space().to_string(),
            right: space.holomorphic_names().join(", "),
        });
    }
    let map: Vec<Option<usize>> = (0..g.nvars()).map(Some).collect();
    let lifted = g.reindex(space, &map)?;
    let mirrored = lifted.mirror()?;
    Ideal::new(space, vec![lifted, mirrored])?.contains(fc.poly())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse, print_poly};
    use crate::hermitian::{make_hermitian, re_part};

    fn herm(text: &str) -> HermitianPoly {
        make_hermitian(&parse(text).unwrap()).unwrap()
    }

    #[test]
    fn sum_of_squares_is_levi_flat() {
        let f = re_part(&parse("y1^2 + y2^2").unwrap()).unwrap();
        let r = is_levi_flat(&f).unwrap();
        assert!(r.is_levi_flat);
        assert!(r.witness.is_none());
        // ∂∂̄ of a pluriharmonic function vanishes
        assert_eq!(r.obstruction_terms, 0);
    }

    #[test]
    fn anti_real_quadric_is_levi_flat() {
        assert!(is_levi_flat(&herm("z1*~z2 - ~z1*z2")).unwrap().is_levi_flat);
    }

    #[test]
    fn sphere_is_not_levi_flat() {
        let r = is_levi_flat(&herm("z1*~z1 + z2*~z2 - 1")).unwrap();
        assert!(!r.is_levi_flat);
        let w = r.witness.unwrap();
        assert!(!w.remainder.is_zero());
        assert_eq!(w.basis.len(), 4);
    }

    #[test]
    fn constant_is_rejected() {
        let f = make_hermitian(&parse("2 + 0*~z1").unwrap()).unwrap();
        assert!(matches!(is_levi_flat(&f), Err(Error::DegenerateInput(_))));
    }

    #[test]
    fn singular_set_of_sum_of_squares() {
        let f = re_part(&parse("y1^2 + y2^2").unwrap()).unwrap();
        let i = sing_ideal(&f).unwrap();
        let s = i.space();
        for v in ["y1", "y2", "w1", "w2"] {
            assert!(i.contains(&Poly::var_named(s, v).unwrap()).unwrap());
        }
        assert_eq!(i.dimension().unwrap(), 2);
        let smooth = re_part(&parse("x").unwrap()).unwrap();
        assert_eq!(sing_ideal(&smooth).unwrap().dimension(), Err(Error::EmptyVariety));
    }

    #[test]
    fn eta_components() {
        let p = parse("y1^2 + y2^2 + y3^2").unwrap();
        let f = re_part(&p).unwrap();
        let fc = complexify(&f);
        let c = sing_eta_components(&fc, &Split::from_head(&f, &p).unwrap()).unwrap();
        assert_eq!(codim_in_hypersurface(&c.x1).unwrap(), Some(3));
        let gens: Vec<String> = c.x1.generators().iter().map(print_poly).collect();
        assert_eq!(gens[1..], ["y1", "y2", "y3"]);

        let d = parse("x*y1^2 + y2^2 + y3^2").unwrap();
        let f = re_part(&d).unwrap();
        let fc = complexify(&f);
        let c = sing_eta_components(&fc, &Split::from_head(&f, &d).unwrap()).unwrap();
        let gens: Vec<String> = c.x1.generators().iter().map(print_poly).collect();
        assert_eq!(gens[1..], ["1/2*y1^2", "x*y1", "y2", "y3"]);

        let x = parse("x").unwrap();
        let f = re_part(&x).unwrap();
        let fc = complexify(&f);
        let c = sing_eta_components(&fc, &Split::from_head(&f, &x).unwrap()).unwrap();
        assert!(c.x1.groebner().unwrap().is_unit());
    }

    #[test]
    fn segre_varieties() {
        let q = GaussianRational::from_integer(0);
        let f = re_part(&parse("z3").unwrap()).unwrap();
        let r = segre_variety(&f, &[q.clone(), q.clone(), q.clone()]).unwrap();
        assert_eq!(print_poly(&r.variety), "1/2*z3");
        assert!(!r.degenerate);

        let g = herm("z1*~z2 - ~z1*z2");
        assert!(segre_variety(&g, &[q.clone(), q.clone()]).unwrap().degenerate);
        assert!(matches!(
            segre_variety(&g, std::slice::from_ref(&q)),
            Err(Error::DimensionMismatch { expected: 2, found: 1 })
        ));
    }

    #[test]
    fn degenerate_scan_checks_singularity() {
        let g = herm("z1*~z2 - ~z1*z2 + 0*z3");
        let c = GaussianRational::from_ratio(3, 7);
        let zero = GaussianRational::from_integer(0);
        let one = GaussianRational::from_integer(1);
        let scan = degenerate_locus_scan(&g, &[vec![zero.clone(), zero.clone(), c]]).unwrap();
        assert!(scan[0].1);
        assert!(degenerate_locus_scan(&g, &[]).unwrap().is_empty());
        assert!(matches!(
            degenerate_locus_scan(&g, &[vec![one, zero.clone(), zero]]),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn branches() {
        let f = re_part(&parse("z2").unwrap()).unwrap();
        let s = VarSpace::plain(&["z1", "z2"]).unwrap();
        assert!(branch_in_m(&f, &Poly::var(&s, 1)).unwrap());
        assert!(!branch_in_m(&f, &Poly::var(&s, 0)).unwrap());

        let a = re_part(&parse("y1^2 + y2^2").unwrap()).unwrap();
        let g = parse("y1 + i*y2").unwrap();
        assert!(branch_in_m(&a, &g).unwrap());
    }
}
