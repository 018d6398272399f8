mod common;

use std::sync::Arc;

use common::*;
use leviscope::blowup::{pullback, pullback_form, strict_transform, BlowupChart};
use leviscope::forms::{d_full, DiffForm};
use leviscope::{GaussianRational, Poly, VarSpace};
use proptest::prelude::*;

fn source() -> Arc<VarSpace> {
    VarSpace::plain(&["x", "y", "z", "w"]).unwrap()
}

/// Charts centered on two or three of `y, z, w`.
fn chart() -> impl Strategy<Value = BlowupChart> {
    (prop::sample::subsequence(vec!["y", "z", "w"], 2..=3), any::<prop::sample::Index>()).prop_map(
        |(center, pick)| {
            let var = *pick.get(&center);
            BlowupChart::new(&source(), &center, Some(var), &[]).unwrap()
        },
    )
}

fn nonzero_poly() -> impl Strategy<Value = Poly> {
    poly_in(source(), 4, 3).prop_filter("nonzero", |p| !p.is_zero())
}

fn point() -> impl Strategy<Value = Vec<GaussianRational>> {
    prop::collection::vec(coeff(), 4)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn pullback_is_a_ring_homomorphism(
        ch in chart(),
        p in poly_in(source(), 4, 3),
        q in poly_in(source(), 4, 3),
    ) {
        let (pp, pq) = (pullback(&ch, &p).unwrap(), pullback(&ch, &q).unwrap());
        prop_assert_eq!(pullback(&ch, &(&p + &q)).unwrap(), &pp + &pq);
        prop_assert_eq!(pullback(&ch, &(&p * &q)).unwrap(), &pp * &pq);
        prop_assert_eq!(pullback(&ch, &Poly::one(&source())).unwrap(), Poly::one(ch.target()));
    }

    #[test]
    fn pullback_agrees_with_evaluation(ch in chart(), p in poly_in(source(), 4, 3), pt in point()) {
        // The chart map sends c to c·u for center variables c other than the
        // chart variable and fixes every other coordinate.
        let u = &pt[ch.exceptional()];
        let image: Vec<GaussianRational> = (0..4)
            .map(|k| {
                if ch.center().contains(&k) && k != ch.exceptional() {
                    &pt[k] * u
                } else {
                    pt[k].clone()
                }
            })
            .collect();
        prop_assert_eq!(pullback(&ch, &p).unwrap().evaluate(&pt).unwrap(), p.evaluate(&image).unwrap());
    }

    #[test]
    fn pullback_commutes_with_d(ch in chart(), p in poly_in(source(), 4, 3), q in poly_in(source(), 3, 2)) {
        prop_assert_eq!(
            pullback_form(&ch, &d_full(&p)).unwrap(),
            d_full(&pullback(&ch, &p).unwrap())
        );
        let w = d_full(&p).wedge(&d_full(&q)).unwrap();
        let lhs = pullback_form(&ch, &w).unwrap();
        let rhs = pullback_form(&ch, &d_full(&p)).unwrap().wedge(&pullback_form(&ch, &d_full(&q)).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(pullback_form(&ch, &DiffForm::function(&p)).unwrap() == DiffForm::function(&pullback(&ch, &p).unwrap()));
    }

    #[test]
    fn multiplicity_is_additive(ch in chart(), p in nonzero_poly(), q in nonzero_poly()) {
        let (sp, mp) = strict_transform(&ch, &p).unwrap();
        let (sq, mq) = strict_transform(&ch, &q).unwrap();
        let (spq, mpq) = strict_transform(&ch, &(&p * &q)).unwrap();
        prop_assert_eq!(mpq, mp + mq);
        prop_assert_eq!(spq, (&sp * &sq).monic());
        prop_assert!(!sp.is_zero() && sp.var_multiplicity(ch.exceptional()) == 0);
    }
}
