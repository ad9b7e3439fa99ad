use std::sync::Arc;

use proptest::prelude::*;
use trop_theta::divisor::*;
use trop_theta::matrix::QMatrix;
use trop_theta::num::{frac, rat};
use trop_theta::theta::*;
use trop_theta::{Rat, Tropical};

fn rational() -> impl Strategy<Value = Rat> {
    (-12i64..=12, 1i64..=6).prop_map(|(p, q)| frac(p, q))
}

/// `Q = A` and `Λ = A^-1 M`, so `det q = |det M|`.
fn surface_bundle() -> impl Strategy<Value = BundleSpec> {
    (
        (1i64..=3, -1i64..=1, 1i64..=3),
        prop::array::uniform4(-2i64..=2),
        prop::collection::vec(rational(), 2),
    )
        .prop_filter_map("definite with small cokernel", |((a, b, c), mm, alpha)| {
            if a * c - b * b <= 0 {
                return None;
            }
            let det = mm[0] * mm[3] - mm[1] * mm[2];
            if det == 0 || det.abs() > 3 {
                return None;
            }
            let q = QMatrix::from_rows(vec![vec![rat(a), rat(b)], vec![rat(b), rat(c)]]);
            let mz = QMatrix::from_rows(vec![
                vec![rat(mm[0]), rat(mm[1])],
                vec![rat(mm[2]), rat(mm[3])],
            ]);
            let l = q.inverse().unwrap().mul(&mz);
            Some(BundleSpec::from_parts(l, q, alpha).unwrap())
        })
}

fn section_of(spec: &BundleSpec) -> impl Strategy<Value = ThetaSection> {
    let basis = Arc::new(GeneratorBasis::new(spec).unwrap());
    let m = basis.len();
    prop::collection::vec(
        prop_oneof![4 => rational().prop_map(Tropical::Finite), 1 => Just(Tropical::NegInf)],
        m,
    )
    .prop_filter("not the zero section", |c| {
        c.iter().any(|t| !t.is_neg_inf())
    })
    .prop_map(move |c| ThetaSection::new(basis.clone(), c).unwrap())
}

fn bundle_and_two_sections() -> impl Strategy<Value = (BundleSpec, ThetaSection, ThetaSection)> {
    surface_bundle()
        .prop_flat_map(|spec| (Just(spec.clone()), section_of(&spec), section_of(&spec)))
}

fn definite_form() -> impl Strategy<Value = QMatrix> {
    (1i64..=3, -1i64..=1, 1i64..=3)
        .prop_filter("definite", |(a, b, c)| a * c > b * b)
        .prop_map(|(a, b, c)| QMatrix::from_rows(vec![vec![rat(a), rat(b)], vec![rat(b), rat(c)]]))
}

/// Two definite bundles on one integral lattice.
fn bundle_pair() -> impl Strategy<Value = (BundleSpec, BundleSpec)> {
    (
        definite_form(),
        definite_form(),
        prop::array::uniform4(-2i64..=2).prop_filter("nonsingular", |m| {
            let d = m[0] * m[3] - m[1] * m[2];
            d != 0 && d.abs() <= 2
        }),
        prop::collection::vec(rational(), 4),
    )
        .prop_map(|(q1, q2, m, alpha)| {
            let l =
                QMatrix::from_rows(vec![vec![rat(m[0]), rat(m[1])], vec![rat(m[2]), rat(m[3])]]);
            (
                BundleSpec::from_parts(l.clone(), q1, alpha[..2].to_vec()).unwrap(),
                BundleSpec::from_parts(l, q2, alpha[2..].to_vec()).unwrap(),
            )
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn mixed_intersection_matches_formula((s1, s2) in bundle_pair()) {
        let d1 = divisor_from_section(&ThetaSection::xi(Arc::new(GeneratorBasis::new(&s1).unwrap()))).unwrap();
        let d2 = divisor_from_section(&ThetaSection::xi(Arc::new(GeneratorBasis::new(&s2).unwrap()))).unwrap();
        let total = stable_intersection_2d(&d1, &d2).unwrap().total;
        prop_assert_eq!(rat(total), intersection_formula_2d(&s1, &s2).unwrap());
    }

    #[test]
    fn self_intersection_is_two_det_q((spec, s, t) in bundle_and_two_sections()) {
        let d1 = divisor_from_section(&s).unwrap();
        let d2 = divisor_from_section(&t).unwrap();
        prop_assert!(d1.validate_balancing().unwrap().is_balanced());
        prop_assert!(d2.validate_balancing().unwrap().is_balanced());
        let expected = self_intersection_formula(&spec);
        prop_assert_eq!(expected.clone(), rat(2) * spec.form().det_q(spec.torus()));
        let total = stable_intersection_2d(&d1, &d2).unwrap().total;
        prop_assert_eq!(rat(total), expected);
    }

    #[test]
    fn invariant_under_presets_subdivision_and_translation(
        (spec, s, _t) in bundle_and_two_sections(),
        v in prop::array::uniform2(rational()),
    ) {
        let d = divisor_from_section(&s).unwrap();
        let expected = self_intersection_formula(&spec);
        let moved = d.translate(&v);
        let mut generic = 0;
        for (p, q) in PERTURBATION_PRESETS {
            if let Some(r) = stable_intersection_with(&d, &moved, &frac(p, q)).unwrap() {
                prop_assert_eq!(rat(r.total), expected.clone());
                generic += 1;
            }
        }
        prop_assert!(generic > 0);
        let fine = stable_intersection_2d(&d.subdivide(), &moved).unwrap().total;
        prop_assert_eq!(rat(fine), expected);
    }

    #[test]
    fn bilinear_on_unions((_spec, s, t) in bundle_and_two_sections(), v in prop::array::uniform2(rational())) {
        let d1 = divisor_from_section(&s).unwrap();
        let d2 = divisor_from_section(&t).unwrap().translate(&v);
        let d3 = divisor_from_section(&s).unwrap().translate(&[frac(1, 5), frac(-2, 7)]);
        let u = d1.union(&d2).unwrap();
        let lhs = stable_intersection_2d(&u, &d3).unwrap().total;
        let rhs = stable_intersection_2d(&d1, &d3).unwrap().total + stable_intersection_2d(&d2, &d3).unwrap().total;
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn interpolation_passes_through_the_points(
        spec in surface_bundle(),
        pts in prop::collection::vec(prop::array::uniform2(rational()), 4),
    ) {
        let basis = Arc::new(GeneratorBasis::new(&spec).unwrap());
        let l = basis.len();
        prop_assume!(l >= 2 && l <= pts.len() + 1);
        let pts: Vec<Vec<Rat>> = pts[..l - 1].iter().map(|p| p.to_vec()).collect();
        let s = vandermonde_interpolate(basis, &pts).unwrap();
        let d = divisor_from_section(&s).unwrap();
        for p in &pts {
            prop_assert!(d.contains_point(p));
        }
    }
}
