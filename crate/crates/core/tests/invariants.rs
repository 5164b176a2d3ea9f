use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use rnc_core::construct::{construct, construct_through_points, Outcome};
use rnc_core::curve::{self, chord_space, curve_equals, det_to_param, param_to_det, secancy, verify_datum};
use rnc_core::equivalence::signature;
use rnc_core::obstruction::nonexistence_certificate;
use rnc_core::postulation::hilbert_function;
use rnc_core::projective::{ProjPoint, Transformable};
use rnc_core::random::{distinct_params, forward_datum, generic_datum, generic_points, random_curve, random_pencil, random_transform, rng};
use rnc_core::{Datum, ExistenceCertificate, Scalar, SchemeSpec};

fn exists(d: &Datum) -> ExistenceCertificate {
    match construct(d) {
        Ok(Outcome::Exists(cert)) => *cert,
        other => panic!("expected a curve, got {other:?}"),
    }
}

fn shape(n: usize, k: usize) -> (usize, usize) {
    [(n + 3, 0), (n + 2, 1), (3, n), (2, n + 1), (1, n + 2)][k]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn determinantal_round_trip(seed in 0u64..10_000, n in 3usize..=6) {
        let c = random_curve::<Scalar>(&mut rng(seed), n);
        prop_assert!(curve_equals(&det_to_param(&param_to_det(&c)).unwrap(), &c).unwrap());
    }

    #[test]
    fn chords_are_secant_at_their_parameters(seed in 0u64..10_000, n in 3usize..=6) {
        let mut r = rng(seed);
        let c = random_curve::<Scalar>(&mut r, n);
        let params = distinct_params(&mut r, n - 1);
        let s = secancy(&c, &chord_space(&c, &params).unwrap()).unwrap();
        prop_assert!(s.is_n_minus_1_secant);
        for t in &params {
            prop_assert!(s.d_form.eval(t.s(), t.u()).is_zero());
        }
    }

    #[test]
    fn construction_commutes_with_projectivities(seed in 0u64..10_000, n in 3usize..=5, k in 0usize..5) {
        let (p, l) = shape(n, k);
        let (d, _) = forward_datum::<Scalar>(n, p, l, seed).unwrap();
        let t = random_transform(&mut rng(seed ^ 0x5eed), n);
        let image = exists(&d.transformed(&t).unwrap()).curve;
        prop_assert!(curve_equals(&image, &exists(&d).curve.transformed(&t).unwrap()).unwrap());
    }

    #[test]
    fn point_order_does_not_matter(seed in 0u64..10_000, n in 3usize..=5, k in 0usize..3) {
        let (p, l) = shape(n, k);
        let (d, oracle) = forward_datum::<Scalar>(n, p, l, seed).unwrap();
        let mut points = d.points().to_vec();
        points.reverse();
        let mut spaces = d.spaces().to_vec();
        spaces.rotate_left(l.min(1));
        let shuffled = Datum::new(n, spaces, points).unwrap();
        prop_assert!(curve_equals(&exists(&shuffled).curve, &oracle).unwrap());
    }

    #[test]
    fn certificates_survive_projectivities(seed in 0u64..10_000, n in 3usize..=5) {
        let d = generic_datum::<Scalar>(n, 4, n - 1, seed);
        let t = random_transform(&mut rng(seed + 1), n);
        prop_assert!(nonexistence_certificate(&d.transformed(&t).unwrap()).unwrap().verify());
    }

    #[test]
    fn hilbert_function_is_projectively_invariant(seed in 0u64..10_000, n in 3usize..=4) {
        let spec = SchemeSpec::new(n, generic_points(n, n + 2, seed), vec![random_pencil(&mut rng(seed), n)], 4).unwrap();
        let t = random_transform(&mut rng(seed + 7), n);
        prop_assert_eq!(hilbert_function(&spec).actual_hf, hilbert_function(&spec.transformed(&t).unwrap()).actual_hf);
    }

    #[test]
    fn signatures_are_projectively_invariant(seed in 0u64..10_000, n in 3usize..=4, k in 0usize..3) {
        let (p, l) = shape(n, k);
        let (d, _) = forward_datum::<Scalar>(n, p, l, seed).unwrap();
        let t = random_transform(&mut rng(seed + 3), n);
        prop_assert_eq!(signature(&d).unwrap(), signature(&d.transformed(&t).unwrap()).unwrap());
    }
}

#[test]
fn constructed_curves_pass_verification() {
    for n in 3..=6 {
        for k in 0..5 {
            let (p, l) = shape(n, k);
            let (d, _) = forward_datum::<Scalar>(n, p, l, 17).unwrap();
            let cert = exists(&d);
            assert!(verify_datum(&cert.curve, &d).unwrap().passed);
            assert!(cert.verify().unwrap());
        }
    }
}

#[test]
fn generic_over_the_scalar() {
    let moment = curve::ParamRnc::<BigRational>::moment(4);
    let points: Vec<ProjPoint<BigRational>> =
        [-2, -1, 0, 1, 2, 3].iter().map(|&t| moment.point_at(&curve::Param::from_int(t))).chain([moment.point_at(&curve::Param::infinity())]).collect();
    let cert = construct_through_points(&points).unwrap();
    assert!(curve_equals(&cert.curve, &moment).unwrap());
}
