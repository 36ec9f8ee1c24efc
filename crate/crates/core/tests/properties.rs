use std::cmp::Ordering;

use kleinprym::algebra::complex::{real_cmp, real_pow2};
use kleinprym::algebra::{ratio, ComplexApprox, Polynomial, Rational};
use kleinprym::family::{
    check_domain, curve_equation, fixed_point_profile, quotient_map, verify_quotient_identity, CurveLabel, FamilyParams,
};
use kleinprym::isogeny::{j_weierstrass, velu_image, velu_quotient, CurvePoint, KernelPoint, WeierstrassCurve};
use kleinprym::moduli::{phi_params, prym_fiber_invariants};
use kleinprym::periods::{analytic_j, elliptic_periods_agm, prym_period_matrix, reduce_tau, riemann_check};
use kleinprym::projline::{
    cross_ratio, normalize_tuple, tuple_of_params, MarkingConvention, MobiusMap, ProjectivePoint,
};
use kleinprym::torsion::{weil_pairing, TorsionPoint};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=50).prop_map(|(n, d)| ratio(n, d))
}

fn domain_point() -> impl Strategy<Value = FamilyParams> {
    (rational(), rational()).prop_filter_map("outside the domain", |(a, b)| check_domain(&a, &b).ok())
}

fn phi_point() -> impl Strategy<Value = FamilyParams> {
    domain_point().prop_filter("a + b = 0", |p| p.phi_defined())
}

fn mobius() -> impl Strategy<Value = MobiusMap> {
    (rational(), rational(), rational(), rational())
        .prop_filter_map("singular", |(a, b, c, d)| MobiusMap::new(a, b, c, d).ok())
}

fn point() -> impl Strategy<Value = ProjectivePoint> {
    prop_oneof![9 => rational().prop_map(ProjectivePoint::finite), 1 => Just(ProjectivePoint::infinity())]
}

fn torsion_point(level: u32) -> impl Strategy<Value = TorsionPoint> {
    prop::array::uniform4(0i64..level as i64).prop_map(move |c| TorsionPoint::new(level, c).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cross_ratio_is_mobius_invariant(ps in prop::array::uniform4(point()), m in mobius()) {
        if let Ok(cr) = cross_ratio(&ps[0], &ps[1], &ps[2], &ps[3]) {
            let q: Vec<_> = ps.iter().map(|p| m.apply(p)).collect();
            prop_assert_eq!(cross_ratio(&q[0], &q[1], &q[2], &q[3]).unwrap(), cr);
        }
    }

    #[test]
    fn ordered_normalization_recovers_params(p in domain_point(), m in mobius()) {
        let n = normalize_tuple(&tuple_of_params(&p).push(&m), MarkingConvention::ORDERED).unwrap();
        prop_assert_eq!(n.len(), 1);
        prop_assert_eq!(&n[0].params, &p);
    }

    #[test]
    fn unordered_normalization_contains_params(p in domain_point(), m in mobius()) {
        for (_, conv) in MarkingConvention::NAMED {
            let n = normalize_tuple(&tuple_of_params(&p).push(&m), conv).unwrap();
            let sorted = if p.b() < p.a() { p.swapped() } else { p.clone() };
            let target = if conv.pair_ordered { p.clone() } else { sorted };
            prop_assert!(n.iter().any(|x| x.params == target));
        }
    }

    #[test]
    fn deck_involution_squares_to_the_swap(p in phi_point()) {
        prop_assert_eq!(phi_params(&phi_params(&p).unwrap()).unwrap(), p.swapped());
    }

    #[test]
    fn fiber_invariants_are_preserved(p in phi_point()) {
        let q = phi_params(&p).unwrap();
        prop_assert_eq!(prym_fiber_invariants(&p).unwrap(), prym_fiber_invariants(&q).unwrap());
    }

    #[test]
    fn quotient_identities_hold(p in domain_point()) {
        for label in CurveLabel::QUOTIENTS {
            prop_assert!(verify_quotient_identity(&quotient_map(label).unwrap(), &p), "{}", label.name());
        }
    }

    #[test]
    fn fixed_point_profile_is_constant(p in domain_point()) {
        prop_assert_eq!(fixed_point_profile(&p), [4, 4, 4, 0, 0, 0]);
    }

    #[test]
    fn weil_pairing_is_alternating_and_bilinear(
        x in torsion_point(6), y in torsion_point(6), z in torsion_point(6)
    ) {
        let wrap = |r: Rational| r.clone() - r.floor();
        prop_assert_eq!(weil_pairing(&x, &x).unwrap(), ratio(0, 1));
        prop_assert_eq!(weil_pairing(&x, &y).unwrap(), wrap(-weil_pairing(&y, &x).unwrap()));
        let lhs = weil_pairing(&x.add(&y).unwrap(), &z).unwrap();
        let rhs = wrap(weil_pairing(&x, &z).unwrap() + weil_pairing(&y, &z).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn two_isogeny_maps_torsion_onto_the_quotient(r1 in -9i64..=9, r2 in -9i64..=9) {
        let r3 = -r1 - r2;
        prop_assume!(r1 != r2 && r1 != r3 && r2 != r3);
        // (x - r1)(x - r2)(x - r3) with r1 + r2 + r3 = 0
        let e = WeierstrassCurve::from_ints(r1 * r2 + r1 * r3 + r2 * r3, -r1 * r2 * r3).unwrap();
        let k = KernelPoint::new(&e, CurvePoint::from_ints(r1, 0)).unwrap();
        let q = velu_quotient(&e, &k).unwrap();
        let img = velu_image(&e, &k, &CurvePoint::from_ints(r2, 0)).unwrap();
        prop_assert!(q.contains(&img));
        let back = velu_quotient(&q, &KernelPoint::new(&q, img).unwrap()).unwrap();
        prop_assert_eq!(j_weierstrass(&back), j_weierstrass(&e));
    }

    #[test]
    fn polynomial_division_reconstructs(a in prop::collection::vec(-9i64..=9, 1..7), b in prop::collection::vec(-9i64..=9, 1..5)) {
        let (f, g) = (Polynomial::from_ints(&a), Polynomial::from_ints(&b));
        prop_assume!(!g.is_zero());
        let (q, r) = f.div_rem(&g).unwrap();
        prop_assert_eq!(&(&q * &g) + &r, f);
        prop_assert!(r.is_zero() || r.degree() < g.degree());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn agm_tau_is_stable_under_doubled_precision(p in domain_point()) {
        for label in CurveLabel::ELLIPTIC {
            let model = curve_equation(label, &p).unwrap();
            let lo = elliptic_periods_agm(&model, 128).unwrap().tau;
            let hi = elliptic_periods_agm(&model, 256).unwrap().tau;
            prop_assert!((&lo - &hi).abs_le_pow2(-120), "{}", label.name());
        }
    }

    #[test]
    fn analytic_j_is_modular(re in -3.0f64..3.0, im in 0.2f64..3.0) {
        let p = 160;
        let tau = ComplexApprox::from_f64(re, im, p);
        let j = analytic_j(&tau, p).unwrap();
        let shifted = analytic_j(&(&tau + &ComplexApprox::one(p)), p).unwrap();
        let inverted = analytic_j(&(-&tau.recip().unwrap()), p).unwrap();
        let scale = j.abs().max(&real_pow2(0, p));
        let tol = |d: ComplexApprox| {
            let scaled = d.abs().mul(&real_pow2(80, p), p, astro_float::RoundingMode::ToEven);
            real_cmp(&scaled, &scale) != Ordering::Greater
        };
        prop_assert!(tol(&j - &shifted));
        prop_assert!(tol(&j - &inverted));
        let t = reduce_tau(&tau).unwrap();
        prop_assert!(t.re_f64().abs() <= 0.5 + 1e-12);
        prop_assert!(t.abs_f64() >= 1.0 - 1e-12);
    }

    #[test]
    fn riemann_positivity_tracks_upper_half_plane(
        x1 in -2.0f64..2.0, y1 in 0.1f64..3.0, x2 in -2.0f64..2.0, y2 in 0.1f64..3.0
    ) {
        let p = 128;
        let z1 = ComplexApprox::from_f64(x1, y1, p);
        let z2 = ComplexApprox::from_f64(x2, y2, p);
        let rc = riemann_check(&prym_period_matrix(&z1, &z2).unwrap());
        prop_assert!(rc.satisfied);
        prop_assert_eq!(rc.symmetry_residual, 0.0);
        let mut m = prym_period_matrix(&z1, &z2).unwrap();
        m.rows[1][1] = &z1 + &z2.conj();
        prop_assert!(!riemann_check(&m).satisfied);
    }
}
