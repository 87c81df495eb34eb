use proptest::prelude::*;

use sliceforge::cauchy::{extract_all, ContourSpec};
use sliceforge::clifford::{sup_over_sphere, CliffordNumber, ImaginaryUnit, Paravector};
use sliceforge::growth::monomial_log_norm;
use sliceforge::operators::InfOrderOperator;
use sliceforge::proximate::ProximateOrder;
use sliceforge::series::SliceSeries;

fn clifford(n: usize) -> impl Strategy<Value = CliffordNumber> {
    prop::collection::vec(-1.0f64..1.0, 1 << n).prop_map(move |c| CliffordNumber::from_coeffs(n, c).unwrap())
}

fn poly(n: usize, max_deg: usize) -> impl Strategy<Value = SliceSeries> {
    prop::collection::vec(clifford(n), 1..=max_deg + 1).prop_map(move |c| SliceSeries::new(n, c).unwrap())
}

fn unit(n: usize) -> impl Strategy<Value = ImaginaryUnit> {
    prop::collection::vec(-1.0f64..1.0, n)
        .prop_filter("nonzero", |v| v.iter().map(|x| x * x).sum::<f64>() > 1e-4)
        .prop_map(|v| ImaginaryUnit::new(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_is_associative((a, b, c) in (1usize..=4).prop_flat_map(|n| (clifford(n), clifford(n), clifford(n)))) {
        let lhs = &(&a * &b) * &c;
        let rhs = &a * &(&b * &c);
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn product_distributes((a, b, c) in (1usize..=4).prop_flat_map(|n| (clifford(n), clifford(n), clifford(n)))) {
        let lhs = &a * &(&b + &c);
        let rhs = &(&a * &b) + &(&a * &c);
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn norm_is_submultiplicative_up_to_dimension((a, b) in (1usize..=4).prop_flat_map(|n| (clifford(n), clifford(n)))) {
        let n = a.n() as f64;
        prop_assert!((&a * &b).norm() <= 2f64.powf(n / 2.0) * a.norm() * b.norm() * (1.0 + 1e-12) + 1e-15);
    }

    #[test]
    fn paravector_times_conjugate_is_norm_squared(x0 in -3.0f64..3.0, v in prop::collection::vec(-3.0f64..3.0, 1..=4)) {
        let p = Paravector::new(x0, v).unwrap();
        let prod = &p.to_clifford() * &p.conj().to_clifford();
        let want = CliffordNumber::scalar(p.n(), p.norm_sqr());
        prop_assert!(prod.max_abs_diff(&want) < 1e-12);
    }

    #[test]
    fn sphere_supremum_dominates_samples((a, b, j) in (1usize..=4).prop_flat_map(|n| (clifford(n), clifford(n), unit(n)))) {
        let sampled = (&a + &(&j.to_clifford() * &b)).norm();
        prop_assert!(sampled <= sup_over_sphere(&a, &b) * (1.0 + 1e-12) + 1e-14);
    }

    #[test]
    fn star_product_matches_pointwise_on_the_real_axis(
        (f, g) in (1usize..=3).prop_flat_map(|n| (poly(n, 6), poly(n, 6))),
        x in -1.5f64..1.5,
    ) {
        let n = f.n();
        let at = Paravector::real(n, x);
        let lhs = f.star_product(&g).unwrap().evaluate(&at);
        let rhs = &f.evaluate(&at) * &g.evaluate(&at);
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-9 * (1.0 + rhs.norm()));
    }

    #[test]
    fn star_product_is_associative((f, g, h) in (1usize..=3).prop_flat_map(|n| (poly(n, 4), poly(n, 4), poly(n, 4)))) {
        let lhs = f.star_product(&g).unwrap().star_product(&h).unwrap();
        let rhs = f.star_product(&g.star_product(&h).unwrap()).unwrap();
        prop_assert!(lhs.max_coeff_diff(&rhs) < 1e-11);
    }

    #[test]
    fn cauchy_extraction_recovers_coefficients(f in (1usize..=3).prop_flat_map(|n| poly(n, 12))) {
        let c = ContourSpec::with_radius(f.n(), 1.0).unwrap();
        let got = extract_all(&f, &c);
        for (l, a) in got.iter().enumerate() {
            prop_assert!(a.max_abs_diff(&f.coeff(l)) < 1e-10);
        }
    }

    #[test]
    fn operator_application_is_right_linear(
        (coeffs, f, g, c) in (1usize..=3).prop_flat_map(|n| (
            prop::collection::vec(poly(n, 2), 1..=4),
            poly(n, 6),
            poly(n, 6),
            clifford(n),
        )),
    ) {
        let p = InfOrderOperator::new(coeffs).unwrap();
        let lhs = p.apply(&f.add(&g.mul_right(&c)).unwrap()).unwrap();
        let rhs = p.apply(&f).unwrap().add(&p.apply(&g).unwrap().mul_right(&c)).unwrap();
        prop_assert!(lhs.max_coeff_diff(&rhs) < 1e-11);
    }

    #[test]
    fn phi_inverts_the_power_map(rho in 0.3f64..4.0, b in -0.5f64..0.5, ln_t in -5.0f64..40.0) {
        let po = ProximateOrder::log_shift(rho, b, std::f64::consts::E.powi(2)).unwrap().normalize(1.0).unwrap();
        let r = po.log_phi(ln_t.exp()).unwrap().exp();
        prop_assert!((po.log_power(r) - ln_t).abs() < 1e-9 * (1.0 + ln_t.abs()));
    }

    #[test]
    fn monomial_norm_decreases_in_sigma(l in 1usize..80, s in 0.1f64..3.0, ds in 0.01f64..2.0) {
        let po = ProximateOrder::constant(1.0).unwrap();
        let weak = monomial_log_norm(&po, s, l).unwrap();
        let strong = monomial_log_norm(&po, s + ds, l).unwrap();
        prop_assert!(strong <= weak + 1e-12);
    }

    #[test]
    fn clifford_serialization_round_trips(a in (1usize..=4).prop_flat_map(clifford)) {
        let back: CliffordNumber = serde_json::from_str(&serde_json::to_string(&a).unwrap()).unwrap();
        prop_assert!(back.max_abs_diff(&a) < 1e-15);
    }
}
