use apotent::exact::{rational_pow, RatPoly};
use apotent::schwarz::{build_schwarz, parity_split, q_closed_form, SchwarzSpec};
use proptest::prelude::*;
use rug::Rational;

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=7).prop_filter("nonzero", |(n, _)| *n != 0).prop_map(|(n, d)| Rational::from((n, d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn last_charpoly_is_pure_power(n in 1u32..=24, a in nonzero_rational()) {
        let spec = build_schwarz(n, &a).unwrap();
        let report = spec.verify_apotent();
        prop_assert!(report.holds(), "{:?}", report.witness);
        let seq = spec.charpoly_sequence();
        prop_assert_eq!(seq.last(), &RatPoly::linear_power(&a, n));
    }

    #[test]
    fn coefficients_scale_with_a(n in 1u32..=18, a in nonzero_rational(), frac in 0.0f64..1.0) {
        let k = ((n as f64 * frac) as usize).min(n as usize);
        let unit = SchwarzSpec::new(n, Rational::from(1)).unwrap().charpoly(k);
        let scaled = SchwarzSpec::new(n, a.clone()).unwrap().charpoly(k);
        for i in 0..=k {
            prop_assert_eq!(scaled.coeff(i), rational_pow(&a, (k - i) as i64) * unit.coeff(i));
        }
    }

    #[test]
    fn eigenvector_chain(n in 1u32..=16, a in nonzero_rational()) {
        prop_assert!(build_schwarz(n, &a).unwrap().eigvector_chain().holds());
    }

    #[test]
    fn q_has_the_opposite_parity_of_n(n in 1u32..=20, a in nonzero_rational()) {
        let (_, q) = parity_split(&RatPoly::linear_power(&a, n), n);
        let q_from_a = q_closed_form(n, &a);
        prop_assert_eq!(&q, &q_from_a);
        // (z - a)^n = Q + q with Q of the parity of n; q carries the other parity
        for (i, c) in q.coeffs().iter().enumerate() {
            if (i as u32 + n).is_multiple_of(2) {
                prop_assert!(*c == 0, "n={} i={}", n, i);
            }
        }
    }
}

#[test]
fn tampered_coefficient_is_reported() {
    let a = Rational::from(-1);
    let spec = build_schwarz(6, &a).unwrap();
    let mut b = spec.b().to_vec();
    b[3] += 1u32;
    let bad = SchwarzSpec::with_coefficients(6, a, b).unwrap();
    assert!(!bad.verify_apotent().holds());
}
