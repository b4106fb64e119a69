use proptest::prelude::*;

use dops_core::families::{
    laguerre_type_by_gf, laguerre_type_by_recurrence, ml_by_gf, ml_by_recurrence, LagParams,
    MlFamily, MlParams,
};
use dops_core::identities::{
    verify_hahn, verify_mrrl2, verify_orthogonality, verify_sr_block, Status,
};
use dops_core::orthogonality::{fit_recurrence, moments_by_inversion};
use dops_core::poly::delta_monomial_closed_form;
use dops_core::rational::{from_usize, parse_rational};
use dops_core::series::{gf_binomial_xw, gf_ratio_power, Series};
use dops_core::{Poly, Rational};

fn rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn nonzero() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |r| *r != Rational::from_integer(0.into()))
}

fn poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(rational(), 0..=max_deg + 1).prop_map(Poly::from_coeffs)
}

fn ml_params() -> impl Strategy<Value = MlParams> {
    (1usize..=3)
        .prop_flat_map(|d| {
            (
                Just(d),
                rational(),
                rational(),
                prop::collection::vec(rational(), d - 1),
            )
        })
        .prop_filter_map("alpha = beta", |(d, a, b, c)| {
            MlParams::new(d, a, b, c).ok()
        })
}

fn lag_params() -> impl Strategy<Value = LagParams> {
    (1usize..=3)
        .prop_flat_map(|d| {
            (
                Just(d),
                rational(),
                rational(),
                rational(),
                prop::collection::vec(rational(), d),
            )
        })
        .prop_filter_map("invalid", |(d, a, be, th, b)| {
            LagParams::new(d, a, be, th, b).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rational_text_round_trip(r in rational()) {
        prop_assert_eq!(parse_rational(&r.to_string()).unwrap(), r);
    }

    #[test]
    fn product_evaluates_pointwise(p in poly(5), q in poly(5), x in rational()) {
        prop_assert_eq!((&p * &q).eval(&x), p.eval(&x) * q.eval(&x));
    }

    #[test]
    fn delta_matches_closed_form(n in 0usize..10, w in nonzero()) {
        let xn = Poly::monomial(from_usize(1), n);
        prop_assert_eq!(xn.delta(&w).unwrap(), delta_monomial_closed_form(n, &w));
    }

    #[test]
    fn delta_lowers_falling_factorial(n in 1usize..9, w in nonzero()) {
        let lhs = Poly::falling_factorial(&w, n).delta(&w).unwrap();
        prop_assert_eq!(lhs, Poly::falling_factorial(&w, n - 1).scale(&from_usize(n)));
    }

    #[test]
    fn rising_is_shifted_falling(n in 0usize..9, w in rational()) {
        let shifted = Poly::falling_factorial(&w, n).shift(&(&w * from_usize(n.saturating_sub(1))));
        prop_assert_eq!(Poly::rising_factorial(&w, n), shifted);
    }

    #[test]
    fn exp_log_inverse(c in prop::collection::vec(rational(), 1..7)) {
        let mut coeffs = vec![Rational::from_integer(0.into())];
        coeffs.extend(c);
        let s = Series::from_scalars(coeffs);
        prop_assert_eq!(s.exp().unwrap().log().unwrap(), s);
    }

    #[test]
    fn ratio_power_splits(a in rational(), b in rational()) {
        prop_assume!(a != b);
        let w = &a - &b;
        let direct = gf_ratio_power(&a, &b, 6).unwrap();
        let split = gf_binomial_xw(&w, &(-&b / &w), 6)
            .unwrap()
            .mul(&gf_binomial_xw(&-&w, &(&a / &w), 6).unwrap());
        prop_assert_eq!(direct, split);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ml_routes_agree(p in ml_params()) {
        prop_assert_eq!(ml_by_recurrence(&p, 9), ml_by_gf(&p, 9).unwrap());
    }

    #[test]
    fn laguerre_routes_agree(p in lag_params()) {
        prop_assert_eq!(laguerre_type_by_recurrence(&p, 8), laguerre_type_by_gf(&p, 8).unwrap());
    }

    #[test]
    fn favard_round_trip(p in ml_params()) {
        let polys = ml_by_recurrence(&p, 9);
        let table = fit_recurrence(&polys, p.d()).unwrap();
        let regen = table.regenerate();
        prop_assert_eq!(&regen[..], &polys[..regen.len()]);
    }

    #[test]
    fn dual_moments_are_kronecker(p in ml_params()) {
        let polys = ml_by_recurrence(&p, 8);
        let m = moments_by_inversion(&polys, p.d()).unwrap();
        for r in 0..p.d() {
            for (n, pn) in polys.iter().enumerate() {
                let expected = Rational::from_integer(i64::from(r == n).into());
                prop_assert_eq!(m.apply(r, pn).unwrap(), expected);
            }
        }
    }

    #[test]
    fn orthogonality_agrees_with_recurrence(p in ml_params()) {
        let polys = ml_by_recurrence(&p, 9);
        let r = verify_orthogonality(&polys, p.d(), p.to_map()).unwrap();
        prop_assert!(r.status != Status::Fail, "{:?}", r);
    }

    #[test]
    fn hahn_and_structure_hold(p in ml_params()) {
        let fam = MlFamily::generate(p, 8).unwrap();
        prop_assert!(verify_mrrl2(&fam).unwrap().is_pass());
        prop_assert!(verify_hahn(&fam).unwrap().is_pass());
        for r in verify_sr_block(&fam).unwrap() {
            prop_assert!(r.is_pass(), "{:?}", r);
        }
    }
}
