use bohr_core::extremal::build_extremal_pair;
use bohr_core::quad::integrate_fn;
use bohr_core::radius::{self, ClassTag, Exponent, RadiusProblem, CAP};
use bohr_core::series::EvalOptions;
use bohr_core::weights::weighted_sum;
use bohr_core::{CoeffBoundProvider, PsiModel, Series, WeightSequence, C64};
use proptest::prelude::*;

fn coeff() -> impl Strategy<Value = C64> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(re, im)| C64::new(re, im))
}

fn series(order: usize) -> impl Strategy<Value = Series> {
    prop::collection::vec(coeff(), order + 1).prop_map(|c| Series::new(c).unwrap())
}

fn zero_constant(order: usize) -> impl Strategy<Value = Series> {
    prop::collection::vec(coeff(), order).prop_map(|c| {
        let mut v = vec![C64::new(0.0, 0.0)];
        v.extend(c);
        Series::new(v).unwrap()
    })
}

/// Real polynomial of degree at most 16, zero-padded to order 64.
fn polynomial() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0..1.0f64, 1..=17)
}

fn padded(c: &[f64]) -> Series {
    Series::from_real_fn(64, |n| c.get(n).copied().unwrap_or(0.0))
}

fn janowski() -> impl Strategy<Value = (f64, f64)> {
    (-1.0..0.8f64, 0.05..1.0f64).prop_map(|(e, gap)| (e, (e + gap * (1.0 - e)).min(1.0)))
        .prop_filter("D > E", |(e, d)| d > e)
        .prop_map(|(e, d)| (d, e))
}

fn max_diff(a: &Series, b: &Series) -> f64 {
    a.coeffs().iter().zip(b.coeffs()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn scale(a: &Series) -> f64 {
    a.coeffs().iter().map(|c| c.norm()).fold(1.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in series(24), b in series(24), c in series(24)) {
        let tol = 1e-13 * 24.0 * 24.0;
        prop_assert!(max_diff(&(&a + &b), &(&b + &a)) == 0.0);
        prop_assert!(max_diff(&(&a * &b), &(&b * &a)) <= tol);
        prop_assert!(max_diff(&(&(&a + &b) + &c), &(&a + &(&b + &c))) <= tol);
        prop_assert!(max_diff(&(&(&a * &b) * &c), &(&a * &(&b * &c))) <= tol * scale(&(&a * &b)));
        prop_assert!(max_diff(&(&a * &(&b + &c)), &(&(&a * &b) + &(&a * &c))) <= tol);
    }

    #[test]
    fn aligned_truncation(a in series(30), b in series(12)) {
        prop_assert_eq!((&a + &b).order(), 12);
        prop_assert_eq!((&a * &b).order(), 12);
    }

    #[test]
    fn exp_is_a_homomorphism(a in zero_constant(64), b in zero_constant(64)) {
        let lhs = (&a + &b).exp().unwrap();
        let rhs = &a.exp().unwrap() * &b.exp().unwrap();
        prop_assert!(max_diff(&lhs, &rhs) <= 1e-10 * scale(&lhs));
    }

    #[test]
    fn sqrt_squares_back(b in zero_constant(48)) {
        let a = &Series::one(48) + &b.scale_real(0.3);
        let s = a.sqrt().unwrap();
        prop_assert!(max_diff(&(&s * &s), &a) <= 1e-10 * scale(&a));
    }

    #[test]
    fn derivative_inverts_integrate(a in series(40)) {
        let back = a.integrate().derivative();
        prop_assert_eq!(back.order(), a.order());
        prop_assert!(max_diff(&back, &a) <= 1e-15 * scale(&a));
    }

    #[test]
    fn tail_sum_monotone(a in polynomial(), r1 in 0.0..0.95f64, r2 in 0.0..0.95f64, n in 0usize..20) {
        let s = padded(&a);
        let opts = EvalOptions::default();
        let (lo, hi) = if r1 <= r2 { (r1, r2) } else { (r2, r1) };
        prop_assert!(s.tail_sum(n, lo, &opts).unwrap() <= s.tail_sum(n, hi, &opts).unwrap());
        prop_assert!(s.tail_sum(n + 1, hi, &opts).unwrap() <= s.tail_sum(n, hi, &opts).unwrap());
    }

    #[test]
    fn double_bohr_integral_matches_quadrature(a in polynomial(), r in 0.0..0.9f64) {
        let s = padded(&a);
        let poly = |t: f64| a.iter().rev().fold(0.0, |acc, c| acc * t + c);
        let inner = |u: f64| if u == 0.0 {
            a[0]
        } else {
            integrate_fn(poly, 0.0, u, 1e-12).unwrap().value / u
        };
        let nested = integrate_fn(inner, 0.0, r, 1e-10).unwrap().value;
        let series = s.double_bohr_integral(r, &EvalOptions::default()).unwrap();
        prop_assert!((series - nested).abs() <= 1e-8, "{} vs {}", series, nested);
    }

    #[test]
    fn operator_axioms_at_zero(a in polynomial(), b in polynomial(), alpha in coeff(), r in 0.0..0.5f64) {
        let opts = EvalOptions::default();
        let (f, g) = (padded(&a), padded(&b));
        let m = |s: &Series| s.tail_sum(0, r, &opts).unwrap();
        let slack = 1e-12 * (1.0 + m(&f) + m(&g));
        prop_assert!(m(&f) >= 0.0);
        prop_assert!(m(&(&f + &g)) <= m(&f) + m(&g) + slack);
        prop_assert!((m(&f.scale(alpha)) - alpha.norm() * m(&f)).abs() <= slack);
        prop_assert!(m(&(&f * &g)) <= m(&f) * m(&g) + slack * (1.0 + m(&f) * m(&g)));
        prop_assert!((m(&Series::one(64)) - 1.0).abs() == 0.0);
    }

    #[test]
    fn operator_axioms_for_tails(a in polynomial(), b in polynomial(), alpha in coeff(), r in 0.0..0.5f64, n in 1usize..4) {
        let opts = EvalOptions::default();
        let (f, g) = (padded(&a), padded(&b));
        let m = |s: &Series| s.tail_sum(n, r, &opts).unwrap();
        let slack = 1e-12 * (1.0 + m(&f) + m(&g));
        prop_assert!(m(&f) >= 0.0);
        prop_assert!(m(&(&f + &g)) <= m(&f) + m(&g) + slack);
        prop_assert!((m(&f.scale(alpha)) - alpha.norm() * m(&f)).abs() <= slack);
    }

    #[test]
    fn psi_eval_matches_series((d, e) in janowski(), x in -0.9..0.9f64) {
        let psi = PsiModel::janowski(d, e).unwrap();
        let s = psi.series(512);
        let direct = psi.eval(x).unwrap();
        let summed = s.eval_real(x, &EvalOptions::default()).unwrap();
        prop_assert!((direct - summed).abs() <= 1e-10 * direct.abs().max(1.0));
    }

    #[test]
    fn psi_majorant_tail_matches_and_is_monotone((d, e) in janowski(), t in 0.0..0.9f64, n in 1usize..10) {
        let psi = PsiModel::janowski(d, e).unwrap();
        let opts = EvalOptions::default();
        let direct = psi.majorant_tail(n, t).unwrap();
        let summed = psi.series(512).tail_sum(n, t, &opts).unwrap();
        prop_assert!((direct - summed).abs() <= 1e-10);
        prop_assert!(psi.majorant_tail(n + 1, t).unwrap() <= direct + 1e-15);
        prop_assert!(psi.majorant_tail(n, 0.5 * t).unwrap() <= direct + 1e-15);
    }

    #[test]
    fn extremal_normalisation((d, e) in janowski()) {
        let pair = build_extremal_pair(&PsiModel::janowski(d, e).unwrap(), 64).unwrap();
        prop_assert_eq!(pair.f0.coeffs()[0], C64::new(0.0, 0.0));
        prop_assert!((pair.f0.coeffs()[1] - C64::new(1.0, 0.0)).norm() <= 1e-15);
        let lhs = pair.f0.div_by_z().unwrap();
        prop_assert!(max_diff(&lhs, &pair.k_psi.derivative()) <= 1e-12 * scale(&lhs));
    }

    #[test]
    fn weights_partition((d, e) in janowski(), r in 0.01..0.6f64) {
        let m = CoeffBoundProvider::JanowskiProduct { d, e };
        let sum = |w: WeightSequence| weighted_sum(&m, &w, r, 1e-15).unwrap().value;
        let odd = sum(WeightSequence::OddPowers);
        let even = sum(WeightSequence::EvenPowers);
        let all = sum(WeightSequence::PowerTail(1));
        prop_assert!((odd + even - all).abs() <= 1e-12 * all.max(1.0));
    }

    #[test]
    fn weighted_sum_monotone((d, e) in janowski(), r1 in 0.01..0.6f64, r2 in 0.01..0.6f64, n in 1usize..6) {
        let m = CoeffBoundProvider::JanowskiProduct { d, e };
        let sum = |w: &WeightSequence, r: f64| weighted_sum(&m, w, r, 1e-15).unwrap().value;
        let w = WeightSequence::PowerTail(n);
        let (lo, hi) = if r1 <= r2 { (r1, r2) } else { (r2, r1) };
        if hi > lo {
            prop_assert!(sum(&w, lo) < sum(&w, hi));
        }
        prop_assert!(sum(&WeightSequence::PowerTail(n + 1), hi) <= sum(&w, hi));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn janowski_paths_agree((d, e) in janowski(), beta in 0.0..0.2f64, m in 1u32..4, n in 1usize..4) {
        let psi = PsiModel::janowski(d, e).unwrap();
        let closed = RadiusProblem::new(ClassTag::Janowski, psi)
            .with_beta(beta)
            .with_m(Exponent::Finite(m))
            .with_weights(WeightSequence::PowerTail(n));
        let generic = RadiusProblem { class: ClassTag::GenStarlike, ..closed.clone() };
        match (radius::solve(&closed), radius::solve(&generic)) {
            (Ok(a), Ok(b)) => {
                let tol = closed.numeric.root_tol;
                prop_assert!((a.r0 - b.r0).abs() <= 10.0 * tol, "{} vs {}", a.r0, b.r0);
                prop_assert!(a.residual <= tol && a.bracket_ok);
                prop_assert_eq!(a.rb, a.r0);
                let eq = radius::build_equation(&closed).unwrap();
                let mut prev = eq.lhs(0.0).unwrap();
                for i in 1..=64 {
                    let v = eq.lhs(a.r0 * i as f64 / 64.0).unwrap();
                    prop_assert!(v > prev);
                    prev = v;
                }
            }
            (Err(a), Err(b)) => prop_assert_eq!(
                std::mem::discriminant(&a),
                std::mem::discriminant(&b)
            ),
            (a, b) => prop_assert!(false, "paths disagree: {:?} vs {:?}", a.err(), b.err()),
        }
    }

    #[test]
    fn cap_rule((d, e) in janowski(), n in 1usize..6) {
        let psi = PsiModel::janowski(d, e).unwrap();
        let p = RadiusProblem::new(ClassTag::GenStarlikeExtremal, psi)
            .with_weights(WeightSequence::PowerTail(n));
        if let Ok(res) = radius::solve(&p) {
            prop_assert_eq!(res.rb, res.r0.min(CAP));
            prop_assert_eq!(res.capped, res.r0 > CAP);
        }
    }
}
