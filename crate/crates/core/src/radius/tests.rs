use std::sync::Arc;

use super::*;
use crate::extremal::{build_extremal_pair, convex_distance, ks_distance};
use crate::quad::integrate_fn;

const SQ: f64 = 0.171_572_875_253_809_9; // 3 - 2√2

fn classical(class: ClassTag) -> RadiusProblem {
    RadiusProblem::new(class, PsiModel::Classical)
}

fn lhs_monotone(p: &RadiusProblem, upto: f64) {
    let eq = build_equation(p).unwrap();
    let mut prev = eq.lhs(0.0).unwrap();
    for i in 1..=64 {
        let r = upto * i as f64 / 64.0;
        let v = eq.lhs(r).unwrap();
        assert!(v > prev, "{} not increasing at r={r}", p.class);
        prev = v;
    }
}

fn certified(res: &RadiusResult, p: &RadiusProblem) {
    assert!(res.residual <= p.numeric.root_tol, "residual {}", res.residual);
    assert!(res.bracket_ok);
    assert!(res.condition_ok);
    assert!(res.r0 > 0.0 && res.r0 < 1.0 && res.rb <= res.r0);
}

#[test]
fn gen_starlike_classical() {
    let p = classical(ClassTag::GenStarlike).with_bounds(CoeffBoundProvider::ClassicalN);
    let res = solve_gen_starlike(&p).unwrap();
    assert!((res.r0 - SQ).abs() < 1e-9, "{}", res.r0);
    assert!(!res.capped);
    assert_eq!(res.rb, res.r0);
    certified(&res, &p);
    lhs_monotone(&p, 0.9);
}

#[test]
fn gen_starlike_order_half() {
    let p = RadiusProblem::new(ClassTag::GenStarlike, PsiModel::order_alpha(0.5).unwrap())
        .with_bounds(CoeffBoundProvider::OrderAlphaProduct { alpha: 0.5 });
    let res = solve_gen_starlike(&p).unwrap();
    assert!((res.r0 - 1.0 / 3.0).abs() < 1e-9);
    certified(&res, &p);
}

#[test]
fn condition_violations() {
    let p = classical(ClassTag::GenStarlike).with_beta(1.0).with_m(Exponent::Finite(1));
    assert!(matches!(
        solve_gen_starlike(&p),
        Err(RadiusError::ConditionViolated { .. })
    ));
    let p = classical(ClassTag::ClassicalStarlike)
        .with_beta(1.0)
        .with_m(Exponent::Finite(1))
        .with_weights(WeightSequence::none());
    assert!(matches!(solve_classical(&p), Err(RadiusError::ConditionViolated { .. })));
    // (1 - E)^((D - E)/E) with D = 0.5, E = -0.5 is 1.5^-2
    let psi = PsiModel::janowski(0.5, -0.5).unwrap();
    let p = RadiusProblem::new(ClassTag::Janowski, psi).with_beta(1.0 / 2.25);
    assert!(matches!(solve_janowski(&p), Err(RadiusError::ConditionViolated { .. })));
}

#[test]
fn extremal_variant_matches_and_caps() {
    let generic = solve(&classical(ClassTag::GenStarlike)).unwrap();
    let p = classical(ClassTag::GenStarlikeExtremal);
    let res = solve_gen_starlike_extremal(&p).unwrap();
    assert!((res.r0 - generic.r0).abs() < 1e-10);
    assert_eq!(res.rb, res.r0.min(CAP));

    // larger N pushes the root past 1/3
    let mut capped = None;
    for n in 1..=12 {
        let p = classical(ClassTag::GenStarlikeExtremal).with_weights(WeightSequence::PowerTail(n));
        let res = solve(&p).unwrap();
        if res.r0 > CAP {
            capped = Some(res);
            break;
        }
    }
    let res = capped.expect("some N should exceed the cap");
    assert!(res.capped);
    assert_eq!(res.rb, CAP);
    assert!(res.sharp_probe.is_none());

    let p = classical(ClassTag::GenStarlikeExtremal)
        .with_m(Exponent::Finite(1))
        .with_weights(WeightSequence::none());
    assert!((solve(&p).unwrap().r0 - SQ).abs() < 1e-9);
}

#[test]
fn closed_form_paths_agree_with_generic() {
    let cases = [
        (PsiModel::janowski(1.0, -1.0).unwrap(), ClassTag::Janowski),
        (PsiModel::janowski(1.0, 0.0).unwrap(), ClassTag::Janowski),
        (PsiModel::janowski(0.5, -0.5).unwrap(), ClassTag::Janowski),
        (PsiModel::janowski(0.8, 0.3).unwrap(), ClassTag::Janowski),
        (PsiModel::order_alpha(0.25).unwrap(), ClassTag::OrderAlpha),
        (PsiModel::Classical, ClassTag::ClassicalStarlike),
    ];
    for (psi, class) in cases {
        for (beta, m) in [(0.0, Exponent::Infinite), (0.1, Exponent::Finite(2)), (0.0, Exponent::Finite(1))] {
            for w in [WeightSequence::PowerTail(1), WeightSequence::OddPowers] {
                let closed = RadiusProblem::new(class, psi.clone())
                    .with_beta(beta)
                    .with_m(m)
                    .with_weights(w.clone());
                let generic = RadiusProblem { class: ClassTag::GenStarlike, ..closed.clone() };
                let a = solve(&closed).unwrap();
                let b = solve(&generic).unwrap();
                let tol = 10.0 * closed.numeric.root_tol;
                assert!((a.r0 - b.r0).abs() < tol, "{psi} {beta} {m} {w}: {} vs {}", a.r0, b.r0);
                certified(&a, &closed);
            }
        }
    }
    let p = RadiusProblem::new(ClassTag::Janowski, PsiModel::janowski(1.0, -1.0).unwrap());
    assert!((solve_janowski(&p).unwrap().r0 - SQ).abs() < 1e-9);
}

#[test]
fn closed_form_classes_check_psi() {
    let p = RadiusProblem::new(ClassTag::OrderAlpha, PsiModel::Classical);
    assert!(matches!(solve(&p), Err(RadiusError::InvalidProblem(_))));
    let p = RadiusProblem::new(ClassTag::ClassicalStarlike, PsiModel::order_alpha(0.5).unwrap());
    assert!(matches!(solve(&p), Err(RadiusError::InvalidProblem(_))));
    let p = classical(ClassTag::GenStarlike);
    assert!(matches!(solve_ks(&p), Err(RadiusError::InvalidProblem(_))));
}

#[test]
fn classical_odd_powers_by_bisection() {
    let p = classical(ClassTag::ClassicalStarlike).with_weights(WeightSequence::OddPowers);
    let res = solve_classical(&p).unwrap();
    let g = |r: f64| r * (1.0 + r * r) / (1.0 - r * r).powi(2) - 0.25;
    let (mut lo, mut hi) = (0.0, 0.5);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    assert!((res.r0 - lo).abs() < 1e-11);
    assert!(g(res.r0).abs() < 1e-10);
}

#[test]
fn order_half_closed_form() {
    let p = RadiusProblem::new(ClassTag::OrderAlpha, PsiModel::order_alpha(0.5).unwrap());
    assert!((solve_order_alpha(&p).unwrap().r0 - 1.0 / 3.0).abs() < 1e-9);
}

#[test]
fn validation() {
    let p = classical(ClassTag::GenStarlike).with_beta(1.5);
    assert!(matches!(solve(&p), Err(RadiusError::InvalidProblem(_))));
    let p = classical(ClassTag::KsClass).with_n(0);
    assert!(matches!(solve(&p), Err(RadiusError::InvalidProblem(_))));
    let mut cfg = NumericConfig::default();
    cfg.root_tol = 0.0;
    let p = classical(ClassTag::GenStarlike).with_numeric(cfg);
    assert!(matches!(solve(&p), Err(RadiusError::InvalidProblem(_))));
}

#[test]
fn ks_classical() {
    let p = classical(ClassTag::KsClass);
    let res = solve_ks(&p).unwrap();
    certified(&res, &p);
    assert_eq!(res.rb, res.r0.min(CAP));
    // both sides by quadrature
    let r0 = res.r0;
    let lhs = integrate_fn(|t| 2.0 * t / ((1.0 - t) * (1.0 - t * t)), 0.0, r0, 1e-13).unwrap().value;
    let rhs = ks_distance(&PsiModel::Classical, 1e-12).unwrap();
    assert!((lhs - rhs).abs() < 1e-9, "{lhs} vs {rhs}");
    lhs_monotone(&p, 0.8);

    let mut cfg = NumericConfig::default();
    cfg.truncation = 1024;
    let mut prev = 0.0;
    for n in 1..=6 {
        let r = solve(&classical(ClassTag::KsClass).with_n(n).with_numeric(cfg.clone())).unwrap().r0;
        assert!(r >= prev, "N={n}");
        prev = r;
    }
}

#[test]
fn sc_classical() {
    let p = classical(ClassTag::ScConjugate);
    let res = solve_sc(&p).unwrap();
    certified(&res, &p);
    // R^1(r) = (r/(1-r))^2 = 1/4 at r = 1/3
    assert!((res.r0 - 1.0 / 3.0).abs() < 1e-10);
    assert!(!res.capped);
    let r = 0.3;
    let quad = integrate_fn(|t| 2.0 * t / (1.0 - t).powi(3), 0.0, r, 1e-13).unwrap().value;
    let eq = build_equation(&p).unwrap();
    assert!((eq.lhs(r).unwrap() - quad).abs() < 1e-10);

    let mut prev = 0.0;
    for m in [Exponent::Finite(1), Exponent::Finite(2), Exponent::Finite(3), Exponent::Infinite] {
        let r = solve(&classical(ClassTag::ScConjugate).with_m(m)).unwrap().r0;
        assert!(r >= prev, "m={m}");
        prev = r;
    }
    let m1 = solve(&classical(ClassTag::ScConjugate).with_m(Exponent::Finite(1))).unwrap().r0;
    assert!(prev > m1);
}

#[test]
fn cc_classical() {
    let p = classical(ClassTag::CcConjugate);
    let eq = build_equation(&p).unwrap();
    let r = 0.3;
    // M_t^1(k') = 1/(1-t)^2 - 1 and M_t^1(ψ) = 2t/(1-t)
    let h = |t: f64| (1.0 / (1.0 - t).powi(2) - 1.0) * 2.0 * t / (1.0 - t);
    let nested = integrate_fn(
        |s| integrate_fn(h, 0.0, s, 1e-14).unwrap().value / s,
        0.0,
        r,
        1e-13,
    )
    .unwrap()
    .value;
    assert!((eq.lhs(r).unwrap() - nested).abs() < 1e-8);
    assert!((eq.rhs() - convex_distance(&PsiModel::Classical, 1e-12).unwrap()).abs() < 1e-10);
    let res = solve_cc(&p).unwrap();
    certified(&res, &p);
    lhs_monotone(&p, res.r0);
}

fn bisect(g: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn conjugate_m1_roots() {
    let sc = solve(&classical(ClassTag::ScConjugate).with_m(Exponent::Finite(1))).unwrap();
    // r/(1-r) + (r/(1-r))^2 = 1/4  <=>  3r^2 + 6r - 1 = 0
    assert!((sc.r0 - (2.0 / 3f64.sqrt() - 1.0)).abs() < 1e-10, "{}", sc.r0);

    let cc = solve(&classical(ClassTag::CcConjugate).with_m(Exponent::Finite(1))).unwrap();
    let h = |t: f64| (1.0 / (1.0 - t).powi(2) - 1.0) * 2.0 * t / (1.0 - t);
    let tail = |r: f64| {
        integrate_fn(|s| integrate_fn(h, 0.0, s, 1e-13).unwrap().value / s, 0.0, r, 1e-12)
            .unwrap()
            .value
    };
    let r = bisect(|r| r / (1.0 - r) + tail(r) - 0.5, 0.0, 0.5);
    assert!((cc.r0 - r).abs() < 1e-9, "{} vs {r}", cc.r0);
}

#[test]
fn cs_classical() {
    let pair = build_extremal_pair(&PsiModel::Classical, 64).unwrap();
    let kp = pair.symmetric_derivative().unwrap();
    for (n, c) in kp.coeffs().iter().enumerate() {
        assert!((c.re - if n % 2 == 0 { 1.0 } else { 0.0 }).abs() < 1e-10);
    }
    let mut cfg = NumericConfig::default();
    cfg.truncation = 1024;
    for m in [Exponent::Finite(1), Exponent::Infinite] {
        let p = classical(ClassTag::CsSymmetric).with_m(m).with_numeric(cfg.clone());
        let res = solve_cs(&p).unwrap();
        certified(&res, &p);
        assert_eq!(res.rb, res.r0.min(CAP));
        lhs_monotone(&p, res.r0);
    }
}

#[test]
fn sharpness_probes() {
    let p = classical(ClassTag::GenStarlike);
    let res = solve(&p).unwrap();
    let probe = res.sharp_probe.unwrap();
    assert!(probe.excess_positive());
    assert!(probe.coefficients_positive);
    assert_eq!(probe.delta, 1e-3);
    let g = |r: f64| r / (1.0 - r).powi(2) - 0.25;
    assert!((probe.lhs_excess.unwrap() - g(res.r0 + 1e-3)).abs() < 1e-10);

    let capped = RadiusResult {
        capped: true,
        ..res.clone()
    };
    assert!(matches!(sharpness_probe(&p, &capped).unwrap(), ProbeOutcome::Skipped(_)));

    let psi = PsiModel::janowski(0.5, -0.5).unwrap();
    let p = RadiusProblem::new(ClassTag::Janowski, psi).with_weights(WeightSequence::PowerTail(2));
    let res = solve(&p).unwrap();
    let probe = res.sharp_probe.unwrap();
    assert!(probe.excess_positive() && probe.coefficients_positive);
    // M(n) = n / 2^(n-1): sum_{n>=2} M(n) r^n = r/(1-r/2)^2 - r = 4/9
    let r = bisect(|r| r / (1.0 - r / 2.0).powi(2) - r - 4.0 / 9.0, 0.0, 1.0);
    assert!((res.r0 - r).abs() < 1e-10, "{} vs {r}", res.r0);

    // alternating extremal coefficients are reported, not hidden
    let psi = PsiModel::janowski(0.8, 0.3).unwrap();
    let res = solve(&RadiusProblem::new(ClassTag::Janowski, psi)).unwrap();
    assert!(!res.sharp_probe.unwrap().coefficients_positive);
}

#[test]
fn parameter_monotonicity() {
    let base = classical(ClassTag::ClassicalStarlike);
    let r = |p: RadiusProblem| solve(&p).unwrap().r0;
    let b: Vec<f64> = [0.0, 0.05, 0.1].iter().map(|&b| r(base.clone().with_beta(b).with_m(Exponent::Finite(2)))).collect();
    assert!(b[0] > b[1] && b[1] > b[2]);
    let n: Vec<f64> = (1..=3).map(|n| r(base.clone().with_weights(WeightSequence::PowerTail(n)))).collect();
    assert!(n[0] <= n[1] && n[1] <= n[2]);
    let m: Vec<f64> = [Exponent::Finite(1), Exponent::Finite(2), Exponent::Infinite]
        .iter()
        .map(|&m| r(base.clone().with_m(m)))
        .collect();
    assert!(m[0] <= m[1] && m[1] <= m[2]);
}

#[test]
fn registry_dispatch() {
    let reg = SolverRegistry::with_builtin();
    let names: Vec<&str> = reg.names().collect();
    assert_eq!(names.len(), ClassTag::ALL.len());
    for c in ClassTag::ALL {
        assert_eq!(reg.get(c.name()).unwrap().class(), c);
        assert_eq!(c.name().parse::<ClassTag>().unwrap(), c);
    }
    assert!(SolverRegistry::new().solve(&classical(ClassTag::GenStarlike)).is_err());

    struct Flat;
    struct FlatEq;
    impl RadiusEquation for FlatEq {
        fn lhs(&self, r: f64) -> Result<f64, RadiusError> {
            Ok(r)
        }
        fn rhs(&self) -> f64 {
            0.5
        }
        fn extremal_coefficients(&self) -> Vec<f64> {
            vec![0.0, 1.0]
        }
    }
    impl RadiusSolver for Flat {
        fn name(&self) -> &'static str {
            "gen-starlike"
        }
        fn class(&self) -> ClassTag {
            ClassTag::GenStarlike
        }
        fn build(&self, _: &RadiusProblem) -> Result<Box<dyn RadiusEquation>, RadiusError> {
            Ok(Box::new(FlatEq))
        }
    }
    let mut reg = SolverRegistry::with_builtin();
    assert!(reg.register(Arc::new(Flat)).is_some());
    let res = reg.solve(&classical(ClassTag::GenStarlike)).unwrap();
    assert!((res.r0 - 0.5).abs() < 1e-12);
}

#[test]
fn no_root_and_divergence() {
    struct Never;
    impl RadiusEquation for Never {
        fn lhs(&self, _: f64) -> Result<f64, RadiusError> {
            Ok(0.0)
        }
        fn rhs(&self) -> f64 {
            1.0
        }
        fn extremal_coefficients(&self) -> Vec<f64> {
            Vec::new()
        }
    }
    let p = classical(ClassTag::GenStarlike);
    assert!(matches!(solve_equation(&Never, &p), Err(RadiusError::NoRootInRange { .. })));

    // T = 8 cannot certify the Koebe tail before the root
    let mut cfg = NumericConfig::default();
    cfg.truncation = 8;
    let p = classical(ClassTag::ScConjugate).with_numeric(cfg);
    assert!(matches!(solve(&p), Err(RadiusError::DivergenceBeforeRoot { .. })));
}

#[test]
fn exponent_parsing() {
    assert_eq!("inf".parse::<Exponent>().unwrap(), Exponent::Infinite);
    assert_eq!("3".parse::<Exponent>().unwrap(), Exponent::Finite(3));
    assert!("0".parse::<Exponent>().is_err());
    assert!(Exponent::Finite(7) < Exponent::Infinite);
    assert_eq!(Exponent::Infinite.power(0.5), 0.0);
}

