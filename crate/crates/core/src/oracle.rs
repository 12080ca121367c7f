//! Brute-force verification on random Schwarz functions.
//!
//! Every random object is drawn from a `ChaCha8Rng` seeded with a single
//! `u64`, so a failure line is enough to reproduce it. Checks maximise
//! moduli over a finite `θ` grid on `|z| = r`; a pass is therefore
//! necessary but not sufficient for the inequality on the whole circle.

use std::f64::consts::PI;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::extremal::{build_extremal_pair, ks_extremal, ExtremalError};
use crate::psi::PsiModel;
use crate::radius::{self, ClassTag, Exponent, RadiusError, RadiusProblem, RadiusResult};
use crate::series::{EvalOptions, Series, SeriesError, C64};
use crate::weights::WeightSequence;

/// Relative slack for inequalities that hold exactly in real arithmetic.
pub const REL_TOL: f64 = 1e-12;

/// Absolute slack of the growth sandwich.
pub const GROWTH_TOL: f64 = 1e-8;

/// Default number of `θ` samples on a circle.
pub const THETA_SAMPLES: usize = 64;

/// Truncation order of sampled functions.
pub const SAMPLE_ORDER: usize = 96;

/// Largest modulus of a random Blaschke zero.
const MAX_ZERO: f64 = 0.9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchwarzFamily {
    /// `c z`, `|c| <= 1`.
    Scalar,
    /// `e^{iφ} z^k`, `1 <= k <= 4`.
    Monomial,
    /// `e^{iφ} z B(z)` with a Blaschke product `B` of degree 1 or 2.
    Blaschke,
}

impl SchwarzFamily {
    pub const ALL: [SchwarzFamily; 3] = [Self::Scalar, Self::Monomial, Self::Blaschke];
}

impl fmt::Display for SchwarzFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Scalar => "scalar",
            Self::Monomial => "monomial",
            Self::Blaschke => "blaschke",
        })
    }
}

/// An analytic self-map of the disk fixing 0, stored as a truncated series.
#[derive(Debug, Clone, PartialEq)]
pub struct SchwarzFunction {
    pub omega: Series,
    pub family: SchwarzFamily,
}

impl SchwarzFunction {
    pub fn scalar(c: C64, order: usize) -> Self {
        assert!(c.norm() <= 1.0 + 1e-15, "|c| must not exceed 1");
        Self {
            omega: Series::monomial(1, order).scale(c),
            family: SchwarzFamily::Scalar,
        }
    }

    pub fn monomial(k: usize, rotation: f64, order: usize) -> Self {
        assert!(k >= 1);
        Self {
            omega: Series::monomial(k, order).scale(C64::from_polar(1.0, rotation)),
            family: SchwarzFamily::Monomial,
        }
    }

    /// `e^{iφ} z prod (z - a_j) / (1 - conj(a_j) z)`, each factor expanded
    /// through the geometric series of `1 / (1 - conj(a) z)`.
    pub fn blaschke(zeros: &[C64], rotation: f64, order: usize) -> Self {
        let mut omega = Series::monomial(1, order).scale(C64::from_polar(1.0, rotation));
        for &a in zeros {
            assert!(a.norm() < 1.0, "Blaschke zeros must lie in the disk");
            let ac = a.conj();
            let factor = Series::from_fn(order, |k| {
                if k == 0 {
                    -a
                } else {
                    (1.0 - a.norm_sqr()) * ac.powu(k as u32 - 1)
                }
            });
            omega = &omega * &factor;
        }
        Self {
            omega,
            family: SchwarzFamily::Blaschke,
        }
    }
}

fn disk_point(rng: &mut ChaCha8Rng, radius: f64) -> C64 {
    let rho = radius * rng.gen::<f64>().sqrt();
    C64::from_polar(rho, rng.gen_range(0.0..2.0 * PI))
}

fn draw_schwarz(rng: &mut ChaCha8Rng, family: SchwarzFamily, order: usize) -> SchwarzFunction {
    match family {
        SchwarzFamily::Scalar => SchwarzFunction::scalar(disk_point(rng, 1.0), order),
        SchwarzFamily::Monomial => {
            let k = rng.gen_range(1..=4);
            SchwarzFunction::monomial(k, rng.gen_range(0.0..2.0 * PI), order)
        }
        SchwarzFamily::Blaschke => {
            let degree = rng.gen_range(1..=2);
            let zeros: Vec<C64> = (0..degree).map(|_| disk_point(rng, MAX_ZERO)).collect();
            SchwarzFunction::blaschke(&zeros, rng.gen_range(0.0..2.0 * PI), order)
        }
    }
}

/// Deterministic random Schwarz function of the given family.
pub fn random_schwarz(seed: u64, family: SchwarzFamily, order: usize) -> SchwarzFunction {
    draw_schwarz(&mut ChaCha8Rng::seed_from_u64(seed), family, order)
}

/// `f ∘ ω`, subordinate to `f` by construction.
pub fn make_subordinate(f: &Series, w: &SchwarzFunction) -> Result<Series, SeriesError> {
    f.compose(&w.omega)
}

/// `z exp ∫_0^z (ψ(ω(t)) - 1)/t dt`, a member of `S*(ψ)`.
pub fn starlike_member(psi: &PsiModel, w: &SchwarzFunction, order: usize) -> Result<Series, SeriesError> {
    let one = Series::one(order);
    let p = psi.series(order).compose(&w.omega)?;
    let log_part = (&p - &one).div_by_z()?.integrate();
    Ok(log_part.exp()?.shift_up(1).truncate(order))
}

/// `∫_0^z s(t)/t dt` for the starlike member `s`, a member of `C(ψ)`.
pub fn convex_member(psi: &PsiModel, w: &SchwarzFunction, order: usize) -> Result<Series, SeriesError> {
    Ok(starlike_member(psi, w, order)?.div_by_z()?.integrate())
}

/// Outcome of one inequality check; `margin = rhs - lhs`, so a negative
/// margin is a violation. `theta` locates the worst sample on the circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Check {
    pub holds: bool,
    pub margin: f64,
    pub theta: f64,
}

impl Check {
    fn new(lhs: f64, rhs: f64, theta: f64) -> Self {
        let margin = rhs - lhs;
        Self {
            holds: margin >= -REL_TOL * rhs.abs().max(1.0),
            margin,
            theta,
        }
    }
}

/// `sum_{n=lo}^{hi} |c_n| r^n`, clamped to the stored coefficients.
pub fn section_sum(s: &Series, lo: usize, hi: usize, r: f64) -> f64 {
    let hi = hi.min(s.order());
    (lo..=hi).map(|n| s.coeffs()[n].norm() * r.powi(n as i32)).sum()
}

/// Compares `M_r^N(g_k)` against `M_r^N(f_k)` for the `k`-th sections.
pub fn check_series_lemma(f: &Series, g: &Series, n: usize, k: usize, r: f64) -> Check {
    Check::new(section_sum(g, n, k, r), section_sum(f, n, k, r), 0.0)
}

fn weighted(s: &Series, w: &WeightSequence, r: f64) -> f64 {
    s.coeffs()
        .iter()
        .enumerate()
        .map(|(n, c)| c.norm() * w.phi(n, r))
        .sum()
}

/// `sum |b_n| φ_n(r) <= sum |a_n| φ_n(r)` with `g = sum b_n z^n ≺ f`.
pub fn check_weighted_lemma(f: &Series, g: &Series, w: &WeightSequence, r: f64) -> Check {
    Check::new(weighted(g, w, r), weighted(f, w, r), 0.0)
}

fn modulus(s: &Series, z: C64, opts: &EvalOptions) -> Result<f64, SeriesError> {
    Ok(s.eval(z, opts)?.value.norm())
}

fn z_power(m: Exponent, z: C64) -> C64 {
    match m {
        Exponent::Infinite => C64::new(0.0, 0.0),
        Exponent::Finite(k) => z.powu(k),
    }
}

/// Evaluates the class's Bohr-Rogosinski sum for the function `g` on
/// `|z| = r` and compares its maximum over `theta_samples` angles with
/// `res.rhs`.
///
/// Starlike-form classes use `β|g'(z^m)| + (1-β)|g(z^m)| + sum |b_n| φ_n(r)`
/// with `g` itself a class member. The remaining classes use
/// `|g(z^m)| + sum_{k>=N} |b_k| r^k` with `g = f ∘ ω` for the class's
/// growth extremal `f`.
pub fn check_radius_inequality(
    p: &RadiusProblem,
    res: &RadiusResult,
    g: &Series,
    r: f64,
    theta_samples: usize,
) -> Result<Check, SeriesError> {
    let opts = EvalOptions::default();
    let starlike = p.class.is_starlike_form();
    let tail = if starlike {
        weighted(g, &p.weights, r)
    } else {
        section_sum(g, p.n, g.order(), r)
    };
    let dg = g.derivative();
    let mut worst = Check::new(f64::NEG_INFINITY, res.rhs, 0.0);
    worst.margin = f64::INFINITY;
    for i in 0..theta_samples.max(1) {
        let theta = 2.0 * PI * i as f64 / theta_samples.max(1) as f64;
        let x = z_power(p.m, C64::from_polar(r, theta));
        let head = if starlike {
            p.beta * modulus(&dg, x, &opts)? + (1.0 - p.beta) * modulus(g, x, &opts)?
        } else {
            modulus(g, x, &opts)?
        };
        let check = Check::new(head + tail, res.rhs, theta);
        if check.margin < worst.margin {
            worst = check;
        }
    }
    Ok(worst)
}

/// `-f0(-r) <= |f(z)| <= f0(r)` on `|z| = r`, sampled over `theta_samples`
/// angles; the margin is the smaller distance to either bound.
pub fn check_growth_bounds(
    f: &Series,
    model: &PsiModel,
    r: f64,
    theta_samples: usize,
) -> Result<Check, OracleError> {
    let opts = EvalOptions::default();
    let f0 = build_extremal_pair(model, f.order())?.f0;
    let upper = f0.eval_real(r, &opts)?;
    let lower = -f0.eval_real(-r, &opts)?;
    let mut worst = Check {
        holds: true,
        margin: f64::INFINITY,
        theta: 0.0,
    };
    for i in 0..theta_samples.max(1) {
        let theta = 2.0 * PI * i as f64 / theta_samples.max(1) as f64;
        let v = modulus(f, C64::from_polar(r, theta), &opts)?;
        let margin = (upper - v).min(v - lower);
        if margin < worst.margin {
            worst = Check {
                holds: margin >= -GROWTH_TOL,
                margin,
                theta,
            };
        }
    }
    Ok(worst)
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OracleError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Extremal(#[from] ExtremalError),
    #[error(transparent)]
    Radius(#[from] RadiusError),
}

/// One failed sample.
#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub check: &'static str,
    pub seed: u64,
    pub r: f64,
    pub theta: f64,
    pub margin: f64,
    pub detail: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FAIL {} seed={} r={} theta={} margin={:e}",
            self.check, self.seed, self.r, self.theta, self.margin
        )?;
        if !self.detail.is_empty() {
            write!(f, " {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub name: String,
    pub passed: usize,
    pub total: usize,
    pub failures: Vec<Failure>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            passed: 0,
            total: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, failure: Option<Failure>) {
        self.total += 1;
        match failure {
            None => self.passed += 1,
            Some(f) => self.failures.push(f),
        }
    }

    pub fn ok(&self) -> bool {
        self.passed == self.total
    }

    /// Appends the counts and failures of a report over a later seed range.
    pub fn merge(&mut self, other: SuiteReport) {
        self.passed += other.passed;
        self.total += other.total;
        self.failures.extend(other.failures);
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.ok() { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}/{}", self.passed, self.total)
    }
}

fn random_janowski(rng: &mut ChaCha8Rng) -> PsiModel {
    let e = rng.gen_range(-1.0..0.9);
    let d = rng.gen_range(e + 0.05..=1.0f64.max(e + 0.05));
    PsiModel::janowski(d.min(1.0), e).expect("drawn parameters satisfy -1 <= E < D <= 1")
}

fn random_family(rng: &mut ChaCha8Rng) -> SchwarzFamily {
    SchwarzFamily::ALL[rng.gen_range(0..SchwarzFamily::ALL.len())]
}

/// A random analytic `f` and a random subordinate `g = f ∘ ω`.
///
/// `f` is a random polynomial, a random Janowski starlike member, or a
/// random Janowski extremal function, with equal probability.
pub fn random_pair(seed: u64, order: usize) -> Result<(Series, Series), OracleError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = match rng.gen_range(0..3) {
        0 => {
            let degree = rng.gen_range(1..=16);
            Series::from_fn(order, |n| if n <= degree { disk_point(&mut rng, 1.0) } else { C64::new(0.0, 0.0) })
        }
        1 => {
            let psi = random_janowski(&mut rng);
            let family = random_family(&mut rng);
            let w = draw_schwarz(&mut rng, family, order);
            starlike_member(&psi, &w, order)?
        }
        _ => build_extremal_pair(&random_janowski(&mut rng), order)?.f0,
    };
    let family = random_family(&mut rng);
    let w = draw_schwarz(&mut rng, family, order);
    let g = make_subordinate(&f, &w)?;
    Ok((f, g))
}

fn error_failure(check: &'static str, seed: u64, e: impl fmt::Display) -> Failure {
    Failure {
        check,
        seed,
        r: f64::NAN,
        theta: f64::NAN,
        margin: f64::NAN,
        detail: format!("error={e}"),
    }
}

/// Section order used by the lemma suites.
pub const LEMMA_ORDER: usize = 64;

/// Radii of the lemma suite.
pub const LEMMA_RADII: [f64; 3] = [0.1, 0.25, 1.0 / 3.0];

/// `count` seeded pairs; a pair passes when the section inequality holds
/// for every `N` in `ns`, `k` in `{8, 32, T}` and `r` in [`LEMMA_RADII`].
pub fn lemma_suite(seed: u64, count: usize, ns: &[usize]) -> SuiteReport {
    let mut report = SuiteReport::new("lemma");
    for i in 0..count as u64 {
        let s = seed.wrapping_add(i);
        let failure = match random_pair(s, LEMMA_ORDER) {
            Err(e) => Some(error_failure("series-lemma", s, e)),
            Ok((f, g)) => ns
                .iter()
                .flat_map(|&n| [8, 32, LEMMA_ORDER].map(|k| (n, k)))
                .flat_map(|(n, k)| LEMMA_RADII.map(|r| (n, k, r)))
                .find_map(|(n, k, r)| {
                    let c = check_series_lemma(&f, &g, n, k, r);
                    (!c.holds).then(|| Failure {
                        check: "series-lemma",
                        seed: s,
                        r,
                        theta: c.theta,
                        margin: c.margin,
                        detail: format!("N={n} k={k}"),
                    })
                }),
        };
        report.record(failure);
    }
    report
}

/// `count` seeded pairs checked with `weights` at radius `r`.
pub fn weighted_suite(seed: u64, count: usize, weights: &WeightSequence, r: f64) -> SuiteReport {
    let mut report = SuiteReport::new("weighted");
    for i in 0..count as u64 {
        let s = seed.wrapping_add(i);
        let failure = match random_pair(s, LEMMA_ORDER) {
            Err(e) => Some(error_failure("weighted-lemma", s, e)),
            Ok((f, g)) => {
                let c = check_weighted_lemma(&f, &g, weights, r);
                (!c.holds).then(|| Failure {
                    check: "weighted-lemma",
                    seed: s,
                    r,
                    theta: c.theta,
                    margin: c.margin,
                    detail: format!("weights={weights}"),
                })
            }
        };
        report.record(failure);
    }
    report
}

/// Radii of the operator suite.
pub const OPERATOR_RADII: [f64; 3] = [0.1, 1.0 / 3.0, 0.5];

fn random_polynomial(rng: &mut ChaCha8Rng, order: usize) -> Series {
    let degree = rng.gen_range(0..=16);
    Series::from_fn(order, |n| if n <= degree { disk_point(rng, 1.0) } else { C64::new(0.0, 0.0) })
}

/// Axioms of `M_r^N(f) = sum_{n>=N} |a_n| r^n` on random polynomial pairs.
///
/// At `N = 0` all five are checked: non-negativity with equality only at
/// zero, subadditivity, homogeneity, submultiplicativity and `M(1) = 1`.
/// For `N >= 1` only the first three are.
pub fn operator_suite(seed: u64, count: usize, n: usize) -> SuiteReport {
    const ORDER: usize = 64;
    let mut report = SuiteReport::new("operator");
    let m = |s: &Series, r: f64| section_sum(s, n, ORDER, r);
    for i in 0..count as u64 {
        let s = seed.wrapping_add(i);
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let f = random_polynomial(&mut rng, ORDER);
        let g = random_polynomial(&mut rng, ORDER);
        let alpha = disk_point(&mut rng, 3.0);
        let zero = Series::zero(ORDER);
        let one = Series::one(ORDER);
        let mut failure = None;
        for r in OPERATOR_RADII {
            let (mf, mg) = (m(&f, r), m(&g, r));
            let nonzero_tail = f.coeffs()[n..].iter().any(|c| c.norm() > 0.0);
            let mut axioms = vec![
                ("nonnegative", mf - if nonzero_tail { f64::MIN_POSITIVE } else { 0.0 }, 0.0),
                ("zero", -m(&zero, r), 0.0),
                ("subadditive", m(&(&f + &g), r), mf + mg),
                ("homogeneous", (m(&f.scale(alpha), r) - alpha.norm() * mf).abs(), 0.0),
            ];
            if n == 0 {
                axioms.push(("submultiplicative", m(&(&f * &g), r), mf * mg));
                axioms.push(("unit", (m(&one, r) - 1.0).abs(), 0.0));
            }
            for (name, lhs, rhs) in axioms {
                // "nonnegative" and "zero" are stated as lhs >= 0
                let (lhs, rhs) = match name {
                    "nonnegative" | "zero" => (0.0, lhs),
                    _ => (lhs, rhs),
                };
                let slack = REL_TOL * (mf + mg + 1.0) * (1.0 + alpha.norm());
                if lhs - rhs > slack {
                    failure = Some(Failure {
                        check: "operator",
                        seed: s,
                        r,
                        theta: 0.0,
                        margin: rhs - lhs,
                        detail: format!("N={n} axiom={name}"),
                    });
                    break;
                }
            }
            if failure.is_some() {
                break;
            }
        }
        report.record(failure);
    }
    report
}

/// Growth sandwich for random members of `S*(ψ)` at radius `r`.
pub fn growth_suite(seed: u64, count: usize, psi: &PsiModel, r: f64) -> SuiteReport {
    const ORDER: usize = 128;
    let mut report = SuiteReport::new("growth");
    for i in 0..count as u64 {
        let s = seed.wrapping_add(i);
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let family = random_family(&mut rng);
        let w = draw_schwarz(&mut rng, family, ORDER);
        let failure = match starlike_member(psi, &w, ORDER)
            .map_err(OracleError::from)
            .and_then(|f| check_growth_bounds(&f, psi, r, THETA_SAMPLES))
        {
            Err(e) => Some(error_failure("growth", s, e)),
            Ok(c) => (!c.holds).then(|| Failure {
                check: "growth",
                seed: s,
                r,
                theta: c.theta,
                margin: c.margin,
                detail: format!("family={family}"),
            }),
        };
        report.record(failure);
    }
    report
}

/// Solved instances whose inequalities the radius suite samples.
pub fn golden_instances() -> Vec<(String, RadiusProblem)> {
    let classical = PsiModel::Classical;
    let mut out = vec![
        (
            "gen-starlike classical".to_string(),
            RadiusProblem::new(ClassTag::GenStarlike, classical.clone()),
        ),
        (
            "gen-starlike order-alpha(0.5)".to_string(),
            RadiusProblem::new(ClassTag::GenStarlike, PsiModel::order_alpha(0.5).expect("valid alpha")),
        ),
        (
            "janowski(1,-1)".to_string(),
            RadiusProblem::new(ClassTag::Janowski, PsiModel::janowski(1.0, -1.0).expect("valid D, E")),
        ),
        (
            "classical odd".to_string(),
            RadiusProblem::new(ClassTag::ClassicalStarlike, classical.clone())
                .with_weights(WeightSequence::OddPowers),
        ),
    ];
    for class in [ClassTag::KsClass, ClassTag::ScConjugate, ClassTag::CcConjugate, ClassTag::CsSymmetric] {
        for m in [Exponent::Finite(1), Exponent::Infinite] {
            let mut p = RadiusProblem::new(class, classical.clone()).with_m(m);
            if class == ClassTag::CsSymmetric {
                // the root sits near 0.9, where T = 256 cannot certify the tail
                p.numeric.truncation = 1024;
            }
            out.push((format!("{class} classical m={m}"), p));
        }
    }
    out
}

/// Growth extremal whose subordinates sample a non-starlike-form class.
fn growth_extremal(p: &RadiusProblem, order: usize) -> Result<Series, OracleError> {
    let pair = build_extremal_pair(&p.psi, order)?;
    Ok(match p.class {
        ClassTag::KsClass => ks_extremal(&p.psi, order),
        ClassTag::CcConjugate => pair.k_psi,
        ClassTag::CsSymmetric => pair.symmetric_extremal()?,
        _ => pair.f0,
    })
}

/// Function sampled for instance `p` with the Schwarz function `w`.
pub fn radius_sample(p: &RadiusProblem, w: &SchwarzFunction, order: usize) -> Result<Series, OracleError> {
    if p.class.is_starlike_form() {
        Ok(starlike_member(&p.psi, w, order)?)
    } else {
        Ok(make_subordinate(&growth_extremal(p, order)?, w)?)
    }
}

/// For every golden instance: solve, then sample `subordinates` functions
/// at `r = 0.9 rb` with `theta_samples` angles each, and require a
/// positive sharpness excess when the root is uncapped.
pub fn radius_suite(seed: u64, subordinates: usize, theta_samples: usize) -> SuiteReport {
    let mut report = SuiteReport::new("radius");
    for (label, p) in golden_instances() {
        let res = match radius::solve(&p) {
            Ok(res) => res,
            Err(e) => {
                report.record(Some(error_failure("radius-solve", seed, format!("{label}: {e}"))));
                continue;
            }
        };
        let r = 0.9 * res.rb;
        for i in 0..subordinates as u64 {
            let s = seed.wrapping_add(i);
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            let family = random_family(&mut rng);
            let w = draw_schwarz(&mut rng, family, SAMPLE_ORDER);
            let check = radius_sample(&p, &w, SAMPLE_ORDER)
                .and_then(|g| Ok(check_radius_inequality(&p, &res, &g, r, theta_samples)?));
            let failure = match check {
                Err(e) => Some(error_failure("radius", s, format!("instance={label:?} {e}"))),
                Ok(c) => (!c.holds).then(|| Failure {
                    check: "radius",
                    seed: s,
                    r,
                    theta: c.theta,
                    margin: c.margin,
                    detail: format!("instance={label:?} family={family}"),
                }),
            };
            report.record(failure);
        }
        if !res.capped {
            let failure = match &res.sharp_probe {
                Some(probe) if probe.excess_positive() => None,
                other => Some(Failure {
                    check: "sharpness",
                    seed,
                    r: res.r0 + radius::PROBE_DELTA,
                    theta: 0.0,
                    margin: other.as_ref().and_then(|p| p.lhs_excess).unwrap_or(f64::NAN),
                    detail: format!("instance={label:?}"),
                }),
            };
            report.record(failure);
        }
    }
    report
}
