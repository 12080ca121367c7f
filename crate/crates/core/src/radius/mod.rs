//! Radius equations `LHS(r) = RHS` for every supported class, and the
//! minimal-root solver they share.
//!
//! Each class contributes a [`RadiusSolver`] that turns a [`RadiusProblem`]
//! into a [`RadiusEquation`]; solvers live in a [`SolverRegistry`] keyed by
//! class name so callers can add or swap them at runtime.

mod conjugate;
mod registry;
mod starlike;

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use thiserror::Error;

use crate::bounds::CoeffBoundProvider;
use crate::extremal::ExtremalError;
use crate::psi::{PsiError, PsiModel};
use crate::series::{EvalOptions, SeriesError};
use crate::weights::{WeightError, WeightSequence};

pub use conjugate::{CcSolver, CsSolver, KsSolver, ScSolver};
pub use registry::{RadiusEquation, RadiusSolver, SolverRegistry};
pub use starlike::{
    ClassicalSolver, GenStarlikeExtremalSolver, GenStarlikeSolver, JanowskiSolver,
    OrderAlphaSolver,
};

/// Cap imposed by the classes whose proofs go through the subordination
/// lemma.
pub const CAP: f64 = 1.0 / 3.0;

/// Offset used by the sharpness probe.
pub const PROBE_DELTA: f64 = 1e-3;

/// Number of leading extremal coefficients inspected by the probe.
pub const PROBE_DEPTH: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassTag {
    GenStarlike,
    GenStarlikeExtremal,
    Janowski,
    OrderAlpha,
    ClassicalStarlike,
    KsClass,
    ScConjugate,
    CcConjugate,
    CsSymmetric,
}

impl ClassTag {
    pub const ALL: [ClassTag; 9] = [
        ClassTag::GenStarlike,
        ClassTag::GenStarlikeExtremal,
        ClassTag::Janowski,
        ClassTag::OrderAlpha,
        ClassTag::ClassicalStarlike,
        ClassTag::KsClass,
        ClassTag::ScConjugate,
        ClassTag::CcConjugate,
        ClassTag::CsSymmetric,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClassTag::GenStarlike => "gen-starlike",
            ClassTag::GenStarlikeExtremal => "gen-starlike-extremal",
            ClassTag::Janowski => "janowski",
            ClassTag::OrderAlpha => "order-alpha",
            ClassTag::ClassicalStarlike => "classical",
            ClassTag::KsClass => "ks",
            ClassTag::ScConjugate => "sc",
            ClassTag::CcConjugate => "cc",
            ClassTag::CsSymmetric => "cs",
        }
    }

    /// Whether the class reports `rb = min(1/3, r0)`.
    pub fn caps(self) -> bool {
        !matches!(
            self,
            ClassTag::GenStarlike
                | ClassTag::Janowski
                | ClassTag::OrderAlpha
                | ClassTag::ClassicalStarlike
        )
    }

    /// Whether the class uses the `β`-blended growth/distortion form and a
    /// coefficient bound provider (as opposed to `|g(z^m)|` plus a tail).
    pub fn is_starlike_form(self) -> bool {
        matches!(
            self,
            ClassTag::GenStarlike
                | ClassTag::GenStarlikeExtremal
                | ClassTag::Janowski
                | ClassTag::OrderAlpha
                | ClassTag::ClassicalStarlike
        )
    }
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClassTag {
    type Err = RadiusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ClassTag::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| RadiusError::InvalidProblem(format!("unknown class {s:?}")))
    }
}

/// The exponent `m` in `z^m`; `Infinite` replaces `r^m` by its limit 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Exponent {
    Finite(u32),
    Infinite,
}

impl Exponent {
    pub fn power(self, r: f64) -> f64 {
        match self {
            Exponent::Finite(m) => r.powi(m as i32),
            Exponent::Infinite => 0.0,
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(m) => write!(f, "{m}"),
            Exponent::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Exponent {
    type Err = RadiusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") {
            return Ok(Exponent::Infinite);
        }
        match s.parse::<u32>() {
            Ok(m) if m >= 1 => Ok(Exponent::Finite(m)),
            _ => Err(RadiusError::InvalidProblem(format!(
                "m must be a positive integer or \"inf\", got {s:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericConfig {
    /// Series truncation order `T`.
    pub truncation: usize,
    pub root_tol: f64,
    pub quad_tol: f64,
    /// Tail tolerance for series evaluation and weighted sums.
    pub tail_tol: f64,
    pub r_max: f64,
    /// Grid size of the coarse sign-change scan on `(0, r_max]`.
    pub scan_points: usize,
}

impl Default for NumericConfig {
    fn default() -> Self {
        Self {
            truncation: 256,
            root_tol: 1e-12,
            quad_tol: 1e-11,
            tail_tol: 1e-13,
            r_max: 1.0 - 1e-6,
            scan_points: 512,
        }
    }
}

impl NumericConfig {
    pub fn eval_options(&self) -> EvalOptions {
        EvalOptions {
            r_max: self.r_max,
            tail_tol: self.tail_tol,
        }
    }
}

/// One radius problem instance.
///
/// `beta` and `bounds` only affect the starlike-form classes; the conjugate
/// and symmetric classes always use `|g(z^m)|` plus a coefficient tail.
#[derive(Debug, Clone, PartialEq)]
pub struct RadiusProblem {
    pub class: ClassTag,
    pub beta: f64,
    pub m: Exponent,
    pub n: usize,
    pub psi: PsiModel,
    pub weights: WeightSequence,
    /// `None` picks the provider matching `psi`.
    pub bounds: Option<CoeffBoundProvider>,
    pub numeric: NumericConfig,
}

impl RadiusProblem {
    /// Defaults: `β = 0`, `m = ∞`, `N = 1`, weights `tail:1`.
    pub fn new(class: ClassTag, psi: PsiModel) -> Self {
        Self {
            class,
            beta: 0.0,
            m: Exponent::Infinite,
            n: 1,
            psi,
            weights: WeightSequence::PowerTail(1),
            bounds: None,
            numeric: NumericConfig::default(),
        }
    }

    pub fn with_beta(mut self, beta: f64) -> Self {
        self.beta = beta;
        self
    }

    pub fn with_m(mut self, m: Exponent) -> Self {
        self.m = m;
        self
    }

    pub fn with_n(mut self, n: usize) -> Self {
        self.n = n;
        self
    }

    pub fn with_weights(mut self, weights: WeightSequence) -> Self {
        self.weights = weights;
        self
    }

    pub fn with_bounds(mut self, bounds: CoeffBoundProvider) -> Self {
        self.bounds = Some(bounds);
        self
    }

    pub fn with_numeric(mut self, numeric: NumericConfig) -> Self {
        self.numeric = numeric;
        self
    }

    pub fn validate(&self) -> Result<(), RadiusError> {
        let bad = |msg: String| Err(RadiusError::InvalidProblem(msg));
        if !(0.0..=1.0).contains(&self.beta) {
            return bad(format!("beta must lie in [0, 1], got {}", self.beta));
        }
        if self.n < 1 {
            return bad("N must be at least 1".into());
        }
        let c = &self.numeric;
        if c.truncation < 2 {
            return bad(format!("truncation {} is too small", c.truncation));
        }
        for (name, v) in [
            ("root_tol", c.root_tol),
            ("quad_tol", c.quad_tol),
            ("tail_tol", c.tail_tol),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return bad(format!("{name} must be positive, got {v}"));
            }
        }
        if !(c.r_max > 0.0 && c.r_max < 1.0) {
            return bad(format!("r_max must lie in (0, 1), got {}", c.r_max));
        }
        if c.scan_points < 2 {
            return bad("scan_points must be at least 2".into());
        }
        Ok(())
    }
}

/// Outcome of evaluating the equation just past the root.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SharpProbe {
    pub delta: f64,
    /// `LHS(r0 + δ) - RHS`, or `None` if it could not be certified.
    pub lhs_excess: Option<f64>,
    /// Whether the leading extremal coefficients are all strictly positive.
    pub coefficients_positive: bool,
}

impl SharpProbe {
    pub fn excess_positive(&self) -> bool {
        self.lhs_excess.is_some_and(|e| e > 0.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadiusResult {
    pub r0: f64,
    /// `min(1/3, r0)` for capping classes, else `r0`.
    pub rb: f64,
    /// Whether the cap bites, i.e. `r0 > 1/3` for a capping class.
    pub capped: bool,
    /// `|LHS(r0) - RHS|`.
    pub residual: f64,
    /// `LHS(0) < RHS`; always true for a returned result.
    pub condition_ok: bool,
    /// `LHS(r0 - 16 tol) < RHS < LHS(r0 + 16 tol)`.
    pub bracket_ok: bool,
    pub rhs: f64,
    pub sharp_probe: Option<SharpProbe>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RadiusError {
    #[error("condition violated: LHS(0) = {lhs_at_zero} is not below RHS = {rhs}")]
    ConditionViolated { lhs_at_zero: f64, rhs: f64 },
    #[error("no root in (0, {r_max}]: LHS - RHS = {gap} at r_max")]
    NoRootInRange { r_max: f64, gap: f64 },
    #[error("evaluation failed at r = {r} before the first sign change: {reason}")]
    DivergenceBeforeRoot { r: f64, reason: String },
    #[error("invalid problem: {0}")]
    InvalidProblem(String),
    #[error("no solver registered for {0:?}")]
    UnknownSolver(String),
    #[error(transparent)]
    Extremal(#[from] ExtremalError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Weights(#[from] WeightError),
    #[error(transparent)]
    Psi(#[from] PsiError),
}

/// Finds the minimal root of `LHS - RHS` on `(0, r_max]`: the condition is
/// checked at 0, a uniform grid locates the first sign change, and bisection
/// narrows it until both the bracket width and `|LHS - RHS|` are within
/// `root_tol`.
pub fn solve_equation(
    eq: &dyn RadiusEquation,
    p: &RadiusProblem,
) -> Result<RadiusResult, RadiusError> {
    let cfg = &p.numeric;
    let rhs = eq.rhs();
    let gap = |r: f64| eq.lhs(r).map(|l| l - rhs);
    let diverged = |r: f64, e: RadiusError| RadiusError::DivergenceBeforeRoot {
        r,
        reason: e.to_string(),
    };

    let at_zero = eq.lhs(0.0)?;
    if !(at_zero < rhs) {
        return Err(RadiusError::ConditionViolated {
            lhs_at_zero: at_zero,
            rhs,
        });
    }

    let mut lo = 0.0;
    let mut hi = None;
    for i in 1..=cfg.scan_points {
        let r = cfg.r_max * i as f64 / cfg.scan_points as f64;
        match gap(r) {
            Err(e) => return Err(diverged(r, e)),
            Ok(v) if v >= 0.0 => {
                hi = Some(r);
                break;
            }
            Ok(v) => {
                lo = r;
                if i == cfg.scan_points {
                    return Err(RadiusError::NoRootInRange {
                        r_max: cfg.r_max,
                        gap: v,
                    });
                }
            }
        }
    }
    let mut hi = hi.expect("scan either brackets or returns");

    let tol = cfg.root_tol;
    let (r0, residual) = loop {
        let mid = 0.5 * (lo + hi);
        let v = gap(mid).map_err(|e| diverged(mid, e))?;
        if (hi - lo <= tol && v.abs() <= tol) || mid <= lo || mid >= hi {
            break (mid, v.abs());
        }
        if v < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    };

    let side = |r: f64| gap(r).ok();
    let bracket_ok = matches!(
        (side(r0 - 16.0 * tol), side(r0 + 16.0 * tol)),
        (Some(a), Some(b)) if a < 0.0 && b > 0.0
    );
    let capped = p.class.caps() && r0 > CAP;
    let rb = if p.class.caps() { r0.min(CAP) } else { r0 };
    let mut result = RadiusResult {
        r0,
        rb,
        capped,
        residual,
        condition_ok: true,
        bracket_ok,
        rhs,
        sharp_probe: None,
    };
    if let ProbeOutcome::Probed(probe) = probe_equation(eq, p, &result) {
        result.sharp_probe = Some(probe);
    }
    Ok(result)
}

#[derive(Debug, Clone, PartialEq)]
pub enum ProbeOutcome {
    Probed(SharpProbe),
    Skipped(String),
}

fn probe_equation(eq: &dyn RadiusEquation, p: &RadiusProblem, res: &RadiusResult) -> ProbeOutcome {
    if res.capped {
        return ProbeOutcome::Skipped("radius is capped at 1/3; r0 is not the reported radius".into());
    }
    let r = res.r0 + PROBE_DELTA;
    let lhs_excess = if r <= p.numeric.r_max {
        eq.lhs(r).ok().map(|l| l - eq.rhs())
    } else {
        None
    };
    let coeffs = eq.extremal_coefficients();
    let coefficients_positive = coeffs
        .iter()
        .skip(1)
        .take(PROBE_DEPTH)
        .all(|&c| c > 0.0);
    ProbeOutcome::Probed(SharpProbe {
        delta: PROBE_DELTA,
        lhs_excess,
        coefficients_positive,
    })
}

/// Evaluates `LHS(r0 + δ) - RHS` and the positivity of the extremal
/// coefficients; skipped for capped results.
pub fn sharpness_probe(p: &RadiusProblem, res: &RadiusResult) -> Result<ProbeOutcome, RadiusError> {
    let eq = builtin().build(p)?;
    Ok(probe_equation(eq.as_ref(), p, res))
}

fn builtin() -> &'static SolverRegistry {
    static REGISTRY: OnceLock<SolverRegistry> = OnceLock::new();
    REGISTRY.get_or_init(SolverRegistry::with_builtin)
}

/// Builds the equation for `p` with the built-in solver of its class.
pub fn build_equation(p: &RadiusProblem) -> Result<Box<dyn RadiusEquation>, RadiusError> {
    builtin().build(p)
}

/// Solves `p` with the built-in solver of its class.
pub fn solve(p: &RadiusProblem) -> Result<RadiusResult, RadiusError> {
    builtin().solve(p)
}

fn solve_as(class: ClassTag, p: &RadiusProblem) -> Result<RadiusResult, RadiusError> {
    if p.class != class {
        return Err(RadiusError::InvalidProblem(format!(
            "problem is tagged {} but the {} solver was requested",
            p.class, class
        )));
    }
    solve(p)
}

pub fn solve_gen_starlike(p: &RadiusProblem) -> Result<RadiusResult, RadiusError> {
    solve_as(ClassTag::GenStarlike, p)
}

pub fn solve_gen_starlike_extremal(p: &RadiusProblem) -> Result<RadiusResult, RadiusError> {
    solve_as(ClassTag::GenStarlikeExtremal, p)
}

pub fn solve_janowski(p: &RadiusProblem) -> Result<RadiusResult, RadiusError> {
    solve_as(ClassTag::Janowski, p)
}

pub fn solve_order_alpha(p: &RadiusProblem) -> Result<RadiusResult, RadiusError> {
    solve_as(ClassTag::OrderAlpha, p)
}

pub fn solve_classical(p: &RadiusProblem) -> Result<RadiusResult, RadiusError> {
    solve_as(ClassTag::ClassicalStarlike, p)
}

pub fn solve_ks(p: &RadiusProblem) -> Result<RadiusResult, RadiusError> {
    solve_as(ClassTag::KsClass, p)
}

pub fn solve_sc(p: &RadiusProblem) -> Result<RadiusResult, RadiusError> {
    solve_as(ClassTag::ScConjugate, p)
}

pub fn solve_cc(p: &RadiusProblem) -> Result<RadiusResult, RadiusError> {
    solve_as(ClassTag::CcConjugate, p)
}

pub fn solve_cs(p: &RadiusProblem) -> Result<RadiusResult, RadiusError> {
    solve_as(ClassTag::CsSymmetric, p)
}

#[cfg(test)]
mod tests;
