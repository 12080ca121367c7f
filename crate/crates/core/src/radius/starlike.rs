//! Starlike-form equations
//! `β f0'(r^m) + (1-β) f0(r^m) + sum M(n) φ_n(r) = -f0(-1)`.
//!
//! Moving `φ_1(r)` to the right-hand side, as some statements do, gives
//! the same root, so it stays on the left here.

use crate::bounds::CoeffBoundProvider;
use crate::extremal::{build_extremal_pair, starlike_distance};
use crate::psi::PsiModel;
use crate::series::{EvalOptions, Series};
use crate::weights::{weighted_sum, WeightSequence};

use super::{
    ClassTag, Exponent, RadiusEquation, RadiusError, RadiusProblem, RadiusSolver, PROBE_DEPTH,
};

fn real_parts(s: &Series) -> Vec<f64> {
    s.coeffs().iter().map(|c| c.re).collect()
}

/// Provider matching `psi` when the problem leaves the choice open.
fn default_bounds(psi: &PsiModel, f0: &Series) -> CoeffBoundProvider {
    match psi {
        PsiModel::Janowski { d, e } => CoeffBoundProvider::JanowskiProduct { d: *d, e: *e },
        PsiModel::OrderAlpha { alpha } => CoeffBoundProvider::OrderAlphaProduct { alpha: *alpha },
        PsiModel::Classical => CoeffBoundProvider::ClassicalN,
        PsiModel::Custom(_) => CoeffBoundProvider::extremal(f0.clone()),
    }
}

struct WeightedTerm {
    bounds: CoeffBoundProvider,
    weights: WeightSequence,
    tol: f64,
}

impl WeightedTerm {
    fn at(&self, r: f64) -> Result<f64, RadiusError> {
        Ok(weighted_sum(&self.bounds, &self.weights, r, self.tol)?.value)
    }
}

/// Series-based equation: `f0` from its Taylor expansion, the right-hand
/// side by quadrature.
struct SeriesStarlike {
    beta: f64,
    m: Exponent,
    f0: Series,
    df0: Series,
    weighted: WeightedTerm,
    rhs: f64,
    opts: EvalOptions,
}

impl RadiusEquation for SeriesStarlike {
    fn lhs(&self, r: f64) -> Result<f64, RadiusError> {
        let growth = match self.m {
            Exponent::Infinite => self.beta,
            Exponent::Finite(_) => {
                let x = self.m.power(r);
                self.beta * self.df0.eval_real(x, &self.opts)?
                    + (1.0 - self.beta) * self.f0.eval_real(x, &self.opts)?
            }
        };
        Ok(growth + self.weighted.at(r)?)
    }

    fn rhs(&self) -> f64 {
        self.rhs
    }

    fn extremal_coefficients(&self) -> Vec<f64> {
        real_parts(&self.f0)
    }
}

fn build_series(p: &RadiusProblem, forced: Option<CoeffBoundProvider>) -> Result<SeriesStarlike, RadiusError> {
    let cfg = &p.numeric;
    let pair = build_extremal_pair(&p.psi, cfg.truncation)?;
    let bounds = forced
        .or_else(|| p.bounds.clone())
        .unwrap_or_else(|| default_bounds(&p.psi, &pair.f0));
    Ok(SeriesStarlike {
        beta: p.beta,
        m: p.m,
        df0: pair.f0.derivative(),
        rhs: starlike_distance(&p.psi, cfg.quad_tol)?,
        f0: pair.f0,
        weighted: WeightedTerm {
            bounds,
            weights: p.weights.clone(),
            tol: cfg.tail_tol,
        },
        opts: cfg.eval_options(),
    })
}

/// Generic `S*(ψ)` equation with any coefficient bound provider.
pub struct GenStarlikeSolver;

impl RadiusSolver for GenStarlikeSolver {
    fn name(&self) -> &'static str {
        ClassTag::GenStarlike.name()
    }

    fn class(&self) -> ClassTag {
        ClassTag::GenStarlike
    }

    fn build(&self, p: &RadiusProblem) -> Result<Box<dyn RadiusEquation>, RadiusError> {
        Ok(Box::new(build_series(p, None)?))
    }
}

/// `S*(ψ)` equation with `M(n) = |t_n|` read off `f0`; any configured
/// provider is overridden.
pub struct GenStarlikeExtremalSolver;

impl RadiusSolver for GenStarlikeExtremalSolver {
    fn name(&self) -> &'static str {
        ClassTag::GenStarlikeExtremal.name()
    }

    fn class(&self) -> ClassTag {
        ClassTag::GenStarlikeExtremal
    }

    fn build(&self, p: &RadiusProblem) -> Result<Box<dyn RadiusEquation>, RadiusError> {
        let pair = build_extremal_pair(&p.psi, p.numeric.truncation)?;
        let forced = CoeffBoundProvider::extremal(pair.f0);
        Ok(Box::new(build_series(p, Some(forced))?))
    }
}

#[derive(Debug, Clone, Copy)]
enum ClosedForm {
    Janowski { d: f64, e: f64 },
    OrderAlpha { alpha: f64 },
    Classical,
}

impl ClosedForm {
    /// `β f0'(x) + (1-β) f0(x)`.
    fn growth(self, beta: f64, x: f64) -> f64 {
        match self {
            ClosedForm::Janowski { d, e } if e == 0.0 => {
                (d * x).exp() * (beta + (1.0 - beta * (1.0 - d)) * x)
            }
            ClosedForm::Janowski { d, e } => {
                beta * (1.0 + d * x) * (1.0 + e * x).powf((d - 2.0 * e) / e)
                    + (1.0 - beta) * x * (1.0 + e * x).powf((d - e) / e)
            }
            ClosedForm::OrderAlpha { alpha } => {
                let k = 2.0 * (1.0 - alpha);
                beta * (1.0 + (1.0 - 2.0 * alpha) * x) / (1.0 - x).powf(k + 1.0)
                    + (1.0 - beta) * x / (1.0 - x).powf(k)
            }
            ClosedForm::Classical => {
                beta * (1.0 + x) / (1.0 - x).powi(3) + (1.0 - beta) * x / (1.0 - x).powi(2)
            }
        }
    }

    /// `-f0(-1)`.
    fn distance(self) -> f64 {
        match self {
            ClosedForm::Janowski { d, e } if e == 0.0 => (-d).exp(),
            ClosedForm::Janowski { d, e } => (1.0 - e).powf((d - e) / e),
            ClosedForm::OrderAlpha { alpha } => 4f64.powf(-(1.0 - alpha)),
            ClosedForm::Classical => 0.25,
        }
    }

    fn bounds(self) -> CoeffBoundProvider {
        match self {
            ClosedForm::Janowski { d, e } => CoeffBoundProvider::JanowskiProduct { d, e },
            ClosedForm::OrderAlpha { alpha } => CoeffBoundProvider::OrderAlphaProduct { alpha },
            ClosedForm::Classical => CoeffBoundProvider::ClassicalN,
        }
    }
}

/// Equation written with the closed-form extremal of a Janowski-family
/// class and its product coefficient bound.
struct ClosedFormStarlike {
    form: ClosedForm,
    beta: f64,
    m: Exponent,
    weighted: WeightedTerm,
    extremal: Vec<f64>,
}

impl RadiusEquation for ClosedFormStarlike {
    fn lhs(&self, r: f64) -> Result<f64, RadiusError> {
        Ok(self.form.growth(self.beta, self.m.power(r)) + self.weighted.at(r)?)
    }

    fn rhs(&self) -> f64 {
        self.form.distance()
    }

    fn extremal_coefficients(&self) -> Vec<f64> {
        self.extremal.clone()
    }
}

fn build_closed(p: &RadiusProblem, form: ClosedForm) -> Result<Box<dyn RadiusEquation>, RadiusError> {
    let extremal = build_extremal_pair(&p.psi, PROBE_DEPTH + 1)?;
    Ok(Box::new(ClosedFormStarlike {
        form,
        beta: p.beta,
        m: p.m,
        weighted: WeightedTerm {
            bounds: form.bounds(),
            weights: p.weights.clone(),
            tol: p.numeric.tail_tol,
        },
        extremal: real_parts(&extremal.f0),
    }))
}

/// Janowski class `S*[D, E]` via its closed form.
pub struct JanowskiSolver;

impl RadiusSolver for JanowskiSolver {
    fn name(&self) -> &'static str {
        ClassTag::Janowski.name()
    }

    fn class(&self) -> ClassTag {
        ClassTag::Janowski
    }

    fn build(&self, p: &RadiusProblem) -> Result<Box<dyn RadiusEquation>, RadiusError> {
        let (d, e) = p.psi.janowski_params().ok_or_else(|| {
            RadiusError::InvalidProblem(format!("janowski class needs a Janowski psi, got {}", p.psi))
        })?;
        build_closed(p, ClosedForm::Janowski { d, e })
    }
}

/// Starlike functions of order `α`.
pub struct OrderAlphaSolver;

impl RadiusSolver for OrderAlphaSolver {
    fn name(&self) -> &'static str {
        ClassTag::OrderAlpha.name()
    }

    fn class(&self) -> ClassTag {
        ClassTag::OrderAlpha
    }

    fn build(&self, p: &RadiusProblem) -> Result<Box<dyn RadiusEquation>, RadiusError> {
        match p.psi {
            PsiModel::OrderAlpha { alpha } => build_closed(p, ClosedForm::OrderAlpha { alpha }),
            _ => Err(RadiusError::InvalidProblem(format!(
                "order-alpha class needs an order-alpha psi, got {}",
                p.psi
            ))),
        }
    }
}

/// Classical starlike functions.
pub struct ClassicalSolver;

impl RadiusSolver for ClassicalSolver {
    fn name(&self) -> &'static str {
        ClassTag::ClassicalStarlike.name()
    }

    fn class(&self) -> ClassTag {
        ClassTag::ClassicalStarlike
    }

    fn build(&self, p: &RadiusProblem) -> Result<Box<dyn RadiusEquation>, RadiusError> {
        match p.psi {
            PsiModel::Classical => build_closed(p, ClosedForm::Classical),
            _ => Err(RadiusError::InvalidProblem(format!(
                "classical class needs the classical psi, got {}",
                p.psi
            ))),
        }
    }
}
