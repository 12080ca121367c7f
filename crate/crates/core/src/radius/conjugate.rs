//! Equations of the form `F(r^m) + R^N(r) = d`, where `F` is the class's
//! growth majorant, `R^N` a majorant of the coefficient tail and `d` a
//! distance lower bound.

use crate::extremal::{
    build_extremal_pair, convex_distance, ks_distance, starlike_distance, symmetric_distance,
    ks_extremal,
};
use crate::series::{EvalOptions, Series};

use super::{ClassTag, Exponent, RadiusEquation, RadiusError, RadiusProblem, RadiusSolver};

struct TailEquation {
    m: Exponent,
    growth: Series,
    tail: Series,
    rhs: f64,
    extremal: Vec<f64>,
    opts: EvalOptions,
}

impl RadiusEquation for TailEquation {
    fn lhs(&self, r: f64) -> Result<f64, RadiusError> {
        let first = match self.m {
            Exponent::Infinite => 0.0,
            Exponent::Finite(_) => self.growth.eval_real(self.m.power(r), &self.opts)?,
        };
        Ok(first + self.tail.eval_real(r, &self.opts)?)
    }

    fn rhs(&self) -> f64 {
        self.rhs
    }

    fn extremal_coefficients(&self) -> Vec<f64> {
        self.extremal.clone()
    }
}

fn real_parts(s: &Series) -> Vec<f64> {
    s.coeffs().iter().map(|c| c.re).collect()
}

/// `K_s(ψ)`: `∫_0^{r^m} ψ/(1-t^2) + ∫_0^r M_t^N(ψ) t^{2N-2}/(1-t^2) dt`.
///
/// The tail factor `t^{2N-2}/(1-t^2)` majorises the odd starlike factor by
/// `sum_{n>=N} t^{2n-1}`, exactly as stated; for `N >= 2` this is looser
/// than necessary on the exponents `N..2N-2`.
pub struct KsSolver;

impl RadiusSolver for KsSolver {
    fn name(&self) -> &'static str {
        ClassTag::KsClass.name()
    }

    fn class(&self) -> ClassTag {
        ClassTag::KsClass
    }

    fn build(&self, p: &RadiusProblem) -> Result<Box<dyn RadiusEquation>, RadiusError> {
        let cfg = &p.numeric;
        let t = cfg.truncation;
        let psi = p.psi.series(t);
        let odd = Series::even_geometric(t).shift_up(2 * p.n - 2);
        let tail = (&psi.tail_majorant(p.n) * &odd).integrate();
        let growth = ks_extremal(&p.psi, t);
        Ok(Box::new(TailEquation {
            m: p.m,
            extremal: real_parts(&growth),
            growth,
            tail,
            rhs: ks_distance(&p.psi, cfg.quad_tol)?,
            opts: cfg.eval_options(),
        }))
    }
}

/// `S*_c(ψ)`: `h_ψ(r^m) + ∫_0^r M_t^N(h_ψ) M_t^N(ψ) / t dt = -h_ψ(-1)`.
pub struct ScSolver;

impl RadiusSolver for ScSolver {
    fn name(&self) -> &'static str {
        ClassTag::ScConjugate.name()
    }

    fn class(&self) -> ClassTag {
        ClassTag::ScConjugate
    }

    fn build(&self, p: &RadiusProblem) -> Result<Box<dyn RadiusEquation>, RadiusError> {
        let cfg = &p.numeric;
        let pair = build_extremal_pair(&p.psi, cfg.truncation)?;
        let psi = p.psi.series(cfg.truncation);
        let product = &pair.f0.tail_majorant(p.n) * &psi.tail_majorant(p.n);
        let tail = product.div_by_z()?.integrate();
        Ok(Box::new(TailEquation {
            m: p.m,
            extremal: real_parts(&pair.f0),
            growth: pair.f0,
            tail,
            rhs: starlike_distance(&p.psi, cfg.quad_tol)?,
            opts: cfg.eval_options(),
        }))
    }
}

/// `C_c(ψ)`: `k_ψ(r^m) + ∫_0^r (1/s) ∫_0^s M_t^N(k_ψ') M_t^N(ψ) dt ds
/// = -k_ψ(-1)`.
pub struct CcSolver;

impl RadiusSolver for CcSolver {
    fn name(&self) -> &'static str {
        ClassTag::CcConjugate.name()
    }

    fn class(&self) -> ClassTag {
        ClassTag::CcConjugate
    }

    fn build(&self, p: &RadiusProblem) -> Result<Box<dyn RadiusEquation>, RadiusError> {
        let cfg = &p.numeric;
        let pair = build_extremal_pair(&p.psi, cfg.truncation)?;
        let psi = p.psi.series(cfg.truncation);
        let product = &pair.k_psi_prime.tail_majorant(p.n) * &psi.tail_majorant(p.n);
        Ok(Box::new(TailEquation {
            m: p.m,
            extremal: real_parts(&pair.k_psi),
            growth: pair.k_psi,
            tail: product.double_bohr_transform(),
            rhs: convex_distance(&p.psi, cfg.quad_tol)?,
            opts: cfg.eval_options(),
        }))
    }
}

/// `C_s(ψ)` with `K'(z) = sqrt(k_ψ'(z^2))`:
/// `∫_0^{r^m} (1/s) ∫_0^s ψ K' + ∫_0^r (1/s) ∫_0^s M_t^N(K') M_t^N(ψ)
/// = ∫_0^1 (1/s) ∫_0^s ψ(-t) sqrt(k_ψ'(-t^2)) dt ds`.
///
/// The growth term is evaluated at `r^m`, like every other class; the
/// right-hand side keeps `k_ψ'(-t^2)` as written.
pub struct CsSolver;

impl RadiusSolver for CsSolver {
    fn name(&self) -> &'static str {
        ClassTag::CsSymmetric.name()
    }

    fn class(&self) -> ClassTag {
        ClassTag::CsSymmetric
    }

    fn build(&self, p: &RadiusProblem) -> Result<Box<dyn RadiusEquation>, RadiusError> {
        let cfg = &p.numeric;
        let pair = build_extremal_pair(&p.psi, cfg.truncation)?;
        let kp = pair.symmetric_derivative()?;
        let psi = p.psi.series(cfg.truncation);
        let product = &kp.tail_majorant(p.n) * &psi.tail_majorant(p.n);
        Ok(Box::new(TailEquation {
            m: p.m,
            extremal: real_parts(&pair.k_psi),
            growth: pair.symmetric_extremal()?,
            tail: product.double_bohr_transform(),
            rhs: symmetric_distance(&p.psi, cfg.quad_tol)?,
            opts: cfg.eval_options(),
        }))
    }
}
