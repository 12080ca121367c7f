//! Extremal functions of the Ma-Minda classes and the distance bounds built
//! from them.
//!
//! Every distance here is a lower bound for `d(0, ∂f(𝔻))` over a whole
//! class, evaluated at `z = -1` through an integral representation and never
//! by summing a series on the unit circle.

use thiserror::Error;

use crate::psi::{PsiError, PsiModel};
use crate::quad::{integrate, QuadError};
use crate::series::{Series, SeriesError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExtremalError {
    #[error(transparent)]
    Psi(#[from] PsiError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("quadrature did not reach tolerance {requested:e} (achieved {achieved:e}, value {value})")]
    Quadrature {
        value: f64,
        achieved: f64,
        requested: f64,
    },
}

/// Starlike extremal `f0`, convex extremal `k_ψ` and `k_ψ'` for one `ψ`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalPair {
    /// `z exp ∫_0^z (ψ(t) - 1)/t dt`.
    pub f0: Series,
    /// Solution of `1 + z k''/k' = ψ`, normalised `k(0) = 0`, `k'(0) = 1`.
    pub k_psi: Series,
    /// `k_ψ' = f0 / z`.
    pub k_psi_prime: Series,
    pub psi: PsiModel,
    pub order: usize,
}

pub fn build_extremal_pair(model: &PsiModel, order: usize) -> Result<ExtremalPair, ExtremalError> {
    let psi = model.series(order);
    let t = psi.order();
    let log_kprime = if t == 0 {
        Series::zero(1)
    } else {
        (&psi - &Series::one(t)).div_by_z()?.integrate()
    };
    let k_psi_prime = log_kprime.exp()?;
    let f0 = k_psi_prime.shift_up(1).truncate(t.max(1));
    let k_psi_prime = f0.div_by_z()?;
    let k_psi = k_psi_prime.integrate();
    Ok(ExtremalPair {
        f0,
        k_psi,
        k_psi_prime,
        psi: model.clone(),
        order: t,
    })
}

impl ExtremalPair {
    /// `K'(z) = sqrt(k_ψ'(z^2))`, the derivative majorant of the symmetric
    /// convex class.
    pub fn symmetric_derivative(&self) -> Result<Series, ExtremalError> {
        let order = self.k_psi_prime.order();
        Ok(self.k_psi_prime.stretch(2).truncate(order).sqrt()?)
    }

    /// `F` with `(z F')' = ψ K'`: growth majorant of the symmetric convex class.
    pub fn symmetric_extremal(&self) -> Result<Series, ExtremalError> {
        let kp = self.symmetric_derivative()?;
        let psi = self.psi.series(kp.order());
        Ok((&psi * &kp).double_bohr_transform())
    }
}

/// `∫_0^z ψ(t) / (1 - t^2) dt`, the extremal of the `K_s(ψ)` class.
pub fn ks_extremal(model: &PsiModel, order: usize) -> Series {
    let psi = model.series(order);
    (&psi * &Series::even_geometric(psi.order())).integrate()
}

fn quad<F>(f: F, a: f64, b: f64, tol: f64) -> Result<f64, ExtremalError>
where
    F: FnMut(f64) -> Result<f64, ExtremalError>,
{
    match integrate(f, a, b, tol) {
        Ok(q) => Ok(q.value),
        Err(QuadError::NotConverged {
            value,
            achieved,
            requested,
        }) => Err(ExtremalError::Quadrature {
            value,
            achieved,
            requested,
        }),
        Err(QuadError::Integrand(e)) => Err(e),
    }
}

/// `∫_0^x (ψ(-u) - 1)/u du` for `x` in `[0, 1]`, i.e. `log k_ψ'(-x)`.
fn log_kprime_reflected(model: &PsiModel, x: f64, tol: f64) -> Result<f64, ExtremalError> {
    quad(|u| Ok(-model.difference_quotient(-u)?), 0.0, x, tol)
}

/// `-f0(-1) = exp ∫_0^1 (ψ(-s) - 1)/s ds`.
pub fn starlike_distance(model: &PsiModel, tol: f64) -> Result<f64, ExtremalError> {
    Ok(log_kprime_reflected(model, 1.0, tol)?.exp())
}

/// `-k_ψ(-1) = ∫_0^1 k_ψ'(-s) ds`, by nested quadrature.
pub fn convex_distance(model: &PsiModel, tol: f64) -> Result<f64, ExtremalError> {
    quad(
        |s| Ok(log_kprime_reflected(model, s, tol / 10.0)?.exp()),
        0.0,
        1.0,
        tol,
    )
}

/// `∫_0^1 ψ(-t) / (1 + t^2) dt`.
pub fn ks_distance(model: &PsiModel, tol: f64) -> Result<f64, ExtremalError> {
    quad(|t| Ok(model.eval(-t)? / (1.0 + t * t)), 0.0, 1.0, tol)
}

/// `∫_0^1 (1/s) ∫_0^s ψ(-t) sqrt(k_ψ'(-t^2)) dt ds`, by nested quadrature.
pub fn symmetric_distance(model: &PsiModel, tol: f64) -> Result<f64, ExtremalError> {
    let inner = |t: f64| -> Result<f64, ExtremalError> {
        let kp = log_kprime_reflected(model, t * t, tol / 100.0)?.exp();
        Ok(model.eval(-t)? * kp.sqrt())
    };
    quad(|s| Ok(quad(inner, 0.0, s, tol / 10.0)? / s), 0.0, 1.0, tol)
}
