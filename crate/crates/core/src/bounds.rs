//! Per-index coefficient bounds `M(n) >= |a_n|`.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::series::{tail_estimate, Series};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundError {
    #[error("coefficient index must be at least 1")]
    ZeroIndex,
    #[error("index {n} exceeds the stored extremal truncation {order}")]
    BeyondTruncation { n: usize, order: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub enum CoeffBoundProvider {
    /// `prod_{k=0}^{n-2} |E - D + E k| / (k + 1)`.
    JanowskiProduct { d: f64, e: f64 },
    /// `prod_{k=0}^{n-2} (k + 2(1 - α)) / (k + 1)`.
    OrderAlphaProduct { alpha: f64 },
    /// `n`.
    ClassicalN,
    /// `|t_n|`, the coefficients of a stored extremal function.
    ExtremalDerived(Arc<Series>),
}

impl fmt::Display for CoeffBoundProvider {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::JanowskiProduct { d, e } => write!(f, "janowski-product({d},{e})"),
            Self::OrderAlphaProduct { alpha } => write!(f, "order-alpha-product({alpha})"),
            Self::ClassicalN => f.write_str("classical-n"),
            Self::ExtremalDerived(s) => write!(f, "extremal-derived[{}]", s.order()),
        }
    }
}

impl CoeffBoundProvider {
    pub fn extremal(f0: Series) -> Self {
        Self::ExtremalDerived(Arc::new(f0))
    }

    /// Numerator of `M(k+1) / M(k) = numerator / k` for `k >= 1`.
    fn factor_numerator(&self, k: usize) -> f64 {
        let k = k as f64;
        match self {
            Self::JanowskiProduct { d, e } => (e * k - d).abs(),
            Self::OrderAlphaProduct { alpha } => k - 1.0 + 2.0 * (1.0 - alpha),
            Self::ClassicalN => k + 1.0,
            Self::ExtremalDerived(_) => unreachable!("extremal bounds are read, not multiplied"),
        }
    }

    /// Largest index with a defined bound, if finite.
    pub fn max_index(&self) -> Option<usize> {
        match self {
            Self::ExtremalDerived(s) => Some(s.order()),
            _ => None,
        }
    }

    pub fn bound(&self, n: usize) -> Result<f64, BoundError> {
        if n == 0 {
            return Err(BoundError::ZeroIndex);
        }
        match self {
            Self::ClassicalN => Ok(n as f64),
            Self::ExtremalDerived(s) => s
                .coeff(n)
                .map(|c| c.norm())
                .ok_or(BoundError::BeyondTruncation { n, order: s.order() }),
            _ => Ok(self.iter().nth(n - 1).expect("closed-form bounds are unbounded")),
        }
    }

    /// Running product `M(1), M(2), ...`; finite for extremal-derived bounds.
    pub fn iter(&self) -> BoundIter<'_> {
        BoundIter {
            provider: self,
            n: 1,
            current: 1.0,
        }
    }

    /// An upper bound on `M(k+1)/M(k)` valid for every `k >= n`.
    ///
    /// Extremal-derived bounds have no closed form, so the answer is the
    /// largest observed ratio from `n` onward joined with the empirical
    /// growth of the last stored coefficients.
    pub fn ratio_bound(&self, n: usize) -> f64 {
        let n = n.max(1) as f64;
        match self {
            Self::JanowskiProduct { d, e } => e.abs() + d.abs() / n,
            Self::OrderAlphaProduct { alpha } => 1.0 + (1.0 - 2.0 * alpha).abs() / n,
            Self::ClassicalN => 1.0 + 1.0 / n,
            Self::ExtremalDerived(s) => {
                let mags: Vec<f64> = s.coeffs().iter().map(|c| c.norm()).collect();
                let observed = mags[(n as usize).min(mags.len() - 1)..]
                    .windows(2)
                    .filter(|w| w[0] > 0.0)
                    .map(|w| w[1] / w[0])
                    .fold(0.0, f64::max);
                let empirical = match tail_estimate(&mags, 1.0) {
                    Ok((_, rho)) | Err(rho) => rho,
                };
                observed.max(empirical)
            }
        }
    }
}

pub struct BoundIter<'a> {
    provider: &'a CoeffBoundProvider,
    n: usize,
    current: f64,
}

impl Iterator for BoundIter<'_> {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        let n = self.n;
        if let CoeffBoundProvider::ExtremalDerived(s) = self.provider {
            let value = s.coeff(n)?.norm();
            self.n += 1;
            return Some(value);
        }
        let value = self.current;
        // multiply before dividing so integer-valued products stay exact
        self.current = self.current * self.provider.factor_numerator(n) / n as f64;
        self.n += 1;
        Some(value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::build_extremal_pair;
    use crate::psi::PsiModel;

    #[test]
    fn janowski_classical_telescopes() {
        let p = CoeffBoundProvider::JanowskiProduct { d: 1.0, e: -1.0 };
        for (i, m) in p.iter().take(50).enumerate() {
            assert_eq!(m, (i + 1) as f64);
        }
        assert_eq!(p.bound(37).unwrap(), 37.0);
    }

    #[test]
    fn order_half_is_one() {
        let p = CoeffBoundProvider::OrderAlphaProduct { alpha: 0.5 };
        assert!(p.iter().take(200).all(|m| m == 1.0));
    }

    #[test]
    fn first_bound_is_one() {
        let f0 = build_extremal_pair(&PsiModel::janowski(0.3, -0.2).unwrap(), 32).unwrap().f0;
        let providers = [
            CoeffBoundProvider::JanowskiProduct { d: 0.3, e: -0.2 },
            CoeffBoundProvider::OrderAlphaProduct { alpha: 0.1 },
            CoeffBoundProvider::ClassicalN,
            CoeffBoundProvider::extremal(f0),
        ];
        for p in &providers {
            assert_eq!(p.bound(1).unwrap(), 1.0, "{p}");
            assert!(p.iter().take(32).all(|m| m >= 0.0));
        }
    }

    #[test]
    fn order_alpha_matches_janowski() {
        for &alpha in &[0.0, 0.25, 0.5, 0.75] {
            let a = CoeffBoundProvider::OrderAlphaProduct { alpha };
            let j = CoeffBoundProvider::JanowskiProduct {
                d: 1.0 - 2.0 * alpha,
                e: -1.0,
            };
            for (x, y) in a.iter().zip(j.iter()).take(50) {
                assert!((x - y).abs() <= 1e-12 * x.max(1.0));
            }
        }
    }

    #[test]
    fn extremal_matches_classical() {
        let f0 = build_extremal_pair(&PsiModel::Classical, 128).unwrap().f0;
        let p = CoeffBoundProvider::extremal(f0);
        for n in 1..=100 {
            assert!((p.bound(n).unwrap() - n as f64).abs() < 1e-10);
        }
        assert!(matches!(
            p.bound(129),
            Err(BoundError::BeyondTruncation { n: 129, order: 128 })
        ));
        assert_eq!(CoeffBoundProvider::ClassicalN.bound(0), Err(BoundError::ZeroIndex));
    }

    #[test]
    fn ratio_bounds_dominate() {
        let providers = [
            CoeffBoundProvider::JanowskiProduct { d: 0.6, e: -0.7 },
            CoeffBoundProvider::JanowskiProduct { d: 0.9, e: 0.2 },
            CoeffBoundProvider::JanowskiProduct { d: 0.5, e: 0.0 },
            CoeffBoundProvider::OrderAlphaProduct { alpha: 0.8 },
            CoeffBoundProvider::ClassicalN,
        ];
        for p in &providers {
            let m: Vec<f64> = p.iter().take(80).collect();
            for n in 1..79 {
                let rb = p.ratio_bound(n);
                for k in n..79 {
                    assert!(m[k] <= rb * m[k - 1] * (1.0 + 1e-12), "{p} n={n} k={k}");
                }
            }
        }
    }
}
