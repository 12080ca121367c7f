//! Ma-Minda generating functions `ψ`.

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use thiserror::Error;

use crate::series::{EvalOptions, Series, SeriesError, C64};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PsiError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("psi has a pole at x = {0}")]
    Pole(f64),
    #[error("argument {0} is outside [-1, 1]")]
    OutOfDomain(f64),
    #[error("custom coefficient file, line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("cannot read coefficient file: {0}")]
    Io(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// A generating function `ψ` with `ψ(0) = 1`.
///
/// Janowski, order-alpha and classical variants have closed forms.
/// `Custom` holds Taylor data only; its admissibility (univalence, positive
/// real part, starlikeness with respect to 1, real-axis symmetry) is the
/// caller's assertion and is not checked.
#[derive(Debug, Clone, PartialEq)]
pub enum PsiModel {
    /// `(1 + D z) / (1 + E z)` with `-1 <= E < D <= 1`.
    Janowski { d: f64, e: f64 },
    /// `(1 + (1 - 2α) z) / (1 - z)` with `0 <= α < 1`.
    OrderAlpha { alpha: f64 },
    /// `(1 + z) / (1 - z)`.
    Classical,
    Custom(CustomPsi),
}

/// Taylor coefficients of a user-supplied `ψ`, index `k` = coefficient of `z^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct CustomPsi {
    coeffs: Arc<[C64]>,
}

impl CustomPsi {
    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }
}

impl fmt::Display for PsiModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PsiModel::Janowski { d, e } => write!(f, "janowski({d},{e})"),
            PsiModel::OrderAlpha { alpha } => write!(f, "order-alpha({alpha})"),
            PsiModel::Classical => f.write_str("classical"),
            PsiModel::Custom(c) => write!(f, "custom[{}]", c.coeffs.len()),
        }
    }
}

impl PsiModel {
    pub fn janowski(d: f64, e: f64) -> Result<Self, PsiError> {
        if !(d.is_finite() && e.is_finite() && -1.0 <= e && e < d && d <= 1.0) {
            return Err(PsiError::InvalidParameters(format!(
                "Janowski parameters need -1 <= E < D <= 1, got D={d}, E={e}"
            )));
        }
        Ok(PsiModel::Janowski { d, e })
    }

    pub fn order_alpha(alpha: f64) -> Result<Self, PsiError> {
        if !(alpha.is_finite() && (0.0..1.0).contains(&alpha)) {
            return Err(PsiError::InvalidParameters(format!(
                "order alpha needs 0 <= alpha < 1, got {alpha}"
            )));
        }
        Ok(PsiModel::OrderAlpha { alpha })
    }

    pub fn custom(coeffs: Vec<C64>) -> Result<Self, PsiError> {
        match coeffs.first() {
            Some(c) if *c == C64::new(1.0, 0.0) => {}
            Some(c) => {
                return Err(PsiError::InvalidParameters(format!(
                    "custom psi needs psi(0) = 1, got {c}"
                )))
            }
            None => {
                return Err(PsiError::InvalidParameters(
                    "custom psi needs at least one coefficient".into(),
                ))
            }
        }
        if coeffs.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(PsiError::InvalidParameters(
                "custom psi coefficients must be finite".into(),
            ));
        }
        Ok(PsiModel::Custom(CustomPsi {
            coeffs: coeffs.into(),
        }))
    }

    /// Parses one `"re im"` pair per line; line `k` is the coefficient of
    /// `z^k`. Blank lines and `#` comments are skipped.
    pub fn parse_custom(text: &str) -> Result<Self, PsiError> {
        let mut coeffs = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 2 {
                return Err(PsiError::Parse {
                    line: i + 1,
                    reason: format!("expected \"re im\", got {line:?}"),
                });
            }
            let parse = |s: &str| {
                s.parse::<f64>().map_err(|e| PsiError::Parse {
                    line: i + 1,
                    reason: format!("{s:?}: {e}"),
                })
            };
            coeffs.push(C64::new(parse(parts[0])?, parse(parts[1])?));
        }
        if coeffs.first() != Some(&C64::new(1.0, 0.0)) {
            return Err(PsiError::Parse {
                line: 1,
                reason: "first coefficient must be \"1 0\"".into(),
            });
        }
        Self::custom(coeffs)
    }

    pub fn from_file(path: &Path) -> Result<Self, PsiError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| PsiError::Io(format!("{}: {e}", path.display())))?;
        Self::parse_custom(&text)
    }

    /// `(D, E)` for every closed-form variant.
    pub fn janowski_params(&self) -> Option<(f64, f64)> {
        match self {
            PsiModel::Janowski { d, e } => Some((*d, *e)),
            PsiModel::OrderAlpha { alpha } => Some((1.0 - 2.0 * alpha, -1.0)),
            PsiModel::Classical => Some((1.0, -1.0)),
            PsiModel::Custom(_) => None,
        }
    }

    pub fn has_closed_form_eval(&self) -> bool {
        !matches!(self, PsiModel::Custom(_))
    }

    /// `ψ'(0)`.
    pub fn first_coefficient(&self) -> f64 {
        match self {
            PsiModel::Janowski { d, e } => d - e,
            PsiModel::OrderAlpha { alpha } => 2.0 * (1.0 - alpha),
            PsiModel::Classical => 2.0,
            PsiModel::Custom(c) => c.coeffs.get(1).map_or(0.0, |c| c.re),
        }
    }

    /// Taylor series of `ψ` at order `order`. Custom data shorter than
    /// `order` yields a series of its own length.
    pub fn series(&self, order: usize) -> Series {
        match self {
            PsiModel::Janowski { d, e } => {
                let mut c = vec![C64::new(1.0, 0.0); order + 1];
                let mut term = d - e;
                for slot in c.iter_mut().skip(1) {
                    *slot = C64::new(term, 0.0);
                    term *= -e;
                }
                Series::new(c).expect("finite Janowski coefficients")
            }
            PsiModel::OrderAlpha { alpha } => {
                Series::from_real_fn(order, |n| if n == 0 { 1.0 } else { 2.0 * (1.0 - alpha) })
            }
            PsiModel::Classical => {
                Series::from_real_fn(order, |n| if n == 0 { 1.0 } else { 2.0 })
            }
            PsiModel::Custom(c) => {
                let top = order.min(c.coeffs.len() - 1);
                Series::new(c.coeffs[..=top].to_vec()).expect("validated custom coefficients")
            }
        }
    }

    fn custom_series(c: &CustomPsi) -> Series {
        Series::new(c.coeffs.to_vec()).expect("validated custom coefficients")
    }

    fn custom_opts() -> EvalOptions {
        EvalOptions {
            r_max: 1.0,
            ..EvalOptions::default()
        }
    }

    /// `ψ(x)` for real `x` in `[-1, 1]`.
    pub fn eval(&self, x: f64) -> Result<f64, PsiError> {
        if !(-1.0..=1.0).contains(&x) {
            return Err(PsiError::OutOfDomain(x));
        }
        let ratio = |num: f64, den: f64| {
            if den == 0.0 {
                Err(PsiError::Pole(x))
            } else {
                Ok(num / den)
            }
        };
        match self {
            PsiModel::Janowski { d, e } => ratio(1.0 + d * x, 1.0 + e * x),
            PsiModel::OrderAlpha { alpha } => ratio(1.0 + (1.0 - 2.0 * alpha) * x, 1.0 - x),
            PsiModel::Classical => ratio(1.0 + x, 1.0 - x),
            PsiModel::Custom(c) => Ok(Self::custom_series(c).eval_real(x, &Self::custom_opts())?),
        }
    }

    /// `(ψ(x) - 1) / x`, continued by `ψ'(0)` at `x = 0`.
    pub fn difference_quotient(&self, x: f64) -> Result<f64, PsiError> {
        if !(-1.0..=1.0).contains(&x) {
            return Err(PsiError::OutOfDomain(x));
        }
        match self {
            PsiModel::Custom(c) => {
                let psi = Self::custom_series(c);
                let q = if psi.order() == 0 {
                    Series::zero(0)
                } else {
                    (&psi - &Series::one(psi.order())).div_by_z()?
                };
                Ok(q.eval_real(x, &Self::custom_opts())?)
            }
            _ => {
                let (d, e) = self.janowski_params().expect("closed form");
                let den = 1.0 + e * x;
                if den == 0.0 {
                    return Err(PsiError::Pole(x));
                }
                Ok((d - e) / den)
            }
        }
    }

    /// Bohr operator of `ψ`: `sum_{n>=N} |c_n| t^n`.
    pub fn majorant_tail(&self, n: usize, t: f64) -> Result<f64, PsiError> {
        if !(0.0..1.0).contains(&t) {
            return Err(PsiError::OutOfDomain(t));
        }
        if n == 0 {
            return Ok(1.0 + self.majorant_tail(1, t)?);
        }
        match self {
            PsiModel::Custom(c) => Ok(Self::custom_series(c).tail_sum(
                n,
                t,
                &EvalOptions::default(),
            )?),
            _ => {
                let (d, e) = self.janowski_params().expect("closed form");
                let ae = e.abs();
                if ae == 0.0 {
                    return Ok(if n == 1 { d * t } else { 0.0 });
                }
                if ae * t >= 1.0 {
                    return Err(PsiError::Pole(t));
                }
                Ok((d - e) * ae.powi(n as i32 - 1) * t.powi(n as i32) / (1.0 - ae * t))
            }
        }
    }
}
