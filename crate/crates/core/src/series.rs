//! Truncated power series with complex coefficients.
//!
//! A [`Series`] of truncation order `T` stores the coefficients of
//! `z^0 ..= z^T`. Binary operations align both operands to the smaller
//! order; nothing is ever zero-padded upward. Evaluation carries a tail
//! estimate built from the growth of the last few coefficients, and
//! refuses to answer when that estimate cannot be certified.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use thiserror::Error;

pub type C64 = Complex64;

/// Number of trailing coefficients inspected by the tail estimator.
pub const TAIL_WINDOW: usize = 16;

/// Constant terms smaller than this are treated as exact zeros by the
/// operations that require a vanishing constant term.
const ZERO_TOL: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeriesError {
    #[error("precondition violated in {op}: {reason}")]
    Precondition { op: &'static str, reason: String },
    #[error("series evaluation at |x| = {x} exceeds the certified radius {r_max}")]
    OutOfRange { x: f64, r_max: f64 },
    #[error("tail of series at |x| = {x} cannot be certified (estimate {tail_estimate:e}, growth ratio {ratio})")]
    Divergence {
        x: f64,
        tail_estimate: f64,
        ratio: f64,
    },
}

impl SeriesError {
    fn precondition(op: &'static str, reason: impl Into<String>) -> Self {
        SeriesError::Precondition {
            op,
            reason: reason.into(),
        }
    }
}

/// Controls for certified evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalOptions {
    /// Largest admissible `|x|`.
    pub r_max: f64,
    /// Largest acceptable tail estimate.
    pub tail_tol: f64,
}

impl Default for EvalOptions {
    fn default() -> Self {
        Self {
            r_max: 1.0 - 1e-6,
            tail_tol: 1e-12,
        }
    }
}

/// Value of a truncated series together with its tail estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub value: C64,
    pub tail_estimate: f64,
}

/// Tail estimate for `sum_{n > T} |c_n| x^n` given the magnitudes
/// `|c_0| ..= |c_T|` and `x >= 0`.
///
/// A run of trailing exact zeros longer than every zero gap between the
/// non-zero coefficients marks a polynomial, whose tail is 0. Otherwise the
/// largest kept term among the non-zero entries of the trailing window
/// (widened to the last [`TAIL_WINDOW`] non-zero entries if the window holds
/// none) is divided by `1 - rho * x`, where `rho` is the per-index growth
/// from the peak of the window's early half to the peak of its late half.
/// Returns the
/// estimate and `rho`, or `Err` with `rho` when `rho * x >= 1`.
pub(crate) fn tail_estimate(mags: &[f64], x: f64) -> Result<(f64, f64), f64> {
    let top = mags.len().saturating_sub(1);
    if top == 0 || x == 0.0 || is_polynomial(mags) {
        return Ok((0.0, 0.0));
    }
    let start = top.saturating_sub(TAIL_WINDOW - 1).max(1);
    let mut nonzero: Vec<usize> = (start..=top).filter(|&n| mags[n] > 0.0).collect();
    if nonzero.is_empty() {
        nonzero = (1..=top).rev().filter(|&n| mags[n] > 0.0).take(TAIL_WINDOW).collect();
        nonzero.reverse();
    }
    let last_term = nonzero
        .iter()
        .map(|&n| mags[n] * x.powi(n as i32))
        .fold(0.0, f64::max);
    if nonzero.is_empty() || last_term == 0.0 {
        return Ok((0.0, 0.0));
    }

    let rho = if nonzero.len() >= 2 {
        // envelope growth: largest entry of the late half against the
        // largest of the early half, so one small coefficient cannot
        // masquerade as fast growth
        let (early, late) = nonzero.split_at(nonzero.len() / 2);
        let peak = |idx: &[usize]| {
            idx.iter()
                .copied()
                .max_by(|&a, &b| mags[a].total_cmp(&mags[b]))
                .expect("halves are non-empty")
        };
        let (i, j) = (peak(early), peak(late));
        (mags[j] / mags[i]).powf(1.0 / (j - i) as f64)
    } else {
        // pair the lone entry with the nearest earlier non-zero coefficient
        let j = nonzero[0];
        match (1..j).rev().find(|&i| mags[i] > 0.0) {
            Some(i) => (mags[j] / mags[i]).powf(1.0 / (j - i) as f64),
            None => 1.0,
        }
    };

    let q = rho * x;
    if q >= 1.0 {
        return Err(rho);
    }
    Ok((last_term / (1.0 - q), rho))
}

fn is_polynomial(mags: &[f64]) -> bool {
    let Some(last) = mags.iter().rposition(|&m| m > 0.0) else {
        return true;
    };
    let trailing = mags.len() - 1 - last;
    if trailing == 0 {
        return false;
    }
    let first = mags.iter().position(|&m| m > 0.0).unwrap_or(last);
    let mut widest = 0;
    let mut run = 0;
    for &m in &mags[first..=last] {
        if m > 0.0 {
            widest = widest.max(run);
            run = 0;
        } else {
            run += 1;
        }
    }
    trailing > widest
}

/// A truncated Taylor series `sum_{n=0}^{T} c_n z^n`.
#[derive(Clone, PartialEq)]
pub struct Series {
    coeffs: Vec<C64>,
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Series")
            .field("order", &self.order())
            .field("coeffs", &self.coeffs)
            .finish()
    }
}

impl Series {
    /// Builds a series from its coefficients; the order is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<C64>) -> Result<Self, SeriesError> {
        if coeffs.is_empty() {
            return Err(SeriesError::precondition(
                "new",
                "a series needs at least one coefficient",
            ));
        }
        if let Some(n) = coeffs.iter().position(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(SeriesError::precondition(
                "new",
                format!("coefficient {n} is not finite"),
            ));
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self, SeriesError> {
        Self::new(coeffs.iter().map(|&c| C64::new(c, 0.0)).collect())
    }

    fn from_vec(coeffs: Vec<C64>) -> Self {
        debug_assert!(!coeffs.is_empty());
        debug_assert!(coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite()));
        Self { coeffs }
    }

    /// Builds a series of the given order from a coefficient rule.
    pub fn from_fn(order: usize, mut f: impl FnMut(usize) -> C64) -> Self {
        Self::from_vec((0..=order).map(&mut f).collect())
    }

    pub fn from_real_fn(order: usize, mut f: impl FnMut(usize) -> f64) -> Self {
        Self::from_fn(order, |n| C64::new(f(n), 0.0))
    }

    pub fn zero(order: usize) -> Self {
        Self::from_vec(vec![C64::new(0.0, 0.0); order + 1])
    }

    pub fn constant(c: C64, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(C64::new(1.0, 0.0), order)
    }

    /// `z^k` at the given order (zero when `k > order`).
    pub fn monomial(k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = C64::new(1.0, 0.0);
        }
        s
    }

    /// `1 / (1 - z) = 1 + z + z^2 + ...`
    pub fn geometric(order: usize) -> Self {
        Self::from_real_fn(order, |_| 1.0)
    }

    /// `1 / (1 - z^2) = 1 + z^2 + z^4 + ...`
    pub fn even_geometric(order: usize) -> Self {
        Self::from_real_fn(order, |n| if n % 2 == 0 { 1.0 } else { 0.0 })
    }

    /// Koebe function `z / (1 - z)^2 = sum n z^n`.
    pub fn koebe(order: usize) -> Self {
        Self::from_real_fn(order, |n| n as f64)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    /// Coefficient of `z^n`, or `None` beyond the truncation order.
    pub fn coeff(&self, n: usize) -> Option<C64> {
        self.coeffs.get(n).copied()
    }

    pub fn truncate(&self, order: usize) -> Series {
        let order = order.min(self.order());
        Self::from_vec(self.coeffs[..=order].to_vec())
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.coeffs.iter().all(|c| c.im.abs() <= tol)
    }

    pub fn scale(&self, alpha: C64) -> Series {
        Self::from_vec(self.coeffs.iter().map(|c| c * alpha).collect())
    }

    pub fn scale_real(&self, alpha: f64) -> Series {
        self.scale(C64::new(alpha, 0.0))
    }

    fn check_zero_constant(&self, op: &'static str) -> Result<(), SeriesError> {
        if self.coeffs[0].norm() > ZERO_TOL {
            return Err(SeriesError::precondition(
                op,
                format!("constant term must vanish, found {}", self.coeffs[0]),
            ));
        }
        Ok(())
    }

    /// `exp(a)` for `a(0) = 0`, via `E' = a' E`.
    pub fn exp(&self) -> Result<Series, SeriesError> {
        self.check_zero_constant("exp_series")?;
        let t = self.order();
        let a = &self.coeffs;
        let mut e = vec![C64::new(0.0, 0.0); t + 1];
        e[0] = C64::new(1.0, 0.0);
        for n in 1..=t {
            let mut acc = C64::new(0.0, 0.0);
            for k in 1..=n {
                acc += a[k] * e[n - k] * k as f64;
            }
            e[n] = acc / n as f64;
        }
        Ok(Self::from_vec(e))
    }

    /// Square root with `S(0) = 1` for `a(0) = 1`.
    pub fn sqrt(&self) -> Result<Series, SeriesError> {
        if (self.coeffs[0] - C64::new(1.0, 0.0)).norm() > ZERO_TOL {
            return Err(SeriesError::precondition(
                "sqrt_series",
                format!("constant term must be 1, found {}", self.coeffs[0]),
            ));
        }
        let t = self.order();
        let a = &self.coeffs;
        let mut s = vec![C64::new(0.0, 0.0); t + 1];
        s[0] = C64::new(1.0, 0.0);
        for n in 1..=t {
            let mut acc = a[n];
            for k in 1..n {
                acc -= s[k] * s[n - k];
            }
            s[n] = acc / 2.0;
        }
        Ok(Self::from_vec(s))
    }

    /// Term-wise derivative; the order drops by one.
    pub fn derivative(&self) -> Series {
        if self.order() == 0 {
            return Self::zero(0);
        }
        Self::from_vec(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, c)| c * n as f64)
                .collect(),
        )
    }

    /// Antiderivative vanishing at 0; the order rises by one.
    pub fn integrate(&self) -> Series {
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(C64::new(0.0, 0.0));
        out.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| c / (n + 1) as f64),
        );
        Self::from_vec(out)
    }

    /// `a(z) / z` for `a(0) = 0`.
    pub fn div_by_z(&self) -> Result<Series, SeriesError> {
        self.check_zero_constant("div_by_z")?;
        if self.order() == 0 {
            return Ok(Self::zero(0));
        }
        Ok(Self::from_vec(self.coeffs[1..].to_vec()))
    }

    /// `z^k a(z)`; the order rises by `k`.
    pub fn shift_up(&self, k: usize) -> Series {
        let mut out = vec![C64::new(0.0, 0.0); k];
        out.extend_from_slice(&self.coeffs);
        Self::from_vec(out)
    }

    /// `a(z^k)` at order `k * T`.
    pub fn stretch(&self, k: usize) -> Series {
        assert!(k >= 1, "stretch factor must be positive");
        let mut out = vec![C64::new(0.0, 0.0); k * self.order() + 1];
        for (n, c) in self.coeffs.iter().enumerate() {
            out[k * n] = *c;
        }
        Self::from_vec(out)
    }

    /// `a(-z)`.
    pub fn reflect(&self) -> Series {
        Self::from_vec(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| if n % 2 == 1 { -c } else { *c })
                .collect(),
        )
    }

    /// `f(w(z))` for `w(0) = 0`, by Horner's scheme over series.
    pub fn compose(&self, w: &Series) -> Result<Series, SeriesError> {
        w.check_zero_constant("compose")?;
        let order = self.order().min(w.order());
        let mut inner = w.truncate(order);
        inner.coeffs[0] = C64::new(0.0, 0.0);
        let mut acc = Self::constant(self.coeffs[order], order);
        for k in (0..order).rev() {
            acc = &acc * &inner;
            acc.coeffs[0] += self.coeffs[k];
        }
        Ok(acc)
    }

    /// Certified Horner evaluation at `x`.
    pub fn eval(&self, x: C64, opts: &EvalOptions) -> Result<Evaluation, SeriesError> {
        let ax = x.norm();
        if ax > opts.r_max {
            return Err(SeriesError::OutOfRange {
                x: ax,
                r_max: opts.r_max,
            });
        }
        let mags: Vec<f64> = self.coeffs.iter().map(|c| c.norm()).collect();
        let tail = certify(&mags, ax, opts)?;
        let value = self
            .coeffs
            .iter()
            .rev()
            .fold(C64::new(0.0, 0.0), |acc, c| acc * x + c);
        Ok(Evaluation {
            value,
            tail_estimate: tail,
        })
    }

    /// Real part of the certified value at a real point.
    pub fn eval_real(&self, x: f64, opts: &EvalOptions) -> Result<f64, SeriesError> {
        Ok(self.eval(C64::new(x, 0.0), opts)?.value.re)
    }

    /// Series of coefficient magnitudes.
    pub fn majorant(&self) -> MajorantSeries {
        MajorantSeries {
            coeffs: self.coeffs.iter().map(|c| c.norm()).collect(),
        }
    }

    /// `sum_{n>=N} |c_n| z^n` as a series (zero below index `N`).
    pub fn tail_majorant(&self, n: usize) -> Series {
        Self::from_vec(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| {
                    if k >= n {
                        C64::new(c.norm(), 0.0)
                    } else {
                        C64::new(0.0, 0.0)
                    }
                })
                .collect(),
        )
    }

    /// Bohr operator `M_r^N(a) = sum_{n>=N} |c_n| r^n`.
    pub fn tail_sum(&self, n: usize, r: f64, opts: &EvalOptions) -> Result<f64, SeriesError> {
        self.majorant().tail_sum(n, r, opts)
    }

    /// `∫_0^r (1/s) ∫_0^s a(t) dt ds`, summed term-wise as
    /// `sum c_n r^{n+1} / (n+1)^2`.
    pub fn double_bohr_integral(&self, r: f64, opts: &EvalOptions) -> Result<f64, SeriesError> {
        Ok(self.double_bohr_transform().eval_real(r, opts)?)
    }

    /// Coefficients of `∫_0^z (1/s) ∫_0^s a(t) dt ds`.
    pub fn double_bohr_transform(&self) -> Series {
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(C64::new(0.0, 0.0));
        out.extend(self.coeffs.iter().enumerate().map(|(n, c)| {
            let d = (n + 1) as f64;
            c / (d * d)
        }));
        Self::from_vec(out)
    }
}

fn certify(mags: &[f64], x: f64, opts: &EvalOptions) -> Result<f64, SeriesError> {
    match tail_estimate(mags, x) {
        Ok((tail, rho)) if tail > opts.tail_tol => Err(SeriesError::Divergence {
            x,
            tail_estimate: tail,
            ratio: rho,
        }),
        Ok((tail, _)) => Ok(tail),
        Err(rho) => Err(SeriesError::Divergence {
            x,
            tail_estimate: f64::INFINITY,
            ratio: rho,
        }),
    }
}

fn aligned<'a>(a: &'a Series, b: &'a Series) -> (usize, &'a [C64], &'a [C64]) {
    let t = a.order().min(b.order());
    (t, &a.coeffs[..=t], &b.coeffs[..=t])
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        let (_, a, b) = aligned(self, rhs);
        Series::from_vec(a.iter().zip(b).map(|(x, y)| x + y).collect())
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        let (_, a, b) = aligned(self, rhs);
        Series::from_vec(a.iter().zip(b).map(|(x, y)| x - y).collect())
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series::from_vec(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Series {
    type Output = Series;
    /// Cauchy product truncated at the aligned order.
    fn mul(self, rhs: &Series) -> Series {
        let (t, a, b) = aligned(self, rhs);
        let mut out = vec![C64::new(0.0, 0.0); t + 1];
        for (i, ai) in a.iter().enumerate() {
            if ai.re == 0.0 && ai.im == 0.0 {
                continue;
            }
            for (j, bj) in b[..=t - i].iter().enumerate() {
                out[i + j] += ai * bj;
            }
        }
        Series::from_vec(out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Series {
            type Output = Series;
            fn $m(self, rhs: Series) -> Series {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// A series with non-negative real coefficients, typically `|c_n|`.
#[derive(Debug, Clone, PartialEq)]
pub struct MajorantSeries {
    coeffs: Vec<f64>,
}

impl MajorantSeries {
    pub fn new(coeffs: Vec<f64>) -> Option<Self> {
        if coeffs.is_empty() || coeffs.iter().any(|c| !(c.is_finite() && *c >= 0.0)) {
            return None;
        }
        Some(Self { coeffs })
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `sum_{n>=N}^{T} c_n r^n`, certified against the unseen tail.
    pub fn tail_sum(&self, n: usize, r: f64, opts: &EvalOptions) -> Result<f64, SeriesError> {
        if r < 0.0 || r > opts.r_max {
            return Err(SeriesError::OutOfRange {
                x: r,
                r_max: opts.r_max,
            });
        }
        if n > self.order() {
            return Ok(0.0);
        }
        certify(&self.coeffs, r, opts)?;
        let mut pow = r.powi(n as i32);
        let mut sum = 0.0;
        for c in &self.coeffs[n..] {
            sum += c * pow;
            pow *= r;
        }
        Ok(sum)
    }

    pub fn to_series(&self) -> Series {
        Series::from_real_fn(self.order(), |n| self.coeffs[n])
    }
}
