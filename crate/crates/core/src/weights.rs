//! Power-type weight families `φ_n(r)` and certified weighted sums
//! `sum_n M(n) φ_n(r)`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::bounds::{BoundError, CoeffBoundProvider};
use crate::series::tail_estimate;

/// Hard cap on summed terms before a sum is declared divergent.
const MAX_TERMS: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum WeightSequence {
    /// `φ_n(r) = r^n` for `n >= N`, else 0.
    PowerTail(usize),
    /// `r^n` on odd `n`.
    OddPowers,
    /// `r^n` on even `n >= 2`.
    EvenPowers,
    /// `r^n` on the listed indices (all `>= 1`); empty means no weights.
    Masked(BTreeSet<usize>),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WeightError {
    #[error("invalid weight specification {0:?}")]
    Parse(String),
    #[error("weighted sum diverges at r = {r} (ratio bound {ratio})")]
    Divergence { r: f64, ratio: f64 },
    #[error("r = {0} is outside [0, 1)")]
    OutOfRange(f64),
    #[error(transparent)]
    Bound(#[from] BoundError),
}

/// Sum with a certified bound on the omitted tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedSum {
    pub value: f64,
    pub error_bound: f64,
    pub terms: usize,
}

impl WeightSequence {
    pub fn none() -> Self {
        Self::Masked(BTreeSet::new())
    }

    pub fn is_active(&self, n: usize) -> bool {
        n >= 1
            && match self {
                Self::PowerTail(k) => n >= *k,
                Self::OddPowers => n % 2 == 1,
                Self::EvenPowers => n % 2 == 0,
                Self::Masked(set) => set.contains(&n),
            }
    }

    pub fn phi(&self, n: usize, r: f64) -> f64 {
        if self.is_active(n) {
            r.powi(n as i32)
        } else {
            0.0
        }
    }

    /// First active index and the stride between active indices, for the
    /// infinite families.
    fn progression(&self) -> Option<(usize, usize)> {
        match self {
            Self::PowerTail(k) => Some(((*k).max(1), 1)),
            Self::OddPowers => Some((1, 2)),
            Self::EvenPowers => Some((2, 2)),
            Self::Masked(_) => None,
        }
    }
}

impl fmt::Display for WeightSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::PowerTail(k) => write!(f, "tail:{k}"),
            Self::OddPowers => f.write_str("odd"),
            Self::EvenPowers => f.write_str("even"),
            Self::Masked(set) if set.is_empty() => f.write_str("none"),
            Self::Masked(set) => {
                let items: Vec<String> = set.iter().map(|n| n.to_string()).collect();
                write!(f, "idx:{}", items.join(","))
            }
        }
    }
}

impl FromStr for WeightSequence {
    type Err = WeightError;

    /// Accepts `tail:N`, `odd`, `even`, `none` and `idx:1,3,5`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || WeightError::Parse(s.to_string());
        let s = s.trim();
        match s {
            "odd" => return Ok(Self::OddPowers),
            "even" => return Ok(Self::EvenPowers),
            "none" => return Ok(Self::none()),
            _ => {}
        }
        if let Some(n) = s.strip_prefix("tail:") {
            let n: usize = n.trim().parse().map_err(|_| bad())?;
            return if n >= 1 { Ok(Self::PowerTail(n)) } else { Err(bad()) };
        }
        if let Some(list) = s.strip_prefix("idx:") {
            let mut set = BTreeSet::new();
            for item in list.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                let n: usize = item.parse().map_err(|_| bad())?;
                if n == 0 {
                    return Err(bad());
                }
                set.insert(n);
            }
            return Ok(Self::Masked(set));
        }
        Err(bad())
    }
}

/// `sum_{n>=1} M(n) φ_n(r)`, extended until the geometric tail bound
/// `term · q / (1 - q)` drops to `tol`.
pub fn weighted_sum(
    m: &CoeffBoundProvider,
    w: &WeightSequence,
    r: f64,
    tol: f64,
) -> Result<WeightedSum, WeightError> {
    if !(0.0..1.0).contains(&r) {
        return Err(WeightError::OutOfRange(r));
    }
    if r == 0.0 {
        return Ok(WeightedSum {
            value: 0.0,
            error_bound: 0.0,
            terms: 0,
        });
    }
    if let WeightSequence::Masked(set) = w {
        let mut value = 0.0;
        for &n in set {
            value += m.bound(n)? * r.powi(n as i32);
        }
        return Ok(WeightedSum {
            value,
            error_bound: 0.0,
            terms: set.len(),
        });
    }
    let (start, step) = w.progression().expect("infinite family");

    if let Some(top) = m.max_index() {
        return extremal_sum(m, r, tol, start, step, top);
    }

    let mut value = 0.0;
    let mut terms = 0;
    let mut pow = r;
    for (i, bound) in m.iter().enumerate().take(MAX_TERMS) {
        let n = i + 1;
        if n >= start && (n - start) % step == 0 {
            let term = bound * pow;
            value += term;
            terms += 1;
            let q = (m.ratio_bound(n) * r).powi(step as i32);
            if q < 1.0 {
                let tail = term * q / (1.0 - q);
                if tail <= tol {
                    return Ok(WeightedSum {
                        value,
                        error_bound: tail,
                        terms,
                    });
                }
            }
        }
        pow *= r;
    }
    Err(WeightError::Divergence {
        r,
        ratio: m.ratio_bound(MAX_TERMS),
    })
}

fn extremal_sum(
    m: &CoeffBoundProvider,
    r: f64,
    tol: f64,
    start: usize,
    step: usize,
    top: usize,
) -> Result<WeightedSum, WeightError> {
    let mags: Vec<f64> = std::iter::once(0.0).chain(m.iter()).collect();
    let mut value = 0.0;
    let mut terms = 0;
    for n in (start..=top).step_by(step) {
        value += mags[n] * r.powi(n as i32);
        terms += 1;
    }
    // The unseen weighted tail is dominated by the unseen majorant tail.
    match tail_estimate(&mags, r) {
        Ok((tail, _)) if tail <= tol => Ok(WeightedSum {
            value,
            error_bound: tail,
            terms,
        }),
        Ok((_, rho)) | Err(rho) => Err(WeightError::Divergence { r, ratio: rho }),
    }
}
