use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::OperatorError;

/// A real interval with explicit endpoint closure and a boundary slack.
///
/// Membership near an endpoint is decided by that endpoint's closure flag;
/// a point within slack of both endpoints follows `closed_lo`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RealInterval {
    pub lo: f64,
    pub hi: f64,
    pub closed_lo: bool,
    pub closed_hi: bool,
    pub boundary_tol: f64,
}

impl RealInterval {
    pub fn new(
        lo: f64,
        hi: f64,
        closed_lo: bool,
        closed_hi: bool,
        boundary_tol: f64,
    ) -> Result<Self, OperatorError> {
        if lo.is_nan() || hi.is_nan() || lo > hi || !(boundary_tol >= 0.0) {
            return Err(OperatorError::BadInterval { lo, hi });
        }
        Ok(Self { lo, hi, closed_lo, closed_hi, boundary_tol })
    }

    /// `[lo, hi]` with zero slack.
    pub fn closed(lo: f64, hi: f64) -> Result<Self, OperatorError> {
        Self::new(lo, hi, true, true, 0.0)
    }

    /// `[lo, hi)` with zero slack.
    pub fn half_open(lo: f64, hi: f64) -> Result<Self, OperatorError> {
        Self::new(lo, hi, true, false, 0.0)
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.boundary_tol = tol.max(0.0);
        self
    }

    pub fn contains(&self, x: f64) -> bool {
        self.contains_with_tol(x, self.boundary_tol)
    }

    pub fn contains_with_tol(&self, x: f64, tol: f64) -> bool {
        if (x - self.lo).abs() <= tol {
            return self.closed_lo;
        }
        if (x - self.hi).abs() <= tol {
            return self.closed_hi;
        }
        x > self.lo && x < self.hi
    }

    pub fn length(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    /// Distance from `x` to the closed hull; zero inside.
    pub fn distance(&self, x: f64) -> f64 {
        if x < self.lo {
            self.lo - x
        } else if x > self.hi {
            x - self.hi
        } else {
            0.0
        }
    }

    /// The interval grown by `delta` on both sides.
    pub fn enlarged(&self, delta: f64) -> Self {
        Self { lo: self.lo - delta, hi: self.hi + delta, ..*self }
    }

    pub fn is_subset_of(&self, other: &RealInterval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// `n` Chebyshev points of the first kind mapped into the interval, ascending.
    pub fn chebyshev_points(&self, n: usize) -> Vec<f64> {
        let (a, b) = (self.lo, self.hi);
        (0..n)
            .map(|k| {
                let theta = std::f64::consts::PI * (2.0 * (n - 1 - k) as f64 + 1.0) / (2.0 * n as f64);
                0.5 * (a + b) + 0.5 * (b - a) * theta.cos()
            })
            .collect()
    }
}

impl fmt::Display for RealInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = if self.closed_lo { '[' } else { '(' };
        let r = if self.closed_hi { ']' } else { ')' };
        write!(f, "{l}{}, {}{r}", self.lo, self.hi)
    }
}

/// Parses `lo:hi` as a closed interval.
impl FromStr for RealInterval {
    type Err = OperatorError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |msg: &str| OperatorError::Parse { line: 1, msg: format!("{msg}: {s:?}") };
        let (a, b) = s.split_once(':').ok_or_else(|| bad("expected lo:hi"))?;
        let lo: f64 = a.trim().parse().map_err(|_| bad("bad lower bound"))?;
        let hi: f64 = b.trim().parse().map_err(|_| bad("bad upper bound"))?;
        RealInterval::closed(lo, hi)
    }
}
