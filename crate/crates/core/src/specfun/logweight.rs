//! Signed numbers stored as `sign * exp(log_magnitude)`, plus log-factorials.

use std::f64::consts::PI;
use std::ops::{Div, Mul};

use super::gamma::ln_gamma;

/// A signed magnitude kept in log space so factorial ratios never overflow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogWeight {
    pub log_magnitude: f64,
    /// +1 or -1.
    pub sign: f64,
}

impl LogWeight {
    pub const ONE: Self = Self { log_magnitude: 0.0, sign: 1.0 };
    pub const ZERO: Self = Self { log_magnitude: f64::NEG_INFINITY, sign: 1.0 };

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            Self::ZERO
        } else {
            Self { log_magnitude: x.abs().ln(), sign: x.signum() }
        }
    }

    pub fn from_log(log_magnitude: f64) -> Self {
        Self { log_magnitude, sign: 1.0 }
    }

    pub fn value(self) -> f64 {
        self.sign * self.log_magnitude.exp()
    }

    pub fn is_zero(self) -> bool {
        self.log_magnitude == f64::NEG_INFINITY
    }

    pub fn powi(self, k: i32) -> Self {
        let sign = if k % 2 == 0 { 1.0 } else { self.sign };
        if self.is_zero() {
            return if k == 0 { Self::ONE } else { Self::ZERO };
        }
        Self { log_magnitude: self.log_magnitude * k as f64, sign }
    }

    pub fn abs(self) -> Self {
        Self { sign: 1.0, ..self }
    }
}

impl Mul for LogWeight {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self {
            log_magnitude: self.log_magnitude + rhs.log_magnitude,
            sign: self.sign * rhs.sign,
        }
    }
}

impl Div for LogWeight {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        Self {
            log_magnitude: self.log_magnitude - rhs.log_magnitude,
            sign: self.sign * rhs.sign,
        }
    }
}

const EXACT_LIMIT: u64 = 20;

/// `ln n!`.
pub fn log_factorial(n: u64) -> LogWeight {
    if n <= EXACT_LIMIT {
        let f: u64 = (1..=n).product();
        return LogWeight::from_log((f as f64).ln());
    }
    LogWeight::from_log(ln_gamma(n as f64 + 1.0).expect("positive argument"))
}

/// `ln n!!`, with `0!! = 1`.
pub fn log_double_factorial(n: u64) -> LogWeight {
    if n <= EXACT_LIMIT {
        let f: u64 = (1..=n).rev().step_by(2).product();
        return LogWeight::from_log((f as f64).ln());
    }
    let h = n as f64 / 2.0;
    let ln2 = std::f64::consts::LN_2;
    let lg = ln_gamma(h + 1.0).expect("positive argument");
    if n.is_multiple_of(2) {
        LogWeight::from_log(h * ln2 + lg)
    } else {
        LogWeight::from_log((h + 0.5) * ln2 + lg - 0.5 * PI.ln())
    }
}

/// `(2k-1)!! / (2k)!!`, equal to 1 at k = 0.
pub fn double_factorial_ratio(k: u64) -> LogWeight {
    if k == 0 {
        return LogWeight::ONE;
    }
    log_double_factorial(2 * k - 1) / log_double_factorial(2 * k)
}
