//! Value lists for sweep flags.
//!
//! Accepted forms:
//! - `a,b,c`: explicit list
//! - `a:b:lin` or `a:b:lin,count`: `count` evenly spaced points (default 11)
//! - `a:b:log` or `a:b:log,count`: geometric spacing, both ends positive
//!   (default 10 points per decade plus one)
//!
//! Endpoints are always included exactly.

use std::str::FromStr;

use serde::Serialize;

pub const LIN_DEFAULT_COUNT: usize = 11;
pub const LOG_POINTS_PER_DECADE: f64 = 10.0;
const MAX_POINTS: usize = 1_000_000;

/// A parsed, non-empty list of finite values.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct ValueList(Vec<f64>);

impl ValueList {
    pub fn values(&self) -> &[f64] {
        &self.0
    }

    /// The values as non-negative integers, rejecting anything fractional.
    pub fn as_counts(&self, flag: &str) -> Result<Vec<u64>, String> {
        self.0
            .iter()
            .map(|&v| {
                if v >= 0.0 && v.fract() == 0.0 && v <= u32::MAX as f64 {
                    Ok(v as u64)
                } else {
                    Err(format!("{flag} expects non-negative integers, got {v}"))
                }
            })
            .collect()
    }
}

fn number(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("{:?} is not a number", s.trim()))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("{v} is not finite"))
    }
}

fn count(s: Option<&str>, default: usize) -> Result<usize, String> {
    let c = match s {
        None => default,
        Some(s) => s.trim().parse().map_err(|_| format!("point count {:?} is not an integer", s.trim()))?,
    };
    if c == 0 || c > MAX_POINTS {
        return Err(format!("point count must be in 1..={MAX_POINTS}, got {c}"));
    }
    Ok(c)
}

fn spaced(a: f64, b: f64, n: usize, at: impl Fn(f64) -> f64) -> Vec<f64> {
    if n == 1 {
        return vec![a];
    }
    (0..n)
        .map(|i| match i {
            0 => a,
            _ if i == n - 1 => b,
            _ => at(i as f64 / (n - 1) as f64),
        })
        .collect()
}

impl FromStr for ValueList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if s.is_empty() {
            return Err("empty value list".into());
        }
        let parts: Vec<&str> = s.split(':').collect();
        let values = match parts.as_slice() {
            [single] => single.split(',').map(number).collect::<Result<Vec<_>, _>>()?,
            [a, b, rule] => {
                let (a, b) = (number(a)?, number(b)?);
                let (kind, n) = match rule.split_once(',') {
                    Some((k, n)) => (k.trim(), Some(n)),
                    None => (rule.trim(), None),
                };
                match kind {
                    "lin" => {
                        let n = count(n, LIN_DEFAULT_COUNT)?;
                        spaced(a, b, n, |x| a + (b - a) * x)
                    }
                    "log" => {
                        if !(a > 0.0 && b > 0.0) {
                            return Err(format!("log range needs positive ends, got {a}:{b}"));
                        }
                        let decades = (b / a).log10().abs();
                        let default = (LOG_POINTS_PER_DECADE * decades).round() as usize + 1;
                        let n = count(n, default.max(2))?;
                        {
                            // Interpolating exponents keeps interior decades exact.
                            let (la, lb) = (a.log10(), b.log10());
                            spaced(a, b, n, |x| 10f64.powf(la + (lb - la) * x))
                        }
                    }
                    other => return Err(format!("range kind must be lin or log, got {other:?}")),
                }
            }
            _ => return Err(format!("{s:?} is neither a list nor a:b:lin|log[,count]")),
        };
        Ok(Self(values))
    }
}
