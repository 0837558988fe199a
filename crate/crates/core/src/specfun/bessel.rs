//! Bessel functions of the first kind for real order in [-1, 2].
//!
//! Small arguments use the ascending power series summed in double-double
//! arithmetic; large arguments use Hankel's asymptotic expansion truncated at
//! its smallest term. At the default switchover both are accurate to well
//! below 1e-15 relative, which the overlap tests check.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use super::dd::DoubleDouble;
use super::gamma::gamma;
use crate::error::{Error, Result};

/// Argument above which the asymptotic expansion replaces the power series.
pub const SERIES_SWITCHOVER: f64 = 25.0;

pub const MAX_ORDER: f64 = 2.0;
pub const MIN_ORDER: f64 = -1.0;
pub const MAX_ARGUMENT: f64 = 1e5;

/// `J_order(x)`.
pub fn bessel_j(order: f64, x: f64) -> Result<f64> {
    bessel_j_with_switchover(order, x, SERIES_SWITCHOVER)
}

/// `J_order(x)` with an explicit series/asymptotic switchover point.
///
/// Exposed so the verification harness can inject a bad switchover.
pub fn bessel_j_with_switchover(order: f64, x: f64, switchover: f64) -> Result<f64> {
    check_args(order, x)?;
    if order < 0.0 && order == order.round() {
        // J_{-n} = (-1)^n J_n
        let v = bessel_j_with_switchover(-order, x, switchover)?;
        return Ok(if (order as i64) % 2 == 0 { v } else { -v });
    }
    if x == 0.0 {
        return if order == 0.0 {
            Ok(1.0)
        } else if order > 0.0 {
            Ok(0.0)
        } else {
            Err(Error::domain(format!("J_{order}(0) is infinite")))
        };
    }
    if x > switchover {
        Ok(hankel(order, x))
    } else {
        series(order, x)
    }
}

/// `dJ_order/dx` from the order-lowering (or raising) recurrence.
pub fn bessel_j_prime(order: f64, x: f64) -> Result<f64> {
    check_args(order, x)?;
    if x == 0.0 {
        return Err(Error::domain("Bessel derivative requested at x = 0"));
    }
    let j = bessel_j(order, x)?;
    if order >= 0.0 {
        Ok(bessel_j(order - 1.0, x)? - order / x * j)
    } else {
        Ok(-bessel_j(order + 1.0, x)? + order / x * j)
    }
}

fn check_args(order: f64, x: f64) -> Result<()> {
    if !order.is_finite() || !(MIN_ORDER..=MAX_ORDER).contains(&order) {
        return Err(Error::domain(format!(
            "Bessel order {order} outside [{MIN_ORDER}, {MAX_ORDER}]"
        )));
    }
    if !x.is_finite() || x < 0.0 {
        return Err(Error::domain(format!("Bessel argument {x} must be non-negative")));
    }
    if x > MAX_ARGUMENT {
        return Err(Error::domain(format!("Bessel argument {x} above {MAX_ARGUMENT}")));
    }
    Ok(())
}

fn series(order: f64, x: f64) -> Result<f64> {
    let q = 0.25 * x * x;
    let mut term = DoubleDouble::ONE;
    let mut sum = DoubleDouble::ONE;
    let mut biggest = 1.0f64;
    for k in 1..400 {
        let kf = k as f64;
        term = term * (-q) / DoubleDouble::new(kf) / (DoubleDouble::new(order) + kf);
        sum = sum + term;
        let t = term.hi.abs();
        biggest = biggest.max(t);
        if t < 1e-34 * biggest && kf > q.sqrt() {
            break;
        }
    }
    let pref = (order * (0.5 * x).ln()).exp() / gamma(order + 1.0)?;
    Ok(pref * sum.to_f64())
}

fn hankel(order: f64, x: f64) -> f64 {
    let mu = 4.0 * order * order;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut a = 1.0;
    let mut prev = f64::INFINITY;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        a *= (mu - odd * odd) / (k as f64 * 8.0 * x);
        let t = a.abs();
        if t > prev {
            break;
        }
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 1 {
            q += sign * a;
        } else {
            p += sign * a;
        }
        if t < 1e-17 {
            break;
        }
        prev = t;
    }
    // chi = x - theta with theta = order*pi/2 + pi/4; expand to keep x exact.
    let theta = order * FRAC_PI_2 + FRAC_PI_4;
    let (sx, cx) = x.sin_cos();
    let (st, ct) = theta.sin_cos();
    let cos_chi = cx * ct + sx * st;
    let sin_chi = sx * ct - cx * st;
    (2.0 / (PI * x)).sqrt() * (p * cos_chi - q * sin_chi)
}
