//! Associated Legendre functions on the cut (Ferrers functions).

use super::logweight::{log_double_factorial, LogWeight};
use crate::error::{Error, Result};

const RESCALE: f64 = 1e200;

/// `P_j^k(x)` for `|x| <= 1`, with the Condon-Shortley phase `(-1)^k`.
pub fn assoc_legendre(j: u32, k: u32, x: f64) -> Result<f64> {
    Ok(assoc_legendre_log(j, k, x)?.value())
}

/// `P_j^k(x)` as a [`LogWeight`], safe for large degrees.
pub fn assoc_legendre_log(j: u32, k: u32, x: f64) -> Result<LogWeight> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::domain(format!("Legendre argument {x} outside [-1, 1]")));
    }
    assoc_legendre_log_with_complement(j, k, x, (1.0 - x) * (1.0 + x))
}

/// As [`assoc_legendre_log`] with `1 - x^2` supplied by the caller, which
/// often knows it more accurately than the subtraction would give.
pub(crate) fn assoc_legendre_log_with_complement(
    j: u32,
    k: u32,
    x: f64,
    one_minus_x2: f64,
) -> Result<LogWeight> {
    if k > j {
        return Err(Error::domain(format!("Legendre order {k} exceeds degree {j}")));
    }
    if k > 0 && one_minus_x2 <= 0.0 {
        return Ok(LogWeight::ZERO);
    }
    let kf = k as f64;
    let log_start = if k == 0 {
        0.0
    } else {
        log_double_factorial(2 * k as u64 - 1).log_magnitude + 0.5 * kf * one_minus_x2.ln()
    };
    let start = LogWeight {
        log_magnitude: log_start,
        sign: if k.is_multiple_of(2) { 1.0 } else { -1.0 },
    };
    if j == k {
        return Ok(start);
    }
    // Mantissas relative to exp(scale).
    let mut scale = start.log_magnitude;
    let mut prev = start.sign;
    let mut cur = x * (2.0 * kf + 1.0) * prev;
    for l in (k + 2)..=j {
        let lf = l as f64;
        let next = ((2.0 * lf - 1.0) * x * cur - (lf + kf - 1.0) * prev) / (lf - kf);
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE {
            cur /= RESCALE;
            prev /= RESCALE;
            scale += RESCALE.ln();
        } else if cur.abs() < 1.0 / RESCALE && prev.abs() < 1.0 / RESCALE && cur != 0.0 {
            cur *= RESCALE;
            prev *= RESCALE;
            scale -= RESCALE.ln();
        }
    }
    let mut w = LogWeight::from_f64(cur);
    w.log_magnitude += scale;
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    use crate::specfun::DoubleDouble;

    // Explicit sum P_n(x) = 2^-n sum_m C(n,m)^2 (x-1)^(n-m) (x+1)^m in
    // double-double; the terms cancel heavily for n near 20.
    fn legendre_by_sum(n: u32, x: f64) -> f64 {
        let xm = DoubleDouble::new(x) - 1.0;
        let xp = DoubleDouble::new(x) + 1.0;
        let mut c = 1.0f64;
        let mut s = DoubleDouble::ZERO;
        for m in 0..=n {
            if m > 0 {
                c = c * (n - m + 1) as f64 / m as f64;
            }
            let mut t = DoubleDouble::new(c * c);
            for _ in 0..(n - m) {
                t = t * xm;
            }
            for _ in 0..m {
                t = t * xp;
            }
            s = s + t;
        }
        (s / 2f64.powi(n as i32)).to_f64()
    }

    #[test]
    fn classical_low_orders() {
        let x = std::f64::consts::FRAC_1_SQRT_2;
        assert!((assoc_legendre(1, 0, x).unwrap() - x).abs() < 1e-16);
        assert!((assoc_legendre(2, 2, 0.0).unwrap() - 3.0).abs() < 1e-15);
        // P_1^1 = -(1-x^2)^{1/2}
        assert!((assoc_legendre(1, 1, 0.6).unwrap() + 0.8).abs() < 1e-15);
        // P_3^1 = -(3/2)(5x^2-1)(1-x^2)^{1/2}
        let x: f64 = 0.3;
        let want = -1.5 * (5.0 * x * x - 1.0) * (1.0 - x * x).sqrt();
        assert!((assoc_legendre(3, 1, x).unwrap() - want).abs() < 1e-15);
    }

    #[test]
    fn order_zero_matches_explicit_sum() {
        for n in 0..=20 {
            for &x in &[-1.0, -0.77, -0.2, 0.0, 0.31, 0.7, 0.95, 1.0] {
                let a = assoc_legendre(n, 0, x).unwrap();
                let b = legendre_by_sum(n, x);
                assert!((a - b).abs() < 1e-12, "n={n} x={x}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn survival_value_at_quarter() {
        let s = (std::f64::consts::PI / 4.0).sin();
        let p = assoc_legendre(1, 0, s).unwrap();
        assert!((s * p * p - 1.0 / (2.0 * 2f64.sqrt())).abs() < 1e-15);
    }

    #[test]
    fn order_above_degree_rejected() {
        assert!(matches!(assoc_legendre(2, 3, 0.1), Err(Error::Domain(_))));
        assert!(assoc_legendre(2, 1, 1.5).is_err());
    }

    #[test]
    fn endpoint_zero_for_positive_order() {
        assert_eq!(assoc_legendre(5, 2, 1.0).unwrap(), 0.0);
        assert_eq!(assoc_legendre(5, 0, 1.0).unwrap(), 1.0);
    }

    #[test]
    fn huge_degree_stays_finite_in_log_space() {
        let w = assoc_legendre_log(5000, 2000, 0.3).unwrap();
        assert!(w.log_magnitude.is_finite());
        assert!(w.log_magnitude > 700.0);
    }
}
