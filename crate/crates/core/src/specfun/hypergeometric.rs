//! Terminating Gauss hypergeometric series `F(-n, b; c; x)`.

use num_bigint::{BigInt, BigUint, Sign};

use super::dd::DoubleDouble;
use super::logweight::LogWeight;
use crate::error::{Error, Result};

/// `F(-n, b; c; x)`, a polynomial of degree `n` in `x`.
///
/// Terms are formed and summed in double-double precision, largest first, so
/// alternating sums with large intermediate terms keep full `f64` accuracy.
pub fn hyp2f1_terminating(n: u32, b: f64, c: f64, x: f64) -> Result<f64> {
    Ok(hyp2f1_terminating_dd(n, b, c, DoubleDouble::new(x))?.to_f64())
}

fn hyp2f1_terminating_dd(
    n: u32,
    b: f64,
    c: f64,
    x: DoubleDouble,
) -> Result<DoubleDouble> {
    if !b.is_finite() || !c.is_finite() || !x.hi.is_finite() {
        return Err(Error::domain("hypergeometric parameters must be finite"));
    }
    if c <= 0.0 && c == c.round() {
        return Err(Error::domain(format!("hypergeometric c = {c} is a pole")));
    }
    let mut terms = Vec::with_capacity(n as usize + 1);
    let mut t = DoubleDouble::ONE;
    terms.push(t);
    for k in 1..=n {
        let kf = k as f64;
        let num = DoubleDouble::new(kf - 1.0 - n as f64) * (b + kf - 1.0);
        let den = DoubleDouble::new(c + kf - 1.0) * kf;
        t = t * num * x / den;
        terms.push(t);
    }
    terms.sort_by(|p, q| q.hi.abs().total_cmp(&p.hi.abs()));
    Ok(terms.into_iter().fold(DoubleDouble::ZERO, |acc, t| acc + t))
}

/// `F(-n, b; c; p/q)` for integer `b >= 0`, `c >= 1` and a rational argument,
/// evaluated exactly by Horner's rule over big integers.
///
/// Used where the alternating sum cancels beyond double-double range (large
/// `n` with the argument near 1/2).
pub(crate) fn hyp2f1_terminating_rational(
    n: u32,
    b: u64,
    c: u64,
    p: &BigInt,
    q: &BigInt,
) -> Result<LogWeight> {
    if c == 0 {
        return Err(Error::domain("hypergeometric c = 0 is a pole"));
    }
    if q.sign() != Sign::Plus {
        return Err(Error::domain("rational argument needs a positive denominator"));
    }
    let (mut a, mut d) = (BigInt::from(1u8), BigInt::from(1u8));
    for i in (0..n as u64).rev() {
        let num_r = BigInt::from(i as i128 - n as i128) * BigInt::from(b + i);
        let den_r = BigInt::from(c + i) * BigInt::from(i + 1);
        let scaled = &d * den_r * q;
        a = &scaled + num_r * p * &a;
        d = scaled;
    }
    let sign = match a.sign() {
        Sign::Minus => -1.0,
        Sign::NoSign => return Ok(LogWeight::ZERO),
        Sign::Plus => 1.0,
    };
    Ok(ln_ratio(a.magnitude(), d.magnitude()) * LogWeight::from_f64(sign))
}

/// `(leading 64 bits, shift)` with `x ~ top * 2^shift`.
fn leading_bits(x: &BigUint) -> (f64, i64) {
    let shift = x.bits().saturating_sub(64);
    let top = (x >> shift).to_u64_digits().first().copied().unwrap_or(0);
    (top as f64, shift as i64)
}

/// `num / den` for positive big integers without subtracting large logs.
fn ln_ratio(num: &BigUint, den: &BigUint) -> LogWeight {
    let ((tn, sn), (td, sd)) = (leading_bits(num), leading_bits(den));
    LogWeight::from_f64(tn / td) * LogWeight::from_log((sn - sd) as f64 * std::f64::consts::LN_2)
}

/// Exact `(numerator, denominator)` of a finite positive `f64`.
pub(crate) fn f64_as_ratio(x: f64) -> (BigInt, BigInt) {
    let bits = x.to_bits();
    let biased = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (mant, e) = if biased == 0 { (frac, -1074) } else { (frac | (1u64 << 52), biased - 1075) };
    let m = BigInt::from(mant);
    if e >= 0 {
        (m << e as usize, BigInt::from(1u8))
    } else {
        (m, BigInt::from(1u8) << (-e) as usize)
    }
}
