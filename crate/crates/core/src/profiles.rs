//! Dimensionless frequency profiles `f(T) = omega^2(t) / omega_0^2`.
//!
//! Power, tanh-power and sin^2 profiles satisfy `f(-1) = 1` and are held at
//! that value for `T < -1`. The Epstein-Eckart shape `tanh^2(aT)` is defined
//! on the whole line.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::quad;
use crate::specfun::{cos_pi, sin_pi};

const PHASE_REL_TOL: f64 = 1e-12;

/// Shape selector with its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProfileKind {
    /// `|T|^n`
    Power { n: f64 },
    /// `|tanh(aT) / tanh(-a)|^n`
    TanhPower { n: f64, a: f64 },
    /// `sin^2(pi T / 2)`, zeros at even integers.
    Sin2,
    /// `tanh^2(aT)`; with `t = T tau` this is `tanh^2(kappa t / 2)` for `kappa = 2a/tau`.
    EpsteinEckart { a: f64 },
}

/// A validated frequency profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencyProfile {
    kind: ProfileKind,
}

/// A zero of `f` with the power law it vanishes with.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroCrossing {
    pub t: f64,
    /// `f ~ |T - t|^local_index` near the zero.
    pub local_index: f64,
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!("profile parameter {name} must be positive, got {v}")))
    }
}

impl FrequencyProfile {
    pub fn power(n: f64) -> Result<Self> {
        check_positive("n", n)?;
        Ok(Self { kind: ProfileKind::Power { n } })
    }

    pub fn tanh_power(n: f64, a: f64) -> Result<Self> {
        check_positive("n", n)?;
        check_positive("a", a)?;
        Ok(Self { kind: ProfileKind::TanhPower { n, a } })
    }

    pub fn sin2() -> Self {
        Self { kind: ProfileKind::Sin2 }
    }

    pub fn epstein_eckart(a: f64) -> Result<Self> {
        check_positive("a", a)?;
        Ok(Self { kind: ProfileKind::EpsteinEckart { a } })
    }

    pub fn kind(&self) -> ProfileKind {
        self.kind
    }

    /// `f(T)`; rejects non-finite `T`.
    pub fn f(&self, t: f64) -> Result<f64> {
        if !t.is_finite() {
            return Err(Error::domain(format!("profile evaluated at non-finite T = {t}")));
        }
        Ok(self.f_unchecked(t))
    }

    pub(crate) fn f_unchecked(&self, t: f64) -> f64 {
        match self.kind {
            ProfileKind::EpsteinEckart { a } => (a * t).tanh().powi(2),
            _ if t <= -1.0 => 1.0,
            ProfileKind::Power { n } => t.abs().powf(n),
            ProfileKind::TanhPower { n, a } => ((a * t).tanh() / a.tanh()).abs().powf(n),
            ProfileKind::Sin2 => sin_pi(0.5 * t).powi(2),
        }
    }

    /// `omega(T) / omega_0 = sqrt f(T)`.
    pub fn omega(&self, t: f64) -> f64 {
        match self.kind {
            ProfileKind::EpsteinEckart { a } => (a * t).tanh().abs(),
            _ if t <= -1.0 => 1.0,
            ProfileKind::Power { n } => t.abs().powf(0.5 * n),
            ProfileKind::TanhPower { n, a } => ((a * t).tanh() / a.tanh()).abs().powf(0.5 * n),
            ProfileKind::Sin2 => sin_pi(0.5 * t).abs(),
        }
    }

    /// `d omega / dT` (zero on the constant part before the window).
    pub fn omega_derivative(&self, t: f64) -> f64 {
        let s = t.signum();
        match self.kind {
            ProfileKind::EpsteinEckart { a } => s * a / (a * t).cosh().powi(2),
            _ if t <= -1.0 => 0.0,
            ProfileKind::Power { n } => s * 0.5 * n * t.abs().powf(0.5 * n - 1.0),
            ProfileKind::TanhPower { n, a } => {
                let th = (a * t).tanh();
                let w = (th / a.tanh()).abs().powf(0.5 * n);
                0.5 * n * w * a / ((a * t).cosh().powi(2) * th)
            }
            ProfileKind::Sin2 => {
                let sv = sin_pi(0.5 * t);
                sv.signum() * 0.5 * std::f64::consts::PI * cos_pi(0.5 * t)
            }
        }
    }

    /// Local adiabaticity `|d omega/dT| / (G omega^2)`; small means adiabatic.
    pub fn adiabaticity(&self, big_g: f64, t: f64) -> f64 {
        let w = self.omega(t);
        self.omega_derivative(t).abs() / (big_g * w * w)
    }

    /// Zeros of `f` in `(-1, t_max]`, in increasing order.
    pub fn zero_crossings(&self, t_max: f64) -> Vec<ZeroCrossing> {
        match self.kind {
            ProfileKind::Power { n } | ProfileKind::TanhPower { n, .. } => {
                single_zero(t_max, n)
            }
            ProfileKind::EpsteinEckart { .. } => single_zero(t_max, 2.0),
            ProfileKind::Sin2 => (0..)
                .map(|k| 2.0 * k as f64)
                .take_while(|&t| t <= t_max)
                .map(|t| ZeroCrossing { t, local_index: 2.0 })
                .collect(),
        }
    }

    /// `G * integral_{ta}^{tb} sqrt f(z) dz`, the adiabatic phase.
    pub fn phase_integral(&self, big_g: f64, ta: f64, tb: f64) -> Result<f64> {
        if !(big_g > 0.0) || !big_g.is_finite() {
            return Err(Error::invalid(format!("G must be positive, got {big_g}")));
        }
        if !(ta <= tb) || !ta.is_finite() || !tb.is_finite() {
            return Err(Error::domain(format!("phase interval [{ta}, {tb}] is not ordered")));
        }
        let mut cuts = vec![ta];
        if ta < -1.0 && tb > -1.0 && !matches!(self.kind, ProfileKind::EpsteinEckart { .. }) {
            cuts.push(-1.0);
        }
        cuts.extend(
            self.zero_crossings(tb)
                .into_iter()
                .map(|z| z.t)
                .filter(|&t| t > ta && t < tb),
        );
        cuts.push(tb);
        let mut total = 0.0;
        for w in cuts.windows(2) {
            total += quad::integrate(|z| self.omega(z), w[0], w[1], PHASE_REL_TOL)?;
        }
        Ok(big_g * total)
    }
}

fn single_zero(t_max: f64, index: f64) -> Vec<ZeroCrossing> {
    if t_max >= 0.0 {
        vec![ZeroCrossing { t: 0.0, local_index: index }]
    } else {
        Vec::new()
    }
}

impl fmt::Display for FrequencyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ProfileKind::Power { n } => write!(f, "power:n={n}"),
            ProfileKind::TanhPower { n, a } => write!(f, "tanh:n={n},a={a}"),
            ProfileKind::Sin2 => write!(f, "sin2"),
            ProfileKind::EpsteinEckart { a } => write!(f, "ee:a={a}"),
        }
    }
}

/// Parses `power:n=2`, `tanh:n=2,a=5` (a defaults to 5), `sin2`, `ee:a=5`.
impl FromStr for FrequencyProfile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let perr = |reason: String| Error::Parse { what: "profile", input: s.to_string(), reason };
        let lower = s.trim().to_ascii_lowercase();
        let (name, rest) = match lower.split_once(':') {
            Some((n, r)) => (n.trim(), r.trim()),
            None => (lower.as_str(), ""),
        };
        let mut n = None;
        let mut a = None;
        for item in rest.split(',').map(str::trim).filter(|i| !i.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| perr(format!("expected key=value, got {item:?}")))?;
            let v: f64 = v
                .trim()
                .parse()
                .map_err(|_| perr(format!("value of {} is not a number", k.trim())))?;
            let slot = match k.trim() {
                "n" => &mut n,
                "a" => &mut a,
                other => return Err(perr(format!("unknown key {other:?}"))),
            };
            if slot.replace(v).is_some() {
                return Err(perr(format!("duplicate key {:?}", k.trim())));
            }
        }
        let allow = |ok_n: bool, ok_a: bool| -> Result<()> {
            if (!ok_n && n.is_some()) || (!ok_a && a.is_some()) {
                Err(perr(format!("key not accepted by profile {name:?}")))
            } else {
                Ok(())
            }
        };
        match name {
            "power" => {
                allow(true, false)?;
                Self::power(n.ok_or_else(|| perr("missing n".into()))?)
            }
            "tanh" => {
                allow(true, true)?;
                Self::tanh_power(n.ok_or_else(|| perr("missing n".into()))?, a.unwrap_or(5.0))
            }
            "sin2" => {
                allow(false, false)?;
                Ok(Self::sin2())
            }
            "ee" | "epstein-eckart" => {
                allow(false, true)?;
                Self::epstein_eckart(a.ok_or_else(|| perr("missing a".into()))?)
            }
            other => Err(perr(format!("unknown profile {other:?}"))),
        }
    }
}
