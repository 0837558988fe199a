//! Transfer coefficients of zero crossings and their composition.
//!
//! After an adiabatic stretch containing crossings the mode function reads
//! `eps = omega^-1/2 (u+ e^{i phi} + u- e^{-i phi})`, with `|u+|^2 - |u-|^2 = 1`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quantum::MomentState;

/// Tolerance on `|u+|^2 - |u-|^2 - 1` accepted by [`BogoliubovPair::new`].
pub const PAIR_TOLERANCE: f64 = 1e-8;

/// The pair `(u+, u-)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BogoliubovPair {
    u_plus: Complex64,
    u_minus: Complex64,
}

impl BogoliubovPair {
    /// Validated constructor.
    pub fn new(u_plus: Complex64, u_minus: Complex64) -> Result<Self> {
        let p = Self { u_plus, u_minus };
        let r = p.constraint_residual();
        if !(r <= PAIR_TOLERANCE) {
            return Err(Error::invalid(format!(
                "|u+|^2 - |u-|^2 - 1 = {r:e} for u+ = {u_plus}, u- = {u_minus}"
            )));
        }
        Ok(p)
    }

    /// Pair with real positive `u+` fixed by the constraint and the given `u-`.
    pub fn from_u_minus(u_minus: Complex64) -> Self {
        Self { u_plus: Complex64::new((1.0 + u_minus.norm_sqr()).sqrt(), 0.0), u_minus }
    }

    /// No crossing: `u+ = 1`, `u- = 0`.
    pub fn identity() -> Self {
        Self { u_plus: Complex64::new(1.0, 0.0), u_minus: Complex64::new(0.0, 0.0) }
    }

    /// Numerically obtained pair, kept even if the constraint holds only
    /// approximately.
    pub(crate) fn unchecked(u_plus: Complex64, u_minus: Complex64) -> Self {
        Self { u_plus, u_minus }
    }

    pub fn u_plus(&self) -> Complex64 {
        self.u_plus
    }

    pub fn u_minus(&self) -> Complex64 {
        self.u_minus
    }

    /// `| |u+|^2 - |u-|^2 - 1 |`.
    pub fn constraint_residual(&self) -> f64 {
        (self.u_plus.norm_sqr() - self.u_minus.norm_sqr() - 1.0).abs()
    }

    /// Amplification factor `beta = |u+|^2 + |u-|^2`.
    pub fn beta(&self) -> f64 {
        1.0 + 2.0 * self.u_minus.norm_sqr()
    }
}

/// `beta` of a pair.
pub fn beta_of(pair: &BogoliubovPair) -> f64 {
    pair.beta()
}

/// A crossing `u` followed, after the phase `phi` accumulated in between, by
/// a crossing `w`.
pub fn compose_two(u: &BogoliubovPair, w: &BogoliubovPair, phi: f64) -> BogoliubovPair {
    let e = Complex64::from_polar(1.0, phi);
    let ec = e.conj();
    BogoliubovPair {
        u_plus: w.u_plus * u.u_plus * e + w.u_minus.conj() * u.u_minus * ec,
        u_minus: w.u_minus * u.u_plus * e + w.u_plus.conj() * u.u_minus * ec,
    }
}

/// Closed form of `beta(compose_two(u, w, phi))`.
pub fn beta_double_crossing(u: &BogoliubovPair, w: &BogoliubovPair, phi: f64) -> f64 {
    let cross = w.u_plus * w.u_minus * u.u_plus * u.u_minus.conj() * Complex64::from_polar(1.0, 2.0 * phi);
    1.0 + 2.0
        * (w.u_minus.norm_sqr() * u.u_plus.norm_sqr()
            + w.u_plus.norm_sqr() * u.u_minus.norm_sqr()
            + 2.0 * cross.re)
}

/// `(beta_min, beta_max)` of two crossings over all intermediate phases.
pub fn beta_extremes(u: &BogoliubovPair, w: &BogoliubovPair) -> (f64, f64) {
    let a = w.u_plus.norm() * u.u_minus.norm();
    let b = w.u_minus.norm() * u.u_plus.norm();
    (1.0 + 2.0 * (a - b).powi(2), 1.0 + 2.0 * (a + b).powi(2))
}

/// Minimum and maximum of `beta` over `count` equally spaced phases in `[0, 2 pi)`.
pub fn beta_phase_scan(u: &BogoliubovPair, w: &BogoliubovPair, count: usize) -> (f64, f64) {
    (0..count)
        .map(|k| {
            let phi = std::f64::consts::TAU * k as f64 / count as f64;
            compose_two(u, w, phi).beta()
        })
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), b| (lo.min(b), hi.max(b)))
}

/// One crossing of a plan: its pair and the phase accumulated since the
/// previous crossing (ignored for the first).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlannedCrossing {
    pub pair: BogoliubovPair,
    pub phi_before: f64,
}

/// An ordered sequence of crossings.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CrossingPlan {
    pub crossings: Vec<PlannedCrossing>,
}

#[derive(Serialize, Deserialize)]
struct CrossingJson {
    u_plus: [f64; 2],
    u_minus: [f64; 2],
    #[serde(default)]
    phi_before: f64,
}

#[derive(Serialize, Deserialize)]
struct PlanJson {
    crossings: Vec<CrossingJson>,
}

impl CrossingPlan {
    pub fn new(crossings: Vec<PlannedCrossing>) -> Result<Self> {
        for (i, c) in crossings.iter().enumerate() {
            if !(c.phi_before >= 0.0) || !c.phi_before.is_finite() {
                return Err(Error::invalid(format!(
                    "crossing {i}: phi_before must be a finite non-negative phase"
                )));
            }
            if !(c.pair.constraint_residual() <= PAIR_TOLERANCE) {
                return Err(Error::invalid(format!("crossing {i}: pair violates |u+|^2 - |u-|^2 = 1")));
            }
        }
        Ok(Self { crossings })
    }

    /// Parses `{"crossings":[{"u_plus":[re,im],"u_minus":[re,im],"phi_before":x}, ...]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: PlanJson = serde_json::from_str(text).map_err(|e| Error::Parse {
            what: "crossing plan",
            input: text.chars().take(80).collect(),
            reason: e.to_string(),
        })?;
        let crossings = raw
            .crossings
            .into_iter()
            .map(|c| {
                Ok(PlannedCrossing {
                    pair: BogoliubovPair::new(
                        Complex64::new(c.u_plus[0], c.u_plus[1]),
                        Complex64::new(c.u_minus[0], c.u_minus[1]),
                    )?,
                    phi_before: c.phi_before,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(crossings)
    }

    pub fn to_json(&self) -> String {
        let raw = PlanJson {
            crossings: self
                .crossings
                .iter()
                .map(|c| CrossingJson {
                    u_plus: [c.pair.u_plus.re, c.pair.u_plus.im],
                    u_minus: [c.pair.u_minus.re, c.pair.u_minus.im],
                    phi_before: c.phi_before,
                })
                .collect(),
        };
        serde_json::to_string(&raw).expect("plain data serializes")
    }
}

/// Left fold of [`compose_two`] over the plan; the empty plan is the identity.
pub fn compose_plan(plan: &CrossingPlan) -> BogoliubovPair {
    let mut it = plan.crossings.iter();
    let Some(first) = it.next() else {
        return BogoliubovPair::identity();
    };
    it.fold(first.pair, |acc, c| compose_two(&acc, &c.pair, c.phi_before))
}

/// Amplification factor including the state-dependent correction for
/// arbitrary initial second moments:
/// `E(t) = (beta + delta) (omega(t)/omega0) E(-tau)`.
pub fn beta_general(pair: &BogoliubovPair, moments: &MomentState, omega0: f64) -> Result<f64> {
    let energy = 0.5 * (moments.pp() + omega0 * omega0 * moments.xx());
    if !(energy > 0.0) {
        return Err(Error::domain("initial mean energy must be positive"));
    }
    let uu = pair.u_plus * pair.u_minus;
    let delta = ((omega0 * omega0 * moments.xx() - moments.pp()) * uu.re
        + omega0 * moments.xp_sym() * uu.im)
        / energy;
    Ok(pair.beta() + delta)
}
