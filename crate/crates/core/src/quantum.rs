//! Quantum observables after crossings: second moments, energy statistics,
//! Fock-state transition probabilities and invariant squeezing.
//!
//! Units `hbar = m = 1`; frequencies are in units of `omega_0`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::integrator::ModeState;
use crate::specfun::{
    assoc_legendre_log_with_complement, f64_as_ratio, hyp2f1_terminating_rational, log_factorial,
    LogWeight,
};
use crate::transitions::BogoliubovPair;

/// Second moments `<x^2>`, `<p^2>`, `<xp + px>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentState {
    xx: f64,
    pp: f64,
    xp_sym: f64,
}

impl MomentState {
    /// Moments of a quantum state; enforces the Schroedinger-Robertson bound.
    pub fn new(xx: f64, pp: f64, xp_sym: f64) -> Result<Self> {
        let m = Self::unconstrained(xx, pp, xp_sym)?;
        if !(xx > 0.0 && pp > 0.0) {
            return Err(Error::invalid("quantum moments need <x^2> > 0 and <p^2> > 0"));
        }
        if m.invariant_d() < 0.25 - 1e-12 {
            return Err(Error::invalid(format!(
                "D = {} violates the uncertainty bound D >= 1/4",
                m.invariant_d()
            )));
        }
        Ok(m)
    }

    /// Moments of a classical phase-space ensemble (no uncertainty bound).
    pub fn unconstrained(xx: f64, pp: f64, xp_sym: f64) -> Result<Self> {
        if !(xx >= 0.0 && pp >= 0.0 && xp_sym.is_finite() && xx.is_finite() && pp.is_finite()) {
            return Err(Error::invalid("second moments must be finite with xx, pp >= 0"));
        }
        Ok(Self { xx, pp, xp_sym })
    }

    pub fn vacuum() -> Self {
        Self::fock(0)
    }

    /// Fock state `|n>` of the unit-frequency oscillator.
    pub fn fock(n: u64) -> Self {
        let v = n as f64 + 0.5;
        Self { xx: v, pp: v, xp_sym: 0.0 }
    }

    pub fn xx(&self) -> f64 {
        self.xx
    }

    pub fn pp(&self) -> f64 {
        self.pp
    }

    pub fn xp_sym(&self) -> f64 {
        self.xp_sym
    }

    /// Universal invariant `D = <x^2><p^2> - <xp+px>^2 / 4`.
    pub fn invariant_d(&self) -> f64 {
        self.xx * self.pp - 0.25 * self.xp_sym * self.xp_sym
    }
}

/// Moments at the time of `mode`, starting from `initial` at `T = -1` where
/// the frequency is `omega0`.
pub fn evolve_moments(initial: &MomentState, mode: &ModeState, omega0: f64) -> MomentState {
    // x(t) = x0 a(t) + p0 b(t) with a = Re eps, b = Im eps / omega0 (eps scaled by omega0^1/2).
    let (a, b) = (mode.eps.re, mode.eps.im / omega0);
    let (da, db) = (omega0 * mode.deps.re, mode.deps.im);
    let (xx0, pp0, c0) = (initial.xx, initial.pp, initial.xp_sym);
    MomentState {
        xx: xx0 * a * a + pp0 * b * b + c0 * a * b,
        pp: xx0 * da * da + pp0 * db * db + c0 * da * db,
        xp_sym: 2.0 * xx0 * a * da + 2.0 * pp0 * b * db + c0 * (a * db + b * da),
    }
}

/// `<E> = (<p^2> + omega^2 <x^2>) / 2`.
pub fn mean_energy(moments: &MomentState, omega: f64) -> f64 {
    0.5 * (moments.pp + omega * omega * moments.xx)
}

/// `(omega^2 |eps|^2 + |deps|^2) / 2`: the energy amplification of states with
/// `<p^2> = <x^2>` and `<xp+px> = 0` at unit initial frequency.
pub fn energy_ratio_special(mode: &ModeState, omega: f64) -> f64 {
    0.5 * (omega * omega * mode.eps.norm_sqr() + mode.deps.norm_sqr())
}

/// Relative disagreement of the two transition-probability formulas that
/// counts as an internal failure.
pub const FOCK_CROSSCHECK_FAIL: f64 = 1e-6;

fn split_indices(n: u64, m: u64) -> Option<(u64, u64, u64)> {
    if n.abs_diff(m) % 2 == 1 {
        return None;
    }
    let (lo, hi) = if n <= m { (n, m) } else { (m, n) };
    Some((lo, hi, (hi - lo) / 2))
}

/// `|<M|N>|^2` through the associated Legendre form.
pub fn fock_transition_prob_legendre(n: u64, m: u64, pair: &BogoliubovPair) -> Result<LogWeight> {
    let Some((lo, hi, k)) = split_indices(n, m) else {
        return Ok(LogWeight::ZERO);
    };
    let up = pair.u_plus().norm();
    let um = pair.u_minus().norm();
    let j = (n + m) / 2;
    let x = 1.0 / up;
    let complement = (um / up).powi(2);
    let p = assoc_legendre_log_with_complement(j as u32, k as u32, x, complement)?;
    Ok(log_factorial(lo) / log_factorial(hi) / LogWeight::from_f64(up) * p.abs().powi(2))
}

/// `|<M|N>|^2` through the terminating hypergeometric form, summed exactly
/// in rational arithmetic.
pub fn fock_transition_prob_hypergeometric(
    n: u64,
    m: u64,
    pair: &BogoliubovPair,
) -> Result<LogWeight> {
    let Some((lo, hi, k)) = split_indices(n, m) else {
        return Ok(LogWeight::ZERO);
    };
    let up = pair.u_plus().norm();
    let um = pair.u_minus().norm();
    if k > 0 && um == 0.0 {
        return Ok(LogWeight::ZERO);
    }
    // z = (1 - 1/|u+|)/2 = (a - b)/(2a) exactly for |u+| = a/b.
    let (a, b) = f64_as_ratio(up);
    let f = hyp2f1_terminating_rational(lo as u32, hi + 1, k + 1, &(&a - b), &(a * 2u8))?;
    let pref = LogWeight::from_f64(2.0) * log_factorial(hi) / log_factorial(lo)
        / log_factorial(k).powi(2)
        * LogWeight::from_f64(um).powi(2 * k as i32)
        / LogWeight::from_f64(2.0 * up).powi(2 * k as i32 + 1);
    Ok(pref * f.powi(2))
}

/// Relative disagreement of two probabilities, with an absolute floor so
/// values far below the distribution's scale do not count.
fn crosscheck_gap(a: f64, b: f64) -> f64 {
    (a - b).abs() / (a.max(b) + 1e-13)
}

/// Transition probability `|<M|N>|^2` for a crossing with transfer pair `pair`.
///
/// Zero when `M - N` is odd. Both closed forms are evaluated; a mismatch
/// beyond [`FOCK_CROSSCHECK_FAIL`] is reported as an internal failure.
pub fn fock_transition_prob(n: u64, m: u64, pair: &BogoliubovPair) -> Result<f64> {
    let a = fock_transition_prob_legendre(n, m, pair)?.value();
    let b = fock_transition_prob_hypergeometric(n, m, pair)?.value();
    if crosscheck_gap(a, b) > FOCK_CROSSCHECK_FAIL {
        return Err(Error::Consistency(format!(
            "transition N={n} -> M={m}: Legendre form {a:e}, hypergeometric form {b:e}"
        )));
    }
    Ok(a)
}

/// Final-state distribution for initial Fock state `N`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockDistribution {
    pub n: u64,
    /// `(M, p(M))` for `M` of the parity of `N`, increasing.
    pub probs: Vec<(u64, f64)>,
    /// `1 - sum p`, the mass beyond the last tabulated `M`.
    pub tail_mass: f64,
}

pub const DEFAULT_TAIL_BOUND: f64 = 1e-10;
const MAX_TERMS: usize = 1_000_000;

impl FockDistribution {
    pub fn total(&self) -> f64 {
        self.probs.iter().map(|&(_, p)| p).sum()
    }

    /// `sum (M + 1/2) p(M)`, the mean energy in units of `omega`.
    pub fn mean_energy_quanta(&self) -> f64 {
        self.probs.iter().map(|&(m, p)| (m as f64 + 0.5) * p).sum()
    }

    /// Variance of `M` (equal to the energy variance over `omega^2`).
    pub fn variance(&self) -> f64 {
        let mean = self.mean_energy_quanta();
        self.probs
            .iter()
            .map(|&(m, p)| (m as f64 + 0.5 - mean).powi(2) * p)
            .sum()
    }

    /// Probability of ending with at least `m` quanta (tabulated part).
    pub fn mass_at_least(&self, m: u64) -> f64 {
        self.probs.iter().filter(|&&(mm, _)| mm >= m).map(|&(_, p)| p).sum()
    }

    pub fn get(&self, m: u64) -> f64 {
        self.probs
            .binary_search_by_key(&m, |&(mm, _)| mm)
            .map_or(0.0, |i| self.probs[i].1)
    }
}

/// Enumerates `p(M)` for `M = N mod 2, N mod 2 + 2, ...` until the collected
/// mass reaches `1 - tail_bound`.
pub fn fock_distribution(n: u64, pair: &BogoliubovPair, tail_bound: f64) -> Result<FockDistribution> {
    if !(tail_bound > 0.0 && tail_bound <= 1e-6) {
        return Err(Error::invalid(format!("tail bound {tail_bound} outside (0, 1e-6]")));
    }
    let mut probs = Vec::new();
    let mut total = 0.0;
    let mut m = n % 2;
    while total < 1.0 - tail_bound {
        if probs.len() >= MAX_TERMS {
            return Err(Error::Consistency(format!(
                "distribution for N={n} needs more than {MAX_TERMS} terms"
            )));
        }
        let p = fock_transition_prob(n, m, pair)?;
        total += p;
        probs.push((m, p));
        m += 2;
    }
    Ok(FockDistribution { n, probs, tail_mass: (1.0 - total).max(0.0) })
}

/// Energy statistics after crossings, for initial Fock state `N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyFluctuation {
    /// `<E>` at the final frequency.
    pub mean_energy: f64,
    /// Variance `<E^2> - <E>^2`.
    pub sigma_e: f64,
    /// `sigma_e / [omega (N + 1/2)]^2`: variance relative to the squared
    /// energy the state would have without any crossing.
    pub relative_to_adiabatic: f64,
    /// `sigma_e / <E>^2`.
    pub relative_to_mean: f64,
}

pub fn energy_variance_fock(n: u64, pair: &BogoliubovPair, omega: f64) -> EnergyFluctuation {
    let nf = n as f64;
    let uu = (pair.u_plus() * pair.u_minus()).norm_sqr();
    let sigma_e = 2.0 * omega * omega * uu * (nf * nf + nf + 1.0);
    let plain = omega * (nf + 0.5);
    let mean = pair.beta() * plain;
    EnergyFluctuation {
        mean_energy: mean,
        sigma_e,
        relative_to_adiabatic: 2.0 * uu * (nf * nf + nf + 1.0) / (nf * nf + nf + 0.25),
        relative_to_mean: sigma_e / (mean * mean),
    }
}

/// `<E^2>` for initial Fock state `N` from the fourth moments and the
/// combinations `A = omega^2 |eps|^2 + |deps|^2`, `B + iC = omega^2 eps^2 + deps^2`.
pub fn energy_second_moment_fock(n: u64, a: f64, bc: Complex64) -> f64 {
    let nf = n as f64;
    let x4 = 0.75 * (2.0 * nf * nf + 2.0 * nf + 1.0);
    let x2p2 = 0.5 * (2.0 * nf * nf + 2.0 * nf - 1.0);
    let xp2 = 2.0 * (nf * nf + nf + 1.0);
    let (b, c) = (bc.re, bc.im);
    (2.0 * x4 * (a * a + b * b) + x2p2 * (a * a - b * b) + xp2 * c * c) / 16.0
}

/// Mandel factor of the final state for initial Fock state `N`.
pub fn mandel_q(n: u64, pair: &BogoliubovPair) -> Result<f64> {
    let s = pair.u_minus().norm_sqr();
    let nf = n as f64;
    let den = nf + 2.0 * s * (nf + 0.5);
    if !(den > 0.0) {
        return Err(Error::domain("Mandel factor undefined: vacuum with no crossing has <n> = 0"));
    }
    let uu = (pair.u_plus() * pair.u_minus()).norm_sqr();
    Ok((s * (1.0 + 2.0 * s) + nf * (2.0 * s * s - 1.0) + 2.0 * nf * nf * uu) / den)
}

/// Energy variance (in units `omega^2`) computed three independent ways.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct VarianceReport {
    pub closed_form: f64,
    pub moment_route: f64,
    pub distribution_route: f64,
    pub max_relative_gap: f64,
}

pub const VARIANCE_TOLERANCE: f64 = 1e-7;

/// Cross-checks the closed-form variance against the fourth-moment route and
/// against the second moment of [`fock_distribution`].
pub fn moment_variance_check(n: u64, pair: &BogoliubovPair) -> Result<VarianceReport> {
    let closed = energy_variance_fock(n, pair, 1.0);
    let uu = pair.u_plus() * pair.u_minus();
    let a = 2.0 * pair.beta();
    let bc = 4.0 * uu;
    let moment = energy_second_moment_fock(n, a, bc) - closed.mean_energy.powi(2);
    let dist = fock_distribution(n, pair, 1e-12)?.variance();
    let scale = closed.mean_energy.powi(2);
    let gap = |x: f64, y: f64| (x - y).abs() / (x.abs().max(y.abs()) + 1e-12 * scale);
    let report = VarianceReport {
        closed_form: closed.sigma_e,
        moment_route: moment,
        distribution_route: dist,
        max_relative_gap: gap(closed.sigma_e, moment)
            .max(gap(closed.sigma_e, dist))
            .max(gap(moment, dist)),
    };
    if report.max_relative_gap > VARIANCE_TOLERANCE {
        return Err(Error::Consistency(format!("energy variance routes disagree: {report:?}")));
    }
    Ok(report)
}

/// `lambda = 2E/omega` and `gamma = 2 sqrt(D)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezingParams {
    lambda: f64,
    gamma: f64,
}

impl SqueezingParams {
    pub fn new(lambda: f64, gamma: f64) -> Result<Self> {
        if !(gamma >= 1.0 - 1e-12) || !(lambda >= gamma - 1e-12) || !lambda.is_finite() {
            return Err(Error::domain(format!(
                "squeezing parameters need lambda >= gamma >= 1, got lambda={lambda}, gamma={gamma}"
            )));
        }
        Ok(Self { lambda, gamma })
    }

    pub fn from_moments(m: &MomentState, omega: f64) -> Result<Self> {
        Self::new(2.0 * mean_energy(m, omega) / omega, 2.0 * m.invariant_d().sqrt())
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }
}

/// Minimum over free evolution of `<x^2>` relative to the vacuum value.
pub fn squeezing_invariant(params: &SqueezingParams) -> f64 {
    let (l, g) = (params.lambda, params.gamma);
    g * g / (l + (l * l - g * g).max(0.0).sqrt())
}

/// Squeezing coefficient after crossings with amplification `beta`, for a
/// state that started with `<p^2> = <x^2>`, `<xp+px> = 0` and parameter `lambda`.
pub fn squeezing_after_crossing(lambda: f64, beta: f64) -> Result<f64> {
    if !(lambda >= 1.0) || !(beta >= 1.0) || !beta.is_finite() {
        return Err(Error::domain(format!("need lambda >= 1 and beta >= 1, got {lambda}, {beta}")));
    }
    Ok(lambda / (beta + (beta * beta - 1.0).sqrt()))
}

/// `min_t <x^2>(t) / (1/(2 omega))` under free evolution at frequency
/// `omega`, found by a dense scan of `omega t` over `[0, pi)` refined by
/// golden-section search.
pub fn squeezing_by_scan(m: &MomentState, omega: f64) -> f64 {
    let cov = 0.5 * m.xp_sym;
    let sx = |th: f64| {
        let (s, c) = th.sin_cos();
        m.xx * c * c + m.pp / (omega * omega) * s * s + cov / omega * (2.0 * th).sin()
    };
    let n = 4096;
    let step = std::f64::consts::PI / n as f64;
    let best = (0..n)
        .map(|i| i as f64 * step)
        .min_by(|a, b| sx(*a).total_cmp(&sx(*b)))
        .expect("non-empty scan");
    let (mut a, mut b) = (best - step, best + step);
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    for _ in 0..200 {
        if sx(c) < sx(d) {
            b = d;
        } else {
            a = c;
        }
        c = b - r * (b - a);
        d = a + r * (b - a);
        if b - a < 1e-12 {
            break;
        }
    }
    sx(0.5 * (a + b)) * 2.0 * omega
}
