//! Numerical integration of the classical trajectory and the complex mode
//! function, phase ensembles, and extraction of transfer coefficients.
//!
//! Internally the velocity is carried as `V = (dX/dT) / G`, so the system is
//! `X' = G V`, `V' = -G f(T) X` and both components stay `O(1)` for large `G`.

pub mod dop853;
mod tableau;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::profiles::FrequencyProfile;
use crate::transitions::BogoliubovPair;
use dop853::{Dop853Options, OdeSystem};

/// Wronskian residual above which a mode integration is rejected.
pub const WRONSKIAN_FAIL: f64 = 1e-6;
/// Largest `|omega'| / (G omega^2)` at which transfer coefficients are read off.
pub const ADIABATIC_WINDOW: f64 = 0.01;
/// Default number of phases in an ensemble.
pub const DEFAULT_PHASES: usize = 360;

const LOCAL_TOLERANCE_FACTOR: f64 = 0.01;

/// Global accuracy target for the integrations; `rel_tol` in `[1e-13, 1e-6]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorOptions {
    rel_tol: f64,
    max_steps: usize,
}

impl IntegratorOptions {
    pub fn new(rel_tol: f64) -> Result<Self> {
        if !(1e-13..=1e-6).contains(&rel_tol) {
            return Err(Error::invalid(format!("rel_tol {rel_tol} outside [1e-13, 1e-6]")));
        }
        Ok(Self { rel_tol, max_steps: 5_000_000 })
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    pub fn with_max_steps(mut self, max_steps: usize) -> Self {
        self.max_steps = max_steps;
        self
    }

    /// Local per-step tolerance. Errors add up over the ~G oscillations in
    /// the window, so the stepper runs tighter than the global target.
    fn dop853(&self) -> Dop853Options {
        let local = (LOCAL_TOLERANCE_FACTOR * self.rel_tol).max(1e-14);
        Dop853Options { rel_tol: local, abs_tol: 1e-2 * local, max_steps: self.max_steps }
    }
}

impl Default for IntegratorOptions {
    fn default() -> Self {
        Self { rel_tol: 1e-10, max_steps: 5_000_000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalState {
    pub t: f64,
    pub x: f64,
    pub dxdt: f64,
}

/// `eps` in units `omega_0^{-1/2}`, `deps = d eps/dt` in units `omega_0^{1/2}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeState {
    pub t: f64,
    pub eps: Complex64,
    pub deps: Complex64,
}

impl ModeState {
    /// `|deps eps* - deps* eps - 2i|`.
    pub fn wronskian_residual(&self) -> f64 {
        2.0 * ((self.deps * self.eps.conj()).im - 1.0).abs()
    }

    /// Global phase rotation `eps -> e^{i theta} eps`.
    pub fn rotated(&self, theta: f64) -> Self {
        let r = Complex64::from_polar(1.0, theta);
        Self { t: self.t, eps: r * self.eps, deps: r * self.deps }
    }
}

/// Mode states on a time grid together with the problem they solve.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeSeries {
    pub profile: FrequencyProfile,
    pub big_g: f64,
    pub states: Vec<ModeState>,
}

impl ModeSeries {
    pub fn max_wronskian_residual(&self) -> f64 {
        self.states.iter().map(ModeState::wronskian_residual).fold(0.0, f64::max)
    }
}

struct Oscillator<'a> {
    profile: &'a FrequencyProfile,
    big_g: f64,
}

impl OdeSystem<2> for Oscillator<'_> {
    fn rhs(&self, t: f64, y: &[f64; 2]) -> [f64; 2] {
        let gf = self.big_g * self.profile.f_unchecked(t);
        [self.big_g * y[1], -gf * y[0]]
    }
}

impl OdeSystem<4> for Oscillator<'_> {
    fn rhs(&self, t: f64, y: &[f64; 4]) -> [f64; 4] {
        let gf = self.big_g * self.profile.f_unchecked(t);
        [self.big_g * y[2], self.big_g * y[3], -gf * y[0], -gf * y[1]]
    }
}

fn check_problem(big_g: f64, t_end: f64, samples: &[f64]) -> Result<()> {
    if !(big_g > 0.0 && big_g.is_finite()) {
        return Err(Error::invalid(format!("G must be positive and finite, got {big_g}")));
    }
    if !(t_end > -1.0 && t_end.is_finite()) {
        return Err(Error::invalid(format!("T_end must be finite and > -1, got {t_end}")));
    }
    if samples.iter().any(|&s| !(-1.0..=t_end).contains(&s)) {
        return Err(Error::invalid(format!("sample times must lie in [-1, {t_end}]")));
    }
    Ok(())
}

fn breakpoints(profile: &FrequencyProfile, t_end: f64) -> Vec<f64> {
    profile.zero_crossings(t_end).into_iter().map(|c| c.t).collect()
}

/// Initial frequency `omega(-1)`; exactly 1 except for the Epstein-Eckart profile.
fn omega_initial(profile: &FrequencyProfile) -> f64 {
    profile.omega(-1.0)
}

/// Classical trajectory from `T = -1` with `X = cos(phi0)`, `dX/dT = G sin(phi0)`
/// (scaled by `omega(-1)^{-1/2}` and `omega(-1)^{1/2}`), sampled at the
/// ascending `samples` in `[-1, t_end]`.
pub fn integrate_classical(
    profile: &FrequencyProfile,
    big_g: f64,
    phi0: f64,
    t_end: f64,
    samples: &[f64],
    opts: &IntegratorOptions,
) -> Result<Vec<ClassicalState>> {
    check_problem(big_g, t_end, samples)?;
    let wi = omega_initial(profile);
    let y0 = [phi0.cos() / wi.sqrt(), phi0.sin() * wi.sqrt()];
    let sys = Oscillator { profile, big_g };
    let ys = dop853::solve(&sys, -1.0, y0, t_end, &breakpoints(profile, t_end), samples, &opts.dop853())?;
    Ok(samples
        .iter()
        .zip(ys)
        .map(|(&t, [x, v])| ClassicalState { t, x, dxdt: big_g * v })
        .collect())
}

/// `R = (f X^2 + G^-2 (dX/dT)^2) / omega(-1)`, equal to 1 at `T = -1`.
pub fn energy_ratio(profile: &FrequencyProfile, big_g: f64, state: &ClassicalState) -> f64 {
    let v = state.dxdt / big_g;
    (profile.f_unchecked(state.t) * state.x * state.x + v * v) / omega_initial(profile)
}

/// Mode-function energy ratio `(omega^2 |eps|^2 + |deps|^2) / (2 omega(-1))`.
pub fn mode_energy_ratio(profile: &FrequencyProfile, state: &ModeState) -> f64 {
    (profile.f_unchecked(state.t) * state.eps.norm_sqr() + state.deps.norm_sqr())
        / (2.0 * omega_initial(profile))
}

/// Complex mode function from `eps(-1) = omega^{-1/2}`, `deps(-1) = i omega^{1/2}`.
///
/// Fails with [`Error::WronskianDrift`] when any sample has Wronskian residual
/// above [`WRONSKIAN_FAIL`].
pub fn integrate_mode(
    profile: &FrequencyProfile,
    big_g: f64,
    t_end: f64,
    samples: &[f64],
    opts: &IntegratorOptions,
) -> Result<ModeSeries> {
    check_problem(big_g, t_end, samples)?;
    let wi = omega_initial(profile);
    let y0 = [1.0 / wi.sqrt(), 0.0, 0.0, wi.sqrt()];
    let sys = Oscillator { profile, big_g };
    let ys = dop853::solve(&sys, -1.0, y0, t_end, &breakpoints(profile, t_end), samples, &opts.dop853())?;
    let states: Vec<ModeState> = samples
        .iter()
        .zip(ys)
        .map(|(&t, y)| ModeState {
            t,
            eps: Complex64::new(y[0], y[1]),
            deps: Complex64::new(y[2], y[3]),
        })
        .collect();
    if let Some(bad) = states.iter().find(|s| !(s.wronskian_residual() <= WRONSKIAN_FAIL)) {
        return Err(Error::WronskianDrift { t: bad.t, residual: bad.wronskian_residual() });
    }
    Ok(ModeSeries { profile: *profile, big_g, states })
}

/// Mode state at a single time.
pub fn mode_at(profile: &FrequencyProfile, big_g: f64, t: f64, opts: &IntegratorOptions) -> Result<ModeState> {
    let t_end = t.max(-0.5);
    Ok(integrate_mode(profile, big_g, t_end, &[t], opts)?.states[0])
}

/// Energy ratios over a uniform grid of initial phases.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseEnsemble {
    pub mean: f64,
    pub min: f64,
    pub max: f64,
    /// `(phi_k, R)` with `phi_k = 2 pi k / K`.
    pub samples: Vec<(f64, f64)>,
}

/// `R(T)` for `phi_k = 2 pi k / K`, `k = 0..K`. Samples are independent
/// integrations; with the `parallel` feature they run on the rayon pool, and
/// results are always returned in index order.
pub fn phase_ensemble(
    profile: &FrequencyProfile,
    big_g: f64,
    t: f64,
    k: usize,
    opts: &IntegratorOptions,
) -> Result<PhaseEnsemble> {
    if k < 8 {
        return Err(Error::invalid(format!("phase ensemble needs K >= 8, got {k}")));
    }
    let t_end = t.max(-0.5);
    check_problem(big_g, t_end, &[t])?;
    let one = |i: usize| -> Result<(f64, f64)> {
        let phi = std::f64::consts::TAU * i as f64 / k as f64;
        integrate_classical(profile, big_g, phi, t_end, &[t], opts)
            .map(|s| (phi, energy_ratio(profile, big_g, &s[0])))
            .map_err(|e| Error::EnsembleSample { phi, source: Box::new(e) })
    };
    #[cfg(feature = "parallel")]
    let samples: Result<Vec<_>> = {
        use rayon::prelude::*;
        (0..k).into_par_iter().map(one).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let samples: Result<Vec<_>> = (0..k).map(one).collect();
    let samples = samples?;
    let rs = samples.iter().map(|s| s.1);
    Ok(PhaseEnsemble {
        mean: rs.clone().sum::<f64>() / k as f64,
        min: rs.clone().fold(f64::INFINITY, f64::min),
        max: rs.fold(f64::NEG_INFINITY, f64::max),
        samples,
    })
}

/// Inverts `eps = omega^{-1/2} (u+ e^{i phi} + u- e^{-i phi})`.
///
/// The result is not normalised: `|u+|^2 - |u-|^2 - 1` measures how well the
/// point satisfies the adiabatic form, which the caller should check.
pub fn extract_bogoliubov(mode: &ModeState, omega: f64, phi: f64) -> Result<BogoliubovPair> {
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::domain(format!("transfer coefficients need omega > 0, got {omega}")));
    }
    let sw = omega.sqrt();
    let a = sw * mode.eps;
    let b = Complex64::i() * mode.deps / sw;
    let up = Complex64::from_polar(0.5, -phi) * (a - b);
    let um = Complex64::from_polar(0.5, phi) * (a + b);
    Ok(BogoliubovPair::unchecked(up, um))
}

/// Integrates the mode to `t` and reads off the transfer pair relative to the
/// last zero crossing before `t`, after checking the adiabatic window.
pub fn post_crossing_pair(
    profile: &FrequencyProfile,
    big_g: f64,
    t: f64,
    opts: &IntegratorOptions,
) -> Result<BogoliubovPair> {
    let crossing = profile
        .zero_crossings(t)
        .last()
        .map(|c| c.t)
        .filter(|&c| c < t)
        .ok_or_else(|| Error::domain(format!("no zero crossing before T = {t}")))?;
    let a = profile.adiabaticity(big_g, t);
    if !(a <= ADIABATIC_WINDOW) {
        return Err(Error::domain(format!(
            "T = {t} is outside the adiabatic window: |omega'|/(G omega^2) = {a:e}"
        )));
    }
    let mode = mode_at(profile, big_g, t, opts)?;
    let phi = profile.phase_integral(big_g, crossing, t)?;
    extract_bogoliubov(&mode, profile.omega(t), phi)
}

/// `max |rho''/G^2 + f rho - rho^-3|` with `rho = |eps|`, using centred
/// differences on the series' own (possibly non-uniform) grid.
pub fn ermakov_residual(series: &ModeSeries) -> f64 {
    let g2 = series.big_g * series.big_g;
    series
        .states
        .windows(3)
        .map(|w| {
            let (h0, h1) = (w[1].t - w[0].t, w[2].t - w[1].t);
            let r: Vec<f64> = w.iter().map(|s| s.eps.norm()).collect();
            let d2 = 2.0 * ((r[2] - r[1]) / h1 - (r[1] - r[0]) / h0) / (h0 + h1);
            let f = series.profile.f_unchecked(w[1].t);
            (d2 / g2 + f * r[1] - r[1].powi(-3)).abs()
        })
        .fold(0.0, f64::max)
}

/// `n + 1` equally spaced points on `[a, b]`.
pub fn uniform_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    let n = n.max(1);
    (0..=n).map(|i| if i == n { b } else { a + (b - a) * i as f64 / n as f64 }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2() -> FrequencyProfile {
        FrequencyProfile::power(2.0).unwrap()
    }

    #[test]
    fn initial_conditions() {
        let opts = IntegratorOptions::default();
        let s = integrate_classical(&p2(), 7.0, 0.3, 0.5, &[-1.0], &opts).unwrap();
        assert_eq!((s[0].x, s[0].dxdt), (0.3f64.cos(), 7.0 * 0.3f64.sin()));
        assert!((energy_ratio(&p2(), 7.0, &s[0]) - 1.0).abs() < 1e-15);
        let m = integrate_mode(&p2(), 7.0, 0.5, &[-1.0], &opts).unwrap();
        assert_eq!((m.states[0].eps, m.states[0].deps), (Complex64::new(1.0, 0.0), Complex64::i()));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(IntegratorOptions::new(1e-5).is_err());
        assert!(IntegratorOptions::new(1e-14).is_err());
        let o = IntegratorOptions::default();
        assert!(integrate_mode(&p2(), 0.0, 1.0, &[0.0], &o).is_err());
        assert!(integrate_mode(&p2(), 1.0, -1.0, &[], &o).is_err());
        assert!(integrate_mode(&p2(), 1.0, 1.0, &[2.0], &o).is_err());
        assert!(phase_ensemble(&p2(), 1.0, 1.0, 7, &o).is_err());
        let m = ModeState { t: 0.0, eps: Complex64::new(1.0, 0.0), deps: Complex64::i() };
        assert!(extract_bogoliubov(&m, 0.0, 0.0).is_err());
    }

    #[test]
    fn adiabatic_mean_at_half() {
        let e = phase_ensemble(&p2(), 1000.0, -0.5, 36, &IntegratorOptions::default()).unwrap();
        assert!((e.mean - 0.5).abs() < 1e-2);
        assert!(e.max - e.min <= 0.02 * e.mean);
    }

    #[test]
    fn nonadiabatic_phase_dependence() {
        let e = phase_ensemble(&p2(), 1.0, -0.5, 36, &IntegratorOptions::default()).unwrap();
        assert!(e.max - e.min > 0.1);
    }

    #[test]
    fn wronskian_kept() {
        let grid = uniform_grid(-1.0, 1.0, 400);
        let s = integrate_mode(&p2(), 1000.0, 1.0, &grid, &IntegratorOptions::default()).unwrap();
        assert!(s.max_wronskian_residual() <= 1e-8, "{}", s.max_wronskian_residual());
    }

    #[test]
    fn pair_after_crossing_n2() {
        let pair = post_crossing_pair(&p2(), 1000.0, 1.0, &IntegratorOptions::default()).unwrap();
        assert!((pair.u_minus().norm() - 1.0).abs() < 1e-2);
        assert!(pair.constraint_residual() < 1e-6);
    }

    #[test]
    fn window_guard() {
        assert!(post_crossing_pair(&p2(), 1000.0, 0.001, &IntegratorOptions::default()).is_err());
        assert!(post_crossing_pair(&p2(), 1000.0, -0.5, &IntegratorOptions::default()).is_err());
    }

    #[test]
    fn ermakov_constant_frequency() {
        let g = 50.0;
        let states = uniform_grid(-3.0, -1.0, 2000)
            .into_iter()
            .map(|t| {
                let e = Complex64::from_polar(1.0, g * t);
                ModeState { t, eps: e, deps: Complex64::i() * e }
            })
            .collect();
        let s = ModeSeries { profile: p2(), big_g: g, states };
        assert!(ermakov_residual(&s) <= 1e-6);
    }
}
