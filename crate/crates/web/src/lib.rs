//! Browser demo bindings: phase sweeps, exact energy curves and Fock-state
//! distributions, each returned as flat `Float64Array`s for plotting.

use std::str::FromStr;

use num_complex::Complex64;
use wasm_bindgen::prelude::*;
use zerocross::analytic::{energy_ratio_curve, PowerSolutionParams};
use zerocross::integrator::phase_ensemble;
use zerocross::quantum::{fock_distribution as distribution, DEFAULT_TAIL_BOUND};
use zerocross::{BogoliubovPair, FrequencyProfile, IntegratorOptions};

/// Sweeps cost `k` integrations over ~G oscillations each; keep the page responsive.
const MAX_SWEEP_WORK: f64 = 2e6;

fn phase_sweep_impl(profile: &str, big_g: f64, t: f64, k: usize) -> Result<Vec<f64>, String> {
    if big_g * k as f64 > MAX_SWEEP_WORK {
        return Err(format!("G K = {} is too much work for the browser demo", big_g * k as f64));
    }
    let p = FrequencyProfile::from_str(profile).map_err(|e| e.to_string())?;
    let e = phase_ensemble(&p, big_g, t, k, &IntegratorOptions::default()).map_err(|e| e.to_string())?;
    Ok(e.samples.into_iter().map(|(_, r)| r).collect())
}

fn energy_curve_impl(nu: f64, g: f64, points: usize) -> Result<Vec<f64>, String> {
    if points < 2 {
        return Err("need at least two points".into());
    }
    let p = PowerSolutionParams::from_nu_g(nu, g).map_err(|e| e.to_string())?;
    (0..points)
        .map(|i| {
            let t = -1.0 + 2.0 * i as f64 / (points - 1) as f64;
            energy_ratio_curve(&p, t).map_err(|e| e.to_string())
        })
        .collect()
}

fn fock_distribution_impl(n: u32, u_minus: f64) -> Result<Vec<f64>, String> {
    let pair = BogoliubovPair::from_u_minus(Complex64::new(u_minus, 0.0));
    let d = distribution(n.into(), &pair, DEFAULT_TAIL_BOUND).map_err(|e| e.to_string())?;
    Ok(d.probs.into_iter().flat_map(|(m, p)| [m as f64, p]).collect())
}

/// `R` at time `t` for `k` initial phases `2 pi j / k`.
#[wasm_bindgen]
pub fn phase_sweep(profile: &str, big_g: f64, t: f64, k: usize) -> Result<Vec<f64>, JsError> {
    phase_sweep_impl(profile, big_g, t, k).map_err(|e| JsError::new(&e))
}

/// Exact `R(T)` of the power profile on `points` evenly spaced times in [-1, 1].
#[wasm_bindgen]
pub fn energy_curve(nu: f64, g: f64, points: usize) -> Result<Vec<f64>, JsError> {
    energy_curve_impl(nu, g, points).map_err(|e| JsError::new(&e))
}

/// Interleaved `[M0, p0, M1, p1, ...]` for initial Fock level `n`.
#[wasm_bindgen]
pub fn fock_distribution(n: u32, u_minus: f64) -> Result<Vec<f64>, JsError> {
    fock_distribution_impl(n, u_minus).map_err(|e| JsError::new(&e))
}
