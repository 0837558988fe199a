//! Invariant suite behind `zerocross verify`.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;
use zerocross::analytic::{
    beta_single, energy_ratio_curve, epsilon_power, rho_of_g, tanh_v_minus, u_pair_single, PowerSolutionParams,
};
use zerocross::integrator::{
    integrate_mode, mode_at, mode_energy_ratio, phase_ensemble, post_crossing_pair, uniform_grid, WRONSKIAN_FAIL,
};
use zerocross::quantum::{
    energy_variance_fock, evolve_moments, fock_distribution, fock_transition_prob_hypergeometric,
    fock_transition_prob_legendre, mandel_q, squeezing_after_crossing, squeezing_by_scan, squeezing_invariant,
    SqueezingParams,
};
use zerocross::transitions::{beta_phase_scan, compose_two};
use zerocross::{BogoliubovPair, Error, FrequencyProfile, IntegratorOptions, MomentState, Result};

use crate::args::VerifyArgs;
use crate::error::{CliError, CliResult};
use crate::identities::{residuals, worst, Identity};
use crate::output::{render_json, OutputSet, RunStamp};

/// Wronskian residuals up to this pass; up to [`WRONSKIAN_FAIL`] they warn.
pub const WRONSKIAN_WARN: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Warn,
    Fail,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
    pub residual: Option<f64>,
    pub limit: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warn_above: Option<f64>,
    pub detail: String,
}

impl Check {
    fn graded(name: &'static str, limit: f64, warn_above: Option<f64>, outcome: Result<(f64, String)>) -> Self {
        match outcome {
            Ok((residual, detail)) => {
                let status = if residual.is_nan() || residual > limit {
                    Status::Fail
                } else if warn_above.is_some_and(|w| residual > w) {
                    Status::Warn
                } else {
                    Status::Pass
                };
                Self { name, status, residual: Some(residual).filter(|r| r.is_finite()), limit, warn_above, detail }
            }
            Err(e) => Self { name, status: Status::Fail, residual: None, limit, warn_above, detail: e.to_string() },
        }
    }

    fn new(name: &'static str, limit: f64, outcome: Result<(f64, String)>) -> Self {
        Self::graded(name, limit, None, outcome)
    }
}

fn power(n: f64) -> FrequencyProfile {
    FrequencyProfile::power(n).expect("positive index")
}

const NUS: [f64; 3] = [1.0 / 3.0, 0.25, 1.0 / 6.0];

fn wronskian(opts: &IntegratorOptions) -> Result<(f64, String)> {
    let profiles = [
        power(0.5),
        power(2.0),
        FrequencyProfile::tanh_power(2.0, 5.0)?,
        FrequencyProfile::sin2(),
        FrequencyProfile::epstein_eckart(5.0)?,
    ];
    let grid = uniform_grid(-1.0, 3.0, 200);
    let mut worst: f64 = 0.0;
    for p in &profiles {
        for g in [10.0, 100.0] {
            let r = match integrate_mode(p, g, 3.0, &grid, opts) {
                Ok(s) => s.max_wronskian_residual(),
                // Report the size of the drift rather than just the failure.
                Err(Error::WronskianDrift { residual, .. }) => residual,
                Err(e) => return Err(e),
            };
            worst = worst.max(r);
        }
    }
    Ok((worst, format!("max |2 Im(deps conj eps) - 2| over 5 profiles, G in {{10, 100}}, T in [-1, 3] at rel_tol {:e}", opts.rel_tol())))
}

fn bessel_oracle(opts: &IntegratorOptions) -> Result<(f64, String)> {
    let grid = uniform_grid(-1.0, 1.0, 100);
    let mut worst: f64 = 0.0;
    for nu in NUS {
        for g in [0.1, 1.0, 10.0] {
            let p = PowerSolutionParams::from_nu_g(nu, g)?;
            let s = integrate_mode(&power(p.n()), p.big_g(), 1.0, &grid, opts)?;
            for st in &s.states {
                let exact = epsilon_power(&p, st.t)?;
                worst = worst.max((st.eps - exact.eps).norm() / exact.eps.norm());
            }
        }
    }
    Ok((worst, "max relative |eps_num - eps_exact| for nu in {1/3, 1/4, 1/6}, g in {0.1, 1, 10}".into()))
}

/// Ensemble means at `G = 1000`. `R` is quadratic in `(cos phi, sin phi)`,
/// so a uniform 16-phase average is exact.
const PHASES: usize = 16;

fn pre_crossing(opts: &IntegratorOptions) -> Result<(f64, String)> {
    let mut worst: f64 = 0.0;
    for n in [0.5, 2.0, 4.0] {
        let e = phase_ensemble(&power(n), 1000.0, -0.5, PHASES, opts)?;
        let target = 0.5f64.powf(0.5 * n);
        worst = e.samples.iter().fold(worst, |w, &(_, r)| w.max((r / target - 1.0).abs()));
    }
    Ok((worst, "max |R/|T|^(n/2) - 1| at T = -1/2, G = 1000".into()))
}

fn amplification(opts: &IntegratorOptions) -> Result<[(f64, String); 2]> {
    let (mut dev, mut cross): (f64, f64) = (0.0, 0.0);
    let mut parts = Vec::new();
    for n in [1.0, 2.0, 4.0] {
        let p = power(n);
        let mean = phase_ensemble(&p, 1000.0, 1.0, PHASES, opts)?.mean;
        let beta = beta_single(n)?;
        dev = dev.max((mean / beta - 1.0).abs());
        parts.push(format!("n={n}: {mean:.5} vs {beta:.5}"));
        let quantum = mode_energy_ratio(&p, &mode_at(&p, 1000.0, 1.0, opts)?);
        cross = cross.max((quantum / mean - 1.0).abs());
    }
    Ok([
        (dev, format!("phase-averaged R(1) at G = 1000 against beta(n): {}", parts.join(", "))),
        (cross, "mode-function R against the classical phase average, same runs".into()),
    ])
}

fn tanh_transfer(opts: &IntegratorOptions) -> Result<(f64, String)> {
    let p = FrequencyProfile::epstein_eckart(5.0)?;
    let num = post_crossing_pair(&p, 40.0, 1.0, opts)?.u_minus().norm();
    let exact = tanh_v_minus(4.0)?.norm();
    Ok(((num / exact - 1.0).abs(), format!("|u-| = {num:.8} vs exact {exact:.8} at omega~0 = 4")))
}

fn asymmetry(p: &PowerSolutionParams) -> Result<f64> {
    (0..=100).try_fold(0.0f64, |w, i| {
        let b = i as f64 / 100.0;
        Ok(w.max((energy_ratio_curve(p, b)? - energy_ratio_curve(p, -b)?).abs()))
    })
}

fn sudden_limit() -> Result<[(f64, String); 2]> {
    let mut closed: f64 = 0.0;
    let mut scaling: f64 = 0.0;
    for nu in NUS {
        let p = PowerSolutionParams::from_nu_g(nu, 1e-3)?;
        for i in 0..=100 {
            let b = i as f64 / 100.0;
            let want = 0.5 * (1.0 + b.powf(p.n()));
            closed = closed.max((energy_ratio_curve(&p, b)? - want).abs()).max((energy_ratio_curve(&p, -b)? - want).abs());
        }
        let coarse = asymmetry(&p)?;
        let fine = asymmetry(&PowerSolutionParams::from_nu_g(nu, 1e-4)?)?;
        scaling = scaling.max((coarse / fine / 100.0 - 1.0).abs());
    }
    Ok([
        (closed, "max |R(b) - (1 + |b|^n)/2| at g = 1e-3".into()),
        (scaling, "max |A(1e-3)/A(1e-4)/100 - 1|, A(g) = max_b |R(b) - R(-b)|: the asymmetry vanishes as g^2".into()),
    ])
}

fn rho_convergence() -> Result<(f64, String)> {
    let mut worst: f64 = 0.0;
    for nu in NUS {
        worst = worst.max((rho_of_g(nu, 100.0)? / beta_single(1.0 / nu - 2.0)? - 1.0).abs());
    }
    Ok((worst, "max |rho(100)/beta - 1|".into()))
}

fn initial_ratio() -> Result<(f64, String)> {
    let mut worst: f64 = 0.0;
    for nu in NUS {
        for g in [1e-3, 1.0, 100.0] {
            worst = worst.max((energy_ratio_curve(&PowerSolutionParams::from_nu_g(nu, g)?, -1.0)? - 1.0).abs());
        }
    }
    Ok((worst, "max |R(-1) - 1| of the exact solution".into()))
}

fn sample_pairs() -> Vec<BogoliubovPair> {
    (0..24)
        .map(|i| BogoliubovPair::from_u_minus(Complex64::from_polar(3.0 * i as f64 / 23.0, 0.37 * i as f64)))
        .collect()
}

fn composition() -> Result<(f64, String)> {
    let pairs = sample_pairs();
    let mut worst: f64 = 0.0;
    for u in &pairs {
        for w in &pairs {
            for k in 0..8 {
                worst = worst.max(compose_two(u, w, 0.9 * k as f64).constraint_residual());
            }
        }
    }
    Ok((worst, "max ||U+|^2 - |U-|^2 - 1| over composed pairs".into()))
}

fn double_crossing() -> Result<(f64, String)> {
    let u = u_pair_single(2.0)?;
    let (lo, hi) = beta_phase_scan(&u, &u, 10_000);
    Ok(((lo - 1.0).abs().max((hi - 17.0).abs()), format!("n = 2 twice: beta scan in [{lo:.10}, {hi:.10}], expected [1, 17]")))
}

fn survival() -> Result<(f64, String)> {
    let pair = u_pair_single(2.0)?;
    let want = [1.0 / SQRT_2, 1.0 / (2.0 * SQRT_2), 1.0 / (16.0 * SQRT_2), 1.0 / (32.0 * SQRT_2)];
    let mut worst: f64 = 0.0;
    for (n, w) in want.iter().enumerate() {
        worst = worst.max((fock_transition_prob_legendre(n as u64, n as u64, &pair)?.value() / w - 1.0).abs());
    }
    Ok((worst, "p(N -> N) for N = 0..3 after an n = 2 crossing".into()))
}

fn fock_routes() -> Result<(f64, String)> {
    let mut worst: f64 = 0.0;
    for pair in sample_pairs().iter().step_by(4) {
        for n in [0u64, 1, 7, 20] {
            for m in (n % 2..=60).step_by(2) {
                let l = fock_transition_prob_legendre(n, m, pair)?.value();
                let h = fock_transition_prob_hypergeometric(n, m, pair)?.value();
                worst = worst.max((l - h).abs() / (l.max(h) + 1e-300));
            }
        }
    }
    Ok((worst, "max relative gap between Legendre and hypergeometric p(N -> M)".into()))
}

fn distribution_moments() -> Result<[(f64, String); 3]> {
    let (mut norm, mut first, mut second): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for pair in [
        BogoliubovPair::from_u_minus(Complex64::from_polar(0.3, 0.4)),
        u_pair_single(2.0)?,
        BogoliubovPair::from_u_minus(Complex64::from_polar(3.0, -1.2)),
    ] {
        for n in [0u64, 1, 5, 20] {
            let d = fock_distribution(n, &pair, 1e-10)?;
            let nf = n as f64;
            norm = norm.max((1.0 - d.total()).abs());
            first = first.max((d.mean_energy_quanta() / (pair.beta() * (nf + 0.5)) - 1.0).abs());
            let v = 2.0 * (pair.u_plus() * pair.u_minus()).norm_sqr() * (nf * nf + nf + 1.0);
            second = second.max((d.variance() / v - 1.0).abs());
        }
    }
    Ok([
        (norm, "max |1 - sum p|".into()),
        (first, "max |sum (M + 1/2) p / (beta (N + 1/2)) - 1|".into()),
        (second, "max relative error of the variance against 2|u+ u-|^2 (N^2 + N + 1)".into()),
    ])
}

fn fluctuations() -> Result<[(f64, String); 2]> {
    let f = energy_variance_fock(0, &u_pair_single(2.0)?, 1.0);
    let unit = BogoliubovPair::from_u_minus(Complex64::new(0.0, 1.0));
    let mut worst: f64 = 0.0;
    for n in 0..=3u64 {
        let nf = n as f64;
        worst = worst.max((mandel_q(n, &unit)? - (3.0 + nf + 4.0 * nf * nf) / (3.0 * nf + 1.0)).abs());
    }
    Ok([
        ((f.relative_to_adiabatic - 16.0).abs(), format!("vacuum, n = 2: variance / (omega/2)^2 = {}", f.relative_to_adiabatic)),
        (worst, "Mandel Q for |u-| = 1, N = 0..3, against (3 + N + 4N^2)/(3N + 1)".into()),
    ])
}

fn squeezing() -> Result<[(f64, String); 2]> {
    let s = squeezing_after_crossing(1.0, 3.0)?;
    let mut scan: f64 = 0.0;
    for m in [MomentState::vacuum(), MomentState::fock(3), MomentState::new(0.9, 0.4, 0.3)?, MomentState::new(2.0, 0.2, -0.5)?] {
        for omega in [0.5, 1.0, 2.3] {
            let p = SqueezingParams::from_moments(&m, omega)?;
            scan = scan.max((squeezing_by_scan(&m, omega) - squeezing_invariant(&p)).abs());
        }
    }
    Ok([
        ((s - (PI / 8.0).tan().powi(2)).abs(), format!("vacuum after beta = 3: s = {s}")),
        (scan, "closed-form squeezing against a quadrature-angle scan".into()),
    ])
}

fn moment_invariant(opts: &IntegratorOptions) -> Result<(f64, String)> {
    let p = power(2.0);
    let s = integrate_mode(&p, 100.0, 3.0, &uniform_grid(-1.0, 3.0, 100), opts)?;
    let initial = [MomentState::vacuum(), MomentState::fock(2), MomentState::new(1.5, 0.4, 0.6)?];
    let mut worst: f64 = 0.0;
    for st in &s.states {
        let w = (st.deps * st.eps.conj()).im;
        for m in &initial {
            let d = evolve_moments(m, st, 1.0).invariant_d();
            worst = worst.max((d / m.invariant_d() - w * w).abs());
        }
    }
    Ok((worst, "max |D(t)/D(0) - W^2|, W the mode Wronskian".into()))
}

fn spread<const N: usize>(names: [&'static str; N], limits: [f64; N], outcome: Result<[(f64, String); N]>) -> Vec<Check> {
    match outcome {
        Ok(parts) => names
            .into_iter()
            .zip(limits)
            .zip(parts)
            .map(|((name, limit), part)| Check::new(name, limit, Ok(part)))
            .collect(),
        Err(e) => names.into_iter().zip(limits).map(|(name, limit)| Check::new(name, limit, Err(e.clone()))).collect(),
    }
}

pub fn run_checks(rel_tol: f64, switchover: f64) -> CliResult<Vec<Check>> {
    let opts = IntegratorOptions::new(rel_tol)?;
    let mut checks = Vec::new();

    match residuals(switchover) {
        Ok(all) => {
            for id in Identity::ALL {
                let w = worst(&all, id).expect("every identity is sampled");
                let detail = format!("worst at parameter {}, x = {}", w.parameter, w.x);
                checks.push(Check::new(id.name(), id.limit(), Ok((w.residual, detail))));
            }
        }
        Err(e) => checks.push(Check::new("special_functions", 0.0, Err(e))),
    }

    checks.push(Check::graded("wronskian", WRONSKIAN_FAIL, Some(WRONSKIAN_WARN), wronskian(&opts)));
    checks.push(Check::new("bessel_oracle", 1e-6, bessel_oracle(&opts)));
    checks.push(Check::new("pre_crossing_invariant", 1e-2, pre_crossing(&opts)));
    checks.extend(spread(["amplification_factor", "classical_quantum_agreement"], [2e-2, 1e-6], amplification(&opts)));
    checks.push(Check::new("tanh_transfer_exact", 5e-3, tanh_transfer(&opts)));
    checks.extend(spread(["sudden_limit", "sudden_limit_asymmetry_scaling"], [1e-3, 1e-2], sudden_limit()));
    checks.push(Check::new("rho_convergence", 1e-2, rho_convergence()));
    checks.push(Check::new("initial_energy_ratio", 1e-12, initial_ratio()));
    checks.push(Check::new("composition_constraint", 1e-10, composition()));
    checks.push(Check::new("double_crossing_extremes", 1e-6, double_crossing()));
    checks.push(Check::new("fock_survival", 1e-12, survival()));
    checks.push(Check::new("fock_formula_agreement", 1e-9, fock_routes()));
    checks.extend(spread(
        ["distribution_normalization", "distribution_mean", "distribution_variance"],
        [1e-10, 1e-8, 1e-7],
        distribution_moments(),
    ));
    checks.extend(spread(["fluctuation_ratio", "mandel_q"], [1e-12, 1e-12], fluctuations()));
    checks.extend(spread(["squeezing_after_crossing", "squeezing_scan"], [1e-12, 1e-8], squeezing()));
    checks.push(Check::new("moment_invariant", 1e-12, moment_invariant(&opts)));
    Ok(checks)
}

pub fn verify(args: &VerifyArgs) -> CliResult<()> {
    let checks = run_checks(args.rel_tol, args.bessel_switchover)?;
    let count = |s: Status| checks.iter().filter(|c| c.status == s).count();
    let overall = checks.iter().map(|c| c.status).max().unwrap_or(Status::Pass);
    let stamp = RunStamp::new("verify", args);
    let body = json!({
        "rel_tol": args.rel_tol,
        "bessel_switchover": args.bessel_switchover,
        "status": overall,
        "summary": { "pass": count(Status::Pass), "warn": count(Status::Warn), "fail": count(Status::Fail) },
        "checks": checks,
    });
    if let Some(dir) = &args.out {
        let mut set = OutputSet::new(dir, crate::output::Format::Json, stamp.clone())?;
        set.json("verify", body.clone())?;
        set.commit();
    }
    crate::commands::to_stdout(&render_json(&stamp, body))?;
    if overall == Status::Fail {
        let failed: Vec<&str> = checks.iter().filter(|c| c.status == Status::Fail).map(|c| c.name).collect();
        return Err(CliError::Verification(failed.join(", ")));
    }
    Ok(())
}
