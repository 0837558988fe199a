//! Special-function identity residuals shared by `specfun-check` and `verify`.

use std::f64::consts::PI;

use zerocross::specfun::{assoc_legendre, bessel_j_with_switchover, gamma, hyp2f1_terminating, sin_pi};
use zerocross::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Identity {
    /// `J_nu J_{1-nu} + J_{-nu} J_{nu-1} = 2 sin(nu pi) / (pi x)`
    BesselCrossProduct,
    /// `J_{nu-1} + J_{nu+1} = (2 nu / x) J_nu`
    BesselRecurrence,
    /// Power series against the asymptotic expansion where both apply.
    BesselOverlap,
    /// `Gamma(x) Gamma(1-x) sin(pi x) = pi`
    GammaReflection,
    /// `2F1(-n, n+1; 1; (1-x)/2) = P_n(x)`
    LegendreHypergeometric,
}

impl Identity {
    pub const ALL: [Identity; 5] = [
        Identity::BesselCrossProduct,
        Identity::BesselRecurrence,
        Identity::BesselOverlap,
        Identity::GammaReflection,
        Identity::LegendreHypergeometric,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::BesselCrossProduct => "bessel_cross_product",
            Identity::BesselRecurrence => "bessel_recurrence",
            Identity::BesselOverlap => "bessel_series_asymptotic_overlap",
            Identity::GammaReflection => "gamma_reflection",
            Identity::LegendreHypergeometric => "legendre_hypergeometric",
        }
    }

    /// Largest acceptable residual (relative, except for the Legendre sum).
    pub fn limit(self) -> f64 {
        match self {
            Identity::BesselCrossProduct => 1e-10,
            Identity::BesselRecurrence => 1e-10,
            Identity::BesselOverlap => 1e-12,
            Identity::GammaReflection => 1e-13,
            Identity::LegendreHypergeometric => 1e-10,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Residual {
    pub identity: Identity,
    pub parameter: f64,
    pub x: f64,
    pub residual: f64,
}

const ORDERS: [f64; 4] = [1.0 / 6.0, 0.25, 1.0 / 3.0, 0.45];

fn log_grid(a: f64, b: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| a * (b / a).powf(i as f64 / (n - 1) as f64))
}

/// Residuals of every identity on fixed grids, with the Bessel
/// series/asymptotic switchover at `switchover`.
pub fn residuals(switchover: f64) -> Result<Vec<Residual>> {
    let j = |order: f64, x: f64| bessel_j_with_switchover(order, x, switchover);
    let mut out = Vec::new();
    for &nu in &ORDERS {
        for x in log_grid(0.01, 2000.0, 60) {
            let lhs = j(nu, x)? * j(1.0 - nu, x)? + j(-nu, x)? * j(nu - 1.0, x)?;
            let rhs = 2.0 * sin_pi(nu) / (PI * x);
            out.push(Residual { identity: Identity::BesselCrossProduct, parameter: nu, x, residual: (lhs / rhs - 1.0).abs() });

            let (lo, mid, hi) = (j(nu - 1.0, x)?, j(nu, x)?, j(nu + 1.0, x)?);
            let scale = lo.abs() + hi.abs() + (2.0 * nu / x * mid).abs();
            out.push(Residual {
                identity: Identity::BesselRecurrence,
                parameter: nu,
                x,
                residual: (lo + hi - 2.0 * nu / x * mid).abs() / scale,
            });
        }
        for i in 0..=20 {
            let x = 20.0 + 0.5 * i as f64;
            let series = bessel_j_with_switchover(nu, x, f64::INFINITY)?;
            let asym = bessel_j_with_switchover(nu, x, 0.0)?;
            // Relative to the envelope sqrt(2/(pi x)), not the value, which has zeros.
            let envelope = (2.0 / (PI * x)).sqrt();
            out.push(Residual {
                identity: Identity::BesselOverlap,
                parameter: nu,
                x,
                residual: (series - asym).abs() / envelope,
            });
        }
    }
    for i in 1..100 {
        let x = i as f64 / 100.0;
        let p = gamma(x)? * gamma(1.0 - x)? * sin_pi(x) / PI;
        out.push(Residual { identity: Identity::GammaReflection, parameter: 0.0, x, residual: (p - 1.0).abs() });
    }
    for n in 0..=20u32 {
        for i in 0..=20 {
            let x = -1.0 + 0.1 * i as f64;
            let f = hyp2f1_terminating(n, n as f64 + 1.0, 1.0, 0.5 * (1.0 - x))?;
            let residual = (f - assoc_legendre(n, 0, x)?).abs();
            out.push(Residual { identity: Identity::LegendreHypergeometric, parameter: n as f64, x, residual });
        }
    }
    Ok(out)
}

/// Largest residual of `identity` in `all`, with where it occurred.
pub fn worst(all: &[Residual], identity: Identity) -> Option<Residual> {
    all.iter()
        .filter(|r| r.identity == identity)
        .copied()
        .max_by(|a, b| a.residual.total_cmp(&b.residual))
}
