//! Closed-form results: the Bessel solution for `f = |T|^n`, its energy
//! curves, the adiabatic limits of the transfer pair, and the tanh-profile
//! coefficient.
//!
//! With `nu = 1/(n+2)`, `gamma = 1/(2 nu)`, `g = 2 G nu` and `y = g |T|^gamma`
//! the mode is `eps = sqrt(G|T|) (A J_nu(y) + B J_{-nu}(y))`, with separate
//! coefficient pairs before and after the crossing.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::integrator::ModeState;
use crate::specfun::{bessel_j, cos_pi, gamma, sin_pi, MAX_ARGUMENT};
use crate::transitions::BogoliubovPair;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerSolutionParams {
    n: f64,
    nu: f64,
    gamma_exp: f64,
    big_g: f64,
    g: f64,
}

impl PowerSolutionParams {
    pub fn new(n: f64, big_g: f64) -> Result<Self> {
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::invalid(format!("power index must be positive, got {n}")));
        }
        if !(big_g > 0.0 && big_g.is_finite()) {
            return Err(Error::invalid(format!("G must be positive, got {big_g}")));
        }
        let nu = 1.0 / (n + 2.0);
        let g = 2.0 * big_g * nu;
        if g > MAX_ARGUMENT {
            return Err(Error::domain(format!("g = {g} exceeds the Bessel domain {MAX_ARGUMENT}")));
        }
        Ok(Self { n, nu, gamma_exp: 0.5 / nu, big_g, g })
    }

    /// Parameters from `nu` and `g` directly.
    pub fn from_nu_g(nu: f64, g: f64) -> Result<Self> {
        if !(nu > 0.0 && nu < 0.5) {
            return Err(Error::invalid(format!("nu must lie in (0, 1/2), got {nu}")));
        }
        Self::new(1.0 / nu - 2.0, g / (2.0 * nu))
    }

    pub fn n(&self) -> f64 {
        self.n
    }
    pub fn nu(&self) -> f64 {
        self.nu
    }
    pub fn gamma_exp(&self) -> f64 {
        self.gamma_exp
    }
    pub fn big_g(&self) -> f64 {
        self.big_g
    }
    pub fn g(&self) -> f64 {
        self.g
    }

    fn y(&self, t: f64) -> f64 {
        self.g * t.abs().powf(self.gamma_exp)
    }
}

/// Coefficients of the Bessel solution (they carry a factor `sqrt G`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselCoefficients {
    pub a_minus: Complex64,
    pub b_minus: Complex64,
    pub a_plus: Complex64,
    pub b_plus: Complex64,
}

/// Coefficients fixed by `eps(-1) = 1`, `deps(-1) = i`; continuity of `eps`
/// and `deps` across `T = 0` gives `A+ = -A-`, `B+ = B-`.
pub fn bessel_coefficients(p: &PowerSolutionParams) -> Result<BesselCoefficients> {
    let (nu, g) = (p.nu, p.g);
    let c = nu * std::f64::consts::PI * p.big_g.sqrt() / sin_pi(nu);
    let a_minus = c * Complex64::new(bessel_j(1.0 - nu, g)?, -bessel_j(-nu, g)?);
    let b_minus = c * Complex64::new(bessel_j(nu - 1.0, g)?, bessel_j(nu, g)?);
    Ok(BesselCoefficients { a_minus, b_minus, a_plus: -a_minus, b_plus: b_minus })
}

/// Exact mode state at `T` in `[-1, 1]`; `T = 0` uses the finite limits.
pub fn epsilon_power(p: &PowerSolutionParams, t: f64) -> Result<ModeState> {
    if !(-1.0..=1.0).contains(&t) {
        return Err(Error::domain(format!("Bessel solution evaluated outside [-1, 1]: T = {t}")));
    }
    let c = bessel_coefficients(p)?;
    let (nu, sg) = (p.nu, p.big_g.sqrt());
    if t == 0.0 {
        let half = 0.5 * p.g;
        let eps = sg * c.b_minus * half.powf(-nu) / gamma(1.0 - nu)?;
        let deps = -c.a_minus * half.powf(nu) / (nu * sg * gamma(nu)?);
        return Ok(ModeState { t, eps, deps });
    }
    let (a, b) = if t < 0.0 { (c.a_minus, c.b_minus) } else { (c.a_plus, c.b_plus) };
    let s = t.abs();
    let y = p.y(t);
    let (jn, jmn) = (bessel_j(nu, y)?, bessel_j(-nu, y)?);
    let (j1n, jn1) = (bessel_j(1.0 - nu, y)?, bessel_j(nu - 1.0, y)?);
    let eps = (p.big_g * s).sqrt() * (a * jn + b * jmn);
    let k = y / (2.0 * nu * (p.big_g * s).sqrt());
    let deps = if t < 0.0 { k * (b * j1n - a * jn1) } else { k * (a * jn1 - b * j1n) };
    Ok(ModeState { t, eps, deps })
}

/// `K+ = J_nu^2 + J_{nu-1}^2`, `K- = J_{-nu}^2 + J_{1-nu}^2`,
/// `K0 = J_{nu-1} J_{1-nu} - J_nu J_{-nu}`.
fn k_triplet(nu: f64, x: f64) -> Result<(f64, f64, f64)> {
    let (jn, jmn) = (bessel_j(nu, x)?, bessel_j(-nu, x)?);
    let (j1n, jn1) = (bessel_j(1.0 - nu, x)?, bessel_j(nu - 1.0, x)?);
    Ok((jn * jn + jn1 * jn1, jmn * jmn + j1n * j1n, jn1 * j1n - jn * jmn))
}

fn gpi_over_sin_sq(nu: f64, g: f64) -> f64 {
    (g * std::f64::consts::PI / sin_pi(nu)).powi(2)
}

/// Energy ratio `R(T)` of states with `<p^2> = <x^2>` and no correlation
/// (equivalently the phase-averaged classical ratio).
pub fn energy_ratio_curve(p: &PowerSolutionParams, t: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&t) {
        return Err(Error::domain(format!("energy curve evaluated outside [-1, 1]: T = {t}")));
    }
    let (nu, g) = (p.nu, p.g);
    let (kp_g, km_g, k0_g) = k_triplet(nu, g)?;
    let pref = gpi_over_sin_sq(nu, g) / 8.0;
    if t == 0.0 {
        return Ok(pref * km_g * (0.5 * g).powf(2.0 * nu - 2.0) / gamma(nu)?.powi(2));
    }
    let y = p.y(t);
    let (kp_y, km_y, k0_y) = k_triplet(nu, y)?;
    let sign = if t < 0.0 { -1.0 } else { 1.0 };
    Ok(pref
        * (y / g).powf(2.0 - 2.0 * nu)
        * (km_g * kp_y + kp_g * km_y + sign * 2.0 * k0_g * k0_y))
}

/// Large-`g` form `R(0) = pi g^{2nu-1} / [2^nu Gamma(nu) sin(pi nu)]^2`.
pub fn r_at_crossing_asymptotic(nu: f64, g: f64) -> Result<f64> {
    let d = 2f64.powf(nu) * gamma(nu)? * sin_pi(nu);
    Ok(std::f64::consts::PI * g.powf(2.0 * nu - 1.0) / (d * d))
}

/// `rho(g) = R(T = 1) = (1/4) [g pi / sin(nu pi)]^2 [K-(g) K+(g) + K0(g)^2]`.
pub fn rho_of_g(nu: f64, g: f64) -> Result<f64> {
    if !(g > 0.0) {
        return Err(Error::domain(format!("rho(g) needs g > 0, got {g}")));
    }
    if !(nu > 0.0 && nu < 0.5) {
        return Err(Error::invalid(format!("nu must lie in (0, 1/2), got {nu}")));
    }
    let (kp, km, k0) = k_triplet(nu, g)?;
    Ok(0.25 * gpi_over_sin_sq(nu, g) * (km * kp + k0 * k0))
}

fn nu_of(n: f64) -> Result<f64> {
    if !(n > 0.0 && n.is_finite()) {
        return Err(Error::invalid(format!("power index must be positive, got {n}")));
    }
    Ok(1.0 / (n + 2.0))
}

/// Adiabatic-limit amplification `(1 + cos^2 nu pi) / sin^2 nu pi`.
pub fn beta_single(n: f64) -> Result<f64> {
    let nu = nu_of(n)?;
    let (s, c) = (sin_pi(nu), cos_pi(nu));
    Ok((1.0 + c * c) / (s * s))
}

/// `u+ = 1/sin(nu pi)`, `u- = i cot(nu pi)` for the pure power profile.
pub fn u_pair_single(n: f64) -> Result<BogoliubovPair> {
    let nu = nu_of(n)?;
    let (s, c) = (sin_pi(nu), cos_pi(nu));
    BogoliubovPair::new(Complex64::new(1.0 / s, 0.0), Complex64::new(0.0, c / s))
}

/// `v-` for `f = tanh^2`, as a function of `w = omega_0 / kappa`:
/// `i cos(pi sqrt(1/4 - 4w^2)) / sinh(2 pi w)`, continued as cosh for `w > 1/4`.
pub fn tanh_v_minus(w: f64) -> Result<Complex64> {
    if !(w > 0.0 && w.is_finite()) {
        return Err(Error::domain(format!("tanh coefficient needs omega~ > 0, got {w}")));
    }
    let pi = std::f64::consts::PI;
    let d = 4.0 * w * w - 0.25;
    let v = if d > 0.0 {
        // cosh(A)/sinh(B) without overflow.
        let (a, b) = (pi * d.sqrt(), 2.0 * pi * w);
        (a - b).exp() * (1.0 + (-2.0 * a).exp()) / -(-2.0 * b).exp_m1()
    } else {
        (pi * (-d).sqrt()).cos() / (2.0 * pi * w).sinh()
    };
    Ok(Complex64::new(0.0, v))
}

/// `|v+| = sqrt(1 + |v-|^2)`.
pub fn tanh_v_plus_abs(w: f64) -> Result<f64> {
    Ok((1.0 + tanh_v_minus(w)?.norm_sqr()).sqrt())
}
