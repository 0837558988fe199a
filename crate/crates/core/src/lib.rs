//! Harmonic oscillators whose frequency passes through zero.
//!
//! The crate integrates `x'' + omega(t)^2 x = 0` for frequency profiles with
//! zero crossings, evaluates the exact Bessel-function solution of the power
//! profile, composes the transfer coefficients of successive crossings, and
//! computes the resulting quantum statistics of Fock and squeezed states.
//!
//! Units: `hbar = m = omega_0 = 1`; time is `T = t / tau` and `G = omega_0 tau`
//! is the adiabaticity parameter.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Tabulated coefficients are quoted to the digits of their sources.
#![allow(clippy::excessive_precision)]

pub mod analytic;
pub mod error;
pub mod integrator;
pub mod profiles;
pub mod quantum;
mod quad;
pub mod specfun;
pub mod transitions;

pub use error::{Error, Result};
pub use profiles::{FrequencyProfile, ProfileKind, ZeroCrossing};
pub use integrator::{ClassicalState, IntegratorOptions, ModeSeries, ModeState};
pub use quantum::MomentState;
pub use transitions::{BogoliubovPair, CrossingPlan};
