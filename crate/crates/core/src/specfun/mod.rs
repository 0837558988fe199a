//! Special functions used by the closed-form solutions: Gamma, Bessel `J` of
//! fractional order, associated Legendre functions, terminating `2F1`, and
//! log-space factorials.

mod bessel;
pub(crate) mod dd;
mod gamma;
mod hypergeometric;
mod legendre;
mod logweight;

pub use bessel::{
    bessel_j, bessel_j_prime, bessel_j_with_switchover, MAX_ARGUMENT, SERIES_SWITCHOVER,
};
pub use dd::DoubleDouble;
pub use gamma::{cos_pi, gamma, ln_gamma, sin_pi};
pub use hypergeometric::hyp2f1_terminating;
pub(crate) use hypergeometric::{f64_as_ratio, hyp2f1_terminating_rational};
pub use legendre::{assoc_legendre, assoc_legendre_log};
pub(crate) use legendre::assoc_legendre_log_with_complement;
pub use logweight::{double_factorial_ratio, log_double_factorial, log_factorial, LogWeight};
