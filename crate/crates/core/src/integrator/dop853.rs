//! Explicit Runge-Kutta DOP853 with step-size control and 7th-order dense
//! output, for fixed-size real systems.

use super::tableau::*;
use crate::error::{Error, Result};

/// Right-hand side `dy/dt = f(t, y)`.
pub trait OdeSystem<const D: usize> {
    fn rhs(&self, t: f64, y: &[f64; D]) -> [f64; D];
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dop853Options {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_steps: usize,
}

impl Default for Dop853Options {
    fn default() -> Self {
        Self { rel_tol: 1e-10, abs_tol: 1e-12, max_steps: 5_000_000 }
    }
}

const SAFE: f64 = 0.9;
const FAC1: f64 = 0.333;
const FAC2: f64 = 6.0;
const EXPO1: f64 = 1.0 / 8.0;

#[inline]
fn comb<const D: usize>(y: &[f64; D], h: f64, terms: &[(f64, &[f64; D])]) -> [f64; D] {
    let mut out = *y;
    for (i, o) in out.iter_mut().enumerate() {
        let acc: f64 = terms.iter().map(|(c, k)| c * k[i]).sum();
        *o += h * acc;
    }
    out
}

#[inline]
fn lin<const D: usize>(terms: &[(f64, &[f64; D])]) -> [f64; D] {
    comb(&[0.0; D], 1.0, terms)
}

/// Everything about one accepted step needed to build the interpolant.
struct Step<const D: usize> {
    t_old: f64,
    h: f64,
    y_old: [f64; D],
    y_new: [f64; D],
    k: [[f64; D]; 10],
    f_new: [f64; D],
}

struct Dense<const D: usize> {
    t_old: f64,
    h: f64,
    cont: [[f64; D]; 8],
}

impl<const D: usize> Dense<D> {
    fn build<S: OdeSystem<D>>(sys: &S, st: &Step<D>) -> Self {
        let h = st.h;
        let [k1, k11, k12, _, _, k6, k7, k8, k9, k10] = &st.k;
        let f_new = &st.f_new;
        let mut cont = [[0.0; D]; 8];
        let ydiff: [f64; D] = std::array::from_fn(|i| st.y_new[i] - st.y_old[i]);
        let bspl: [f64; D] = std::array::from_fn(|i| h * k1[i] - ydiff[i]);
        cont[0] = st.y_old;
        cont[1] = ydiff;
        cont[2] = bspl;
        cont[3] = std::array::from_fn(|i| ydiff[i] - h * f_new[i] - bspl[i]);
        let d = |c1, c6, c7, c8, c9, c10, c11, c12| {
            lin(&[
                (c1, k1),
                (c6, k6),
                (c7, k7),
                (c8, k8),
                (c9, k9),
                (c10, k10),
                (c11, k11),
                (c12, k12),
            ])
        };
        let mut c5 = d(D41, D46, D47, D48, D49, D410, D411, D412);
        let mut c6 = d(D51, D56, D57, D58, D59, D510, D511, D512);
        let mut c7 = d(D61, D66, D67, D68, D69, D610, D611, D612);
        let mut c8 = d(D71, D76, D77, D78, D79, D710, D711, D712);

        let t = st.t_old;
        let y = &st.y_old;
        let k14 = sys.rhs(
            t + C14 * h,
            &comb(
                y,
                h,
                &[
                    (A141, k1),
                    (A147, k7),
                    (A148, k8),
                    (A149, k9),
                    (A1410, k10),
                    (A1411, k11),
                    (A1412, k12),
                    (A1413, f_new),
                ],
            ),
        );
        let k15 = sys.rhs(
            t + C15 * h,
            &comb(
                y,
                h,
                &[
                    (A151, k1),
                    (A156, k6),
                    (A157, k7),
                    (A158, k8),
                    (A1511, k11),
                    (A1512, k12),
                    (A1513, f_new),
                    (A1514, &k14),
                ],
            ),
        );
        let k16 = sys.rhs(
            t + C16 * h,
            &comb(
                y,
                h,
                &[
                    (A161, k1),
                    (A166, k6),
                    (A167, k7),
                    (A168, k8),
                    (A169, k9),
                    (A1613, f_new),
                    (A1614, &k14),
                    (A1615, &k15),
                ],
            ),
        );
        let fin = |c: &mut [f64; D], a, b, cc, dd| {
            for i in 0..D {
                c[i] = h * (c[i] + a * f_new[i] + b * k14[i] + cc * k15[i] + dd * k16[i]);
            }
        };
        fin(&mut c5, D413, D414, D415, D416);
        fin(&mut c6, D513, D514, D515, D516);
        fin(&mut c7, D613, D614, D615, D616);
        fin(&mut c8, D713, D714, D715, D716);
        cont[4] = c5;
        cont[5] = c6;
        cont[6] = c7;
        cont[7] = c8;
        Self { t_old: t, h, cont }
    }

    fn eval(&self, t: f64) -> [f64; D] {
        let s = (t - self.t_old) / self.h;
        let s1 = 1.0 - s;
        let c = &self.cont;
        std::array::from_fn(|i| {
            let conpar = c[4][i] + (c[5][i] + (c[6][i] + c[7][i] * s) * s1) * s;
            c[0][i] + (c[1][i] + (c[2][i] + (c[3][i] + conpar * s1) * s) * s1) * s
        })
    }
}

fn scale<const D: usize>(opts: &Dop853Options, y: &[f64; D], y_new: &[f64; D], i: usize) -> f64 {
    opts.abs_tol + opts.rel_tol * y[i].abs().max(y_new[i].abs())
}

/// Integrates from `(t0, y0)` to `t_end`, restarting the stepper at every
/// `breakpoints` entry inside the interval, and returns the state at each of
/// the ascending `samples` (all inside `[t0, t_end]`).
pub fn solve<const D: usize, S: OdeSystem<D>>(
    sys: &S,
    t0: f64,
    y0: [f64; D],
    t_end: f64,
    breakpoints: &[f64],
    samples: &[f64],
    opts: &Dop853Options,
) -> Result<Vec<[f64; D]>> {
    if !(t_end >= t0) {
        return Err(Error::domain(format!("integration end {t_end} precedes start {t0}")));
    }
    if samples.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::domain("sample times must be ascending"));
    }
    if samples.first().is_some_and(|&s| s < t0) || samples.last().is_some_and(|&s| s > t_end) {
        return Err(Error::domain(format!("sample times must lie in [{t0}, {t_end}]")));
    }
    let mut out = Vec::with_capacity(samples.len());
    let mut next = 0usize;
    while next < samples.len() && samples[next] == t0 {
        out.push(y0);
        next += 1;
    }
    let mut stops: Vec<f64> = breakpoints.iter().copied().filter(|&b| b > t0 && b < t_end).collect();
    stops.sort_by(f64::total_cmp);
    stops.dedup();
    stops.push(t_end);

    let mut t = t0;
    let mut y = y0;
    let mut steps = 0usize;
    for &stop in &stops {
        if stop <= t {
            continue;
        }
        let mut k1 = sys.rhs(t, &y);
        let mut h = initial_step(sys, t, &y, &k1, stop - t, opts);
        let mut last_rejected = false;
        while t < stop {
            if steps >= opts.max_steps {
                return Err(Error::TooManySteps { t, max_steps: opts.max_steps });
            }
            if h.abs() < 1e-14 * t.abs().max(1.0) {
                return Err(Error::StepSizeUnderflow { t });
            }
            steps += 1;
            let mut last = false;
            if t + 1.01 * h >= stop {
                h = stop - t;
                last = true;
            }
            let (y_new, k, err) = attempt(sys, t, &y, &k1, h, opts);
            let fac11 = err.powf(EXPO1);
            let fac = (fac11 / SAFE).clamp(1.0 / FAC2, 1.0 / FAC1);
            let mut h_new = h / fac;
            if err <= 1.0 && err.is_finite() {
                let t_new = if last { stop } else { t + h };
                let f_new = sys.rhs(t_new, &y_new);
                let step = Step { t_old: t, h, y_old: y, y_new, k, f_new };
                let mut dense: Option<Dense<D>> = None;
                while next < samples.len() && samples[next] <= t_new {
                    let s = samples[next];
                    if s == t_new {
                        out.push(y_new);
                    } else {
                        let d = dense.get_or_insert_with(|| Dense::build(sys, &step));
                        out.push(d.eval(s));
                    }
                    next += 1;
                }
                if last_rejected {
                    h_new = h_new.min(h.abs());
                }
                last_rejected = false;
                t = t_new;
                y = y_new;
                k1 = f_new;
            } else {
                h_new = h / (1.0 / FAC1).min(fac11 / SAFE);
                if !err.is_finite() {
                    h_new = 0.1 * h;
                }
                last_rejected = true;
            }
            h = h_new;
        }
    }
    // Samples equal to t_end after rounding drift.
    while out.len() < samples.len() {
        out.push(y);
    }
    Ok(out)
}

#[allow(clippy::type_complexity)]
fn attempt<const D: usize, S: OdeSystem<D>>(
    sys: &S,
    t: f64,
    y: &[f64; D],
    k1: &[f64; D],
    h: f64,
    opts: &Dop853Options,
) -> ([f64; D], [[f64; D]; 10], f64) {
    let k2 = sys.rhs(t + C2 * h, &comb(y, h, &[(A21, k1)]));
    let k3 = sys.rhs(t + C3 * h, &comb(y, h, &[(A31, k1), (A32, &k2)]));
    let k4 = sys.rhs(t + C4 * h, &comb(y, h, &[(A41, k1), (A43, &k3)]));
    let k5 = sys.rhs(t + C5 * h, &comb(y, h, &[(A51, k1), (A53, &k3), (A54, &k4)]));
    let k6 = sys.rhs(t + C6 * h, &comb(y, h, &[(A61, k1), (A64, &k4), (A65, &k5)]));
    let k7 = sys.rhs(
        t + C7 * h,
        &comb(y, h, &[(A71, k1), (A74, &k4), (A75, &k5), (A76, &k6)]),
    );
    let k8 = sys.rhs(
        t + C8 * h,
        &comb(y, h, &[(A81, k1), (A84, &k4), (A85, &k5), (A86, &k6), (A87, &k7)]),
    );
    let k9 = sys.rhs(
        t + C9 * h,
        &comb(
            y,
            h,
            &[(A91, k1), (A94, &k4), (A95, &k5), (A96, &k6), (A97, &k7), (A98, &k8)],
        ),
    );
    let k10 = sys.rhs(
        t + C10 * h,
        &comb(
            y,
            h,
            &[
                (A101, k1),
                (A104, &k4),
                (A105, &k5),
                (A106, &k6),
                (A107, &k7),
                (A108, &k8),
                (A109, &k9),
            ],
        ),
    );
    let k11 = sys.rhs(
        t + C11 * h,
        &comb(
            y,
            h,
            &[
                (A111, k1),
                (A114, &k4),
                (A115, &k5),
                (A116, &k6),
                (A117, &k7),
                (A118, &k8),
                (A119, &k9),
                (A1110, &k10),
            ],
        ),
    );
    let k12 = sys.rhs(
        t + h,
        &comb(
            y,
            h,
            &[
                (A121, k1),
                (A124, &k4),
                (A125, &k5),
                (A126, &k6),
                (A127, &k7),
                (A128, &k8),
                (A129, &k9),
                (A1210, &k10),
                (A1211, &k11),
            ],
        ),
    );
    let incr = lin(&[
        (B1, k1),
        (B6, &k6),
        (B7, &k7),
        (B8, &k8),
        (B9, &k9),
        (B10, &k10),
        (B11, &k11),
        (B12, &k12),
    ]);
    let y_new: [f64; D] = std::array::from_fn(|i| y[i] + h * incr[i]);

    let mut err = 0.0;
    let mut err2 = 0.0;
    for i in 0..D {
        let sk = scale(opts, y, &y_new, i);
        let e2 = incr[i] - BHH1 * k1[i] - BHH2 * k9[i] - BHH3 * k12[i];
        err2 += (e2 / sk).powi(2);
        let e = ER1 * k1[i]
            + ER6 * k6[i]
            + ER7 * k7[i]
            + ER8 * k8[i]
            + ER9 * k9[i]
            + ER10 * k10[i]
            + ER11 * k11[i]
            + ER12 * k12[i];
        err += (e / sk).powi(2);
    }
    let mut deno = err + 0.01 * err2;
    if deno <= 0.0 {
        deno = 1.0;
    }
    let err = h.abs() * err * (1.0 / (deno * D as f64)).sqrt();
    // Slots 1 and 2 carry k11 and k12, the layout the interpolant expects.
    let k = [*k1, k11, k12, k4, k5, k6, k7, k8, k9, k10];
    (y_new, k, err)
}

fn initial_step<const D: usize, S: OdeSystem<D>>(
    sys: &S,
    t: f64,
    y: &[f64; D],
    k1: &[f64; D],
    span: f64,
    opts: &Dop853Options,
) -> f64 {
    let sk: [f64; D] = std::array::from_fn(|i| opts.abs_tol + opts.rel_tol * y[i].abs());
    let dnf: f64 = (0..D).map(|i| (k1[i] / sk[i]).powi(2)).sum();
    let dny: f64 = (0..D).map(|i| (y[i] / sk[i]).powi(2)).sum();
    let mut h = if dnf <= 1e-10 || dny <= 1e-10 { 1e-6 } else { 0.01 * (dny / dnf).sqrt() };
    h = h.min(span);
    let k2 = sys.rhs(t + h, &comb(y, h, &[(1.0, k1)]));
    let der2 = (0..D).map(|i| ((k2[i] - k1[i]) / sk[i]).powi(2)).sum::<f64>().sqrt() / h;
    let der12 = der2.abs().max(dnf.sqrt());
    let h1 = if der12 <= 1e-15 {
        (h * 1e-3).max(1e-6)
    } else {
        (0.01 / der12).powf(1.0 / 8.0)
    };
    (100.0 * h).min(h1).min(span)
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Harmonic(f64);
    impl OdeSystem<2> for Harmonic {
        fn rhs(&self, _t: f64, y: &[f64; 2]) -> [f64; 2] {
            [y[1], -self.0 * self.0 * y[0]]
        }
    }

    struct Decay;
    impl OdeSystem<1> for Decay {
        fn rhs(&self, t: f64, y: &[f64; 1]) -> [f64; 1] {
            [-2.0 * t * y[0]]
        }
    }

    #[test]
    fn harmonic_dense_output_accurate() {
        let w = 30.0;
        let samples: Vec<f64> = (0..=200).map(|i| i as f64 * 0.01).collect();
        let opts = Dop853Options { rel_tol: 1e-12, abs_tol: 1e-14, ..Default::default() };
        let ys = solve(&Harmonic(w), 0.0, [1.0, 0.0], 2.0, &[], &samples, &opts).unwrap();
        for (t, y) in samples.iter().zip(&ys) {
            assert!((y[0] - (w * t).cos()).abs() < 1e-9, "t={t}");
            assert!((y[1] + w * (w * t).sin()).abs() < 1e-9 * w);
        }
    }

    #[test]
    fn breakpoints_and_endpoint_exact() {
        let samples = [0.0, 0.5, 1.0, 1.5];
        let ys = solve(&Decay, 0.0, [1.0], 1.5, &[0.5, 1.0], &samples, &Default::default()).unwrap();
        for (t, y) in samples.iter().zip(&ys) {
            assert!((y[0] - (-t * t).exp()).abs() < 1e-11);
        }
    }

    #[test]
    fn rejects_backwards_interval() {
        assert!(solve(&Decay, 1.0, [1.0], 0.0, &[], &[], &Default::default()).is_err());
    }

    #[test]
    fn step_limit_reported() {
        let opts = Dop853Options { max_steps: 10, ..Default::default() };
        let r = solve(&Harmonic(1000.0), 0.0, [1.0, 0.0], 10.0, &[], &[], &opts);
        assert!(matches!(r, Err(Error::TooManySteps { .. })));
    }
}
