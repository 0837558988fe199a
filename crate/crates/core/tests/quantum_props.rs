use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::{PI, SQRT_2};
use zerocross::analytic::u_pair_single;
use zerocross::integrator::{integrate_mode, IntegratorOptions, ModeState};
use zerocross::quantum::*;
use zerocross::transitions::beta_general;
use zerocross::{BogoliubovPair, FrequencyProfile, MomentState};

fn pair(r: f64, theta: f64, psi: f64) -> BogoliubovPair {
    BogoliubovPair::new(
        Complex64::from_polar((1.0 + r * r).sqrt(), psi),
        Complex64::from_polar(r, theta),
    )
    .unwrap()
}

/// Mode `omega^-1/2 (u+ e^{i phi} + u- e^{-i phi})` at frequency `omega`.
fn asymptotic_mode(p: &BogoliubovPair, omega: f64, phi: f64) -> ModeState {
    let a = p.u_plus() * Complex64::from_polar(1.0, phi);
    let b = p.u_minus() * Complex64::from_polar(1.0, -phi);
    ModeState { t: 1.0, eps: (a + b) / omega.sqrt(), deps: Complex64::i() * omega.sqrt() * (a - b) }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn distribution_moments(n in 0u64..=50, r in 0.0f64..3.0, th in 0.0f64..6.3) {
        let p = pair(r, th, 0.3);
        let d = fock_distribution(n, &p, 1e-10).unwrap();
        let total = d.total();
        prop_assert!((1.0 - 1e-10..=1.0 + 1e-12).contains(&total));
        prop_assert!((total + d.tail_mass - 1.0).abs() < 1e-12);
        let nf = n as f64;
        let mean = d.mean_energy_quanta();
        let want = p.beta() * (nf + 0.5);
        prop_assert!((mean / want - 1.0).abs() < 1e-8, "{} vs {}", mean, want);
        let var = d.variance();
        let want_var = 2.0 * (p.u_plus() * p.u_minus()).norm_sqr() * (nf * nf + nf + 1.0);
        prop_assert!((var - want_var).abs() <= 1e-7 * want_var.max(1e-300) + 1e-9 * want * want,
            "{} vs {}", var, want_var);
    }

    #[test]
    fn transition_symmetry(n in 0u64..60, k in 0u64..30, r in 0.01f64..3.0) {
        let p = pair(r, 1.1, -0.4);
        let m = n + 2 * k;
        let a = fock_transition_prob(n, m, &p).unwrap();
        let b = fock_transition_prob(m, n, &p).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * a.max(b) + 1e-300);
        prop_assert!((0.0..=1.0).contains(&a));
        let l = fock_transition_prob_legendre(n, m, &p).unwrap().value();
        let h = fock_transition_prob_hypergeometric(n, m, &p).unwrap().value();
        prop_assert!((l - h).abs() <= 1e-9 * l.max(h) + 1e-15, "{} vs {}", l, h);
    }

    #[test]
    fn d_invariant_through_evolution(
        xx in 0.3f64..3.0, pp in 0.3f64..3.0, c in -1.0f64..1.0,
        r in 0.0f64..2.0, th in 0.0f64..6.3, omega in 0.2f64..4.0, phi in 0.0f64..6.3,
    ) {
        let Ok(m0) = MomentState::new(xx, pp, c) else { return Ok(()) };
        let m = evolve_moments(&m0, &asymptotic_mode(&pair(r, th, 0.7), omega, phi), 1.0);
        prop_assert!((m.invariant_d() - m0.invariant_d()).abs() <= 1e-10 * m0.invariant_d().max(1.0) * (1.0 + 2.0 * r * r).powi(2));
        prop_assert!(m.invariant_d() >= 0.25 - 1e-10);
    }

    #[test]
    fn beta_correction_matches_moment_evolution(
        xx in 0.0f64..3.0, pp in 0.0f64..3.0, c in -1.0f64..1.0,
        r in 0.0f64..2.0, th in 0.0f64..6.3, omega in 0.2f64..4.0, phi in 0.0f64..6.3,
    ) {
        prop_assume!(xx + pp > 0.1);
        let m0 = MomentState::unconstrained(xx, pp, c).unwrap();
        let p = pair(r, th, 0.2);
        let m = evolve_moments(&m0, &asymptotic_mode(&p, omega, phi), 1.0);
        let direct = mean_energy(&m, omega) / (omega * mean_energy(&m0, 1.0));
        let formula = beta_general(&p, &m0, 1.0).unwrap();
        prop_assert!((direct - formula).abs() < 1e-10 * formula.abs().max(1.0));
    }

    #[test]
    fn squeezing_scan_matches_invariant(
        xx in 0.2f64..3.0, pp in 0.2f64..3.0, c in -1.0f64..1.0, omega in 0.3f64..3.0,
    ) {
        let Ok(m) = MomentState::new(xx, pp, c) else { return Ok(()) };
        let p = SqueezingParams::from_moments(&m, omega).unwrap();
        prop_assert!((squeezing_by_scan(&m, omega) - squeezing_invariant(&p)).abs() < 1e-8);
    }
}

#[test]
fn moments_through_integrated_mode() {
    let o = IntegratorOptions::default();
    let p = FrequencyProfile::power(2.0).unwrap();
    let s = integrate_mode(&p, 1000.0, 1.0, &[-1.0, -0.5, 1.0], &o).unwrap();
    let vac = MomentState::vacuum();
    let start = evolve_moments(&vac, &s.states[0], 1.0);
    assert_eq!(start, vac);
    let w = p.omega(-0.5);
    let mid = evolve_moments(&vac, &s.states[1], 1.0);
    assert!((mid.xx() * 2.0 * w - 1.0).abs() < 0.01);
    assert!((mid.pp() * 2.0 / w - 1.0).abs() < 0.01);
    assert!((mid.invariant_d() - 0.25).abs() < 1e-10);
    let end = evolve_moments(&vac, &s.states[2], 1.0);
    let ratio = mean_energy(&end, p.omega(1.0)) / (mean_energy(&vac, 1.0) * p.omega(1.0));
    assert!((ratio / 3.0 - 1.0).abs() < 0.01);
    for st in &s.states {
        assert!(energy_ratio_special(st, p.omega(st.t)) >= p.omega(st.t) - 1e-12);
    }
    assert!((energy_ratio_special(&s.states[0], 1.0) - 1.0).abs() < 1e-15);
    assert_eq!(mean_energy(&MomentState::new(1.0, 0.5, 0.0).unwrap(), 0.0), 0.25);
}

#[test]
fn crossing_pair_squeezes_vacuum() {
    let p = u_pair_single(2.0).unwrap();
    let omega = 1.7;
    let m = evolve_moments(&MomentState::vacuum(), &asymptotic_mode(&p, omega, 0.4), 1.0);
    let s = squeezing_by_scan(&m, omega);
    assert!((s - (PI / 8.0).tan().powi(2)).abs() < 1e-8);
    assert!((squeezing_after_crossing(1.0, p.beta()).unwrap() - s).abs() < 1e-8);
}

#[test]
fn mandel_large_n() {
    let p = BogoliubovPair::new(Complex64::new(SQRT_2, 0.0), Complex64::new(0.0, 1.0)).unwrap();
    let q = mandel_q(100_000, &p).unwrap();
    assert!((q / (4.0 / 3.0 * 100_000.0) - 1.0).abs() < 1e-4);
    assert!((mandel_q(3, &p).unwrap() - 4.2).abs() < 1e-12);
}

#[test]
fn distribution_argument_checks() {
    let p = BogoliubovPair::identity();
    assert!(fock_distribution(0, &p, 0.0).is_err());
    assert!(fock_distribution(0, &p, 1e-3).is_err());
}
