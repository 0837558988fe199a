use num_complex::Complex64;
use proptest::prelude::*;
use zerocross::analytic::u_pair_single;
use zerocross::transitions::*;
use zerocross::{BogoliubovPair, CrossingPlan, MomentState};

fn arb_pair() -> impl Strategy<Value = BogoliubovPair> {
    (0.0f64..3.0, 0.0f64..6.3, 0.0f64..6.3).prop_map(|(r, th, psi)| {
        BogoliubovPair::new(
            Complex64::from_polar((1.0 + r * r).sqrt(), psi),
            Complex64::from_polar(r, th),
        )
        .unwrap()
    })
}

proptest! {
    #[test]
    fn long_random_plan(phis in proptest::collection::vec(0.0f64..std::f64::consts::TAU, 50)) {
        let u = u_pair_single(2.0).unwrap();
        let mut acc = BogoliubovPair::identity();
        let mut trace = Vec::new();
        for phi in phis {
            acc = compose_two(&acc, &u, phi);
            prop_assert!(acc.constraint_residual() <= 1e-10 * acc.beta());
            trace.push(acc.beta());
        }
        prop_assert!(trace.windows(2).any(|w| w[1] < w[0]));
    }

    #[test]
    fn composition_keeps_constraint(u in arb_pair(), w in arb_pair(), phi in 0.0f64..100.0) {
        let c = compose_two(&u, &w, phi);
        prop_assert!(c.constraint_residual() <= 1e-10 * c.beta());
        let b = beta_double_crossing(&u, &w, phi);
        prop_assert!((c.beta() - b).abs() <= 1e-12 * b);
    }

    #[test]
    fn scan_within_extremes(u in arb_pair(), w in arb_pair()) {
        let (lo, hi) = beta_extremes(&u, &w);
        let (smin, smax) = beta_phase_scan(&u, &w, 10_000);
        prop_assert!(smin >= lo - 1e-9 * hi && smax <= hi + 1e-9 * hi);
        prop_assert!((smin - lo) <= 1e-6 * hi && (hi - smax) <= 1e-6 * hi);
    }

    #[test]
    fn plan_fold_matches_pairwise(a in arb_pair(), b in arb_pair(), c in arb_pair(), p1 in 0.0f64..10.0, p2 in 0.0f64..10.0) {
        let plan = CrossingPlan::new(vec![
            PlannedCrossing { pair: a, phi_before: 0.0 },
            PlannedCrossing { pair: b, phi_before: p1 },
            PlannedCrossing { pair: c, phi_before: p2 },
        ]).unwrap();
        let folded = compose_plan(&plan);
        let manual = compose_two(&compose_two(&a, &b, p1), &c, p2);
        prop_assert!((folded.u_plus() - manual.u_plus()).norm() <= 1e-12 * manual.beta());
        prop_assert!((folded.u_minus() - manual.u_minus()).norm() <= 1e-12 * manual.beta());
        let back = CrossingPlan::from_json(&plan.to_json()).unwrap();
        prop_assert_eq!(back, plan);
    }
}

#[test]
fn identity_second_crossing() {
    let u = u_pair_single(2.0).unwrap();
    let c = compose_two(&u, &BogoliubovPair::identity(), 0.7);
    let e = Complex64::from_polar(1.0, 0.7);
    assert!((c.u_plus() - u.u_plus() * e).norm() < 1e-15);
    assert!((c.u_minus() - u.u_minus() * e.conj()).norm() < 1e-15);
    assert_eq!(beta_extremes(&u, &BogoliubovPair::identity()).0, beta_of(&u));
}

#[test]
fn same_pair_twice() {
    let u = u_pair_single(2.0).unwrap();
    let (lo, hi) = beta_extremes(&u, &u);
    assert!((lo - 1.0).abs() < 1e-12 && (hi - 17.0).abs() < 1e-12);
    let (smin, smax) = beta_phase_scan(&u, &u, 10_000);
    assert!((smin - 1.0).abs() < 1e-6 && (smax - 17.0).abs() < 1e-6);
}

#[test]
fn mixed_pair_extremes() {
    let u = u_pair_single(2.0).unwrap();
    let w = u_pair_single(1.0).unwrap();
    let (lo, hi) = beta_extremes(&u, &w);
    let (smin, smax) = beta_phase_scan(&u, &w, 10_000);
    assert!((smin - lo).abs() < 1e-9 * hi && (smax - hi).abs() < 1e-9 * hi);
}

#[test]
fn betas_of_pairs() {
    assert_eq!(beta_of(&BogoliubovPair::identity()), 1.0);
    let p = BogoliubovPair::from_u_minus(Complex64::new(0.0, 1.0));
    assert!((beta_of(&p) - 3.0).abs() < 1e-15);
    let c = 1.0 / (std::f64::consts::PI / 3.0).tan();
    assert!((beta_of(&BogoliubovPair::from_u_minus(Complex64::new(c, 0.0))) - 5.0 / 3.0).abs() < 1e-15);
}

#[test]
fn plan_edge_cases() {
    assert_eq!(compose_plan(&CrossingPlan::default()), BogoliubovPair::identity());
    let u = u_pair_single(4.0).unwrap();
    let one = CrossingPlan::new(vec![PlannedCrossing { pair: u, phi_before: 3.0 }]).unwrap();
    assert_eq!(compose_plan(&one), u);
    assert!(CrossingPlan::new(vec![PlannedCrossing { pair: u, phi_before: -1.0 }]).is_err());
    assert!(CrossingPlan::from_json(r#"{"crossings":[{"u_plus":[1,0],"u_minus":[1,0]}]}"#).is_err());
    assert!(CrossingPlan::from_json("not json").is_err());
}

#[test]
fn general_beta_cases() {
    let u = u_pair_single(2.0).unwrap();
    let special = MomentState::new(0.8, 0.8, 0.0).unwrap();
    assert!((beta_general(&u, &special, 1.0).unwrap() - 3.0).abs() < 1e-14);
    let any = MomentState::new(2.0, 0.3, 0.4).unwrap();
    assert_eq!(beta_general(&BogoliubovPair::identity(), &any, 1.0).unwrap(), 1.0);
    let zero = MomentState::unconstrained(0.0, 0.0, 0.0).unwrap();
    assert!(beta_general(&u, &zero, 1.0).is_err());
    let coherent = MomentState::unconstrained(1.0, 0.0, 0.0).unwrap();
    let want = 3.0 + (u.u_plus() * u.u_minus()).re / 0.5;
    assert!((beta_general(&u, &coherent, 1.0).unwrap() - want).abs() < 1e-14);
}
