use proptest::prelude::*;
use std::f64::consts::PI;
use zerocross::specfun::{
    assoc_legendre, bessel_j, bessel_j_prime, gamma, hyp2f1_terminating, sin_pi,
};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn recurrence_identity(nu in 0.01f64..0.99, z in 0.05f64..800.0) {
        let j = bessel_j(nu, z).unwrap();
        let jp = bessel_j_prime(nu, z).unwrap();
        let up = (z / nu) * bessel_j(nu - 1.0, z).unwrap();
        let down = (z / nu) * bessel_j(nu + 1.0, z).unwrap();
        let scale = 1.0 + (z / nu) * (jp.abs() + j.abs());
        prop_assert!((j + (z / nu) * jp - up).abs() <= 1e-9 * scale);
        prop_assert!((j - (z / nu) * jp - down).abs() <= 1e-9 * scale);
    }

    #[test]
    fn cross_product(nu in 0.01f64..0.49, z in 0.01f64..2000.0) {
        let lhs = bessel_j(nu, z).unwrap() * bessel_j(1.0 - nu, z).unwrap()
            + bessel_j(-nu, z).unwrap() * bessel_j(nu - 1.0, z).unwrap();
        let rhs = 2.0 * sin_pi(nu) / (PI * z);
        prop_assert!((lhs - rhs).abs() <= 1e-10 * rhs, "{} vs {}", lhs, rhs);
    }

    #[test]
    fn wronskian_pair(nu in 0.01f64..0.49, z in 0.05f64..2000.0) {
        let w = bessel_j(nu, z).unwrap() * bessel_j_prime(-nu, z).unwrap()
            - bessel_j(-nu, z).unwrap() * bessel_j_prime(nu, z).unwrap();
        let want = -2.0 * sin_pi(nu) / (PI * z);
        prop_assert!((w - want).abs() <= 1e-10 * want.abs());
    }

    #[test]
    fn gamma_reflection(x in 0.001f64..0.999) {
        let p = gamma(x).unwrap() * gamma(1.0 - x).unwrap();
        prop_assert!((p * sin_pi(x) / PI - 1.0).abs() < 1e-13);
    }

    #[test]
    fn legendre_three_term(j in 0u32..60, x in -1.0f64..1.0) {
        let (mut p0, mut p1) = (1.0, x);
        let want = if j == 0 { 1.0 } else {
            for l in 1..j {
                let lf = l as f64;
                let p2 = ((2.0 * lf + 1.0) * x * p1 - lf * p0) / (lf + 1.0);
                p0 = p1;
                p1 = p2;
            }
            p1
        };
        prop_assert!((assoc_legendre(j, 0, x).unwrap() - want).abs() < 1e-12);
    }

    #[test]
    fn hypergeometric_connection(n in 0u32..=20, x in -1.0f64..1.0) {
        let f = hyp2f1_terminating(n, n as f64 + 1.0, 1.0, 0.5 * (1.0 - x)).unwrap();
        prop_assert!((f - assoc_legendre(n, 0, x).unwrap()).abs() < 1e-10);
    }
}

#[test]
fn documented_values() {
    assert!((gamma(0.5).unwrap() - PI.sqrt()).abs() < 1e-15);
    assert_eq!(gamma(6.0).unwrap(), 120.0);
    assert!((bessel_j(0.5, PI / 2.0).unwrap() - 2.0 / PI).abs() < 1e-14);
    assert!((assoc_legendre(2, 2, 0.0).unwrap() - 3.0).abs() < 1e-15);
    let s = (PI / 8.0).sin().powi(2);
    assert!((hyp2f1_terminating(1, 2.0, 1.5, s).unwrap() - (1.0 - 4.0 / 3.0 * s)).abs() < 1e-15);
    assert!(bessel_j(0.25, -1.0).is_err());
    assert!(assoc_legendre(1, 2, 0.3).is_err());
}
