use std::f64::consts::PI;

use proptest::prelude::*;
use rotunc_core::numerics::{gauss_hermite, gauss_legendre, hermite_poly, theta_lm};

proptest! {
    #[test]
    fn legendre_weights_positive_and_sum_to_length(n in 2usize..300, a in -5.0f64..5.0, len in 0.1f64..10.0) {
        let rule = gauss_legendre(n, a, a + len).unwrap();
        prop_assert_eq!(rule.len(), n);
        prop_assert!(rule.weights().iter().all(|&w| w > 0.0));
        prop_assert!(rule.nodes().iter().all(|&x| x > a && x < a + len));
        let total: f64 = rule.weights().iter().sum();
        prop_assert!((total - len).abs() < 1e-12 * len.max(1.0));
    }

    #[test]
    fn hermite_weights_positive_and_sum_to_sqrt_pi(n in 2usize..200) {
        let rule = gauss_hermite(n).unwrap();
        prop_assert!(rule.weights().iter().all(|&w| w >= 0.0));
        let total: f64 = rule.weights().iter().sum();
        prop_assert!((total - PI.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn legendre_is_exact_on_polynomials(n in 2usize..40, coeffs in prop::collection::vec(-2.0f64..2.0, 1..8)) {
        prop_assume!(coeffs.len() <= 2 * n);
        let rule = gauss_legendre(n, 0.0, 1.0).unwrap();
        let got = rule.integrate(|x| coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c));
        let exact: f64 = coeffs.iter().enumerate().map(|(k, c)| c / (k as f64 + 1.0)).sum();
        prop_assert!((got - exact).abs() < 1e-12);
    }
}

#[test]
fn hermite_recurrence_holds() {
    for k in 0..=200 {
        let xi = -5.0 + 0.05 * k as f64;
        for n in 1..20u32 {
            let next = hermite_poly(n + 1, xi).unwrap();
            let two_xi_h = 2.0 * xi * hermite_poly(n, xi).unwrap();
            let back = 2.0 * n as f64 * hermite_poly(n - 1, xi).unwrap();
            let scale = next.abs().max(two_xi_h.abs()).max(back.abs()).max(1.0);
            assert!((next - two_xi_h + back).abs() < 1e-9 * scale, "n={n} xi={xi}");
        }
    }
}

#[test]
fn theta_functions_are_orthonormal() {
    let rule = gauss_legendre(128, 0.0, PI).unwrap();
    for m in -6i32..=6 {
        let lmin = m.unsigned_abs();
        for l in lmin..=6 {
            for l2 in lmin..=6 {
                let v = rule.integrate(|t| theta_lm(l, m, t).unwrap() * theta_lm(l2, m, t).unwrap() * t.sin());
                let want = if l == l2 { 1.0 } else { 0.0 };
                assert!((v - want).abs() < 1e-9, "l={l} l'={l2} m={m}: {v}");
            }
        }
    }
}

#[test]
fn condon_shortley_mirror() {
    for l in 0..=6u32 {
        for m in 0..=l as i32 {
            for t in [0.1, 0.7, 1.5, 2.9] {
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                let a = theta_lm(l, -m, t).unwrap();
                let b = sign * theta_lm(l, m, t).unwrap();
                assert!((a - b).abs() < 1e-14);
            }
        }
    }
}

#[test]
fn hermite_integrals_exact_for_gaussian_moments() {
    let rule = gauss_hermite(40).unwrap();
    // ∫ x^{2k} e^{-x²} = Γ(k + 1/2)
    let mut gamma = PI.sqrt();
    for k in 0..20 {
        let got = rule.integrate(|x| x.powi(2 * k));
        assert!((got - gamma).abs() < 1e-10 * gamma, "k={k}");
        gamma *= k as f64 + 0.5;
    }
}
