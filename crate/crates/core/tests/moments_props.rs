mod common;

use std::f64::consts::PI;

use proptest::prelude::*;

use common::*;
use rotunc_core::moments::{self, cross_product, higher_correlation};
use rotunc_core::states::{CircularState, PendulumState};
use rotunc_core::{Engine, EngineSettings, ObservableKind, State};

use ObservableKind::*;

fn kinds(state: &State) -> Vec<ObservableKind> {
    match state {
        State::Spherical(_) => vec![Lz, Phi, PhiSquared, SinPhi, CosPhi, Theta, ThetaPhi, Chi(1)],
        State::Pendulum(_) => vec![Lz, Phi, PhiSquared, Chi(-1)],
        _ => vec![Lz, Phi, PhiSquared, SinPhi, CosPhi, Chi(2)],
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn schwarz_inequality(state in any_state()) {
        let e = Engine::default();
        let ks = kinds(&state);
        for &a in &ks {
            for &b in &ks {
                let ab = moments::correlation(&e, a, b, &state).unwrap().value;
                let aa = moments::correlation(&e, a, a, &state).unwrap().value.re;
                let bb = moments::correlation(&e, b, b, &state).unwrap().value.re;
                prop_assert!(ab.norm_sqr() <= aa * bb + 1e-10, "{} {}: {} > {}", a, b, ab.norm_sqr(), aa * bb);
            }
        }
    }

    #[test]
    fn variance_is_second_moment_minus_squared_mean(state in any_state()) {
        let e = Engine::default();
        for a in kinds(&state) {
            let m = moments::moment_set(&e, a, &state).unwrap();
            prop_assert!(m.std_dev >= 0.0);
            let second = cross_product(&e, a, a, &state).unwrap();
            prop_assert!((m.std_dev.powi(2) - (second.re - m.mean * m.mean)).abs() < 1e-10 * (1.0 + second.re));
        }
        let phi = moments::mean(&e, Phi, &state).unwrap();
        let phi2 = moments::mean(&e, PhiSquared, &state).unwrap();
        let sd = moments::std_dev(&e, Phi, &state).unwrap();
        prop_assert!((sd * sd - (phi2 - phi * phi)).abs() < 1e-10 * (1.0 + phi2));
    }

    #[test]
    fn chi_is_a_translated_phi(state in any_state(), n in -5i64..=5) {
        let e = Engine::default();
        let phi = moments::moment_set(&e, Phi, &state).unwrap();
        let chi = moments::moment_set(&e, Chi(n), &state).unwrap();
        prop_assert!((chi.mean - (phi.mean + 2.0 * PI * n as f64)).abs() < 1e-12 * (1.0 + chi.mean.abs()));
        prop_assert!((chi.std_dev - phi.std_dev).abs() < 1e-10);
    }

    #[test]
    fn hermitian_means_are_real(state in any_state()) {
        let e = Engine::default();
        for a in kinds(&state) {
            let v = cross_product(&e, a, a, &state).unwrap();
            prop_assert!(v.im.abs() < 1e-11);
        }
    }
}

#[test]
fn doubling_nodes_leaves_moments_unchanged() {
    let coarse = Engine::default();
    let d = EngineSettings::default();
    let fine = Engine::new(EngineSettings {
        phi_nodes: 2 * d.phi_nodes,
        theta_nodes: 2 * d.theta_nodes,
        hermite_nodes: 2 * d.hermite_nodes,
        ..d
    })
    .unwrap();
    for state in fixtures() {
        for a in kinds(&state) {
            let x = moments::moment_set(&coarse, a, &state).unwrap();
            let y = moments::moment_set(&fine, a, &state).unwrap();
            assert!((x.mean - y.mean).abs() <= 1e-10 * y.mean.abs().max(1.0), "{a} mean {state:?}");
            assert!((x.std_dev - y.std_dev).abs() <= 1e-10 * y.std_dev.max(1.0), "{a} std {state:?}");
            for b in kinds(&state) {
                let u = moments::correlation(&coarse, a, b, &state).unwrap().value;
                let v = moments::correlation(&fine, a, b, &state).unwrap().value;
                assert!((u - v).norm() <= 1e-10 * v.norm().max(1.0), "C({a},{b}) {state:?}");
            }
        }
    }
}

#[test]
fn circular_closed_forms() {
    let e = Engine::default();
    for m in -5..=5 {
        let s: State = CircularState::new(m, 1.0).unwrap().into();
        assert!((moments::mean(&e, Phi, &s).unwrap() - PI).abs() < 1e-12);
        assert!((moments::std_dev(&e, Phi, &s).unwrap() - PI / 3f64.sqrt()).abs() < 1e-12);
        assert_eq!(moments::std_dev(&e, Lz, &s).unwrap(), 0.0);
        // central fourth moment of the uniform angle
        let c4 = higher_correlation(&e, Phi, Phi, 2, 2, &s).unwrap();
        assert!((c4.re - (2.0 * PI).powi(4) / 80.0).abs() < 1e-10);
        let c6 = higher_correlation(&e, Phi, Phi, 3, 3, &s).unwrap();
        assert!((c6.re - PI.powi(6) / 7.0).abs() < 1e-9);
        assert!(higher_correlation(&e, Phi, Phi, 1, 2, &s).unwrap().norm() < 1e-12);
        assert!(higher_correlation(&e, Phi, Phi, 0, 2, &s).is_err());
        assert!(higher_correlation(&e, Phi, Phi, 7, 1, &s).is_err());
    }
}

#[test]
fn pendulum_closed_forms() {
    let e = Engine::default();
    for n in 0..=10u32 {
        let s: State = PendulumState::new(n, 2.0, 0.5, 1.0).unwrap().into();
        let k = n as f64 + 0.5;
        assert!((moments::std_dev(&e, Phi, &s).unwrap().powi(2) - k).abs() < 1e-12);
        assert!((moments::std_dev(&e, Lz, &s).unwrap().powi(2) - k).abs() < 1e-12);
        // ⟨φ⁴⟩ = 3(2n²+2n+1)/4 in oscillator units
        let c4 = higher_correlation(&e, Phi, Phi, 2, 2, &s).unwrap();
        let nn = n as f64;
        assert!((c4.re - 0.75 * (2.0 * nn * nn + 2.0 * nn + 1.0)).abs() < 1e-9, "n={n}");
    }
}
