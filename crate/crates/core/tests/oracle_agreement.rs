mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;
use rotunc_core::moments;
use rotunc_core::observables::{matrix_element, pair_deficit, apply_lz_boundary_form, Basis, MatrixElementTable};
use rotunc_core::oracle;
use rotunc_core::{Engine, ObservableKind, State};

use ObservableKind::*;

const CIRCLE_KINDS: [ObservableKind; 6] = [Lz, Phi, PhiSquared, SinPhi, CosPhi, Chi(-2)];
const SPHERE_KINDS: [ObservableKind; 8] = [Lz, Phi, PhiSquared, SinPhi, CosPhi, Theta, ThetaPhi, Chi(1)];
const LINE_KINDS: [ObservableKind; 4] = [Lz, Phi, PhiSquared, Chi(3)];

#[test]
fn fourier_elements_match_quadrature() {
    let e = Engine::default();
    let q = oracle_engine();
    let basis = Basis::Fourier { hbar: 1.3 };
    for kind in CIRCLE_KINDS {
        for i in -6..=6 {
            for j in -6..=6 {
                let a = matrix_element(&e, kind, &basis, i, j).unwrap().value;
                let o = oracle::matrix_element(&q, kind, &basis, i, j).unwrap();
                assert!((a - o).norm() < 1e-9, "{kind} <{i}|.|{j}>: {a} vs {o}");
            }
        }
    }
}

#[test]
fn spherical_elements_match_quadrature() {
    let e = Engine::default();
    let q = oracle_engine();
    for l in 0..=4u32 {
        let basis = Basis::Spherical { l, hbar: 0.8 };
        let li = l as i32;
        for kind in SPHERE_KINDS {
            for i in -li..=li {
                for j in -li..=li {
                    let a = matrix_element(&e, kind, &basis, i, j).unwrap().value;
                    let o = oracle::matrix_element(&q, kind, &basis, i, j).unwrap();
                    assert!((a - o).norm() < 1e-9, "l={l} {kind} <{i}|.|{j}>: {a} vs {o}");
                }
            }
        }
    }
}

#[test]
fn oscillator_elements_match_quadrature() {
    let e = Engine::default();
    let q = oracle_engine();
    let basis = Basis::Oscillator { hbar: 1.0, inertia: 1.7, omega: 0.6 };
    for kind in LINE_KINDS {
        for i in 0..=10 {
            for j in 0..=10 {
                let a = matrix_element(&e, kind, &basis, i, j).unwrap().value;
                let o = oracle::matrix_element(&q, kind, &basis, i, j).unwrap();
                assert!((a - o).norm() < 1e-9, "{kind} <{i}|.|{j}>: {a} vs {o}");
            }
        }
    }
}

#[test]
fn tables_are_hermitian_and_banded() {
    let e = Engine::default();
    let q = oracle_engine();
    for kind in [Lz, Phi, PhiSquared, SinPhi, CosPhi] {
        let t = MatrixElementTable::build(&e, kind, Basis::Fourier { hbar: 1.0 }, -6..=6).unwrap();
        assert!(t.hermiticity_defect() < 1e-10, "{kind}");
    }
    for kind in [Lz, Phi, PhiSquared, SinPhi, CosPhi, Theta] {
        let t = MatrixElementTable::build(&e, kind, Basis::Spherical { l: 3, hbar: 1.0 }, -3..=3).unwrap();
        assert!(t.hermiticity_defect() < 1e-10, "{kind}");
    }
    let basis = Basis::Fourier { hbar: 1.0 };
    for kind in [SinPhi, CosPhi] {
        for i in -6i32..=6 {
            for j in -6..=6 {
                if (i - j).abs() == 1 {
                    continue;
                }
                assert_eq!(matrix_element(&e, kind, &basis, i, j).unwrap().value.norm(), 0.0);
                assert!(oracle::matrix_element(&q, kind, &basis, i, j).unwrap().norm() < 1e-12);
            }
        }
    }
}

fn kinds_for(state: &State) -> &'static [ObservableKind] {
    match state {
        State::Spherical(_) => &SPHERE_KINDS,
        State::Pendulum(_) => &LINE_KINDS,
        _ => &CIRCLE_KINDS,
    }
}

#[test]
fn moments_match_quadrature_across_families() {
    let e = Engine::default();
    let q = oracle_engine();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..40 {
        let state = random_state(&mut rng);
        for &kind in kinds_for(&state) {
            let m = moments::mean(&e, kind, &state).unwrap();
            let om = oracle::mean(&q, kind, &state).unwrap();
            assert!((m - om.re).abs() < 1e-9 && om.im.abs() < 1e-9, "{kind} mean {m} vs {om}");
            let s = moments::std_dev(&e, kind, &state).unwrap();
            let os = oracle::std_dev(&q, kind, &state).unwrap();
            assert!((s - os).abs() < 1e-9, "{kind} std {s} vs {os} for {state:?}");
        }
    }
    for n in 0..=10 {
        let p: State = rotunc_core::states::PendulumState::new(n, 1.0, 1.0, 1.0).unwrap().into();
        for &kind in &LINE_KINDS {
            let s = moments::std_dev(&e, kind, &p).unwrap();
            let os = oracle::std_dev(&q, kind, &p).unwrap();
            assert!((s - os).abs() < 1e-9, "n={n} {kind}");
        }
    }
}

#[test]
fn correlations_match_quadrature() {
    let e = Engine::default();
    let q = oracle_engine();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..20 {
        let state = random_state(&mut rng);
        let kinds = kinds_for(&state);
        for &a in kinds {
            for &b in kinds {
                let v = moments::correlation(&e, a, b, &state).unwrap().value;
                let o = oracle::correlation(&q, a, b, &state).unwrap();
                let scale = 1.0 + o.norm();
                assert!((v - o).norm() < 1e-9 * scale, "C({a},{b}) {v} vs {o}");
            }
        }
    }
}

#[test]
fn theta_phi_correlation_matches_two_dimensional_quadrature() {
    let e = Engine::default();
    let q = oracle_engine();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let state = random_spherical(&mut rng, 1);
    let v = moments::correlation(&e, Theta, Phi, &state).unwrap().value;
    let o = oracle::correlation(&q, Theta, Phi, &state).unwrap();
    assert!(v.norm() > 1e-6);
    assert!((v - o).norm() < 1e-9);
}

#[test]
fn higher_correlations_match_quadrature() {
    let e = Engine::default();
    let q = oracle_engine();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..12 {
        let state = random_state(&mut rng);
        for (a, b) in [(Phi, Phi), (Lz, Phi), (Lz, Lz), (Phi, Lz)] {
            for r in 1..=3 {
                for s in 1..=3 {
                    let v = moments::higher_correlation(&e, a, b, r, s, &state).unwrap();
                    let o = oracle::higher_correlation(&q, a, b, r, s, &state).unwrap();
                    let scale = 1.0 + o.norm();
                    assert!((v - o).norm() < 1e-9 * scale, "{a}^{r},{b}^{s}: {v} vs {o}");
                }
            }
        }
    }
}

#[test]
fn deficits_match_direct_quadrature() {
    let e = Engine::default();
    let q = oracle_engine();
    let mut rng = ChaCha8Rng::seed_from_u64(35);
    for k in 0..100 {
        let state = random_spherical(&mut rng, 1 + k % 3);
        let a = apply_lz_boundary_form(&e, &state);
        let o = oracle::deficit(&q, &state, Lz, Phi).unwrap();
        assert!((a - o).norm() < 1e-9, "{a} vs {o}");
    }
    for _ in 0..30 {
        let state = random_state(&mut rng);
        let kinds = kinds_for(&state);
        for &x in kinds {
            for &y in kinds {
                let a = pair_deficit(&e, &state, x, y).unwrap();
                let o = oracle::deficit(&q, &state, x, y).unwrap();
                assert!((a - o).norm() < 1e-8 * (1.0 + o.norm()), "D({x},{y}) {a} vs {o}");
            }
        }
    }
}
