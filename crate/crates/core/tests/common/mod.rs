#![allow(dead_code)]

use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::Rng;
use rotunc_core::states::{CircularState, PendulumState, RotorSuperposition, SphericalState};
use rotunc_core::{Complex64, State};

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn random_amplitudes<R: Rng>(rng: &mut R, k: usize) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> =
            (0..k).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        if v.iter().map(|z| z.norm_sqr()).sum::<f64>() > 1e-3 {
            return v;
        }
    }
}

pub fn random_spherical<R: Rng>(rng: &mut R, l: u32) -> State {
    let amps = random_amplitudes(rng, 2 * l as usize + 1);
    SphericalState::new(l, amps, 1.0, 1.0, true).unwrap().into()
}

pub fn random_rotor<R: Rng>(rng: &mut R, max_m: i32, terms: usize) -> State {
    let mut map = BTreeMap::new();
    while map.len() < terms {
        map.insert(rng.gen_range(-max_m..=max_m), c(0.0, 0.0));
    }
    let amps = random_amplitudes(rng, terms);
    for (slot, a) in map.values_mut().zip(amps) {
        *slot = a;
    }
    RotorSuperposition::new(map, 1.0, true).unwrap().into()
}

pub fn random_pendulum<R: Rng>(rng: &mut R, max_n: u32) -> State {
    PendulumState::new(
        rng.gen_range(0..=max_n),
        rng.gen_range(0.5..2.0),
        rng.gen_range(0.5..2.0),
        rng.gen_range(0.5..2.0),
    )
    .unwrap()
    .into()
}

/// Any family, uniformly.
pub fn random_state<R: Rng>(rng: &mut R) -> State {
    match rng.gen_range(0..4) {
        0 => CircularState::new(rng.gen_range(-6..=6), rng.gen_range(0.5..2.0)).unwrap().into(),
        1 => {
            let terms = rng.gen_range(1..=4);
            random_rotor(rng, 6, terms)
        }
        2 => {
            let l = rng.gen_range(0..=3);
            random_spherical(rng, l)
        }
        _ => random_pendulum(rng, 10),
    }
}

fn amplitude() -> impl Strategy<Value = Complex64> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| c(re, im))
}

fn nonzero(v: &[Complex64]) -> bool {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>() > 1e-3
}

pub fn rotor_strategy() -> impl Strategy<Value = State> {
    (prop::collection::btree_map(-6i32..=6, amplitude(), 1..5), 0.5f64..2.0)
        .prop_filter("non-degenerate", |(m, _)| nonzero(&m.values().copied().collect::<Vec<_>>()))
        .prop_map(|(map, hbar)| RotorSuperposition::new(map, hbar, true).unwrap().into())
}

pub fn spherical_strategy(max_l: u32) -> impl Strategy<Value = State> {
    (0..=max_l)
        .prop_flat_map(|l| (Just(l), prop::collection::vec(amplitude(), 2 * l as usize + 1), 0.5f64..2.0))
        .prop_filter("non-degenerate", |(_, v, _)| nonzero(v))
        .prop_map(|(l, v, hbar)| SphericalState::new(l, v, hbar, 1.0, true).unwrap().into())
}

pub fn pendulum_strategy() -> impl Strategy<Value = State> {
    (0u32..=10, 0.5f64..2.0, 0.5f64..2.0, 0.5f64..2.0)
        .prop_map(|(n, i, w, h)| PendulumState::new(n, i, w, h).unwrap().into())
}

pub fn circular_strategy() -> impl Strategy<Value = State> {
    (-6i32..=6, 0.5f64..2.0).prop_map(|(m, h)| CircularState::new(m, h).unwrap().into())
}

pub fn any_state() -> impl Strategy<Value = State> {
    prop_oneof![circular_strategy(), rotor_strategy(), spherical_strategy(3), pendulum_strategy()]
}

/// Coarser grid for brute-force sums over the sphere.
pub fn oracle_engine() -> rotunc_core::Engine {
    rotunc_core::Engine::new(rotunc_core::EngineSettings {
        phi_nodes: 128,
        theta_nodes: 48,
        ..Default::default()
    })
    .unwrap()
}

/// A fixed set covering every family.
pub fn fixtures() -> Vec<State> {
    let mut out: Vec<State> = Vec::new();
    for m in -5..=5 {
        out.push(CircularState::new(m, 1.0).unwrap().into());
    }
    let rotors: [&[(i32, Complex64)]; 3] = [
        &[(-1, c(0.6, 0.0)), (1, c(0.0, 0.8))],
        &[(0, c(1.0, 0.0)), (2, c(0.5, -0.5)), (-3, c(0.2, 0.1))],
        &[(6, c(0.3, 0.0)), (-6, c(0.0, 0.3))],
    ];
    for r in rotors {
        out.push(RotorSuperposition::new(r.iter().copied().collect(), 1.0, true).unwrap().into());
    }
    for l in 0..=4u32 {
        let v: Vec<Complex64> = (0..2 * l + 1).map(|k| c(1.0 + k as f64, 0.5 * k as f64 - 1.0)).collect();
        out.push(SphericalState::new(l, v, 1.0, 1.0, true).unwrap().into());
    }
    out.push(SphericalState::new(1, vec![c(0.0, 0.0), c(0.8, 0.0), c(0.0, 0.6)], 1.0, 1.0, true).unwrap().into());
    for n in 0..=10 {
        out.push(PendulumState::new(n, 1.0, 1.0, 1.0).unwrap().into());
    }
    out
}

fn spec_real<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    let v: f64 = rng.gen_range(lo..hi);
    if rng.gen_bool(0.5) {
        (v * 1000.0).round() / 1000.0
    } else {
        v
    }
}

const SPEC_RELATIONS: [&str; 12] = ["R5", "R6", "R7", "R10", "R11", "R14", "R15", "R30", "R33", "R36", "R52", "R58"];
const SPEC_KINDS: [&str; 6] = ["Lz", "Phi", "PhiSquared", "SinPhi", "CosPhi", "Theta"];

/// A syntactically valid spec document with random content.
pub fn random_spec_text<R: Rng>(rng: &mut R) -> String {
    let mut out = String::new();
    if rng.gen_bool(0.5) {
        out.push_str(&format!("setting hbar {}\n", spec_real(rng, 0.5, 2.0)));
    }
    if rng.gen_bool(0.3) {
        out.push_str(&format!("setting phi_nodes {}\n", rng.gen_range(16..300)));
    }
    if rng.gen_bool(0.3) {
        out.push_str(&format!("setting tolerance {:e}\n", rng.gen_range(1e-12..1e-6)));
    }
    if rng.gen_bool(0.2) {
        out.push_str("setting normalize true\n");
    }
    let states = rng.gen_range(1..=4);
    for k in 0..states {
        let name = if rng.gen_bool(0.7) { format!(" name=s{k}") } else { String::new() };
        let line = match rng.gen_range(0..4) {
            0 => format!("state circular{name} m={}", rng.gen_range(-9..=9)),
            1 => {
                let mut ms: Vec<i32> = (0..rng.gen_range(1..=4)).map(|_| rng.gen_range(-6..=6)).collect();
                ms.sort();
                ms.dedup();
                let items: Vec<String> = ms
                    .iter()
                    .map(|m| format!("{m}:({},{})", spec_real(rng, 0.1, 1.0), spec_real(rng, -1.0, 1.0)))
                    .collect();
                format!("state rotor{name} c={{{}}} normalize=true", items.join(","))
            }
            2 => {
                let l = rng.gen_range(0..=3);
                let items: Vec<String> = (0..2 * l + 1)
                    .map(|_| format!("({},{})", spec_real(rng, 0.1, 1.0), spec_real(rng, -1.0, 1.0)))
                    .collect();
                let hbar = if rng.gen_bool(0.5) { format!(" hbar={}", spec_real(rng, 0.5, 2.0)) } else { String::new() };
                format!("state spherical{name} l={l} c=[{}]{hbar} normalize=true", items.join(","))
            }
            _ => format!(
                "state pendulum{name} n={} inertia={} omega={}",
                rng.gen_range(0..=10),
                spec_real(rng, 0.5, 2.0),
                spec_real(rng, 0.5, 2.0)
            ),
        };
        out.push_str(&line);
        out.push('\n');
    }
    let mut rels = Vec::new();
    for _ in 0..rng.gen_range(1..=5) {
        let r = match rng.gen_range(0..15) {
            0 => format!("R8(alpha={})", spec_real(rng, -3.0, 3.0)),
            1 => {
                // keeps the Δχ radicand positive
                let n = rng.gen_range(1..=3);
                format!("R12(N={n},N1={})", n - rng.gen_range(1..=2 * n))
            }
            2 => format!(
                "R60(A={},B={})",
                SPEC_KINDS[rng.gen_range(0..SPEC_KINDS.len())],
                if rng.gen_bool(0.3) {
                    format!("Chi[{}]", rng.gen_range(-2..=2))
                } else {
                    SPEC_KINDS[rng.gen_range(0..SPEC_KINDS.len())].to_string()
                }
            ),
            _ => SPEC_RELATIONS[rng.gen_range(0..SPEC_RELATIONS.len())].to_string(),
        };
        rels.push(r);
    }
    out.push_str(&format!("relations {}\n", rels.join(" ")));
    out
}
