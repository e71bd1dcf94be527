//! Independent quadrature evaluations used to cross-check the analytic
//! paths. Every quantity is computed pointwise from wavefunction samples:
//! `L̂z` acts through the exact `φ`-derivative of the state, multiplicative
//! observables through their pointwise values.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::numerics::{stripped_hermite_functions, theta_lm};
use crate::observables::{Basis, ObservableKind};
use crate::states::{CircularState, PendulumState, SphericalState, State};

/// Quadrature nodes `(weight, θ, φ)` covering the family's domain; the
/// spherical weights include `sin θ`.
fn grid(engine: &Engine, state: &State) -> Vec<(f64, f64, f64)> {
    match state {
        State::Circular(_) | State::Rotor(_) => {
            engine.phi_rule().points().map(|(phi, w)| (w, 0.0, phi)).collect()
        }
        State::Spherical(_) => {
            let mut out = Vec::with_capacity(engine.theta_rule().len() * engine.phi_rule().len());
            for (theta, wt) in engine.theta_rule().points() {
                for (phi, wp) in engine.phi_rule().points() {
                    out.push((wt * wp * theta.sin(), theta, phi));
                }
            }
            out
        }
        State::Pendulum(p) => {
            // φ = ξ / sqrt β, weights without the Gaussian envelope
            let sqrt_beta = p.beta().sqrt();
            let rule = engine.hermite_rule();
            let weights = rule.envelope_weights().expect("Gauss-Hermite rule");
            rule.nodes()
                .iter()
                .zip(weights)
                .map(|(&xi, &w)| (w / sqrt_beta, 0.0, xi / sqrt_beta))
                .collect()
        }
    }
}

/// `∂^k Ψ / ∂φ^k` at `(θ, φ)`.
pub fn phi_derivative(state: &State, theta: f64, phi: f64, k: u32) -> Complex64 {
    let inv = 1.0 / (2.0 * PI).sqrt();
    let ik = |m: i32| Complex64::new(0.0, m as f64).powu(k);
    match state {
        State::Circular(s) => ik(s.m()) * Complex64::from_polar(inv, s.m() as f64 * phi),
        State::Rotor(s) => s
            .coefficients()
            .iter()
            .map(|(&m, &c)| c * ik(m) * Complex64::from_polar(inv, m as f64 * phi))
            .sum(),
        State::Spherical(s) => {
            let l = s.l() as i32;
            (-l..=l)
                .map(|m| {
                    let c = s.coefficient(m).unwrap();
                    c * ik(m) * Complex64::from_polar(inv * theta_lm(s.l(), m, theta).unwrap(), m as f64 * phi)
                })
                .sum()
        }
        State::Pendulum(p) => {
            // ψ_j' = sqrt(j/2) ψ_{j-1} − sqrt((j+1)/2) ψ_{j+1} in ξ
            let n = p.n() as usize;
            let mut v = vec![0.0; n + k as usize + 1];
            v[n] = 1.0;
            for _ in 0..k {
                let mut next = vec![0.0; v.len()];
                for j in 0..v.len() {
                    if v[j] == 0.0 {
                        continue;
                    }
                    if j > 0 {
                        next[j - 1] += (j as f64 / 2.0).sqrt() * v[j];
                    }
                    if j + 1 < v.len() {
                        next[j + 1] -= ((j as f64 + 1.0) / 2.0).sqrt() * v[j];
                    }
                }
                v = next;
            }
            let beta = p.beta();
            let xi = phi * beta.sqrt();
            let h = stripped_hermite_functions(v.len() - 1, xi);
            let s: f64 = v.iter().zip(&h).map(|(a, b)| a * b).sum();
            Complex64::new(s * beta.powf(0.25) * beta.sqrt().powi(k as i32) * (-0.5 * xi * xi).exp(), 0.0)
        }
    }
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `(Â − shift)^r Ψ` at a point.
fn apply_power(state: &State, kind: ObservableKind, shift: f64, r: u32, theta: f64, phi: f64) -> Complex64 {
    match kind.value_at(theta, phi) {
        Some(f) => (f - shift).powi(r as i32) * phi_derivative(state, theta, phi, 0),
        None => {
            let d = Complex64::new(0.0, -state.hbar());
            (0..=r)
                .map(|j| {
                    binomial(r, j) * d.powu(j) * (-shift).powi((r - j) as i32) * phi_derivative(state, theta, phi, j)
                })
                .sum()
        }
    }
}

fn check(kind: ObservableKind, state: &State) -> Result<()> {
    if kind.applies_to(state.family()) {
        Ok(())
    } else {
        Err(Error::KindFamilyMismatch { kind, family: state.family() })
    }
}

/// `((Â − a)^r Ψ, (B̂ − b)^s Ψ)` by quadrature.
fn centred(
    engine: &Engine,
    state: &State,
    (a, shift_a, r): (ObservableKind, f64, u32),
    (b, shift_b, s): (ObservableKind, f64, u32),
) -> Result<Complex64> {
    check(a, state)?;
    check(b, state)?;
    Ok(grid(engine, state)
        .into_iter()
        .map(|(w, theta, phi)| {
            apply_power(state, a, shift_a, r, theta, phi).conj() * apply_power(state, b, shift_b, s, theta, phi) * w
        })
        .sum())
}

/// `(Ψ, ÂΨ)`.
pub fn mean(engine: &Engine, kind: ObservableKind, state: &State) -> Result<Complex64> {
    centred(engine, state, (kind, 0.0, 0), (kind, 0.0, 1))
}

/// `‖Ψ‖²`.
pub fn norm_sqr(engine: &Engine, state: &State) -> f64 {
    grid(engine, state)
        .into_iter()
        .map(|(w, theta, phi)| w * phi_derivative(state, theta, phi, 0).norm_sqr())
        .sum()
}

/// `(δÂΨ, δB̂Ψ)`.
pub fn correlation(engine: &Engine, a: ObservableKind, b: ObservableKind, state: &State) -> Result<Complex64> {
    higher_correlation(engine, a, b, 1, 1, state)
}

/// `((δÂ)^r Ψ, (δB̂)^s Ψ)`.
pub fn higher_correlation(
    engine: &Engine,
    a: ObservableKind,
    b: ObservableKind,
    r: u32,
    s: u32,
    state: &State,
) -> Result<Complex64> {
    let ma = mean(engine, a, state)?.re;
    let mb = mean(engine, b, state)?.re;
    centred(engine, state, (a, ma, r), (b, mb, s))
}

pub fn std_dev(engine: &Engine, kind: ObservableKind, state: &State) -> Result<f64> {
    Ok(correlation(engine, kind, kind, state)?.re.max(0.0).sqrt())
}

fn derivative_of(kind: ObservableKind, theta: f64, phi: f64) -> f64 {
    use ObservableKind::*;
    match kind {
        Lz | Theta => 0.0,
        Phi | Chi(_) => 1.0,
        PhiSquared => 2.0 * phi,
        SinPhi => phi.cos(),
        CosPhi => -phi.sin(),
        ThetaPhi => theta,
    }
}

/// `(ÂΨ, B̂Ψ) − (Ψ, ÂB̂Ψ)` by direct quadrature of both sides.
pub fn deficit(engine: &Engine, state: &State, a: ObservableKind, b: ObservableKind) -> Result<Complex64> {
    check(a, state)?;
    check(b, state)?;
    let hbar = state.hbar();
    let mut acc = Complex64::new(0.0, 0.0);
    for (w, theta, phi) in grid(engine, state) {
        let psi = phi_derivative(state, theta, phi, 0);
        let a_psi = apply_power(state, a, 0.0, 1, theta, phi);
        let b_psi = apply_power(state, b, 0.0, 1, theta, phi);
        // Â(B̂Ψ) pointwise
        let ab_psi = match (a.value_at(theta, phi), b.value_at(theta, phi)) {
            (Some(f), _) => f * b_psi,
            (None, Some(g)) => {
                let d = phi_derivative(state, theta, phi, 1);
                Complex64::new(0.0, -hbar) * (derivative_of(b, theta, phi) * psi + g * d)
            }
            (None, None) => -hbar * hbar * phi_derivative(state, theta, phi, 2),
        };
        acc += w * (a_psi.conj() * b_psi - psi.conj() * ab_psi);
    }
    Ok(acc)
}

/// The state carrying the `index`-th basis function.
fn basis_state(basis: &Basis, index: i32) -> Result<State> {
    Ok(match *basis {
        Basis::Fourier { hbar } => CircularState::new(index, hbar)?.into(),
        Basis::Spherical { l, hbar } => {
            if index.unsigned_abs() > l {
                return Err(Error::InvalidArgument(format!("basis index {index} out of range")));
            }
            let mut c = vec![Complex64::new(0.0, 0.0); 2 * l as usize + 1];
            c[(index + l as i32) as usize] = Complex64::new(1.0, 0.0);
            SphericalState::new(l, c, hbar, 1.0, false)?.into()
        }
        Basis::Oscillator { hbar, inertia, omega } => {
            let n = u32::try_from(index)
                .map_err(|_| Error::InvalidArgument(format!("basis index {index} out of range")))?;
            PendulumState::new(n, inertia, omega, hbar)?.into()
        }
    })
}

/// `⟨i| Â |j⟩` by quadrature over the basis functions.
pub fn matrix_element(
    engine: &Engine,
    kind: ObservableKind,
    basis: &Basis,
    i: i32,
    j: i32,
) -> Result<Complex64> {
    let left = basis_state(basis, i)?;
    let right = basis_state(basis, j)?;
    check(kind, &right)?;
    Ok(grid(engine, &right)
        .into_iter()
        .map(|(w, theta, phi)| {
            phi_derivative(&left, theta, phi, 0).conj() * apply_power(&right, kind, 0.0, 1, theta, phi) * w
        })
        .sum())
}
