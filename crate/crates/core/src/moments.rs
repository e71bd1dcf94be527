//! First-, second- and higher-order probabilistic parameters of angular
//! observables: means, standard deviations and correlations
//! `C(A, B) = (δÂΨ, δB̂Ψ)` with `δÂ = Â − ⟨A⟩`.

use num_complex::Complex64;

use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::observables::{
    oscillator_apply, oscillator_vector, periodic_inner, vector_inner, ObservableKind,
    PeriodicAction, Provenance,
};
use crate::poly::AngularPoly;
use crate::states::State;

/// Highest power accepted by [`higher_correlation`].
pub const MAX_CORRELATION_ORDER: u32 = 6;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MomentSet {
    pub mean: f64,
    pub std_dev: f64,
    pub provenance: Provenance,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Correlation {
    /// `(δÂΨ, δB̂Ψ)`.
    pub value: Complex64,
    /// Real part: half the mean anticommutator of `δÂ` and `δB̂`.
    pub hermitized: f64,
}

impl From<Complex64> for Correlation {
    fn from(value: Complex64) -> Self {
        Correlation { value, hermitized: value.re }
    }
}

fn mean_tracked(engine: &Engine, kind: ObservableKind, state: &State) -> Result<(f64, Provenance)> {
    kind.check(state.family())?;
    match state {
        State::Pendulum(p) => {
            let n = p.n() as f64 + 0.5;
            let v = match kind {
                ObservableKind::Lz | ObservableKind::Phi => 0.0,
                ObservableKind::PhiSquared => p.hbar() / (p.inertia() * p.omega()) * n,
                ObservableKind::Chi(k) => 2.0 * std::f64::consts::PI * k as f64,
                _ => unreachable!("kind checked"),
            };
            Ok((v, Provenance::Analytic))
        }
        _ => {
            let exp = state.periodic_expansion().expect("periodic");
            match kind.function() {
                None => {
                    let hbar = state.hbar();
                    let v = exp.terms.iter().map(|&(m, c)| c.norm_sqr() * hbar * m as f64).sum();
                    Ok((v, Provenance::Analytic))
                }
                Some(f) => {
                    let (v, prov) = periodic_mean_of(engine, state, &f);
                    Ok((v.re, prov))
                }
            }
        }
    }
}

/// `(Ψ, fΨ)` for a multiplicative function on a periodic state.
pub(crate) fn periodic_mean_of(
    engine: &Engine,
    state: &State,
    f: &AngularPoly,
) -> (Complex64, Provenance) {
    let exp = state.periodic_expansion().expect("periodic");
    periodic_inner(
        engine,
        &exp,
        &PeriodicAction::Multiply(AngularPoly::constant(1.0)),
        &PeriodicAction::Multiply(f.clone()),
    )
}

/// `⟨A⟩ = (Ψ, ÂΨ)`.
pub fn mean(engine: &Engine, kind: ObservableKind, state: &State) -> Result<f64> {
    mean_tracked(engine, kind, state).map(|(v, _)| v)
}

/// `ΔA = (δÂΨ, δÂΨ)^{1/2}`.
pub fn std_dev(engine: &Engine, kind: ObservableKind, state: &State) -> Result<f64> {
    moment_set(engine, kind, state).map(|m| m.std_dev)
}

pub fn moment_set(engine: &Engine, kind: ObservableKind, state: &State) -> Result<MomentSet> {
    let (mean, provenance) = mean_tracked(engine, kind, state)?;
    let (variance, var_prov) = match (state, kind) {
        (State::Pendulum(p), ObservableKind::Lz) => {
            (p.hbar() * p.inertia() * p.omega() * (p.n() as f64 + 0.5), Provenance::Analytic)
        }
        (State::Pendulum(p), ObservableKind::Phi) => {
            (p.hbar() / (p.inertia() * p.omega()) * (p.n() as f64 + 0.5), Provenance::Analytic)
        }
        (State::Pendulum(_), _) => {
            (centred_product(engine, state, kind, kind, 1, 1, mean, mean)?.0.re, Provenance::Analytic)
        }
        (_, ObservableKind::Lz) => {
            // Σ|c_m|² (ħm − ⟨Lz⟩)²
            let exp = state.periodic_expansion().expect("periodic");
            let hbar = state.hbar();
            let var: f64 =
                exp.terms.iter().map(|&(m, c)| c.norm_sqr() * (hbar * m as f64 - mean).powi(2)).sum();
            (var, Provenance::Analytic)
        }
        (_, ObservableKind::Phi) => {
            // quadratic form over the φ² table minus the squared mean
            let (second, prov) = periodic_mean_of(engine, state, &AngularPoly::phi().pow(2));
            (second.re - mean * mean, prov)
        }
        _ => {
            let (v, prov) = centred_product(engine, state, kind, kind, 1, 1, mean, mean)?;
            (v.re, prov)
        }
    };
    Ok(MomentSet { mean, std_dev: variance.max(0.0).sqrt(), provenance: provenance.combine(var_prov) })
}

/// `((Â − a)^r Ψ, (B̂ − b)^s Ψ)`.
fn centred_product(
    engine: &Engine,
    state: &State,
    a: ObservableKind,
    b: ObservableKind,
    r: u32,
    s: u32,
    shift_a: f64,
    shift_b: f64,
) -> Result<(Complex64, Provenance)> {
    a.check(state.family())?;
    b.check(state.family())?;
    match state {
        State::Pendulum(p) => {
            let base = oscillator_vector(p);
            let mut left = base.clone();
            for _ in 0..r {
                left = oscillator_apply(a, p, &left, shift_a);
            }
            let mut right = base;
            for _ in 0..s {
                right = oscillator_apply(b, p, &right, shift_b);
            }
            Ok((vector_inner(&left, &right), Provenance::Analytic))
        }
        _ => {
            let exp = state.periodic_expansion().expect("periodic");
            let hbar = state.hbar();
            let left = PeriodicAction::centred(a, hbar, shift_a, r);
            let right = PeriodicAction::centred(b, hbar, shift_b, s);
            Ok(periodic_inner(engine, &exp, &left, &right))
        }
    }
}

/// `(ÂΨ, B̂Ψ)` without centring.
pub fn cross_product(
    engine: &Engine,
    a: ObservableKind,
    b: ObservableKind,
    state: &State,
) -> Result<Complex64> {
    centred_product(engine, state, a, b, 1, 1, 0.0, 0.0).map(|(v, _)| v)
}

/// `C(A, B) = (δÂΨ, δB̂Ψ)`.
pub fn correlation(
    engine: &Engine,
    a: ObservableKind,
    b: ObservableKind,
    state: &State,
) -> Result<Correlation> {
    higher_correlation(engine, a, b, 1, 1, state).map(Correlation::from)
}

/// `((δÂ)^r Ψ, (δB̂)^s Ψ)` for `1 <= r, s <= 6`.
pub fn higher_correlation(
    engine: &Engine,
    a: ObservableKind,
    b: ObservableKind,
    r: u32,
    s: u32,
    state: &State,
) -> Result<Complex64> {
    for (name, v) in [("r", r), ("s", s)] {
        if v == 0 || v > MAX_CORRELATION_ORDER {
            return Err(Error::InvalidArgument(format!(
                "{name} = {v} outside 1..={MAX_CORRELATION_ORDER}"
            )));
        }
    }
    let mean_a = mean(engine, a, state)?;
    let mean_b = mean(engine, b, state)?;
    centred_product(engine, state, a, b, r, s, mean_a, mean_b).map(|(v, _)| v)
}
