//! Fourier-side view of a state: expansion coefficients on the circle and
//! sphere, the line transform of pendulum states, Parseval checks and the
//! `k`–`φ` width products.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::moments::std_dev;
use crate::numerics::{stripped_hermite_functions, theta_lm};
use crate::observables::ObservableKind;
use crate::relations::{fourier_boundary_term, gamma_sum};
use crate::states::{norm, wavefunction, Family, Point, State};

/// Coefficients `b_m` of `Ψ = Σ b_m e^{imφ}/sqrt(2π)`.
///
/// For spherical states the coefficients depend on `θ` and are kept in the
/// factor form `b_m(θ) = c_m Θ_lm(θ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierCoefficients {
    l: Option<u32>,
    values: BTreeMap<i32, Complex64>,
}

impl FourierCoefficients {
    /// `None` for circle states, `Some(l)` for the spherical factor form.
    pub fn l(&self) -> Option<u32> {
        self.l
    }

    /// `b_m` on the circle, or the constant factor `c_m` on the sphere.
    pub fn get(&self, m: i32) -> Complex64 {
        self.values.get(&m).copied().unwrap_or_default()
    }

    /// `b_m(θ)`; `θ` is ignored for circle states.
    pub fn at(&self, m: i32, theta: f64) -> Result<Complex64> {
        match self.l {
            None => Ok(self.get(m)),
            Some(l) => {
                if m.unsigned_abs() > l {
                    return Ok(Complex64::new(0.0, 0.0));
                }
                Ok(self.get(m) * theta_lm(l, m, theta)?)
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, Complex64)> + '_ {
        self.values.iter().map(|(&m, &c)| (m, c))
    }

    /// `Σ|b_m|²` (for the sphere, after the `θ` integration).
    pub fn norm_sqr(&self) -> f64 {
        self.values.values().map(|c| c.norm_sqr()).sum()
    }

    /// `Σ_m b_m e^{imφ}/sqrt(2π)`, i.e. the wavefunction rebuilt from the
    /// coefficients.
    pub fn reconstruct(&self, point: Point) -> Result<Complex64> {
        let theta = match (self.l, point.theta) {
            (Some(_), Some(t)) => t,
            (Some(_), None) => return Err(Error::OutOfDomain("spherical coefficients need theta".into())),
            (None, _) => 0.0,
        };
        let mut acc = Complex64::new(0.0, 0.0);
        for &m in self.values.keys() {
            acc += self.at(m, theta)? * Complex64::from_polar(1.0, m as f64 * point.phi);
        }
        Ok(acc / (2.0 * PI).sqrt())
    }
}

fn periodic_only(state: &State) -> Result<()> {
    if state.family() == Family::Pendulum {
        return Err(Error::InvalidArgument(
            "pendulum states have no Fourier series; use line_transform".into(),
        ));
    }
    Ok(())
}

/// The stored expansion coefficients of a periodic state.
pub fn coefficients(state: &State) -> Result<FourierCoefficients> {
    periodic_only(state)?;
    let exp = state.periodic_expansion().expect("periodic");
    Ok(FourierCoefficients { l: exp.l, values: exp.terms.into_iter().collect() })
}

/// `b_m = (2π)^{-1/2} ∫ Ψ e^{-imφ} dφ` by quadrature, for every `m` in
/// `range`. Spherical states need `theta`.
pub fn coefficients_by_quadrature(
    engine: &Engine,
    state: &State,
    range: std::ops::RangeInclusive<i32>,
    theta: Option<f64>,
) -> Result<BTreeMap<i32, Complex64>> {
    periodic_only(state)?;
    let samples: Vec<(f64, f64, Complex64)> = engine
        .phi_rule()
        .points()
        .map(|(phi, w)| {
            let point = match theta {
                Some(t) => Point::sphere(t, phi),
                None => Point::phi(phi),
            };
            wavefunction(state, point).map(|psi| (phi, w, psi))
        })
        .collect::<Result<_>>()?;
    let scale = 1.0 / (2.0 * PI).sqrt();
    Ok(range
        .map(|m| {
            let b: Complex64 = samples
                .iter()
                .map(|&(phi, w, psi)| psi * Complex64::from_polar(w, -(m as f64) * phi))
                .sum();
            (m, b * scale)
        })
        .collect())
}

/// `Ψ̃(k) = (2π)^{-1/2} ∫ Ψ(φ) e^{-ikφ} dφ` for a pendulum state.
pub fn line_transform(engine: &Engine, state: &State, k: f64) -> Result<Complex64> {
    let State::Pendulum(s) = state else {
        return Err(Error::InvalidArgument(format!(
            "line transform needs a pendulum state, got {}",
            state.family()
        )));
    };
    if !k.is_finite() {
        return Err(Error::InvalidArgument(format!("k = {k}")));
    }
    let n = s.n() as usize;
    let sqrt_beta = s.beta().sqrt();
    // φ = ξ/sqrt β, ξ = sqrt 2 η: the envelope e^{-ξ²/2} becomes e^{-η²}.
    let kappa = k * 2f64.sqrt() / sqrt_beta;
    let integral: Complex64 = engine
        .hermite_rule()
        .points()
        .map(|(eta, w)| {
            let h = stripped_hermite_functions(n, 2f64.sqrt() * eta)[n];
            Complex64::from_polar(w * h, -kappa * eta)
        })
        .sum();
    Ok(integral * 2f64.sqrt() * s.beta().powf(-0.25) / (2.0 * PI).sqrt())
}

/// `|Σ|b_m|² − (Ψ, Ψ)|`, or `|∫|Ψ̃|² dk − ∫|Ψ|² dφ|` on the line.
pub fn parseval_check(engine: &Engine, state: &State) -> Result<f64> {
    let position = norm(engine, state).powi(2);
    let spectral = match state {
        State::Circular(_) | State::Rotor(_) => coefficients(state)?.norm_sqr(),
        State::Spherical(_) => {
            let coeffs = coefficients(state)?;
            let ms: Vec<i32> = coeffs.values.keys().copied().collect();
            let mut total = 0.0;
            for m in ms {
                total += engine
                    .theta_rule()
                    .integrate(|t| coeffs.at(m, t).map_or(f64::NAN, |b| b.norm_sqr()) * t.sin());
            }
            total
        }
        State::Pendulum(s) => {
            // k = sqrt β · η
            let sqrt_beta = s.beta().sqrt();
            let mut err = None;
            let v = engine.hermite_rule().integrate_unweighted(|eta| {
                match line_transform(engine, state, sqrt_beta * eta) {
                    Ok(z) => z.norm_sqr(),
                    Err(e) => {
                        err = Some(e);
                        0.0
                    }
                }
            })?;
            if let Some(e) = err {
                return Err(e);
            }
            sqrt_beta * v
        }
    };
    Ok((spectral - position).abs())
}

/// Product of the `k`- and `φ`-variances and its lower bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WidthProduct {
    pub product: f64,
    pub bound: f64,
}

/// `⟨(k − ⟨k⟩)²⟩⟨(φ − ⟨φ⟩)²⟩` with `k = L_z/ħ`.
///
/// The bound is `1/4` on the line and `(1 − B)²/4` on the circle and sphere,
/// where `B` is the boundary term of the family.
pub fn width_product(engine: &Engine, state: &State) -> Result<WidthProduct> {
    let d_k = std_dev(engine, ObservableKind::Lz, state)? / state.hbar();
    let d_phi = std_dev(engine, ObservableKind::Phi, state)?;
    let product = (d_k * d_phi).powi(2);
    let bound = match state.family() {
        Family::Pendulum => 0.25,
        Family::Circular | Family::Rotor => fourier_boundary_term(state)?.powi(2) / 4.0,
        Family::Spherical => (Complex64::new(1.0, 0.0) - gamma_sum(engine, state)?).norm_sqr() / 4.0,
    };
    Ok(WidthProduct { product, bound })
}
