//! The four state families: circular eigenstates, rotor superpositions,
//! fixed-`l` spherical superpositions and torsion-pendulum eigenstates.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::numerics::{stripped_hermite_functions, theta_lm, MAX_L};

/// Allowed deviation of `Σ|c_m|²` from 1 before a state is rejected.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-6;

/// Highest pendulum quantum number supported.
pub const MAX_PENDULUM_N: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Circular,
    Rotor,
    Spherical,
    Pendulum,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Circular => "circular",
            Family::Rotor => "rotor",
            Family::Spherical => "spherical",
            Family::Pendulum => "pendulum",
        }
    }

    /// `φ ∈ [0, 2π]` with `Ψ(0) = Ψ(2π)`.
    pub fn is_periodic(self) -> bool {
        !matches!(self, Family::Pendulum)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{name} must be positive and finite, got {v}")))
    }
}

fn normalize_amplitudes<'a, I>(amps: I, normalize: bool) -> Result<Option<f64>>
where
    I: Iterator<Item = &'a Complex64>,
{
    let mut norm_sq = 0.0;
    for c in amps {
        if !(c.re.is_finite() && c.im.is_finite()) {
            return Err(Error::InvalidArgument("non-finite coefficient".into()));
        }
        norm_sq += c.norm_sqr();
    }
    if norm_sq == 0.0 {
        return Err(Error::InvalidArgument("all coefficients are zero".into()));
    }
    if normalize {
        if (norm_sq - 1.0).abs() <= 4.0 * f64::EPSILON {
            Ok(None)
        } else {
            Ok(Some(1.0 / norm_sq.sqrt()))
        }
    } else if (norm_sq - 1.0).abs() > NORMALIZATION_TOLERANCE {
        Err(Error::NotNormalized { norm_sq })
    } else {
        Ok(None)
    }
}

/// `Ψ_m(φ) = e^{imφ} / sqrt(2π)` on `[0, 2π]`.
#[derive(Clone, Debug, PartialEq)]
pub struct CircularState {
    m: i32,
    hbar: f64,
}

impl CircularState {
    pub fn new(m: i32, hbar: f64) -> Result<Self> {
        check_positive("hbar", hbar)?;
        Ok(CircularState { m, hbar })
    }

    pub fn m(&self) -> i32 {
        self.m
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }
}

/// Finite superposition `Σ c_m e^{imφ} / sqrt(2π)` on `[0, 2π]`.
#[derive(Clone, Debug, PartialEq)]
pub struct RotorSuperposition {
    coefficients: BTreeMap<i32, Complex64>,
    hbar: f64,
}

impl RotorSuperposition {
    /// Rejects amplitude sets whose squared norm differs from 1 by more than
    /// [`NORMALIZATION_TOLERANCE`] unless `normalize` is set, in which case
    /// the amplitudes are rescaled.
    pub fn new(coefficients: BTreeMap<i32, Complex64>, hbar: f64, normalize: bool) -> Result<Self> {
        check_positive("hbar", hbar)?;
        if coefficients.is_empty() {
            return Err(Error::InvalidArgument("rotor superposition needs coefficients".into()));
        }
        let mut coefficients = coefficients;
        if let Some(scale) = normalize_amplitudes(coefficients.values(), normalize)? {
            coefficients.values_mut().for_each(|c| *c *= scale);
        }
        Ok(RotorSuperposition { coefficients, hbar })
    }

    pub fn coefficients(&self) -> &BTreeMap<i32, Complex64> {
        &self.coefficients
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }
}

/// `Ψ_l(θ, φ) = Σ_{m=-l}^{l} c_m Y_lm(θ, φ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SphericalState {
    l: u32,
    coefficients: Vec<Complex64>,
    hbar: f64,
    inertia: f64,
}

impl SphericalState {
    /// `coefficients[k]` is `c_m` for `m = k - l`.
    pub fn new(
        l: u32,
        coefficients: Vec<Complex64>,
        hbar: f64,
        inertia: f64,
        normalize: bool,
    ) -> Result<Self> {
        check_positive("hbar", hbar)?;
        check_positive("inertia", inertia)?;
        if l > MAX_L {
            return Err(Error::InvalidArgument(format!("l = {l} exceeds {MAX_L}")));
        }
        if coefficients.len() != 2 * l as usize + 1 {
            return Err(Error::InvalidArgument(format!(
                "spherical state with l = {l} needs {} coefficients, got {}",
                2 * l + 1,
                coefficients.len()
            )));
        }
        let mut coefficients = coefficients;
        if let Some(scale) = normalize_amplitudes(coefficients.iter(), normalize)? {
            coefficients.iter_mut().for_each(|c| *c *= scale);
        }
        Ok(SphericalState { l, coefficients, hbar, inertia })
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    /// `c_m` for `-l <= m <= l`.
    pub fn coefficient(&self, m: i32) -> Option<Complex64> {
        let idx = m + self.l as i32;
        if idx < 0 {
            return None;
        }
        self.coefficients.get(idx as usize).copied()
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn inertia(&self) -> f64 {
        self.inertia
    }
}

/// Torsion-pendulum number eigenstate, a Hermite function of
/// `ξ = φ sqrt(Iω/ħ)` with `φ` on the whole real line.
#[derive(Clone, Debug, PartialEq)]
pub struct PendulumState {
    n: u32,
    inertia: f64,
    omega: f64,
    hbar: f64,
}

impl PendulumState {
    pub fn new(n: u32, inertia: f64, omega: f64, hbar: f64) -> Result<Self> {
        check_positive("inertia", inertia)?;
        check_positive("omega", omega)?;
        check_positive("hbar", hbar)?;
        if n > MAX_PENDULUM_N {
            return Err(Error::InvalidArgument(format!("n = {n} exceeds {MAX_PENDULUM_N}")));
        }
        Ok(PendulumState { n, inertia, omega, hbar })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn inertia(&self) -> f64 {
        self.inertia
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// `Iω/ħ`, so that `ξ = φ sqrt(beta)`.
    pub fn beta(&self) -> f64 {
        self.inertia * self.omega / self.hbar
    }

    /// `sqrt(ħ / 2Iω)`: matrix element scale of `φ̂` in the number basis.
    pub fn phi_scale(&self) -> f64 {
        (self.hbar / (2.0 * self.inertia * self.omega)).sqrt()
    }

    /// `sqrt(ħIω / 2)`: matrix element scale of `L̂z`.
    pub fn lz_scale(&self) -> f64 {
        (self.hbar * self.inertia * self.omega / 2.0).sqrt()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum State {
    Circular(CircularState),
    Rotor(RotorSuperposition),
    Spherical(SphericalState),
    Pendulum(PendulumState),
}

/// A coordinate in the domain of some state family.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point {
    pub phi: f64,
    pub theta: Option<f64>,
}

impl Point {
    pub fn phi(phi: f64) -> Point {
        Point { phi, theta: None }
    }

    pub fn sphere(theta: f64, phi: f64) -> Point {
        Point { phi, theta: Some(theta) }
    }
}

/// Basis expansion of a periodic state over `e^{imφ}` (times `Θ_lm` when
/// `l` is present).
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct PeriodicExpansion {
    pub l: Option<u32>,
    pub terms: Vec<(i32, Complex64)>,
}

impl State {
    pub fn family(&self) -> Family {
        match self {
            State::Circular(_) => Family::Circular,
            State::Rotor(_) => Family::Rotor,
            State::Spherical(_) => Family::Spherical,
            State::Pendulum(_) => Family::Pendulum,
        }
    }

    pub fn hbar(&self) -> f64 {
        match self {
            State::Circular(s) => s.hbar,
            State::Rotor(s) => s.hbar,
            State::Spherical(s) => s.hbar,
            State::Pendulum(s) => s.hbar,
        }
    }

    /// Same state with `ħ` replaced.
    pub fn with_hbar(&self, hbar: f64) -> Result<State> {
        check_positive("hbar", hbar)?;
        let mut out = self.clone();
        match &mut out {
            State::Circular(s) => s.hbar = hbar,
            State::Rotor(s) => s.hbar = hbar,
            State::Spherical(s) => s.hbar = hbar,
            State::Pendulum(s) => s.hbar = hbar,
        }
        Ok(out)
    }

    pub(crate) fn periodic_expansion(&self) -> Option<PeriodicExpansion> {
        match self {
            State::Circular(s) => {
                Some(PeriodicExpansion { l: None, terms: vec![(s.m, Complex64::new(1.0, 0.0))] })
            }
            State::Rotor(s) => Some(PeriodicExpansion {
                l: None,
                terms: s.coefficients.iter().map(|(&m, &c)| (m, c)).collect(),
            }),
            State::Spherical(s) => {
                let l = s.l as i32;
                Some(PeriodicExpansion {
                    l: Some(s.l),
                    terms: s
                        .coefficients
                        .iter()
                        .enumerate()
                        .map(|(k, &c)| (k as i32 - l, c))
                        .collect(),
                })
            }
            State::Pendulum(_) => None,
        }
    }
}

impl From<CircularState> for State {
    fn from(s: CircularState) -> Self {
        State::Circular(s)
    }
}

impl From<RotorSuperposition> for State {
    fn from(s: RotorSuperposition) -> Self {
        State::Rotor(s)
    }
}

impl From<SphericalState> for State {
    fn from(s: SphericalState) -> Self {
        State::Spherical(s)
    }
}

impl From<PendulumState> for State {
    fn from(s: PendulumState) -> Self {
        State::Pendulum(s)
    }
}

fn check_phi_periodic(phi: f64) -> Result<()> {
    if (0.0..=2.0 * PI).contains(&phi) {
        Ok(())
    } else {
        Err(Error::OutOfDomain(format!("phi = {phi} not in [0, 2pi]")))
    }
}

/// `Ψ` at `point`.
pub fn wavefunction(state: &State, point: Point) -> Result<Complex64> {
    let inv_sqrt_2pi = 1.0 / (2.0 * PI).sqrt();
    match state {
        State::Circular(_) | State::Rotor(_) => {
            check_phi_periodic(point.phi)?;
            if point.theta.is_some() {
                return Err(Error::OutOfDomain("circle states take no theta".into()));
            }
            let exp = state.periodic_expansion().expect("periodic");
            Ok(exp
                .terms
                .iter()
                .map(|&(m, c)| c * Complex64::from_polar(inv_sqrt_2pi, m as f64 * point.phi))
                .sum())
        }
        State::Spherical(s) => {
            check_phi_periodic(point.phi)?;
            let theta = point
                .theta
                .ok_or_else(|| Error::OutOfDomain("spherical state needs theta".into()))?;
            if !(0.0..=PI).contains(&theta) {
                return Err(Error::OutOfDomain(format!("theta = {theta} not in [0, pi]")));
            }
            let l = s.l as i32;
            let mut acc = Complex64::new(0.0, 0.0);
            for (k, &c) in s.coefficients.iter().enumerate() {
                let m = k as i32 - l;
                let th = theta_lm(s.l, m, theta)?;
                acc += c * Complex64::from_polar(th * inv_sqrt_2pi, m as f64 * point.phi);
            }
            Ok(acc)
        }
        State::Pendulum(s) => {
            if !point.phi.is_finite() {
                return Err(Error::OutOfDomain(format!("phi = {}", point.phi)));
            }
            if point.theta.is_some() {
                return Err(Error::OutOfDomain("pendulum states take no theta".into()));
            }
            Ok(Complex64::new(pendulum_amplitude(s, point.phi), 0.0))
        }
    }
}

/// Real pendulum eigenfunction `β^{1/4} ψ_n(φ sqrt β)`.
pub(crate) fn pendulum_amplitude(s: &PendulumState, phi: f64) -> f64 {
    let beta = s.beta();
    let xi = phi * beta.sqrt();
    let h = stripped_hermite_functions(s.n as usize, xi);
    beta.powf(0.25) * h[s.n as usize] * (-0.5 * xi * xi).exp()
}

/// `(Ψ, Ψ)^{1/2}` by quadrature over the family's domain.
pub fn norm(engine: &Engine, state: &State) -> f64 {
    let norm_sq = match state {
        State::Circular(_) | State::Rotor(_) => engine
            .phi_rule()
            .integrate(|phi| wavefunction(state, Point::phi(phi)).map_or(0.0, |v| v.norm_sqr())),
        State::Spherical(_) => {
            let theta_rule = engine.theta_rule();
            theta_rule.integrate(|theta| {
                let inner = engine.phi_rule().integrate(|phi| {
                    wavefunction(state, Point::sphere(theta, phi)).map_or(0.0, |v| v.norm_sqr())
                });
                inner * theta.sin()
            })
        }
        State::Pendulum(s) => {
            // ∫|Ψ|² dφ = ∫ h_n(ξ)² e^{-ξ²} dξ
            let n = s.n as usize;
            engine.hermite_rule().integrate(|xi| {
                let h = stripped_hermite_functions(n, xi)[n];
                h * h
            })
        }
    };
    norm_sq.sqrt()
}

/// Closed-form energy: `ħω(n+½)` for pendulum states, `ħ²l(l+1)/2I` for
/// spherical states, `None` for the circle families.
pub fn energy(state: &State) -> Option<f64> {
    match state {
        State::Pendulum(s) => Some(s.hbar * s.omega * (s.n as f64 + 0.5)),
        State::Spherical(s) => {
            let l = s.l as f64;
            Some(s.hbar * s.hbar * l * (l + 1.0) / (2.0 * s.inertia))
        }
        State::Circular(_) | State::Rotor(_) => None,
    }
}
