//! Angular observables and their matrix elements in each family's basis.
//!
//! Basis conventions:
//! - Fourier: `|m⟩ = e^{imφ}/sqrt(2π)` on `[0, 2π]`.
//! - Spherical: `|m⟩ = Y_lm`; every element factorises into a polar integral
//!   `∫ Θ_lm θ^p Θ_lm' sin θ dθ` times a Fourier element.
//! - Oscillator: number states of the torsion pendulum, with
//!   `φ̂ = sqrt(ħ/2Iω)(a + a†)` and `L̂z = i sqrt(ħIω/2)(a† − a)`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::numerics::theta_lm;
use crate::poly::{fourier_monomial, AngularPoly};
use crate::states::{Family, PendulumState, PeriodicExpansion, State};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ObservableKind {
    Lz,
    Phi,
    PhiSquared,
    SinPhi,
    CosPhi,
    Theta,
    ThetaPhi,
    /// `χ = φ + 2πN`.
    Chi(i64),
}

impl ObservableKind {
    /// Every kind except `Lz` acts by multiplication with a function.
    pub fn is_multiplicative(self) -> bool {
        !matches!(self, ObservableKind::Lz)
    }

    pub fn applies_to(self, family: Family) -> bool {
        use ObservableKind::*;
        match family {
            Family::Circular | Family::Rotor => !matches!(self, Theta | ThetaPhi),
            Family::Spherical => true,
            Family::Pendulum => matches!(self, Lz | Phi | PhiSquared | Chi(_)),
        }
    }

    pub(crate) fn check(self, family: Family) -> Result<()> {
        if self.applies_to(family) {
            Ok(())
        } else {
            Err(Error::KindFamilyMismatch { kind: self, family })
        }
    }

    /// The multiplying function on the periodic families.
    pub(crate) fn function(self) -> Option<AngularPoly> {
        use ObservableKind::*;
        let half = |re: f64, im: f64| Complex64::new(re, im);
        Some(match self {
            Lz => return None,
            Phi => AngularPoly::phi(),
            PhiSquared => AngularPoly::phi().pow(2),
            SinPhi => {
                AngularPoly::harmonic(1).scale(half(0.0, -0.5))
                    + AngularPoly::harmonic(-1).scale(half(0.0, 0.5))
            }
            CosPhi => {
                AngularPoly::harmonic(1).scale(half(0.5, 0.0))
                    + AngularPoly::harmonic(-1).scale(half(0.5, 0.0))
            }
            Theta => AngularPoly::theta(),
            ThetaPhi => &AngularPoly::theta() * &AngularPoly::phi(),
            Chi(n) => AngularPoly::phi() + AngularPoly::constant(2.0 * PI * n as f64),
        })
    }

    /// Pointwise value of a multiplicative observable.
    pub fn value_at(self, theta: f64, phi: f64) -> Option<f64> {
        use ObservableKind::*;
        Some(match self {
            Lz => return None,
            Phi => phi,
            PhiSquared => phi * phi,
            SinPhi => phi.sin(),
            CosPhi => phi.cos(),
            Theta => theta,
            ThetaPhi => theta * phi,
            Chi(n) => phi + 2.0 * PI * n as f64,
        })
    }
}

impl fmt::Display for ObservableKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ObservableKind::*;
        match self {
            Lz => f.write_str("Lz"),
            Phi => f.write_str("Phi"),
            PhiSquared => f.write_str("PhiSquared"),
            SinPhi => f.write_str("SinPhi"),
            CosPhi => f.write_str("CosPhi"),
            Theta => f.write_str("Theta"),
            ThetaPhi => f.write_str("ThetaPhi"),
            Chi(n) => write!(f, "Chi[{n}]"),
        }
    }
}

impl FromStr for ObservableKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        use ObservableKind::*;
        Ok(match s {
            "Lz" => Lz,
            "Phi" => Phi,
            "PhiSquared" => PhiSquared,
            "SinPhi" => SinPhi,
            "CosPhi" => CosPhi,
            "Theta" => Theta,
            "ThetaPhi" => ThetaPhi,
            _ => {
                let inner = s
                    .strip_prefix("Chi[")
                    .and_then(|r| r.strip_suffix(']'))
                    .ok_or_else(|| Error::InvalidArgument(format!("unknown observable '{s}'")))?;
                let n = inner
                    .parse::<i64>()
                    .map_err(|_| Error::InvalidArgument(format!("bad Chi index in '{s}'")))?;
                Chi(n)
            }
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Closed form only.
    Analytic,
    /// At least one factor came from numerical quadrature.
    Quadrature,
}

impl Provenance {
    pub fn combine(self, other: Provenance) -> Provenance {
        if self == Provenance::Analytic && other == Provenance::Analytic {
            Provenance::Analytic
        } else {
            Provenance::Quadrature
        }
    }
}

/// The single-particle basis a matrix element refers to.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Basis {
    /// `e^{imφ}/sqrt(2π)`, index `m`.
    Fourier { hbar: f64 },
    /// `Y_lm`, index `m` with `|m| <= l`.
    Spherical { l: u32, hbar: f64 },
    /// Pendulum number states, index `n >= 0`.
    Oscillator { hbar: f64, inertia: f64, omega: f64 },
}

impl Basis {
    pub fn family(&self) -> Family {
        match self {
            Basis::Fourier { .. } => Family::Rotor,
            Basis::Spherical { .. } => Family::Spherical,
            Basis::Oscillator { .. } => Family::Pendulum,
        }
    }

    pub fn of_state(state: &State) -> Basis {
        match state {
            State::Circular(s) => Basis::Fourier { hbar: s.hbar() },
            State::Rotor(s) => Basis::Fourier { hbar: s.hbar() },
            State::Spherical(s) => Basis::Spherical { l: s.l(), hbar: s.hbar() },
            State::Pendulum(s) => {
                Basis::Oscillator { hbar: s.hbar(), inertia: s.inertia(), omega: s.omega() }
            }
        }
    }

    fn check_index(&self, i: i32) -> Result<()> {
        match *self {
            Basis::Fourier { .. } => Ok(()),
            Basis::Spherical { l, .. } if i.unsigned_abs() <= l => Ok(()),
            Basis::Oscillator { .. } if i >= 0 => Ok(()),
            _ => Err(Error::InvalidArgument(format!("basis index {i} out of range"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MatrixElement {
    pub value: Complex64,
    pub provenance: Provenance,
}

/// `⟨i| Â |j⟩` in the given basis.
pub fn matrix_element(
    engine: &Engine,
    kind: ObservableKind,
    basis: &Basis,
    i: i32,
    j: i32,
) -> Result<MatrixElement> {
    kind.check(basis.family())?;
    basis.check_index(i)?;
    basis.check_index(j)?;
    match *basis {
        Basis::Fourier { hbar } => {
            let periodic = PeriodicBasis { engine, l: None };
            Ok(periodic.kind_element(kind, hbar, i, j))
        }
        Basis::Spherical { l, hbar } => {
            let periodic = PeriodicBasis { engine, l: Some(l) };
            Ok(periodic.kind_element(kind, hbar, i, j))
        }
        Basis::Oscillator { hbar, inertia, omega } => {
            let pend = PendulumState::new(0, inertia, omega, hbar)?;
            let mut e_j = vec![Complex64::new(0.0, 0.0); j as usize + 1];
            e_j[j as usize] = Complex64::new(1.0, 0.0);
            let applied = oscillator_apply(kind, &pend, &e_j, 0.0);
            let value = applied.get(i as usize).copied().unwrap_or_default();
            Ok(MatrixElement { value, provenance: Provenance::Analytic })
        }
    }
}

/// Dense table of matrix elements over a contiguous index range.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixElementTable {
    pub kind: ObservableKind,
    pub basis: Basis,
    pub indices: Vec<i32>,
    pub values: Vec<Vec<Complex64>>,
    pub provenance: Provenance,
}

impl MatrixElementTable {
    pub fn build(
        engine: &Engine,
        kind: ObservableKind,
        basis: Basis,
        indices: std::ops::RangeInclusive<i32>,
    ) -> Result<MatrixElementTable> {
        let indices: Vec<i32> = indices.collect();
        let mut provenance = Provenance::Analytic;
        let mut values = Vec::with_capacity(indices.len());
        for &i in &indices {
            let mut row = Vec::with_capacity(indices.len());
            for &j in &indices {
                let el = matrix_element(engine, kind, &basis, i, j)?;
                provenance = provenance.combine(el.provenance);
                row.push(el.value);
            }
            values.push(row);
        }
        Ok(MatrixElementTable { kind, basis, indices, values, provenance })
    }

    /// Largest `|A_ij − conj(A_ji)|`.
    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.indices.len();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                worst = worst.max((self.values[i][j] - self.values[j][i].conj()).norm());
            }
        }
        worst
    }
}

/// Matrix elements on the Fourier (`l = None`) or spherical basis.
pub(crate) struct PeriodicBasis<'a> {
    pub engine: &'a Engine,
    pub l: Option<u32>,
}

impl PeriodicBasis<'_> {
    fn kind_element(&self, kind: ObservableKind, hbar: f64, i: i32, j: i32) -> MatrixElement {
        match kind.function() {
            None => MatrixElement {
                value: if i == j {
                    Complex64::new(hbar * i as f64, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                },
                provenance: Provenance::Analytic,
            },
            Some(f) => self.poly_element(&f, i, j),
        }
    }

    /// `∫ Θ_lm θ^p Θ_lm' sin θ dθ`; 1 or 0 on the Fourier basis for `p = 0`.
    fn polar_factor(&self, p: u32, m: i32, m2: i32) -> (f64, Provenance) {
        match self.l {
            None => {
                debug_assert_eq!(p, 0, "theta powers need a spherical basis");
                (1.0, Provenance::Analytic)
            }
            Some(l) => {
                let v = self.engine.theta_rule().integrate(|t| {
                    let a = theta_lm(l, m, t).expect("index checked");
                    let b = theta_lm(l, m2, t).expect("index checked");
                    a * b * t.powi(p as i32) * t.sin()
                });
                (v, Provenance::Quadrature)
            }
        }
    }

    pub fn poly_element(&self, f: &AngularPoly, m: i32, m2: i32) -> MatrixElement {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut provenance = Provenance::Analytic;
        for (mono, &coef) in f.terms() {
            let q = m2 - m + mono.harmonic;
            let (phi_part, fell_back) = fourier_monomial(mono.u, q, self.engine.phi_rule());
            if phi_part == Complex64::new(0.0, 0.0) {
                continue;
            }
            if fell_back {
                provenance = Provenance::Quadrature;
            }
            let (polar, p) = self.polar_factor(mono.theta, m, m2);
            provenance = provenance.combine(p);
            acc += coef * phi_part * polar;
        }
        MatrixElement { value: acc, provenance }
    }

    /// `Σ_{m,m'} conj(a_m) b_m' ⟨m| f |m'⟩`.
    pub fn bilinear(
        &self,
        left: &[(i32, Complex64)],
        f: &AngularPoly,
        right: &[(i32, Complex64)],
    ) -> (Complex64, Provenance) {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut provenance = Provenance::Analytic;
        for &(m, a) in left {
            if a == Complex64::new(0.0, 0.0) {
                continue;
            }
            for &(m2, b) in right {
                if b == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let el = self.poly_element(f, m, m2);
                provenance = provenance.combine(el.provenance);
                acc += a.conj() * b * el.value;
            }
        }
        (acc, provenance)
    }
}

/// The action of a centred power `(Â − shift)^r` on the periodic families:
/// either diagonal in `m` (for `L̂z`) or multiplication by a polynomial.
#[derive(Clone, Debug)]
pub(crate) enum PeriodicAction {
    Diagonal { hbar: f64, shift: f64, power: u32 },
    Multiply(AngularPoly),
}

impl PeriodicAction {
    pub fn centred(kind: ObservableKind, hbar: f64, shift: f64, power: u32) -> PeriodicAction {
        match kind.function() {
            None => PeriodicAction::Diagonal { hbar, shift, power },
            Some(f) => PeriodicAction::Multiply((f - AngularPoly::constant(shift)).pow(power)),
        }
    }
}

/// `(X Ψ, Y Ψ)` for periodic states.
pub(crate) fn periodic_inner(
    engine: &Engine,
    exp: &PeriodicExpansion,
    left: &PeriodicAction,
    right: &PeriodicAction,
) -> (Complex64, Provenance) {
    let basis = PeriodicBasis { engine, l: exp.l };
    let diag = |hbar: f64, shift: f64, power: u32| -> Vec<(i32, Complex64)> {
        exp.terms
            .iter()
            .map(|&(m, c)| (m, c * (hbar * m as f64 - shift).powi(power as i32)))
            .collect()
    };
    match (left, right) {
        (
            PeriodicAction::Diagonal { hbar: h1, shift: s1, power: p1 },
            PeriodicAction::Diagonal { hbar: h2, shift: s2, power: p2 },
        ) => {
            let a = diag(*h1, *s1, *p1);
            let b = diag(*h2, *s2, *p2);
            let v = a.iter().zip(&b).map(|(&(_, x), &(_, y))| x.conj() * y).sum();
            (v, Provenance::Analytic)
        }
        (PeriodicAction::Diagonal { hbar, shift, power }, PeriodicAction::Multiply(f)) => {
            basis.bilinear(&diag(*hbar, *shift, *power), f, &exp.terms)
        }
        (PeriodicAction::Multiply(f), PeriodicAction::Diagonal { hbar, shift, power }) => {
            basis.bilinear(&exp.terms, &f.conj(), &diag(*hbar, *shift, *power))
        }
        (PeriodicAction::Multiply(f), PeriodicAction::Multiply(g)) => {
            basis.bilinear(&exp.terms, &(&f.conj() * g), &exp.terms)
        }
    }
}

/// `(Â − shift) v` in the pendulum number basis; the result grows by the
/// bandwidth of `Â` so the application is exact.
pub(crate) fn oscillator_apply(
    kind: ObservableKind,
    state: &PendulumState,
    v: &[Complex64],
    shift: f64,
) -> Vec<Complex64> {
    let raise_lower = |v: &[Complex64], lower_sign: f64, factor: Complex64| -> Vec<Complex64> {
        // factor * (a† + lower_sign a) v
        let mut out = vec![Complex64::new(0.0, 0.0); v.len() + 1];
        for (k, &c) in v.iter().enumerate() {
            out[k + 1] += factor * c * ((k + 1) as f64).sqrt();
            if k > 0 {
                out[k - 1] += factor * c * lower_sign * (k as f64).sqrt();
            }
        }
        out
    };
    let phi = |v: &[Complex64]| raise_lower(v, 1.0, Complex64::new(state.phi_scale(), 0.0));
    let mut out = match kind {
        ObservableKind::Lz => raise_lower(v, -1.0, Complex64::new(0.0, state.lz_scale())),
        ObservableKind::Phi => phi(v),
        ObservableKind::PhiSquared => phi(&phi(v)),
        ObservableKind::Chi(n) => {
            let mut out = phi(v);
            for (o, &c) in out.iter_mut().zip(v) {
                *o += c * 2.0 * PI * n as f64;
            }
            out
        }
        _ => unreachable!("kind checked against family"),
    };
    if shift != 0.0 {
        for (o, &c) in out.iter_mut().zip(v) {
            *o -= c * shift;
        }
    }
    out
}

/// The pendulum number eigenstate as a coefficient vector.
pub(crate) fn oscillator_vector(state: &PendulumState) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(0.0, 0.0); state.n() as usize + 1];
    v[state.n() as usize] = Complex64::new(1.0, 0.0);
    v
}

pub(crate) fn vector_inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Symmetry deficit `(L̂zΨ, φ̂Ψ) − (Ψ, L̂zφ̂Ψ)` of the pair `(Lz, φ)`.
///
/// Integrating `(Ψ, L̂z(φΨ))` by parts gives the closed form
/// `iħ‖Ψ‖² + 2i Im(L̂zΨ, φ̂Ψ)`, which on the spherical family reads
/// `iħ{1 + 2 Im Σ c*_m c_m' m (Y_lm, φ̂ Y_lm')}`. The pendulum family yields
/// zero (the boundary term vanishes at infinity).
pub fn apply_lz_boundary_form(engine: &Engine, state: &State) -> Complex64 {
    pair_deficit(engine, state, ObservableKind::Lz, ObservableKind::Phi)
        .expect("Lz and Phi apply to every family")
}

/// `(ÂΨ, B̂Ψ) − (Ψ, ÂB̂Ψ)` for a pair of observables.
///
/// Only the ordering `(Lz, f)` with multiplicative `f` can be non-zero:
/// it equals `2i Im(L̂zΨ, fΨ) + iħ⟨∂f/∂φ⟩`.
pub fn pair_deficit(
    engine: &Engine,
    state: &State,
    a: ObservableKind,
    b: ObservableKind,
) -> Result<Complex64> {
    let family = state.family();
    a.check(family)?;
    b.check(family)?;
    if a != ObservableKind::Lz || b == ObservableKind::Lz {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let hbar = state.hbar();
    let i = Complex64::new(0.0, 1.0);
    match state {
        State::Pendulum(p) => {
            let v = oscillator_vector(p);
            let lz_v = oscillator_apply(ObservableKind::Lz, p, &v, 0.0);
            let f_v = oscillator_apply(b, p, &v, 0.0);
            let cross = vector_inner(&lz_v, &f_v);
            // ∂f/∂φ: 1 for φ and χ, 2φ for φ²
            let mean_derivative = match b {
                ObservableKind::PhiSquared => {
                    2.0 * vector_inner(&v, &oscillator_apply(ObservableKind::Phi, p, &v, 0.0)).re
                }
                _ => 1.0,
            };
            Ok(i * 2.0 * cross.im + i * hbar * mean_derivative)
        }
        _ => {
            let exp = state.periodic_expansion().expect("periodic family");
            let f = b.function().expect("multiplicative");
            let lz = PeriodicAction::Diagonal { hbar, shift: 0.0, power: 1 };
            let (cross, _) =
                periodic_inner(engine, &exp, &lz, &PeriodicAction::Multiply(f.clone()));
            let one = PeriodicAction::Multiply(AngularPoly::constant(1.0));
            let (mean_derivative, _) =
                periodic_inner(engine, &exp, &one, &PeriodicAction::Multiply(f.d_phi()));
            Ok(i * 2.0 * cross.im + i * hbar * mean_derivative)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{CircularState, SphericalState};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rotor_examples() {
        let e = Engine::default();
        let b = Basis::Fourier { hbar: 1.0 };
        let el = matrix_element(&e, ObservableKind::Phi, &b, 2, 2).unwrap();
        assert!((el.value - c(PI, 0.0)).norm() < 1e-14);
        assert_eq!(el.provenance, Provenance::Analytic);
        let el = matrix_element(&e, ObservableKind::Phi, &b, 0, 1).unwrap();
        assert!((el.value - c(0.0, -1.0)).norm() < 1e-14);
        let el = matrix_element(&e, ObservableKind::SinPhi, &b, 0, 1).unwrap();
        assert!((el.value - c(0.0, 0.5)).norm() < 1e-15);
        let b2 = Basis::Fourier { hbar: 2.0 };
        let el = matrix_element(&e, ObservableKind::Lz, &b2, 3, 3).unwrap();
        assert_eq!(el.value, c(6.0, 0.0));
        assert_eq!(matrix_element(&e, ObservableKind::Lz, &b2, 3, 2).unwrap().value, c(0.0, 0.0));
    }

    #[test]
    fn theta_rejected_on_rotor() {
        let e = Engine::default();
        let b = Basis::Fourier { hbar: 1.0 };
        assert!(matches!(
            matrix_element(&e, ObservableKind::Theta, &b, 0, 0),
            Err(Error::KindFamilyMismatch { .. })
        ));
        let s = Basis::Spherical { l: 1, hbar: 1.0 };
        assert!(matrix_element(&e, ObservableKind::Phi, &s, 2, 0).is_err());
        let o = Basis::Oscillator { hbar: 1.0, inertia: 1.0, omega: 1.0 };
        assert!(matrix_element(&e, ObservableKind::SinPhi, &o, 0, 1).is_err());
    }

    #[test]
    fn oscillator_elements() {
        let e = Engine::default();
        let o = Basis::Oscillator { hbar: 1.0, inertia: 1.0, omega: 1.0 };
        let x01 = matrix_element(&e, ObservableKind::Phi, &o, 0, 1).unwrap().value;
        assert!((x01 - c(0.5f64.sqrt(), 0.0)).norm() < 1e-15);
        let p10 = matrix_element(&e, ObservableKind::Lz, &o, 1, 0).unwrap().value;
        assert!((p10 - c(0.0, 0.5f64.sqrt())).norm() < 1e-15);
        let x2 = matrix_element(&e, ObservableKind::PhiSquared, &o, 2, 2).unwrap().value;
        assert!((x2 - c(2.5, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn tables_are_hermitian_and_banded() {
        let e = Engine::default();
        for kind in [
            ObservableKind::Lz,
            ObservableKind::Phi,
            ObservableKind::PhiSquared,
            ObservableKind::SinPhi,
            ObservableKind::CosPhi,
        ] {
            let t = MatrixElementTable::build(&e, kind, Basis::Fourier { hbar: 1.0 }, -4..=4).unwrap();
            assert!(t.hermiticity_defect() < 1e-10, "{kind}");
        }
        for kind in [ObservableKind::Theta, ObservableKind::Phi] {
            let t = MatrixElementTable::build(&e, kind, Basis::Spherical { l: 3, hbar: 1.0 }, -3..=3)
                .unwrap();
            assert!(t.hermiticity_defect() < 1e-10, "{kind}");
        }
        let t = MatrixElementTable::build(&e, ObservableKind::CosPhi, Basis::Fourier { hbar: 1.0 }, -5..=5)
            .unwrap();
        for (a, row) in t.indices.iter().zip(&t.values) {
            for (b, v) in t.indices.iter().zip(row) {
                if (a - b).abs() != 1 {
                    assert_eq!(*v, c(0.0, 0.0));
                }
            }
        }
    }

    #[test]
    fn deficit_examples() {
        let e = Engine::default();
        let circ: State = CircularState::new(5, 1.0).unwrap().into();
        let d = apply_lz_boundary_form(&e, &circ);
        assert!((d - c(0.0, 1.0)).norm() < 1e-12);
        let p: State = crate::states::PendulumState::new(0, 1.0, 1.0, 1.0).unwrap().into();
        assert!(apply_lz_boundary_form(&e, &p).norm() < 1e-14);
        let sph: State =
            SphericalState::new(1, vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)], 1.0, 1.0, false)
                .unwrap()
                .into();
        assert!((apply_lz_boundary_form(&e, &sph) - c(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn kind_parsing() {
        for k in [ObservableKind::Lz, ObservableKind::ThetaPhi, ObservableKind::Chi(-3)] {
            assert_eq!(k.to_string().parse::<ObservableKind>().unwrap(), k);
        }
        assert!("Psi".parse::<ObservableKind>().is_err());
        assert!("Chi[x]".parse::<ObservableKind>().is_err());
    }
}
