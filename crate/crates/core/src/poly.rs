//! Polynomials in `θ`, `u = φ − π` and `e^{iφ}`: the algebra of every
//! multiplicative angular observable on the periodic families.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::numerics::QuadratureRule;

/// `θ^theta · (φ − π)^u · e^{i·harmonic·φ}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct Monomial {
    pub theta: u32,
    pub u: u32,
    pub harmonic: i32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { theta: 0, u: 0, harmonic: 0 };
}

#[derive(Clone, Debug, Default, PartialEq)]
pub(crate) struct AngularPoly {
    terms: BTreeMap<Monomial, Complex64>,
}

impl AngularPoly {
    pub fn zero() -> Self {
        AngularPoly::default()
    }

    pub fn constant(c: f64) -> Self {
        AngularPoly::monomial(Monomial::ONE, Complex64::new(c, 0.0))
    }

    pub fn monomial(m: Monomial, coef: Complex64) -> Self {
        let mut p = AngularPoly::zero();
        p.add_term(m, coef);
        p
    }

    /// `φ = u + π`.
    pub fn phi() -> Self {
        AngularPoly::monomial(Monomial { theta: 0, u: 1, harmonic: 0 }, Complex64::new(1.0, 0.0))
            + AngularPoly::constant(PI)
    }

    pub fn theta() -> Self {
        AngularPoly::monomial(Monomial { theta: 1, u: 0, harmonic: 0 }, Complex64::new(1.0, 0.0))
    }

    /// `e^{ikφ}`.
    pub fn harmonic(k: i32) -> Self {
        AngularPoly::monomial(Monomial { theta: 0, u: 0, harmonic: k }, Complex64::new(1.0, 0.0))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Complex64)> {
        self.terms.iter()
    }

    fn add_term(&mut self, m: Monomial, coef: Complex64) {
        if coef == Complex64::new(0.0, 0.0) {
            return;
        }
        *self.terms.entry(m).or_insert(Complex64::new(0.0, 0.0)) += coef;
    }

    pub fn scale(&self, s: Complex64) -> Self {
        AngularPoly { terms: self.terms.iter().map(|(&m, &c)| (m, c * s)).collect() }
    }

    pub fn pow(&self, r: u32) -> Self {
        let mut out = AngularPoly::constant(1.0);
        for _ in 0..r {
            out = &out * self;
        }
        out
    }

    /// Complex conjugate of the function (not of the operator matrix).
    pub fn conj(&self) -> Self {
        let mut out = AngularPoly::zero();
        for (&m, &c) in &self.terms {
            out.add_term(Monomial { harmonic: -m.harmonic, ..m }, c.conj());
        }
        out
    }

    /// `∂/∂φ`.
    pub fn d_phi(&self) -> Self {
        let mut out = AngularPoly::zero();
        for (&m, &c) in &self.terms {
            if m.u > 0 {
                out.add_term(Monomial { u: m.u - 1, ..m }, c * m.u as f64);
            }
            if m.harmonic != 0 {
                out.add_term(m, c * Complex64::new(0.0, m.harmonic as f64));
            }
        }
        out
    }


    /// Value at a point, using the ordinary `f64` functions.
    #[cfg(test)]
    pub fn eval(&self, theta: f64, phi: f64) -> Complex64 {
        self.terms
            .iter()
            .map(|(m, &c)| {
                c * theta.powi(m.theta as i32)
                    * (phi - PI).powi(m.u as i32)
                    * Complex64::from_polar(1.0, m.harmonic as f64 * phi)
            })
            .sum()
    }
}

impl Add for AngularPoly {
    type Output = AngularPoly;
    fn add(mut self, rhs: AngularPoly) -> AngularPoly {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Sub for AngularPoly {
    type Output = AngularPoly;
    fn sub(self, rhs: AngularPoly) -> AngularPoly {
        self + rhs.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Mul for &AngularPoly {
    type Output = AngularPoly;
    fn mul(self, rhs: &AngularPoly) -> AngularPoly {
        let mut out = AngularPoly::zero();
        for (a, &ca) in &self.terms {
            for (b, &cb) in &rhs.terms {
                let m = Monomial {
                    theta: a.theta + b.theta,
                    u: a.u + b.u,
                    harmonic: a.harmonic + b.harmonic,
                };
                out.add_term(m, ca * cb);
            }
        }
        out
    }
}

/// Largest error amplification accepted from the integration-by-parts
/// recurrence before falling back to quadrature.
const MAX_RECURRENCE_AMPLIFICATION: f64 = 1e4;

/// `(1/2π) ∫_0^{2π} (φ − π)^k e^{iqφ} dφ`.
///
/// Returns the value and whether a quadrature fallback was needed.
pub(crate) fn fourier_monomial(k: u32, q: i32, fallback: &QuadratureRule) -> (Complex64, bool) {
    if q == 0 {
        let v = if k.is_multiple_of(2) { PI.powi(k as i32) / (k as f64 + 1.0) } else { 0.0 };
        return (Complex64::new(v, 0.0), false);
    }
    let qf = q as f64;
    let mut amplification = 1.0;
    for i in 1..=k {
        amplification *= (i as f64 / (qf.abs() * PI)).max(1.0);
    }
    let sign = if q % 2 == 0 { 1.0 } else { -1.0 };
    if amplification <= MAX_RECURRENCE_AMPLIFICATION {
        // K_k = ∫_{-π}^{π} u^k e^{iqu} du
        //     = (-1)^q (π^k − (−π)^k) / (iq) − k K_{k−1} / (iq)
        let iq = Complex64::new(0.0, qf);
        let mut kk = Complex64::new(0.0, 0.0);
        for j in 1..=k {
            let boundary = if j % 2 == 1 { 2.0 * sign * PI.powi(j as i32) } else { 0.0 };
            kk = (Complex64::new(boundary, 0.0) - kk * j as f64) / iq;
        }
        // e^{iqφ} = (−1)^q e^{iqu}
        (kk * sign / (2.0 * PI), false)
    } else {
        let v: Complex64 = fallback
            .points()
            .map(|(phi, w)| {
                w * (phi - PI).powi(k as i32) * Complex64::from_polar(1.0, qf * phi)
            })
            .sum();
        (v / (2.0 * PI), true)
    }
}
