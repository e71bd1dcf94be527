//! Quadrature rules and the special functions used by every state family.
//!
//! Everything here is a pure function of its arguments. Rules are plain value
//! objects and can be shared freely between threads.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Largest Hermite order accepted by [`hermite_poly`].
pub const MAX_HERMITE_ORDER: u32 = 64;

/// Largest orbital quantum number accepted by [`theta_lm`].
pub const MAX_L: u32 = 64;

/// Integration domain of a [`QuadratureRule`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Domain {
    /// Plain interval `[a, b]`, unit weight.
    Interval { a: f64, b: f64 },
    /// The real line with weight `exp(-x^2)` folded into the weights.
    GaussianLine,
}

impl Domain {
    /// Measure of the domain: `b - a`, or `sqrt(pi)` for the Gaussian line.
    pub fn measure(&self) -> f64 {
        match *self {
            Domain::Interval { a, b } => b - a,
            Domain::GaussianLine => PI.sqrt(),
        }
    }
}

/// Nodes and positive weights of an interpolatory Gauss rule.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    /// `weights[i] * exp(nodes[i]^2)`, only for Gauss–Hermite rules.
    envelope_weights: Option<Vec<f64>>,
    domain: Domain,
}

impl QuadratureRule {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `w_i exp(x_i²)` for Gauss–Hermite rules.
    pub fn envelope_weights(&self) -> Option<&[f64]> {
        self.envelope_weights.as_deref()
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Iterator over `(node, weight)` pairs.
    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }

    /// `sum_i w_i f(x_i)`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.points().map(|(x, w)| w * f(x)).sum()
    }

    /// Integral of `f` over the whole real line for a Gauss–Hermite rule,
    /// i.e. `sum_i w_i exp(x_i^2) f(x_i)`. The Gaussian envelope is not
    /// assumed to be part of `f`.
    pub fn integrate_unweighted<F: FnMut(f64) -> f64>(&self, mut f: F) -> Result<f64> {
        let scaled = self.envelope_weights.as_ref().ok_or_else(|| {
            Error::InvalidArgument("unweighted integration needs a Gauss-Hermite rule".into())
        })?;
        Ok(self.nodes.iter().zip(scaled).map(|(&x, &w)| w * f(x)).sum())
    }

    /// The same rule mapped affinely onto `[a, b]`. Only valid for interval rules.
    pub fn rescaled(&self, a: f64, b: f64) -> Result<QuadratureRule> {
        let Domain::Interval { a: a0, b: b0 } = self.domain else {
            return Err(Error::InvalidArgument("cannot rescale a Gauss-Hermite rule".into()));
        };
        if !(a < b) {
            return Err(Error::InvalidArgument(format!("empty interval [{a}, {b}]")));
        }
        let scale = (b - a) / (b0 - a0);
        Ok(QuadratureRule {
            nodes: self.nodes.iter().map(|x| a + (x - a0) * scale).collect(),
            weights: self.weights.iter().map(|w| w * scale).collect(),
            envelope_weights: None,
            domain: Domain::Interval { a, b },
        })
    }
}

/// Gauss–Legendre rule with `n` nodes on `[a, b]`, exact for polynomials of
/// degree `2n - 1`.
pub fn gauss_legendre(n: usize, a: f64, b: f64) -> Result<QuadratureRule> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("Gauss-Legendre needs n >= 2, got {n}")));
    }
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidArgument(format!("invalid interval [{a}, {b}]")));
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let half = (b - a) / 2.0;
    let mid = (b + a) / 2.0;
    let nf = n as f64;
    // roots are symmetric; compute the upper half by Newton iteration
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-15 * x.abs().max(1.0) {
                let (_, d) = legendre_with_derivative(n, x);
                dp = d;
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = mid - half * x;
        nodes[n - 1 - i] = mid + half * x;
        weights[i] = half * w;
        weights[n - 1 - i] = half * w;
    }
    Ok(QuadratureRule { nodes, weights, envelope_weights: None, domain: Domain::Interval { a, b } })
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    (p1, nf * (x * p1 - p0) / (x * x - 1.0))
}

/// Gauss–Hermite rule with `n` nodes: `∫ f(x) exp(-x^2) dx ≈ Σ w_i f(x_i)`,
/// exact for polynomial `f` of degree `2n - 1`.
pub fn gauss_hermite(n: usize) -> Result<QuadratureRule> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("Gauss-Hermite needs n >= 2, got {n}")));
    }
    let nf = n as f64;
    let mut roots = vec![0.0f64; n];
    let m = n.div_ceil(2);
    // Hermite functions (envelope included) stay bounded for large n, unlike
    // the bare polynomials.
    let mut upper = Vec::with_capacity(m);
    for i in 0..m {
        let mut z = match i {
            0 => (2.0 * nf + 1.0).sqrt() - 1.85575 * (2.0 * nf + 1.0).powf(-0.16667),
            1 => upper[0] - 1.14 * nf.powf(0.426) / upper[0],
            2 => 1.86 * upper[1] - 0.86 * upper[0],
            3 => 1.91 * upper[2] - 0.91 * upper[1],
            _ => 2.0 * upper[i - 1] - upper[i - 2],
        };
        for _ in 0..200 {
            let (psi, dpsi) = hermite_function_with_derivative(n, z);
            let dz = psi / dpsi;
            z -= dz;
            if dz.abs() <= 1e-15 * z.abs().max(1.0) {
                break;
            }
        }
        upper.push(z);
    }
    let mut weights = vec![0.0; n];
    let mut scaled = vec![0.0; n];
    for (i, &z) in upper.iter().enumerate() {
        let z = if n % 2 == 1 && i == m - 1 { 0.0 } else { z };
        let (_, dpsi) = hermite_function_with_derivative(n, z);
        // w = 2 / H'_n(z)^2 with orthonormal polynomials; H' = psi' e^{z^2/2}
        let s = 2.0 / (dpsi * dpsi);
        let w = s * (-z * z).exp();
        roots[i] = -z;
        roots[n - 1 - i] = z;
        weights[i] = w;
        weights[n - 1 - i] = w;
        scaled[i] = s;
        scaled[n - 1 - i] = s;
    }
    Ok(QuadratureRule {
        nodes: roots,
        weights,
        envelope_weights: Some(scaled),
        domain: Domain::GaussianLine,
    })
}

/// Orthonormal Hermite function `ψ_n(x)` and its derivative.
fn hermite_function_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut prev = 0.0;
    let mut cur = PI.powf(-0.25) * (-0.5 * x * x).exp();
    for j in 1..=n {
        let jf = j as f64;
        let next = (2.0 / jf).sqrt() * x * cur - ((jf - 1.0) / jf).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    let nf = n as f64;
    (cur, (2.0 * nf).sqrt() * prev - x * cur)
}

/// Physicists' Hermite polynomial `H_n(ξ)` from the three-term recurrence.
pub fn hermite_poly(n: u32, xi: f64) -> Result<f64> {
    if n > MAX_HERMITE_ORDER {
        return Err(Error::InvalidArgument(format!(
            "Hermite order {n} exceeds supported maximum {MAX_HERMITE_ORDER}"
        )));
    }
    let mut prev = 0.0;
    let mut cur = 1.0;
    for k in 0..n {
        let next = 2.0 * xi * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Hermite functions with the Gaussian stripped: returns `h_0..=h_n` at `ξ`
/// where `ψ_k(ξ) = h_k(ξ) exp(-ξ²/2)` is orthonormal on the real line.
///
/// `h_k(ξ) = H_k(ξ) / sqrt(2^k k! sqrt(π))`, evaluated with the normalised
/// recurrence so that large `k` neither overflows nor loses precision.
pub fn stripped_hermite_functions(n: usize, xi: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(PI.powf(-0.25));
    if n >= 1 {
        out.push(2f64.sqrt() * xi * out[0]);
    }
    for j in 2..=n {
        let jf = j as f64;
        let v = (2.0 / jf).sqrt() * xi * out[j - 1] - ((jf - 1.0) / jf).sqrt() * out[j - 2];
        out.push(v);
    }
    out
}

/// Normalised polar factor of the spherical harmonic,
/// `Y_lm(θ, φ) = Θ_lm(θ) e^{imφ} / sqrt(2π)`, with the Condon–Shortley phase.
///
/// `∫_0^π Θ_lm(θ)² sin θ dθ = 1` and `Θ_{l,-m} = (-1)^m Θ_{l,m}`.
pub fn theta_lm(l: u32, m: i32, theta: f64) -> Result<f64> {
    if l > MAX_L {
        return Err(Error::InvalidArgument(format!("l = {l} exceeds supported maximum {MAX_L}")));
    }
    if m.unsigned_abs() > l {
        return Err(Error::InvalidArgument(format!("|m| = {} exceeds l = {l}", m.abs())));
    }
    if !(0.0..=PI).contains(&theta) {
        return Err(Error::InvalidArgument(format!("theta = {theta} outside [0, pi]")));
    }
    let ma = m.unsigned_abs();
    let value = normalized_legendre(l, ma, theta.cos(), theta.sin());
    Ok(if m < 0 && ma % 2 == 1 { -value } else { value })
}

/// `sqrt((2l+1)/2 · (l-m)!/(l+m)!) P_l^m(x)` for `m >= 0`, with `s = sqrt(1-x²)`.
fn normalized_legendre(l: u32, m: u32, x: f64, s: f64) -> f64 {
    let mut pmm = 1.0;
    for i in 1..=m {
        let fi = i as f64;
        pmm *= (2.0 * fi - 1.0) / (2.0 * fi);
    }
    let mf = m as f64;
    let mut pmm = pmm.sqrt() * ((2.0 * mf + 1.0) / 2.0).sqrt() * s.powi(m as i32);
    if m % 2 == 1 {
        pmm = -pmm;
    }
    if l == m {
        return pmm;
    }
    let mut prev = pmm;
    let mut cur = x * (2.0 * mf + 3.0).sqrt() * pmm;
    for ll in (m + 2)..=l {
        let lf = ll as f64;
        let a = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
        let b = (((lf - 1.0) * (lf - 1.0) - mf * mf) / (4.0 * (lf - 1.0) * (lf - 1.0) - 1.0)).sqrt();
        let next = a * (x * cur - b * prev);
        prev = cur;
        cur = next;
    }
    cur
}
