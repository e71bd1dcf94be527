//! Catalog of `Lz`–`φ` uncertainty relations and their evaluation on a state.
//!
//! Each relation is reduced to a left-hand side and a right-hand side; the
//! verdict compares them with an absolute tolerance. `R9` and `R13` are
//! absent: they cannot be evaluated without guessing.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::moments::{correlation, cross_product, periodic_mean_of, std_dev};
use crate::numerics::theta_lm;
use crate::observables::{pair_deficit, ObservableKind};
use crate::states::{wavefunction, Family, Point, State};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelationId {
    R5,
    R6,
    R7,
    R8,
    R10,
    R11,
    R12,
    R14,
    R15,
    R30,
    R33,
    R36,
    R52,
    R58,
    R60,
}

impl RelationId {
    pub const ALL: [RelationId; 15] = [
        RelationId::R5,
        RelationId::R6,
        RelationId::R7,
        RelationId::R8,
        RelationId::R10,
        RelationId::R11,
        RelationId::R12,
        RelationId::R14,
        RelationId::R15,
        RelationId::R30,
        RelationId::R33,
        RelationId::R36,
        RelationId::R52,
        RelationId::R58,
        RelationId::R60,
    ];

    pub fn number(self) -> u32 {
        use RelationId::*;
        match self {
            R5 => 5,
            R6 => 6,
            R7 => 7,
            R8 => 8,
            R10 => 10,
            R11 => 11,
            R12 => 12,
            R14 => 14,
            R15 => 15,
            R30 => 30,
            R33 => 33,
            R36 => 36,
            R52 => 52,
            R58 => 58,
            R60 => 60,
        }
    }

    /// Plain-text rendering of the inequality.
    pub fn formula(self) -> &'static str {
        use RelationId::*;
        match self {
            R5 => "dLz * dphi >= hbar/2",
            R6 => "dLz * dphi / (1 - 3 (dphi/pi)^2) >= 0.16 hbar",
            R7 => "dLz^2 dphi^2 / (1 - dphi^2) >= hbar^2/4",
            R8 => "dLz^2 + (hbar alpha/2)^2 dphi^2 >= (hbar^2/2) [ (9/pi^2 + alpha^2)^(1/2) - 3/pi^2 ]",
            R10 => "dLz^2 d(sin phi)^2 >= (hbar^2/4) <cos^2 phi>",
            R11 => "dLz^2 d(cos phi)^2 >= (hbar^2/4) <sin^2 phi>",
            R12 => "dLz * dchi >= hbar/2, dchi = [2 pi^2 (1/12 + N^2 - N1^2 + N - N1)]^(1/2)",
            R14 => "dLz^2 + hbar^2 dphi^2 >= hbar^2",
            R15 => "dLz * dphi >= (hbar/2) |1 - 2 pi |Psi(2 pi)|^2|",
            R30 => "dLz * dphi >= |(dLz Psi, dphi Psi)|",
            R33 => "dLz * dphi >= hbar/2, only when (A_j Psi, A_k Psi) = (Psi, A_j A_k Psi)",
            R36 => "dtheta * dphi >= |(dtheta Psi, dphi Psi)|",
            R52 => "dLz * dphi >= (hbar/2) |1 - 2 pi |Psi(2 pi)|^2|",
            R58 => "dLz * dphi >= (hbar/2) |1 - sum_mm' c*_m c_m' gamma_mm'|",
            R60 => "dA * dB >= |<[A, B]>| / 2",
        }
    }

    pub fn families(self) -> &'static [Family] {
        use Family::*;
        use RelationId::*;
        const ALL: &[Family] = &[Circular, Rotor, Spherical, Pendulum];
        const PERIODIC: &[Family] = &[Circular, Rotor, Spherical];
        const CIRCLE: &[Family] = &[Circular, Rotor];
        const SPHERE: &[Family] = &[Spherical];
        match self {
            R10 | R11 => PERIODIC,
            R15 | R52 => CIRCLE,
            R36 | R58 => SPHERE,
            _ => ALL,
        }
    }

    /// Names of the parameters the relation reads.
    pub fn parameters(self) -> &'static [&'static str] {
        match self {
            RelationId::R8 => &["alpha"],
            RelationId::R12 => &["N", "N1"],
            RelationId::R60 => &["A", "B"],
            _ => &[],
        }
    }
}

impl fmt::Display for RelationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R{}", self.number())
    }
}

impl FromStr for RelationId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RelationId::ALL
            .iter()
            .copied()
            .find(|r| r.to_string() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown relation '{s}'")))
    }
}

/// Parameters of the parametrised relations; unused fields are ignored.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct RelationParams {
    pub alpha: Option<f64>,
    pub n: Option<i64>,
    pub n1: Option<i64>,
    pub pair: Option<(ObservableKind, ObservableKind)>,
}

impl RelationParams {
    /// Checks that `relation` finds every parameter it needs.
    pub fn validate(&self, relation: RelationId) -> Result<()> {
        match relation {
            RelationId::R8 => match self.alpha {
                Some(a) if a.is_finite() => Ok(()),
                Some(a) => Err(Error::InvalidParams(format!("alpha must be finite, got {a}"))),
                None => Err(Error::InvalidParams("R8 requires alpha".into())),
            },
            RelationId::R12 => match (self.n, self.n1) {
                (Some(n), Some(n1)) => delta_chi(n, n1).map(|_| ()),
                _ => Err(Error::InvalidParams("R12 requires N and N1".into())),
            },
            RelationId::R60 => match self.pair {
                Some(_) => Ok(()),
                None => Err(Error::InvalidParams("R60 requires an observable pair A, B".into())),
            },
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    Satisfied,
    SatisfiedWithEquality,
    Violated,
    Indeterminate,
    NotApplicable,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Satisfied => "Satisfied",
            Verdict::SatisfiedWithEquality => "SatisfiedWithEquality",
            Verdict::Violated => "Violated",
            Verdict::Indeterminate => "Indeterminate",
            Verdict::NotApplicable => "NotApplicable",
        }
    }

    /// `lhs >= rhs` with absolute tolerance; equality wins when both hold.
    pub fn compare(lhs: f64, rhs: f64, tol: f64) -> Verdict {
        if (lhs - rhs).abs() <= tol {
            Verdict::SatisfiedWithEquality
        } else if lhs >= rhs - tol {
            Verdict::Satisfied
        } else {
            Verdict::Violated
        }
    }

    pub fn is_satisfied(self) -> bool {
        matches!(self, Verdict::Satisfied | Verdict::SatisfiedWithEquality)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A named diagnostic value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Scalar {
    Real(f64),
    Complex(Complex64),
}

/// Whether `(A_jΨ, A_kΨ) = (Ψ, A_j A_k Ψ)` holds for the relation's pair.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymmetryCondition {
    pub holds: bool,
    /// The largest (by modulus) symmetry deficit of the pair.
    pub deficit: Complex64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RelationReport {
    pub relation: RelationId,
    pub lhs: f64,
    pub rhs: f64,
    pub verdict: Verdict,
    pub diagnostics: BTreeMap<String, Scalar>,
    pub condition31: SymmetryCondition,
}

/// `γ_mm' = ∫_0^π Θ_lm Θ_lm' sin θ dθ` by Gauss–Legendre quadrature.
pub fn gamma(engine: &Engine, l: u32, m: i32, m1: i32) -> Result<f64> {
    if m.unsigned_abs() > l || m1.unsigned_abs() > l {
        return Err(Error::InvalidArgument(format!("(m, m') = ({m}, {m1}) outside |m| <= {l}")));
    }
    Ok(engine
        .theta_rule()
        .integrate(|t| theta_lm(l, m, t).unwrap() * theta_lm(l, m1, t).unwrap() * t.sin()))
}

/// `Δχ = [2π²(1/12 + N² − N1² + N − N1)]^{1/2}`, state independent.
pub fn delta_chi(n: i64, n1: i64) -> Result<f64> {
    if n == n1 {
        return Err(Error::EqualChiIntegers);
    }
    let (nf, n1f) = (n as f64, n1 as f64);
    let radicand = 2.0 * PI * PI * (1.0 / 12.0 + nf * nf - n1f * n1f + nf - n1f);
    if radicand < 0.0 {
        return Err(Error::NegativeRadicand { n, n1 });
    }
    Ok(radicand.sqrt())
}

/// `|1 − 2π|Ψ(2π)|²|` for circle states.
pub fn fourier_boundary_term(state: &State) -> Result<f64> {
    match state.family() {
        Family::Circular | Family::Rotor => {
            let psi = wavefunction(state, Point::phi(2.0 * PI))?;
            Ok((1.0 - 2.0 * PI * psi.norm_sqr()).abs())
        }
        family => Err(Error::FamilyMismatch { relation: RelationId::R52, family }),
    }
}

/// `Σ_mm' c*_m c_m' γ_mm'` for a spherical state.
pub fn gamma_sum(engine: &Engine, state: &State) -> Result<Complex64> {
    let State::Spherical(s) = state else {
        return Err(Error::FamilyMismatch { relation: RelationId::R58, family: state.family() });
    };
    let l = s.l() as i32;
    let mut acc = Complex64::new(0.0, 0.0);
    for m in -l..=l {
        for m1 in -l..=l {
            let c = s.coefficient(m).unwrap().conj() * s.coefficient(m1).unwrap();
            if c != Complex64::new(0.0, 0.0) {
                acc += c * gamma(engine, s.l(), m, m1)?;
            }
        }
    }
    Ok(acc)
}

/// The observable pair whose symmetry conditions a relation reports.
pub fn gate_pair(relation: RelationId, params: &RelationParams) -> (ObservableKind, ObservableKind) {
    use ObservableKind::*;
    match relation {
        RelationId::R10 => (Lz, SinPhi),
        RelationId::R11 => (Lz, CosPhi),
        RelationId::R12 => (Lz, Chi(params.n.unwrap_or(0))),
        RelationId::R36 => (Theta, Phi),
        RelationId::R60 => params.pair.expect("validated"),
        _ => (Lz, Phi),
    }
}

/// Gate for the restricted Robertson form: all four deficits of `(a, b)`.
fn symmetry_condition(engine: &Engine, state: &State, a: ObservableKind, b: ObservableKind) -> Result<SymmetryCondition> {
    let mut worst = Complex64::new(0.0, 0.0);
    for (x, y) in [(a, a), (a, b), (b, a), (b, b)] {
        let d = pair_deficit(engine, state, x, y)?;
        if d.norm() > worst.norm() {
            worst = d;
        }
    }
    Ok(SymmetryCondition { holds: worst.norm() <= engine.tolerance(), deficit: worst })
}

struct Builder {
    diagnostics: BTreeMap<String, Scalar>,
}

impl Builder {
    fn real(&mut self, name: &str, v: f64) {
        self.diagnostics.insert(name.to_string(), Scalar::Real(v));
    }

    fn complex(&mut self, name: &str, v: Complex64) {
        self.diagnostics.insert(name.to_string(), Scalar::Complex(v));
    }
}

/// Evaluates one relation on one state.
pub fn evaluate(
    engine: &Engine,
    relation: RelationId,
    state: &State,
    params: &RelationParams,
) -> Result<RelationReport> {
    let family = state.family();
    if !relation.families().contains(&family) {
        return Err(Error::FamilyMismatch { relation, family });
    }
    params.validate(relation)?;
    let tol = engine.tolerance();
    let hbar = state.hbar();
    let mut b = Builder { diagnostics: BTreeMap::new() };

    let (gate_a, gate_b) = gate_pair(relation, params);
    let gate = symmetry_condition(engine, state, gate_a, gate_b)?;

    let d_lz = std_dev(engine, ObservableKind::Lz, state)?;
    let d_phi = std_dev(engine, ObservableKind::Phi, state)?;
    if relation != RelationId::R60 {
        b.real("delta_lz", d_lz);
        b.real("delta_phi", d_phi);
    }

    let mut verdict_override = None;
    let (lhs, rhs) = match relation {
        RelationId::R5 => (d_lz * d_phi, hbar / 2.0),
        RelationId::R6 | RelationId::R7 => {
            let (numerator, denominator, rhs) = if relation == RelationId::R6 {
                (d_lz * d_phi, 1.0 - 3.0 * (d_phi / PI).powi(2), 0.16 * hbar)
            } else {
                ((d_lz * d_phi).powi(2), 1.0 - d_phi * d_phi, hbar * hbar / 4.0)
            };
            b.real("denominator", denominator);
            if denominator <= 0.0 || denominator.abs() < tol {
                verdict_override = Some(Verdict::Indeterminate);
                (f64::NAN, rhs)
            } else {
                (numerator / denominator, rhs)
            }
        }
        RelationId::R8 => {
            let alpha = params.alpha.expect("validated");
            b.real("alpha", alpha);
            let lhs = d_lz * d_lz + (hbar * alpha / 2.0).powi(2) * d_phi * d_phi;
            let rhs = hbar * hbar / 2.0 * ((9.0 / (PI * PI) + alpha * alpha).sqrt() - 3.0 / (PI * PI));
            (lhs, rhs)
        }
        RelationId::R10 | RelationId::R11 => {
            let (kind, weight) = if relation == RelationId::R10 {
                (ObservableKind::SinPhi, ObservableKind::CosPhi)
            } else {
                (ObservableKind::CosPhi, ObservableKind::SinPhi)
            };
            let d_trig = std_dev(engine, kind, state)?;
            let f = weight.function().expect("multiplicative").pow(2);
            let (mean_sq, _) = periodic_mean_of(engine, state, &f);
            b.real(if relation == RelationId::R10 { "delta_sin" } else { "delta_cos" }, d_trig);
            b.real(if relation == RelationId::R10 { "mean_cos2" } else { "mean_sin2" }, mean_sq.re);
            ((d_lz * d_trig).powi(2), hbar * hbar / 4.0 * mean_sq.re)
        }
        RelationId::R12 => {
            let d_chi = delta_chi(params.n.unwrap(), params.n1.unwrap())?;
            b.real("delta_chi", d_chi);
            (d_lz * d_chi, hbar / 2.0)
        }
        RelationId::R14 => (d_lz * d_lz + hbar * hbar * d_phi * d_phi, hbar * hbar),
        RelationId::R15 | RelationId::R52 => {
            let term = fourier_boundary_term(state)?;
            b.real("boundary_term", term);
            (d_lz * d_phi, hbar / 2.0 * term)
        }
        RelationId::R30 => {
            let c = correlation(engine, ObservableKind::Lz, ObservableKind::Phi, state)?;
            b.complex("correlation", c.value);
            (d_lz * d_phi, c.value.norm())
        }
        RelationId::R33 => {
            let lhs = d_lz * d_phi;
            if !gate.holds {
                verdict_override = Some(Verdict::NotApplicable);
            }
            (lhs, hbar / 2.0)
        }
        RelationId::R36 => {
            let d_theta = std_dev(engine, ObservableKind::Theta, state)?;
            let c = correlation(engine, ObservableKind::Theta, ObservableKind::Phi, state)?;
            let commutator = commutator_mean(engine, state, ObservableKind::Theta, ObservableKind::Phi)?;
            b.real("delta_theta", d_theta);
            b.complex("correlation", c.value);
            b.complex("commutator_mean", commutator);
            (d_theta * d_phi, c.value.norm())
        }
        RelationId::R58 => {
            let g = gamma_sum(engine, state)?;
            b.complex("gamma_sum", g);
            (d_lz * d_phi, hbar / 2.0 * (Complex64::new(1.0, 0.0) - g).norm())
        }
        RelationId::R60 => {
            let (a, bk) = params.pair.unwrap();
            let d_a = std_dev(engine, a, state)?;
            let d_b = std_dev(engine, bk, state)?;
            let commutator = commutator_mean(engine, state, a, bk)?;
            b.real("delta_a", d_a);
            b.real("delta_b", d_b);
            b.complex("commutator_mean", commutator);
            if !gate.holds {
                verdict_override = Some(Verdict::NotApplicable);
            }
            (d_a * d_b, commutator.norm() / 2.0)
        }
    };

    let verdict = verdict_override.unwrap_or_else(|| Verdict::compare(lhs, rhs, tol));
    if verdict == Verdict::SatisfiedWithEquality && lhs.abs() <= tol && rhs.abs() <= tol {
        b.real("trivial_equality", 1.0);
    }
    b.complex("deficit", gate.deficit);
    Ok(RelationReport { relation, lhs, rhs, verdict, diagnostics: b.diagnostics, condition31: gate })
}

/// `⟨[Â, B̂]⟩` from the matrix tables: `2i Im(ÂΨ, B̂Ψ)`.
pub fn commutator_mean(
    engine: &Engine,
    state: &State,
    a: ObservableKind,
    b: ObservableKind,
) -> Result<Complex64> {
    let cross = cross_product(engine, a, b, state)?;
    Ok(Complex64::new(0.0, 2.0 * cross.im))
}
