//! The line-oriented state-spec format and report serialization.
//!
//! ```text
//! # comment
//! setting hbar 1.0
//! setting phi_nodes 256
//! state circular name=ring m=2
//! state rotor name=mix c={-1:(0.6,0),1:(0,0.8)}
//! state spherical name=sph l=1 c=[(0.7071068,0),(0,0),(0.7071068,0)] normalize=true
//! state pendulum name=qtp n=0 inertia=1 omega=1
//! relations R5 R8(alpha=1) R12(N=1,N1=0) R60(A=Lz,B=Chi[2])
//! ```

mod parser;
mod report;

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use num_complex::Complex64;

use crate::engine::{Engine, EngineSettings};
use crate::error::Result;
use crate::relations::{RelationId, RelationParams};
use crate::states::{CircularState, PendulumState, RotorSuperposition, SphericalState, State};

pub use parser::{parse, parse_with_options, ParseError, ParseErrorCode, ParseOptions};
pub use report::{serialize_report, ReportFormat, ReportRow, SerializeError};

/// File-level settings; unset keys fall back to the engine defaults.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Settings {
    pub hbar: Option<f64>,
    pub phi_nodes: Option<usize>,
    pub theta_nodes: Option<usize>,
    pub hermite_nodes: Option<usize>,
    pub tolerance: Option<f64>,
    pub normalize: Option<bool>,
}

impl Settings {
    pub fn engine_settings(&self) -> EngineSettings {
        let d = EngineSettings::default();
        EngineSettings {
            phi_nodes: self.phi_nodes.unwrap_or(d.phi_nodes),
            theta_nodes: self.theta_nodes.unwrap_or(d.theta_nodes),
            hermite_nodes: self.hermite_nodes.unwrap_or(d.hermite_nodes),
            tolerance: self.tolerance.unwrap_or(d.tolerance),
        }
    }
}

/// A state as written in the file, before defaults are applied.
#[derive(Clone, Debug, PartialEq)]
pub enum StateSpec {
    Circular { m: i64, hbar: Option<f64> },
    Rotor { c: BTreeMap<i64, Complex64>, hbar: Option<f64>, normalize: Option<bool> },
    Spherical {
        l: i64,
        c: Vec<Complex64>,
        hbar: Option<f64>,
        inertia: Option<f64>,
        normalize: Option<bool>,
    },
    Pendulum { n: i64, inertia: Option<f64>, omega: Option<f64>, hbar: Option<f64> },
}

impl StateSpec {
    pub fn family_name(&self) -> &'static str {
        match self {
            StateSpec::Circular { .. } => "circular",
            StateSpec::Rotor { .. } => "rotor",
            StateSpec::Spherical { .. } => "spherical",
            StateSpec::Pendulum { .. } => "pendulum",
        }
    }

    /// Builds the state. `normalize` is the file-level or forced flag; a
    /// per-state `normalize=` key wins over the file setting but not over a
    /// forced rescale.
    pub fn build(&self, settings: &Settings, force_normalize: bool) -> Result<State> {
        let default_hbar = settings.hbar.unwrap_or(1.0);
        let normalize = |own: &Option<bool>| {
            force_normalize || own.or(settings.normalize).unwrap_or(false)
        };
        let int = |name: &str, v: i64| {
            i32::try_from(v)
                .map_err(|_| crate::Error::InvalidArgument(format!("{name} = {v} out of range")))
        };
        Ok(match self {
            StateSpec::Circular { m, hbar } => {
                CircularState::new(int("m", *m)?, hbar.unwrap_or(default_hbar))?.into()
            }
            StateSpec::Rotor { c, hbar, normalize: own } => {
                let mut map = BTreeMap::new();
                for (&m, &v) in c {
                    map.insert(int("m", m)?, v);
                }
                RotorSuperposition::new(map, hbar.unwrap_or(default_hbar), normalize(own))?.into()
            }
            StateSpec::Spherical { l, c, hbar, inertia, normalize: own } => {
                let l = u32::try_from(*l)
                    .map_err(|_| crate::Error::InvalidArgument(format!("l = {l} out of range")))?;
                SphericalState::new(
                    l,
                    c.clone(),
                    hbar.unwrap_or(default_hbar),
                    inertia.unwrap_or(1.0),
                    normalize(own),
                )?
                .into()
            }
            StateSpec::Pendulum { n, inertia, omega, hbar } => {
                let n = u32::try_from(*n)
                    .map_err(|_| crate::Error::InvalidArgument(format!("n = {n} out of range")))?;
                PendulumState::new(
                    n,
                    inertia.unwrap_or(1.0),
                    omega.unwrap_or(1.0),
                    hbar.unwrap_or(default_hbar),
                )?
                .into()
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NamedState {
    pub name: String,
    pub spec: StateSpec,
    pub state: State,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Selection {
    pub relation: RelationId,
    pub params: RelationParams,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpecDocument {
    pub settings: Settings,
    pub states: Vec<NamedState>,
    pub selections: Vec<Selection>,
}

impl SpecDocument {
    pub fn engine(&self) -> Result<Engine> {
        Engine::new(self.settings.engine_settings())
    }
}

fn num(x: f64) -> String {
    format!("{x:?}")
}

fn complex(c: Complex64) -> String {
    format!("({},{})", num(c.re), num(c.im))
}

/// Canonical spec text: parsing it yields the same document.
impl fmt::Display for SpecDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = &self.settings;
        if let Some(v) = s.hbar {
            writeln!(f, "setting hbar {}", num(v))?;
        }
        for (key, v) in [("phi_nodes", s.phi_nodes), ("theta_nodes", s.theta_nodes), ("hermite_nodes", s.hermite_nodes)] {
            if let Some(v) = v {
                writeln!(f, "setting {key} {v}")?;
            }
        }
        if let Some(v) = s.tolerance {
            writeln!(f, "setting tolerance {}", num(v))?;
        }
        if let Some(v) = s.normalize {
            writeln!(f, "setting normalize {v}")?;
        }
        for named in &self.states {
            let mut line = format!("state {} name={}", named.spec.family_name(), named.name);
            let mut opt = |key: &str, v: Option<f64>| {
                if let Some(v) = v {
                    let _ = write!(line, " {key}={}", num(v));
                }
            };
            match &named.spec {
                StateSpec::Circular { m, hbar } => {
                    opt("hbar", *hbar);
                    let _ = write!(line, " m={m}");
                }
                StateSpec::Rotor { c, hbar, normalize } => {
                    opt("hbar", *hbar);
                    let items: Vec<String> =
                        c.iter().map(|(m, v)| format!("{m}:{}", complex(*v))).collect();
                    let _ = write!(line, " c={{{}}}", items.join(","));
                    if let Some(b) = normalize {
                        let _ = write!(line, " normalize={b}");
                    }
                }
                StateSpec::Spherical { l, c, hbar, inertia, normalize } => {
                    opt("hbar", *hbar);
                    opt("inertia", *inertia);
                    let items: Vec<String> = c.iter().map(|v| complex(*v)).collect();
                    let _ = write!(line, " l={l} c=[{}]", items.join(","));
                    if let Some(b) = normalize {
                        let _ = write!(line, " normalize={b}");
                    }
                }
                StateSpec::Pendulum { n, inertia, omega, hbar } => {
                    opt("hbar", *hbar);
                    opt("inertia", *inertia);
                    opt("omega", *omega);
                    let _ = write!(line, " n={n}");
                }
            }
            writeln!(f, "{line}")?;
        }
        write!(f, "relations")?;
        for sel in &self.selections {
            write!(f, " {}", sel.relation)?;
            let p = &sel.params;
            let mut args = Vec::new();
            if let Some(a) = p.alpha {
                args.push(format!("alpha={}", num(a)));
            }
            if let Some(n) = p.n {
                args.push(format!("N={n}"));
            }
            if let Some(n1) = p.n1 {
                args.push(format!("N1={n1}"));
            }
            if let Some((a, b)) = p.pair {
                args.push(format!("A={a},B={b}"));
            }
            if !args.is_empty() {
                write!(f, "({})", args.join(","))?;
            }
        }
        writeln!(f)
    }
}
