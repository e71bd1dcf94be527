use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numerics::{gauss_hermite, gauss_legendre, QuadratureRule};

pub const DEFAULT_PHI_NODES: usize = 256;
pub const DEFAULT_THETA_NODES: usize = 128;
pub const DEFAULT_HERMITE_NODES: usize = 128;
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Tunable numerical settings shared by every evaluation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EngineSettings {
    pub phi_nodes: usize,
    pub theta_nodes: usize,
    pub hermite_nodes: usize,
    /// Absolute tolerance used for verdict comparisons.
    pub tolerance: f64,
}

impl Default for EngineSettings {
    fn default() -> Self {
        EngineSettings {
            phi_nodes: DEFAULT_PHI_NODES,
            theta_nodes: DEFAULT_THETA_NODES,
            hermite_nodes: DEFAULT_HERMITE_NODES,
            tolerance: DEFAULT_TOLERANCE,
        }
    }
}

/// Pre-built quadrature rules for a given set of [`EngineSettings`].
///
/// Immutable once constructed; share it by reference across threads.
#[derive(Clone, Debug)]
pub struct Engine {
    settings: EngineSettings,
    phi: QuadratureRule,
    theta: QuadratureRule,
    hermite: QuadratureRule,
}

impl Engine {
    pub fn new(settings: EngineSettings) -> Result<Engine> {
        if !(settings.tolerance > 0.0) || !settings.tolerance.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "tolerance must be positive, got {}",
                settings.tolerance
            )));
        }
        Ok(Engine {
            phi: gauss_legendre(settings.phi_nodes, 0.0, 2.0 * PI)?,
            theta: gauss_legendre(settings.theta_nodes, 0.0, PI)?,
            hermite: gauss_hermite(settings.hermite_nodes)?,
            settings,
        })
    }

    pub fn settings(&self) -> &EngineSettings {
        &self.settings
    }

    pub fn tolerance(&self) -> f64 {
        self.settings.tolerance
    }

    /// Gauss–Legendre rule on `[0, 2π]`.
    pub fn phi_rule(&self) -> &QuadratureRule {
        &self.phi
    }

    /// Gauss–Legendre rule on `[0, π]`; the `sin θ` factor is not folded in.
    pub fn theta_rule(&self) -> &QuadratureRule {
        &self.theta
    }

    pub fn hermite_rule(&self) -> &QuadratureRule {
        &self.hermite
    }
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new(EngineSettings::default()).expect("default settings are valid")
    }
}
