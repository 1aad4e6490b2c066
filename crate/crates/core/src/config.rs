//! JSON run configuration.
//!
//! Every section is optional and falls back to the reference setup: the
//! isotropic unit-parameter model, the standard two-branch initial state,
//! a [0, 20] plotting window at step 0.01, and the qubit-side transpose.
//!
//! ```json
//! {
//!   "model": { "j_x": 1.0, "j_y": 1.0, "j_z": 1.0, "d_z": 2.0, "b_qb": 1.0, "b_qt": 1.0 },
//!   "initial_state": { "alpha": 1.0 },
//!   "grid": { "t_start": 0.0, "t_end": 20.0, "step": 0.01 },
//!   "side": "qubit",
//!   "outputs": { "csv": "trace.csv", "svg": "trace.svg", "stats": "stats.json" }
//! }
//! ```
//!
//! `initial_state` takes either the `alpha` shorthand shown above (the
//! antipodal equal-weight family) or the explicit fields `alpha1`, `alpha2`,
//! `beta1`, `beta2`, `theta`, `phi`; mixing the two is rejected. Complex
//! parameters are written as a plain number or as an `[re, im]` pair.

use crate::dynamics::{DynamicsError, TimeGrid};
use crate::entanglement::Side;
use crate::model::{ModelError, ModelParams};
use crate::states::{build_initial_state, InitialStateSpec, StateError, StateVector};
use num_complex::Complex64;
use serde::Deserialize;
use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("invalid config JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("initial_state: the alpha shorthand cannot be combined with {field}")]
    ShorthandConflict { field: &'static str },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Grid(#[from] DynamicsError),
}

/// A complex number in config files: `1.5` or `[1.5, -0.25]`.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(untagged, expecting = "a number or an [re, im] pair")]
pub enum ComplexParam {
    Real(f64),
    Cartesian([f64; 2]),
}

impl From<ComplexParam> for Complex64 {
    fn from(value: ComplexParam) -> Complex64 {
        match value {
            ComplexParam::Real(re) => Complex64::new(re, 0.0),
            ComplexParam::Cartesian([re, im]) => Complex64::new(re, im),
        }
    }
}

/// `initial_state` section: either the shorthand or explicit fields.
#[derive(Debug, Clone, Copy, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct StateConfig {
    pub alpha: Option<ComplexParam>,
    pub alpha1: Option<ComplexParam>,
    pub alpha2: Option<ComplexParam>,
    pub beta1: Option<ComplexParam>,
    pub beta2: Option<ComplexParam>,
    pub theta: Option<f64>,
    pub phi: Option<f64>,
}

impl StateConfig {
    pub fn resolve(&self) -> Result<InitialStateSpec, ConfigError> {
        if let Some(alpha) = self.alpha {
            let conflicts: [(&'static str, bool); 6] = [
                ("alpha1", self.alpha1.is_some()),
                ("alpha2", self.alpha2.is_some()),
                ("beta1", self.beta1.is_some()),
                ("beta2", self.beta2.is_some()),
                ("theta", self.theta.is_some()),
                ("phi", self.phi.is_some()),
            ];
            if let Some((field, _)) = conflicts.iter().find(|(_, set)| *set) {
                return Err(ConfigError::ShorthandConflict { field });
            }
            return Ok(InitialStateSpec::from_alpha(alpha.into()));
        }
        let base = InitialStateSpec::default();
        Ok(InitialStateSpec {
            alpha1: self.alpha1.map(Complex64::from).unwrap_or(base.alpha1),
            alpha2: self.alpha2.map(Complex64::from).unwrap_or(base.alpha2),
            beta1: self.beta1.map(Complex64::from).unwrap_or(base.beta1),
            beta2: self.beta2.map(Complex64::from).unwrap_or(base.beta2),
            theta: self.theta.unwrap_or(base.theta),
            phi: self.phi.unwrap_or(base.phi),
        })
    }
}

/// `grid` section.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridConfig {
    pub t_start: f64,
    pub t_end: f64,
    pub step: f64,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            t_start: 0.0,
            t_end: 20.0,
            step: 0.01,
        }
    }
}

/// `outputs` section; omitted entries are simply not written.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputPaths {
    pub csv: Option<PathBuf>,
    pub svg: Option<PathBuf>,
    pub stats: Option<PathBuf>,
}

/// Top-level run configuration.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub model: ModelParams,
    pub initial_state: StateConfig,
    pub grid: GridConfig,
    pub side: Side,
    pub outputs: OutputPaths,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Validates the configuration into ready-to-run pieces, building the
    /// initial state along the way so bad physics is caught here rather
    /// than mid-run.
    pub fn resolve(&self) -> Result<ResolvedRun, ConfigError> {
        self.model.validate()?;
        let state_spec = self.initial_state.resolve()?;
        let state = build_initial_state(&state_spec)?;
        let grid = TimeGrid::new(self.grid.t_start, self.grid.t_end, self.grid.step)?;
        Ok(ResolvedRun {
            params: self.model,
            state_spec,
            state,
            grid,
            side: self.side,
            outputs: self.outputs.clone(),
        })
    }
}

/// A validated configuration.
#[derive(Debug, Clone)]
pub struct ResolvedRun {
    pub params: ModelParams,
    pub state_spec: InitialStateSpec,
    pub state: StateVector,
    pub grid: TimeGrid,
    pub side: Side,
    pub outputs: OutputPaths,
}
