//! The shared JSON configuration file: physical constants plus quadrature
//! settings in one flat document. Every key is optional.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::quadrature::QuadratureConfig;
use crate::spectral::PhysicalParams;

fn default_c0() -> f64 {
    1.0
}
fn default_vertex_prefactor() -> f64 {
    1.0
}
fn default_rel_tol() -> f64 {
    1e-6
}
fn default_abs_tol() -> f64 {
    1e-12
}
fn default_max_subdivisions() -> usize {
    400
}

/// Flat configuration document. `uv_cut` is absent or null for "no cutoff"
/// since JSON cannot carry infinity.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ToolConfig {
    #[serde(default)]
    pub f: f64,
    #[serde(default = "default_c0")]
    pub c0: f64,
    #[serde(default = "default_vertex_prefactor")]
    pub vertex_prefactor: f64,
    #[serde(default = "default_rel_tol")]
    pub rel_tol: f64,
    #[serde(default = "default_abs_tol")]
    pub abs_tol: f64,
    #[serde(default)]
    pub ir_cut: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub uv_cut: Option<f64>,
    #[serde(default = "default_max_subdivisions")]
    pub max_subdivisions: usize,
}

impl Default for ToolConfig {
    fn default() -> Self {
        ToolConfig {
            f: 0.0,
            c0: default_c0(),
            vertex_prefactor: default_vertex_prefactor(),
            rel_tol: default_rel_tol(),
            abs_tol: default_abs_tol(),
            ir_cut: 0.0,
            uv_cut: None,
            max_subdivisions: default_max_subdivisions(),
        }
    }
}

impl ToolConfig {
    pub fn from_json_str(text: &str) -> Result<Self> {
        let cfg: ToolConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_json_file(path: impl AsRef<std::path::Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json_str(&text)
    }

    pub fn validate(&self) -> Result<()> {
        self.params().validate()?;
        self.quadrature().validate()
    }

    pub fn params(&self) -> PhysicalParams {
        PhysicalParams {
            f: self.f,
            c0: self.c0,
            vertex_prefactor: self.vertex_prefactor,
        }
    }

    pub fn quadrature(&self) -> QuadratureConfig {
        QuadratureConfig {
            rel_tol: self.rel_tol,
            abs_tol: self.abs_tol,
            ir_cut: self.ir_cut,
            uv_cut: self.uv_cut.unwrap_or(f64::INFINITY),
            max_subdivisions: self.max_subdivisions,
        }
    }
}
