//! Run configuration: JSON with SI base units everywhere (meters, newtons).
//! Display-unit conversion is a rendering flag, never a file concern.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use casimir_core::{
    CorrugatedGeometry, MaterialKind, Measurement, PlasmaModel, QuadratureSettings,
};

use crate::exit::{CliError, CliResult};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub material: MaterialConfig,
    pub geometry: GeometryConfig,
    #[serde(default)]
    pub quadrature: QuadratureConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measurement: Option<MeasurementConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deviation_csv: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum MaterialConfig {
    Ideal,
    Plasma { lambda_p_m: f64 },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryConfig {
    #[serde(rename = "L_m")]
    pub l_m: f64,
    pub lambda_c_m: f64,
    pub a1_m: f64,
    pub a2_m: f64,
    #[serde(rename = "R_m", default, skip_serializing_if = "Option::is_none")]
    pub r_m: Option<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadratureConfig {
    #[serde(default = "default_rel_tolerance")]
    pub rel_tolerance: f64,
    #[serde(default = "default_max_subdivisions")]
    pub max_subdivisions: usize,
    #[serde(default)]
    pub abs_floor: f64,
}

fn default_rel_tolerance() -> f64 {
    1e-8
}
fn default_max_subdivisions() -> usize {
    200
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            rel_tolerance: default_rel_tolerance(),
            max_subdivisions: default_max_subdivisions(),
            abs_floor: 0.0,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasurementConfig {
    #[serde(rename = "value_N")]
    pub value_n: f64,
    #[serde(rename = "ci_halfwidth_N")]
    pub ci_halfwidth_n: f64,
    pub confidence: f64,
}

impl RunConfig {
    /// Reads and fully validates a configuration file. Parse errors carry
    /// the JSON line/column; semantic errors name the offending section.
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        let config: RunConfig = serde_json::from_str(&text).map_err(|e| {
            CliError::Config(format!("{}: {e}", path.display()))
        })?;
        config.validate()?;
        Ok(config)
    }

    /// Runs every section through the library constructors so all domain
    /// errors surface before any computation starts.
    pub fn validate(&self) -> CliResult<()> {
        self.material()
            .map_err(|e| CliError::Config(format!("config material: {e}")))?;
        self.geometry()
            .map_err(|e| CliError::Config(format!("config geometry: {e}")))?;
        self.settings()
            .map_err(|e| CliError::Config(format!("config quadrature: {e}")))?;
        self.measurement()
            .map_err(|e| CliError::Config(format!("config measurement: {e}")))?;
        Ok(())
    }

    pub fn material(&self) -> casimir_core::Result<MaterialKind> {
        match &self.material {
            MaterialConfig::Ideal => Ok(MaterialKind::IdealMetal),
            MaterialConfig::Plasma { lambda_p_m } => {
                Ok(MaterialKind::Plasma(PlasmaModel::new(*lambda_p_m)?))
            }
        }
    }

    pub fn plasma_model(&self) -> Option<PlasmaModel> {
        match &self.material {
            MaterialConfig::Ideal => None,
            MaterialConfig::Plasma { lambda_p_m } => PlasmaModel::new(*lambda_p_m).ok(),
        }
    }

    pub fn geometry(&self) -> casimir_core::Result<CorrugatedGeometry> {
        let g = &self.geometry;
        CorrugatedGeometry::new(g.l_m, g.lambda_c_m, g.a1_m, g.a2_m, g.r_m)
    }

    pub fn settings(&self) -> casimir_core::Result<QuadratureSettings> {
        QuadratureSettings::new(
            self.quadrature.rel_tolerance,
            self.quadrature.abs_floor,
            self.quadrature.max_subdivisions,
        )
    }

    pub fn measurement(&self) -> casimir_core::Result<Option<Measurement>> {
        self.measurement
            .as_ref()
            .map(|m| Measurement::new(m.value_n, m.ci_halfwidth_n, m.confidence))
            .transpose()
    }

    /// SHA-256 of the canonical JSON serialization (whitespace-insensitive).
    pub fn sha256(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("config serializes");
        let digest = Sha256::digest(&bytes);
        let mut out = String::with_capacity(64);
        use std::fmt::Write;
        for byte in digest {
            write!(out, "{byte:02x}").expect("hex fmt");
        }
        out
    }
}
