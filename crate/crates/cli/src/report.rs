//! Report types and rendering. JSON is the machine contract (SI units,
//! deterministic field order); CSV targets plotting pipelines ('#'-prefixed
//! header lines); text is for people, optionally in nm/pN.

use serde::{Deserialize, Serialize};

use casimir_core::deviation::DeviationPoint;
use casimir_core::ValidityReport;

use crate::config::RunConfig;

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ValueWithError {
    pub value: f64,
    pub est_error: f64,
}

impl ValueWithError {
    pub fn new(value: f64, est_error: f64) -> Self {
        Self { value, est_error }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Provenance {
    pub constants_revision: String,
    pub hbar_js: f64,
    pub c_m_per_s: f64,
    pub rel_tolerance: f64,
    pub max_subdivisions: usize,
    pub config_sha256: String,
}

impl Provenance {
    pub fn new(config: &RunConfig) -> Self {
        Self {
            constants_revision: casimir_core::constants::CONSTANTS_REVISION.to_string(),
            hbar_js: casimir_core::constants::HBAR,
            c_m_per_s: casimir_core::constants::SPEED_OF_LIGHT,
            rel_tolerance: config.quadrature.rel_tolerance,
            max_subdivisions: config.quadrature.max_subdivisions,
            config_sha256: config.sha256(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RadiusBlock {
    pub value_m: f64,
    pub est_error_m: f64,
    pub calibrated: bool,
    #[serde(rename = "target_N", default, skip_serializing_if = "Option::is_none")]
    pub target_n: Option<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExternalAmplitude {
    pub curve: String,
    pub kl: f64,
    pub rho: f64,
    #[serde(rename = "amplitude_N")]
    pub amplitude_n: ValueWithError,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PValueEntry {
    pub theory: String,
    #[serde(rename = "theory_N")]
    pub theory_n: f64,
    #[serde(rename = "sigma_N")]
    pub sigma_n: f64,
    pub two_sided: f64,
    pub one_sided: f64,
}

/// End-to-end lateral-force comparison report.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComparisonReport {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generated_unix_time_s: Option<u64>,
    pub provenance: Provenance,
    pub config: RunConfig,
    pub radius: RadiusBlock,
    #[serde(rename = "linear_amplitude_N")]
    pub linear_amplitude_n: ValueWithError,
    #[serde(rename = "complete_amplitude_N")]
    pub complete_amplitude_n: ValueWithError,
    pub b_max_m: ValueWithError,
    /// Absent (JSON null) when undefined, i.e. when a1·a2 = 0.
    pub higher_order_ratio: Option<ValueWithError>,
    #[serde(
        rename = "external_amplitudes_N",
        default,
        skip_serializing_if = "Vec::is_empty"
    )]
    pub external_amplitudes_n: Vec<ExternalAmplitude>,
    /// Present for plasma-model runs; the λ_P ratios are undefined for the
    /// ideal metal.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub validity: Option<ValidityReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub p_values: Vec<PValueEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PressureRow {
    #[serde(rename = "L_m")]
    pub l_m: f64,
    #[serde(rename = "energy_J_per_m2")]
    pub energy_j_per_m2: ValueWithError,
    #[serde(rename = "pressure_Pa")]
    pub pressure_pa: ValueWithError,
    #[serde(rename = "dE_dL_Pa")]
    pub d_energy_d_l_pa: ValueWithError,
    #[serde(rename = "d2E_dL2_Pa_per_m")]
    pub d2_energy_d_l2_pa_per_m: ValueWithError,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PressureReport {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generated_unix_time_s: Option<u64>,
    pub provenance: Provenance,
    pub config: RunConfig,
    pub rows: Vec<PressureRow>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CurveSummary {
    pub label: String,
    #[serde(rename = "L_m")]
    pub l_m: f64,
    pub points: usize,
    pub kl_min: f64,
    pub kl_max: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CollapseReport {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generated_unix_time_s: Option<u64>,
    pub files: Vec<String>,
    pub curves: Vec<CurveSummary>,
    /// kL-collapse spread statistic; absent with fewer than two curves.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spread: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rescale_factor: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rescaled: Vec<DeviationPoint>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CalibrationReport {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generated_unix_time_s: Option<u64>,
    pub provenance: Provenance,
    #[serde(rename = "target_N")]
    pub target_n: f64,
    pub radius_m: ValueWithError,
    #[serde(rename = "pressure_Pa")]
    pub pressure_pa: ValueWithError,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Units {
    Si,
    Human,
}

pub fn json_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn fmt_len(m: f64, units: Units) -> String {
    match units {
        Units::Si => format!("{m:.6e} m"),
        Units::Human if m.abs() >= 1e-6 => format!("{:.3} um", m * 1e6),
        Units::Human => format!("{:.3} nm", m * 1e9),
    }
}

fn fmt_force(n: f64, units: Units) -> String {
    match units {
        Units::Si => format!("{n:.6e} N"),
        Units::Human => format!("{:.4} pN", n * 1e12),
    }
}

fn fmt_force_we(v: &ValueWithError, units: Units) -> String {
    match units {
        Units::Si => format!("{:.6e} ± {:.1e} N", v.value, v.est_error),
        Units::Human => format!("{:.4} ± {:.4} pN", v.value * 1e12, v.est_error * 1e12),
    }
}

impl ComparisonReport {
    pub fn render_text(&self, units: Units) -> String {
        let mut out = String::new();
        out.push_str("lateral Casimir force, corrugated sphere-plate (PFA)\n");
        out.push_str(&format!("  config sha256      : {}\n", self.provenance.config_sha256));
        let radius_note = if self.radius.calibrated {
            format!(
                " (calibrated to a linear amplitude of {})",
                fmt_force(self.radius.target_n.unwrap_or(f64::NAN), units)
            )
        } else {
            String::new()
        };
        out.push_str(&format!(
            "  sphere radius      : {}{}\n",
            fmt_len(self.radius.value_m, units),
            radius_note
        ));
        out.push_str(&format!(
            "  linear amplitude   : {}\n",
            fmt_force_we(&self.linear_amplitude_n, units)
        ));
        out.push_str(&format!(
            "  complete amplitude : {}\n",
            fmt_force_we(&self.complete_amplitude_n, units)
        ));
        out.push_str(&format!(
            "  shift of maximum   : {}\n",
            fmt_len(self.b_max_m.value, units)
        ));
        match &self.higher_order_ratio {
            Some(r) => out.push_str(&format!(
                "  complete/linear    : {:.6} ± {:.1e}\n",
                r.value, r.est_error
            )),
            None => out.push_str("  complete/linear    : undefined (a1*a2 = 0)\n"),
        }
        for ext in &self.external_amplitudes_n {
            out.push_str(&format!(
                "  external amplitude : {} (rho = {:.6} at kL = {:.6}, {})\n",
                fmt_force_we(&ext.amplitude_n, units),
                ext.rho,
                ext.kl,
                ext.curve
            ));
        }
        if let Some(v) = &self.validity {
            out.push_str(&format!(
                "  validity           : a1/L = {:.4}{} a2/L = {:.4}{} a1/lambda_P = {:.4}{} a2/lambda_P = {:.4}{}\n",
                v.ratio_a1_l.value,
                warn_mark(v.ratio_a1_l.warn),
                v.ratio_a2_l.value,
                warn_mark(v.ratio_a2_l.warn),
                v.ratio_a1_lambda_p.value,
                warn_mark(v.ratio_a1_lambda_p.warn),
                v.ratio_a2_lambda_p.value,
                warn_mark(v.ratio_a2_lambda_p.warn),
            ));
            out.push_str(&format!(
                "  PFA separation     : L/lambda_C = {:.4} ({})\n",
                v.ratio_l_lambda_c,
                if v.pfa_separation_ok {
                    "separation several times below the corrugation wavelength"
                } else {
                    "outside the trusted PFA regime"
                }
            ));
        }
        for p in &self.p_values {
            out.push_str(&format!(
                "  p({}) : two-sided {:.4e}, one-sided {:.4e} (sigma = {})\n",
                p.theory,
                p.two_sided,
                p.one_sided,
                fmt_force(p.sigma_n, units)
            ));
        }
        out
    }

    pub fn render_csv(&self) -> String {
        let mut out = String::new();
        out.push_str("# lateral comparison report (SI units)\n");
        out.push_str(&format!("# config_sha256: {}\n", self.provenance.config_sha256));
        out.push_str("# quantity,value,est_error\n");
        out.push_str(&format!(
            "radius_m,{:e},{:e}\n",
            self.radius.value_m, self.radius.est_error_m
        ));
        out.push_str(&format!(
            "linear_amplitude_N,{:e},{:e}\n",
            self.linear_amplitude_n.value, self.linear_amplitude_n.est_error
        ));
        out.push_str(&format!(
            "complete_amplitude_N,{:e},{:e}\n",
            self.complete_amplitude_n.value, self.complete_amplitude_n.est_error
        ));
        out.push_str(&format!(
            "b_max_m,{:e},{:e}\n",
            self.b_max_m.value, self.b_max_m.est_error
        ));
        if let Some(r) = &self.higher_order_ratio {
            out.push_str(&format!("higher_order_ratio,{:e},{:e}\n", r.value, r.est_error));
        }
        for ext in &self.external_amplitudes_n {
            out.push_str(&format!(
                "external_amplitude_N[{}],{:e},{:e}\n",
                ext.curve, ext.amplitude_n.value, ext.amplitude_n.est_error
            ));
        }
        for p in &self.p_values {
            out.push_str(&format!("p_two_sided[{}],{:e},0\n", p.theory, p.two_sided));
        }
        out
    }
}

fn warn_mark(warn: bool) -> &'static str {
    if warn {
        " [WARN]"
    } else {
        " [ok]"
    }
}

impl PressureReport {
    pub fn render_text(&self, units: Units) -> String {
        let mut out = String::new();
        out.push_str("two-plate Casimir quantities\n");
        out.push_str(&format!("  config sha256: {}\n", self.provenance.config_sha256));
        for row in &self.rows {
            out.push_str(&format!("  L = {}\n", fmt_len(row.l_m, units)));
            out.push_str(&format!(
                "    E     = {:.9e} ± {:.2e} J/m^2\n",
                row.energy_j_per_m2.value, row.energy_j_per_m2.est_error
            ));
            out.push_str(&format!(
                "    P     = {:.9e} ± {:.2e} Pa (attraction magnitude)\n",
                row.pressure_pa.value, row.pressure_pa.est_error
            ));
            out.push_str(&format!(
                "    dE/dL = {:.9e} ± {:.2e} Pa\n",
                row.d_energy_d_l_pa.value, row.d_energy_d_l_pa.est_error
            ));
            out.push_str(&format!(
                "    d2E/dL2 = {:.9e} ± {:.2e} Pa/m\n",
                row.d2_energy_d_l2_pa_per_m.value, row.d2_energy_d_l2_pa_per_m.est_error
            ));
        }
        out
    }

    pub fn render_csv(&self) -> String {
        let mut out = String::new();
        out.push_str("# two-plate Casimir quantities (SI units)\n");
        out.push_str(&format!("# config_sha256: {}\n", self.provenance.config_sha256));
        out.push_str(
            "# L_m,energy_J_per_m2,energy_err,pressure_Pa,pressure_err,dE_dL_Pa,dE_dL_err,d2E_dL2_Pa_per_m,d2E_dL2_err\n",
        );
        for r in &self.rows {
            out.push_str(&format!(
                "{:e},{:e},{:e},{:e},{:e},{:e},{:e},{:e},{:e}\n",
                r.l_m,
                r.energy_j_per_m2.value,
                r.energy_j_per_m2.est_error,
                r.pressure_pa.value,
                r.pressure_pa.est_error,
                r.d_energy_d_l_pa.value,
                r.d_energy_d_l_pa.est_error,
                r.d2_energy_d_l2_pa_per_m.value,
                r.d2_energy_d_l2_pa_per_m.est_error,
            ));
        }
        out
    }
}

impl CollapseReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str("deviation-curve kL collapse\n");
        for c in &self.curves {
            out.push_str(&format!(
                "  curve {}: {} points, L = {:e} m, kL in [{:.6}, {:.6}]\n",
                c.label, c.points, c.l_m, c.kl_min, c.kl_max
            ));
        }
        match self.spread {
            Some(s) => out.push_str(&format!("  collapse spread: {s:.6e}\n")),
            None => out.push_str("  collapse spread: not computed (needs at least two curves)\n"),
        }
        if let Some(f) = self.rescale_factor {
            out.push_str(&format!("  rescaled points (factor {f}):\n"));
            out.push_str("    k_rad_per_m,L_m,rho\n");
            for p in &self.rescaled {
                out.push_str(&format!("    {:e},{:e},{}\n", p.k, p.l, p.rho));
            }
        }
        out
    }

    pub fn render_csv(&self) -> String {
        let mut out = String::new();
        out.push_str("# deviation-curve kL collapse\n");
        match self.spread {
            Some(s) => out.push_str(&format!("# spread: {s:e}\n")),
            None => out.push_str("# spread: n/a\n"),
        }
        out.push_str("# k_rad_per_m,L_m,rho (rescaled points)\n");
        for p in &self.rescaled {
            out.push_str(&format!("{:e},{:e},{}\n", p.k, p.l, p.rho));
        }
        out
    }
}

impl CalibrationReport {
    pub fn render_text(&self, units: Units) -> String {
        format!(
            "radius calibration\n  target linear amplitude: {}\n  plate pressure: {:.9e} ± {:.2e} Pa\n  calibrated radius: {} ± {:.2e} m\n",
            fmt_force(self.target_n, units),
            self.pressure_pa.value,
            self.pressure_pa.est_error,
            fmt_len(self.radius_m.value, units),
            self.radius_m.est_error,
        )
    }

    pub fn render_csv(&self) -> String {
        format!(
            "# radius calibration\n# quantity,value,est_error\ntarget_N,{:e},0\nradius_m,{:e},{:e}\npressure_Pa,{:e},{:e}\n",
            self.target_n,
            self.radius_m.value,
            self.radius_m.est_error,
            self.pressure_pa.value,
            self.pressure_pa.est_error,
        )
    }
}
