//! Subcommand implementations. Each builds a serializable report; rendering
//! and emission happen in `main`.

use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use casimir_core::corrugation::{self, CorrugationPfa};
use casimir_core::deviation::{self, DeviationCurve};
use casimir_core::lifshitz::{self, DerivativeOrder};
use casimir_core::stats;
use casimir_core::{CorrugatedGeometry, MaterialKind, QuadratureSettings};

use crate::config::RunConfig;
use crate::exit::{CliError, CliResult};
use crate::report::{
    CalibrationReport, CollapseReport, ComparisonReport, CurveSummary, ExternalAmplitude,
    PValueEntry, PressureReport, PressureRow, Provenance, RadiusBlock, ValueWithError,
};

pub fn timestamp(no_timestamp: bool) -> Option<u64> {
    if no_timestamp {
        None
    } else {
        Some(
            SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        )
    }
}

fn to_vwe(r: &casimir_core::PlatePairResult) -> ValueWithError {
    ValueWithError::new(r.value, r.est_error)
}

/// L grid for the pressure table: the configured separation, or a log-spaced
/// sweep when bounds are given.
pub fn sweep_grid(
    l_config: f64,
    sweep_min: Option<f64>,
    sweep_max: Option<f64>,
    sweep_points: usize,
) -> CliResult<Vec<f64>> {
    match (sweep_min, sweep_max) {
        (None, None) => Ok(vec![l_config]),
        (Some(lo), Some(hi)) => {
            if !(lo > 0.0 && hi > lo) {
                return Err(CliError::Config(format!(
                    "sweep bounds must satisfy 0 < min < max, got {lo:e}..{hi:e}"
                )));
            }
            if sweep_points < 2 {
                return Err(CliError::Config(
                    "sweep needs at least 2 points".to_string(),
                ));
            }
            Ok((0..sweep_points)
                .map(|i| lo * (hi / lo).powf(i as f64 / (sweep_points - 1) as f64))
                .collect())
        }
        _ => Err(CliError::Config(
            "provide both --sweep-min and --sweep-max (or neither)".to_string(),
        )),
    }
}

pub fn cmd_pressure(
    config: &RunConfig,
    ls: &[f64],
    no_timestamp: bool,
) -> CliResult<PressureReport> {
    let kind = config.material().map_err(CliError::from)?;
    let settings = config.settings().map_err(CliError::from)?;
    let mut rows = Vec::with_capacity(ls.len());
    for &l in ls {
        let energy = lifshitz::energy_per_area(kind, l, &settings)?;
        let pressure = lifshitz::pressure(kind, l, &settings)?;
        let d1 = lifshitz::energy_derivative(kind, l, DerivativeOrder::First, &settings)?;
        let d2 = lifshitz::energy_derivative(kind, l, DerivativeOrder::Second, &settings)?;
        rows.push(PressureRow {
            l_m: l,
            energy_j_per_m2: to_vwe(&energy),
            pressure_pa: to_vwe(&pressure),
            d_energy_d_l_pa: to_vwe(&d1),
            d2_energy_d_l2_pa_per_m: to_vwe(&d2),
        });
    }
    Ok(PressureReport {
        generated_unix_time_s: timestamp(no_timestamp),
        provenance: Provenance::new(config),
        config: config.clone(),
        rows,
    })
}

fn resolve_radius(
    config: &RunConfig,
    geom: &CorrugatedGeometry,
    kind: MaterialKind,
    settings: &QuadratureSettings,
    calibrate_target: Option<f64>,
) -> CliResult<(CorrugatedGeometry, RadiusBlock)> {
    match (geom.radius(), calibrate_target) {
        (Some(_), Some(_)) => Err(CliError::Config(
            "geometry.R_m and --calibrate-target are mutually exclusive".to_string(),
        )),
        (Some(r), None) => {
            let _ = config;
            Ok((
                *geom,
                RadiusBlock {
                    value_m: r,
                    est_error_m: 0.0,
                    calibrated: false,
                    target_n: None,
                },
            ))
        }
        (None, Some(target)) => {
            let pressure = lifshitz::pressure(kind, geom.separation(), settings)?;
            let radius = corrugation::calibrate_radius(geom, kind, target, settings)?;
            let geom = geom.with_radius(radius)?;
            Ok((
                geom,
                RadiusBlock {
                    value_m: radius,
                    est_error_m: radius * (pressure.est_error / pressure.value),
                    calibrated: true,
                    target_n: Some(target),
                },
            ))
        }
        (None, None) => Err(CliError::Config(
            "geometry.R_m is missing; set it or pass --calibrate-target <N>".to_string(),
        )),
    }
}

pub fn cmd_lateral(
    config: &RunConfig,
    calibrate_target: Option<f64>,
    csv_base: Option<&Path>,
    no_timestamp: bool,
) -> CliResult<ComparisonReport> {
    let kind = config.material().map_err(CliError::from)?;
    let settings = config.settings().map_err(CliError::from)?;
    let geom0 = config.geometry().map_err(CliError::from)?;
    let (geom, radius_block) = resolve_radius(config, &geom0, kind, &settings, calibrate_target)?;

    let pressure = lifshitz::pressure(kind, geom.separation(), &settings)?;
    let k = geom.corrugation_wavevector();
    let linear_value =
        std::f64::consts::PI * radius_block.value_m * k * geom.a1() * geom.a2() * pressure.value;
    let linear = ValueWithError::new(
        linear_value,
        std::f64::consts::PI
            * radius_block.value_m
            * k
            * geom.a1()
            * geom.a2()
            * pressure.est_error,
    );

    let pfa = CorrugationPfa::new(geom, kind, &settings)?;
    let amp = pfa.complete_amplitude()?;
    let complete = ValueWithError::new(amp.amplitude, amp.est_error);
    let b_max = ValueWithError::new(amp.b_max, geom.lambda_c() * 1e-6);

    let higher_order_ratio = if geom.a1() * geom.a2() > 0.0 && linear.value != 0.0 {
        let value = complete.value / linear.value;
        let rel = complete.est_error / complete.value.abs().max(f64::MIN_POSITIVE)
            + linear.est_error / linear.value.abs();
        Some(ValueWithError::new(value, value.abs() * rel))
    } else {
        None
    };

    let mut external = Vec::new();
    if let Some(csv) = &config.deviation_csv {
        let path = match csv_base {
            Some(base) => base.join(csv),
            None => PathBuf::from(csv),
        };
        let curves = deviation::load_deviation_csv(&path)?;
        let kl = k * geom.separation();
        for curve in &curves {
            if let Some(rho) = curve.rho_at(kl) {
                let amplitude = deviation::apply_deviation(rho, linear.value)?;
                external.push(ExternalAmplitude {
                    curve: curve.label().to_string(),
                    kl,
                    rho,
                    amplitude_n: ValueWithError::new(amplitude, rho * linear.est_error),
                });
            }
        }
    }

    let validity = config
        .plasma_model()
        .map(|m| deviation::validity_diagnostics(&geom, &m, deviation::DEFAULT_WARN_THRESHOLD));

    let mut p_values = Vec::new();
    if let Some(m) = config.measurement().map_err(CliError::from)? {
        let sigma = stats::sigma_from_ci(&m);
        let mut add = |label: &str, theory: f64| {
            p_values.push(PValueEntry {
                theory: label.to_string(),
                theory_n: theory,
                sigma_n: sigma,
                two_sided: stats::compatibility_probability(&m, theory),
                one_sided: stats::one_sided_probability(&m, theory),
            });
        };
        add("linear PFA", linear.value);
        add("complete PFA", complete.value);
        for ext in &external {
            add(&format!("external [{}]", ext.curve), ext.amplitude_n.value);
        }
    }

    Ok(ComparisonReport {
        generated_unix_time_s: timestamp(no_timestamp),
        provenance: Provenance::new(config),
        config: config.clone(),
        radius: radius_block,
        linear_amplitude_n: linear,
        complete_amplitude_n: complete,
        b_max_m: b_max,
        higher_order_ratio,
        external_amplitudes_n: external,
        validity,
        p_values,
    })
}

pub fn cmd_collapse(
    paths: &[PathBuf],
    rescale: Option<f64>,
    no_timestamp: bool,
) -> CliResult<CollapseReport> {
    let mut curves: Vec<DeviationCurve> = Vec::new();
    for path in paths {
        curves.extend(deviation::load_deviation_csv(path)?);
    }
    let summaries = curves
        .iter()
        .map(|c| {
            let (kl_min, kl_max) = c.kl_range();
            CurveSummary {
                label: c.label().to_string(),
                l_m: c.separation(),
                points: c.points().len(),
                kl_min,
                kl_max,
            }
        })
        .collect();
    let spread = if curves.len() >= 2 {
        Some(deviation::collapse_check(&curves)?)
    } else {
        None
    };
    let mut rescaled = Vec::new();
    if let Some(factor) = rescale {
        for curve in &curves {
            for p in curve.points() {
                rescaled.push(deviation::rescale_point(*p, factor)?);
            }
        }
    }
    Ok(CollapseReport {
        generated_unix_time_s: timestamp(no_timestamp),
        files: paths.iter().map(|p| p.display().to_string()).collect(),
        curves: summaries,
        spread,
        rescale_factor: rescale,
        rescaled,
    })
}

pub fn cmd_calibrate_radius(
    config: &RunConfig,
    target: f64,
    no_timestamp: bool,
) -> CliResult<CalibrationReport> {
    let kind = config.material().map_err(CliError::from)?;
    let settings = config.settings().map_err(CliError::from)?;
    let geom = config.geometry().map_err(CliError::from)?;
    let pressure = lifshitz::pressure(kind, geom.separation(), &settings)?;
    let radius = corrugation::calibrate_radius(&geom, kind, target, &settings)?;
    Ok(CalibrationReport {
        generated_unix_time_s: timestamp(no_timestamp),
        provenance: Provenance::new(config),
        target_n: target,
        radius_m: ValueWithError::new(radius, radius * (pressure.est_error / pressure.value)),
        pressure_pa: to_vwe(&pressure),
    })
}

/// Recomputes a previously emitted JSON report from its embedded
/// configuration and checks every number against the stored one.
pub fn cmd_verify(report_path: &Path) -> CliResult<String> {
    let text = std::fs::read_to_string(report_path).map_err(|e| {
        CliError::Config(format!("cannot read {}: {e}", report_path.display()))
    })?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Config(format!("{}: {e}", report_path.display())))?;

    if value.get("linear_amplitude_N").is_some() {
        let stored: ComparisonReport = serde_json::from_value(value)
            .map_err(|e| CliError::Config(format!("{}: {e}", report_path.display())))?;
        // config-relative paths always resolve against the working directory
        verify_comparison(&stored, None)
    } else if value.get("rows").is_some() {
        let stored: PressureReport = serde_json::from_value(value)
            .map_err(|e| CliError::Config(format!("{}: {e}", report_path.display())))?;
        verify_pressure(&stored)
    } else {
        Err(CliError::Config(format!(
            "{}: not a recognized report (expected a lateral or pressure report)",
            report_path.display()
        )))
    }
}

struct VerifyLog {
    lines: String,
    failures: usize,
}

impl VerifyLog {
    fn new() -> Self {
        Self {
            lines: String::new(),
            failures: 0,
        }
    }

    fn check(&mut self, name: &str, stored: ValueWithError, fresh: ValueWithError) {
        let tol = 2.0 * (stored.est_error + fresh.est_error) + 1e-12 * stored.value.abs();
        let delta = (fresh.value - stored.value).abs();
        let ok = delta <= tol;
        if !ok {
            self.failures += 1;
        }
        self.lines.push_str(&format!(
            "  {} {name}: stored {:e}, recomputed {:e}, |delta| {:.2e} (tol {:.2e})\n",
            if ok { "ok  " } else { "FAIL" },
            stored.value,
            fresh.value,
            delta,
            tol
        ));
    }

    fn finish(self, what: &str) -> CliResult<String> {
        if self.failures == 0 {
            Ok(format!("{what}: all values reproduced\n{}", self.lines))
        } else {
            Err(CliError::Internal(format!(
                "{what}: {} value(s) failed to reproduce\n{}",
                self.failures, self.lines
            )))
        }
    }
}

fn verify_comparison(stored: &ComparisonReport, base: Option<&Path>) -> CliResult<String> {
    stored.config.validate()?;
    let target = if stored.radius.calibrated {
        Some(stored.radius.target_n.ok_or_else(|| {
            CliError::Config("report says calibrated but stores no target_N".to_string())
        })?)
    } else {
        None
    };
    let fresh = cmd_lateral(&stored.config, target, base, true)?;

    let mut log = VerifyLog::new();
    log.check(
        "radius_m",
        ValueWithError::new(stored.radius.value_m, stored.radius.est_error_m),
        ValueWithError::new(fresh.radius.value_m, fresh.radius.est_error_m),
    );
    log.check(
        "linear_amplitude_N",
        stored.linear_amplitude_n,
        fresh.linear_amplitude_n,
    );
    log.check(
        "complete_amplitude_N",
        stored.complete_amplitude_n,
        fresh.complete_amplitude_n,
    );
    log.check("b_max_m", stored.b_max_m, fresh.b_max_m);
    match (&stored.higher_order_ratio, &fresh.higher_order_ratio) {
        (Some(a), Some(b)) => log.check("higher_order_ratio", *a, *b),
        (None, None) => {}
        _ => {
            log.failures += 1;
            log.lines
                .push_str("  FAIL higher_order_ratio: defined/undefined mismatch\n");
        }
    }
    if stored.external_amplitudes_n.len() != fresh.external_amplitudes_n.len() {
        log.failures += 1;
        log.lines
            .push_str("  FAIL external_amplitudes_N: entry count mismatch\n");
    } else {
        for (a, b) in stored
            .external_amplitudes_n
            .iter()
            .zip(&fresh.external_amplitudes_n)
        {
            log.check(
                &format!("external_amplitude_N[{}]", a.curve),
                a.amplitude_n,
                b.amplitude_n,
            );
        }
    }
    if stored.p_values.len() != fresh.p_values.len() {
        log.failures += 1;
        log.lines.push_str("  FAIL p_values: entry count mismatch\n");
    } else {
        for (a, b) in stored.p_values.iter().zip(&fresh.p_values) {
            log.check(
                &format!("p_two_sided[{}]", a.theory),
                ValueWithError::new(a.two_sided, a.two_sided * 1e-9),
                ValueWithError::new(b.two_sided, b.two_sided * 1e-9),
            );
        }
    }
    log.finish("lateral report")
}

fn verify_pressure(stored: &PressureReport) -> CliResult<String> {
    stored.config.validate()?;
    let ls: Vec<f64> = stored.rows.iter().map(|r| r.l_m).collect();
    let fresh = cmd_pressure(&stored.config, &ls, true)?;
    let mut log = VerifyLog::new();
    for (a, b) in stored.rows.iter().zip(&fresh.rows) {
        let tag = format!("L={:e}", a.l_m);
        log.check(&format!("energy[{tag}]"), a.energy_j_per_m2, b.energy_j_per_m2);
        log.check(&format!("pressure[{tag}]"), a.pressure_pa, b.pressure_pa);
        log.check(
            &format!("dE_dL[{tag}]"),
            a.d_energy_d_l_pa,
            b.d_energy_d_l_pa,
        );
        log.check(
            &format!("d2E_dL2[{tag}]"),
            a.d2_energy_d_l2_pa_per_m,
            b.d2_energy_d_l2_pa_per_m,
        );
    }
    log.finish("pressure report")
}
