//! Ingestion and analysis of tabulated beyond-PFA deviation curves ρ(k, L).
//!
//! The curves themselves are external data (this crate never recomputes
//! them): ρ multiplies a PFA amplitude to produce the externally implied
//! force. The analysis tools test whether tabulated curves collapse onto a
//! single function of the product kL, rescale points at fixed kL, and
//! evaluate the small-amplitude validity ratios of the PFA treatment.

use std::io::{BufRead, BufReader};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::corrugation::CorrugatedGeometry;
use crate::dielectric::PlasmaModel;
use crate::error::{Error, Result};

/// One tabulated deviation sample: corrugation wavevector k (1/m), plate
/// separation L (m) and the beyond-PFA/PFA amplitude ratio ρ.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeviationPoint {
    pub k: f64,
    pub l: f64,
    pub rho: f64,
}

/// A deviation curve tabulated at a single separation.
#[derive(Clone, Debug)]
pub struct DeviationCurve {
    label: String,
    /// Sorted by k; all points share the same L.
    points: Vec<DeviationPoint>,
}

impl DeviationCurve {
    /// Validates ρ > 0, a common L for every point and distinct k values,
    /// then stores the points sorted by k.
    pub fn new(label: impl Into<String>, mut points: Vec<DeviationPoint>) -> Result<Self> {
        let label = label.into();
        if points.is_empty() {
            return Err(Error::Domain(format!(
                "deviation curve '{label}' has no points"
            )));
        }
        for p in &points {
            if !(p.k.is_finite() && p.k > 0.0 && p.l.is_finite() && p.l > 0.0) {
                return Err(Error::Domain(format!(
                    "deviation curve '{label}': k and L must be positive, got k = {:e}, L = {:e}",
                    p.k, p.l
                )));
            }
            if !(p.rho.is_finite() && p.rho > 0.0) {
                return Err(Error::Domain(format!(
                    "deviation curve '{label}': rho must be positive, got {:e}",
                    p.rho
                )));
            }
        }
        let l0 = points[0].l;
        if points.iter().any(|p| p.l != l0) {
            return Err(Error::Domain(format!(
                "deviation curve '{label}' mixes separations; one curve per L"
            )));
        }
        points.sort_by(|a, b| a.k.total_cmp(&b.k));
        if points.windows(2).any(|w| w[0].k == w[1].k) {
            return Err(Error::Domain(format!(
                "deviation curve '{label}' has duplicate k values"
            )));
        }
        Ok(Self { label, points })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn points(&self) -> &[DeviationPoint] {
        &self.points
    }

    /// The single separation shared by the curve.
    pub fn separation(&self) -> f64 {
        self.points[0].l
    }

    fn kl_values(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.k * p.l).collect()
    }

    /// Tabulated kL range (min, max).
    pub fn kl_range(&self) -> (f64, f64) {
        let us = self.kl_values();
        (us[0], us[us.len() - 1])
    }

    /// Interpolated ρ at the given kL, or `None` outside the tabulated
    /// range (the curve is never extrapolated).
    pub fn rho_at(&self, kl: f64) -> Option<f64> {
        let (lo, hi) = self.kl_range();
        if kl < lo * (1.0 - KL_SNAP_REL) || kl > hi * (1.0 + KL_SNAP_REL) {
            return None;
        }
        Some(self.rho_at_kl(kl.clamp(lo, hi)))
    }

    /// Monotone piecewise-cubic interpolation of ρ against ln(kL).
    fn rho_at_kl(&self, u: f64) -> f64 {
        if self.points.len() == 1 {
            return self.points[0].rho;
        }
        let xs: Vec<f64> = self.kl_values().iter().map(|u| u.ln()).collect();
        let ys: Vec<f64> = self.points.iter().map(|p| p.rho).collect();
        let slopes = pchip_slopes(&xs, &ys);
        let x = u.ln().clamp(xs[0], xs[xs.len() - 1]);
        pchip_eval(&xs, &ys, &slopes, x)
    }
}

/// Rescales (k, L, ρ) → (k/s, s·L, ρ): the product kL and the deviation are
/// both invariant.
pub fn rescale_point(point: DeviationPoint, factor: f64) -> Result<DeviationPoint> {
    if !(factor.is_finite() && factor > 0.0) {
        return Err(Error::Domain(format!(
            "rescale factor must be positive and finite, got {factor:e}"
        )));
    }
    Ok(DeviationPoint {
        k: point.k / factor,
        l: point.l * factor,
        rho: point.rho,
    })
}

/// Applies a deviation ratio to a PFA amplitude: ρ·amplitude.
pub fn apply_deviation(rho: f64, pfa_amplitude: f64) -> Result<f64> {
    if !(rho.is_finite() && rho > 0.0) {
        return Err(Error::Domain(format!(
            "deviation ratio must be positive and finite, got {rho:e}"
        )));
    }
    Ok(rho * pfa_amplitude)
}

// Relative snap for comparing kL values across curves: rescaled points may
// differ by a few ulps from their exact-arithmetic twins.
const KL_SNAP_REL: f64 = 1e-12;
const GRID_FILL: usize = 128;

/// Maximum relative spread between the curves once re-indexed by u = kL:
/// max over a common u-grid of (max_i ρ_i(u) − min_i ρ_i(u)) / mean_i ρ_i(u).
/// A small spread confirms that the tabulated deviation depends on k and L
/// only through their product.
pub fn collapse_check(curves: &[DeviationCurve]) -> Result<f64> {
    if curves.len() < 2 {
        return Err(Error::Domain(format!(
            "collapse check needs at least two curves, got {}",
            curves.len()
        )));
    }
    let mut lo = f64::NEG_INFINITY;
    let mut hi = f64::INFINITY;
    for c in curves {
        let us = c.kl_values();
        lo = lo.max(us[0]);
        hi = hi.min(us[us.len() - 1]);
    }
    if lo > hi {
        if lo <= hi * (1.0 + KL_SNAP_REL) {
            // degenerate overlap up to roundoff (e.g. a point and its rescaled twin)
            let u = 0.5 * (lo + hi);
            lo = u;
            hi = u;
        } else {
            return Err(Error::NoOverlap);
        }
    }

    // grid = every tabulated knot inside the window plus a log-spaced fill
    let mut grid: Vec<f64> = Vec::new();
    for c in curves {
        for u in c.kl_values() {
            if u >= lo * (1.0 - KL_SNAP_REL) && u <= hi * (1.0 + KL_SNAP_REL) {
                grid.push(u.clamp(lo, hi));
            }
        }
    }
    if hi > lo * (1.0 + KL_SNAP_REL) {
        let (ln_lo, ln_hi) = (lo.ln(), hi.ln());
        for i in 0..=GRID_FILL {
            let t = i as f64 / GRID_FILL as f64;
            grid.push((ln_lo + t * (ln_hi - ln_lo)).exp().clamp(lo, hi));
        }
    }
    grid.sort_by(f64::total_cmp);
    grid.dedup_by(|a, b| (*a - *b).abs() <= KL_SNAP_REL * b.abs());

    let mut worst = 0.0_f64;
    for &u in &grid {
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        let mut sum = 0.0;
        for c in curves {
            let r = c.rho_at_kl(u);
            min = min.min(r);
            max = max.max(r);
            sum += r;
        }
        let mean = sum / curves.len() as f64;
        worst = worst.max((max - min) / mean);
    }
    Ok(worst)
}

/// One validity ratio with its pass/warn flag.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct RatioCheck {
    pub value: f64,
    /// True when the ratio exceeds the warn threshold, i.e. the quantity is
    /// not small compared to its reference scale.
    pub warn: bool,
}

impl RatioCheck {
    fn new(value: f64, threshold: f64) -> Self {
        Self {
            value,
            warn: value > threshold,
        }
    }
}

/// Default threshold for "a ≪ X": ratios above it are flagged.
pub const DEFAULT_WARN_THRESHOLD: f64 = 0.1;

/// PFA separation rule of thumb: the approximation is trusted when the
/// separation is several times smaller than the corrugation wavelength.
pub const PFA_SEPARATION_LIMIT: f64 = 1.0 / 3.0;

/// Small-amplitude validity ratios of the perturbative treatment, plus the
/// PFA separation indicator. Pure arithmetic of the inputs; reproducible
/// bit for bit.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ValidityReport {
    pub warn_threshold: f64,
    pub ratio_a1_l: RatioCheck,
    pub ratio_a2_l: RatioCheck,
    pub ratio_a1_lambda_p: RatioCheck,
    pub ratio_a2_lambda_p: RatioCheck,
    /// L/λ_C, the PFA accuracy indicator.
    pub ratio_l_lambda_c: f64,
    /// True when L/λ_C ≤ [`PFA_SEPARATION_LIMIT`].
    pub pfa_separation_ok: bool,
}

/// Evaluates every a ≪ {L, λ_P} ratio against `warn_threshold` (callers
/// typically pass [`DEFAULT_WARN_THRESHOLD`]).
pub fn validity_diagnostics(
    geom: &CorrugatedGeometry,
    model: &PlasmaModel,
    warn_threshold: f64,
) -> ValidityReport {
    let l = geom.separation();
    let lp = model.lambda_p();
    let ratio_l_lambda_c = l / geom.lambda_c();
    ValidityReport {
        warn_threshold,
        ratio_a1_l: RatioCheck::new(geom.a1() / l, warn_threshold),
        ratio_a2_l: RatioCheck::new(geom.a2() / l, warn_threshold),
        ratio_a1_lambda_p: RatioCheck::new(geom.a1() / lp, warn_threshold),
        ratio_a2_lambda_p: RatioCheck::new(geom.a2() / lp, warn_threshold),
        ratio_l_lambda_c,
        pfa_separation_ok: ratio_l_lambda_c <= PFA_SEPARATION_LIMIT,
    }
}

/// Expected CSV header.
pub const CSV_HEADER: &str = "k_rad_per_m,L_m,rho";

/// Loads deviation data from a CSV file with header `k_rad_per_m,L_m,rho`.
/// Lines starting with `#` and blank lines are ignored. Rows are grouped by
/// separation into one curve per distinct L, sorted by L.
pub fn load_deviation_csv(path: impl AsRef<Path>) -> Result<Vec<DeviationCurve>> {
    let path = path.as_ref();
    let display = path.display().to_string();
    let file = std::fs::File::open(path).map_err(|source| Error::Io {
        path: display.clone(),
        source,
    })?;
    let reader = BufReader::new(file);

    let mut header_seen = false;
    let mut rows: Vec<(usize, DeviationPoint)> = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|source| Error::Io {
            path: display.clone(),
            source,
        })?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if !header_seen {
            let normalized: Vec<&str> = trimmed.split(',').map(str::trim).collect();
            if normalized != ["k_rad_per_m", "L_m", "rho"] {
                return Err(Error::CsvFormat {
                    path: display,
                    line: line_no,
                    message: format!("expected header '{CSV_HEADER}', got '{trimmed}'"),
                });
            }
            header_seen = true;
            continue;
        }
        let fields: Vec<&str> = trimmed.split(',').map(str::trim).collect();
        if fields.len() != 3 {
            return Err(Error::CsvFormat {
                path: display,
                line: line_no,
                message: format!("expected 3 comma-separated fields, got {}", fields.len()),
            });
        }
        let mut parsed = [0.0_f64; 3];
        for (slot, (name, raw)) in parsed
            .iter_mut()
            .zip(["k_rad_per_m", "L_m", "rho"].iter().zip(fields.iter()))
        {
            *slot = raw.parse::<f64>().map_err(|_| Error::CsvFormat {
                path: display.clone(),
                line: line_no,
                message: format!("field '{name}': cannot parse '{raw}' as a number"),
            })?;
        }
        let point = DeviationPoint {
            k: parsed[0],
            l: parsed[1],
            rho: parsed[2],
        };
        if !(point.k > 0.0 && point.l > 0.0 && point.rho > 0.0)
            || !point.k.is_finite()
            || !point.l.is_finite()
            || !point.rho.is_finite()
        {
            return Err(Error::CsvFormat {
                path: display,
                line: line_no,
                message: "k_rad_per_m, L_m and rho must all be positive and finite".to_string(),
            });
        }
        if rows
            .iter()
            .any(|(_, p)| p.k == point.k && p.l == point.l)
        {
            return Err(Error::CsvFormat {
                path: display,
                line: line_no,
                message: format!("duplicate point (k = {:e}, L = {:e})", point.k, point.l),
            });
        }
        rows.push((line_no, point));
    }
    if !header_seen {
        return Err(Error::CsvFormat {
            path: display,
            line: 1,
            message: format!("missing header '{CSV_HEADER}'"),
        });
    }
    if rows.is_empty() {
        return Err(Error::CsvFormat {
            path: display,
            line: 1,
            message: "no data rows".to_string(),
        });
    }

    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| display.clone());
    let mut separations: Vec<f64> = rows.iter().map(|(_, p)| p.l).collect();
    separations.sort_by(f64::total_cmp);
    separations.dedup();
    separations
        .into_iter()
        .map(|l| {
            let points: Vec<DeviationPoint> =
                rows.iter().map(|(_, p)| *p).filter(|p| p.l == l).collect();
            DeviationCurve::new(format!("{stem} @ L={l:e} m"), points)
        })
        .collect()
}

// Monotone piecewise-cubic (Fritsch–Carlson) slopes, matching the usual
// PCHIP edge handling.
fn pchip_slopes(xs: &[f64], ys: &[f64]) -> Vec<f64> {
    let n = xs.len();
    let h: Vec<f64> = xs.windows(2).map(|w| w[1] - w[0]).collect();
    let m: Vec<f64> = ys
        .windows(2)
        .zip(&h)
        .map(|(w, h)| (w[1] - w[0]) / h)
        .collect();
    if n == 2 {
        return vec![m[0], m[0]];
    }
    let mut d = vec![0.0_f64; n];
    for i in 1..n - 1 {
        if m[i - 1] * m[i] <= 0.0 {
            d[i] = 0.0;
        } else {
            let w1 = 2.0 * h[i] + h[i - 1];
            let w2 = h[i] + 2.0 * h[i - 1];
            d[i] = (w1 + w2) / (w1 / m[i - 1] + w2 / m[i]);
        }
    }
    d[0] = edge_slope(h[0], h[1], m[0], m[1]);
    d[n - 1] = edge_slope(h[n - 2], h[n - 3], m[n - 2], m[n - 3]);
    d
}

fn edge_slope(h0: f64, h1: f64, m0: f64, m1: f64) -> f64 {
    let d = ((2.0 * h0 + h1) * m0 - h0 * m1) / (h0 + h1);
    if d * m0 <= 0.0 {
        0.0
    } else if m0 * m1 < 0.0 && d.abs() > 3.0 * m0.abs() {
        3.0 * m0
    } else {
        d
    }
}

fn pchip_eval(xs: &[f64], ys: &[f64], slopes: &[f64], x: f64) -> f64 {
    let i = match xs.binary_search_by(|v| v.total_cmp(&x)) {
        Ok(i) => return ys[i],
        Err(0) => 0,
        Err(i) if i >= xs.len() => xs.len() - 2,
        Err(i) => i - 1,
    };
    let h = xs[i + 1] - xs[i];
    let t = x - xs[i];
    let m = (ys[i + 1] - ys[i]) / h;
    let c2 = (3.0 * m - 2.0 * slopes[i] - slopes[i + 1]) / h;
    let c3 = (slopes[i] + slopes[i + 1] - 2.0 * m) / (h * h);
    ys[i] + t * (slopes[i] + t * (c2 + t * c3))
}
