//! Adaptive Gauss–Kronrod quadrature (7/15-point pair) on finite intervals.
//!
//! This is the workhorse behind the two-plate integrals: panels are kept in
//! a max-heap ordered by their error estimate and the worst one is bisected
//! until the global estimate meets the tolerance or the subdivision budget
//! runs out.

use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// Accuracy controls shared by every quadrature-backed operation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureSettings {
    /// Target relative error; must lie in (0, 1e-3].
    pub rel_tolerance: f64,
    /// Absolute error floor in the unit of the computed quantity
    /// (J/m² for energies, Pa for pressures). Zero disables it.
    pub abs_floor: f64,
    /// Bisection budget per one-dimensional integral.
    pub max_subdivisions: usize,
}

impl QuadratureSettings {
    pub fn new(rel_tolerance: f64, abs_floor: f64, max_subdivisions: usize) -> Result<Self> {
        if !(rel_tolerance > 0.0 && rel_tolerance <= 1e-3) {
            return Err(Error::Domain(format!(
                "rel_tolerance must lie in (0, 1e-3], got {rel_tolerance:e}"
            )));
        }
        if !abs_floor.is_finite() || abs_floor < 0.0 {
            return Err(Error::Domain(format!(
                "abs_floor must be non-negative and finite, got {abs_floor:e}"
            )));
        }
        if max_subdivisions == 0 {
            return Err(Error::Domain(
                "max_subdivisions must be at least 1".to_string(),
            ));
        }
        Ok(Self {
            rel_tolerance,
            abs_floor,
            max_subdivisions,
        })
    }
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        Self {
            rel_tolerance: 1e-8,
            abs_floor: 0.0,
            max_subdivisions: 200,
        }
    }
}

/// Result of one adaptive integration.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Integral {
    pub value: f64,
    pub error: f64,
    pub evaluations: u64,
}

// 15-point Kronrod abscissae (positive half, descending) and weights,
// with the embedded 7-point Gauss weights. The odd-indexed abscissae are
// the Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_813,
    0.949_107_912_342_759,
    0.864_864_423_359_769,
    0.741_531_185_599_394,
    0.586_087_235_467_691,
    0.405_845_151_377_397,
    0.207_784_955_007_898,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529,
    0.063_092_092_629_979,
    0.104_790_010_322_250,
    0.140_653_259_715_525,
    0.169_004_726_639_267,
    0.190_350_578_064_785,
    0.204_432_940_075_298,
    0.209_482_141_084_728,
];
const WG: [f64; 4] = [
    0.129_484_966_168_870,
    0.279_705_391_489_277,
    0.381_830_050_505_119,
    0.417_959_183_673_469,
];

#[derive(Clone, Copy, Debug)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == std::cmp::Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// QUADPACK-style error rescaling: interpolates between the raw |K15 − G7|
/// difference and the total variation estimate `res_asc`.
fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        let min_err = 50.0 * f64::EPSILON * res_abs;
        if min_err > scaled {
            scaled = min_err;
        }
    }
    scaled
}

fn qk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);

    let mut resg = WG[3] * fc;
    let mut resk = WGK[7] * fc;
    let mut resabs = resk.abs();
    let mut fv = [[0.0_f64; 2]; 7];

    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv[j] = [f1, f2];
        let fsum = f1 + f2;
        resk += WGK[j] * fsum;
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg += WG[j / 2] * fsum;
        }
    }

    let reskh = 0.5 * resk;
    let mut resasc = WGK[7] * (fc - reskh).abs();
    for (j, pair) in fv.iter().enumerate() {
        resasc += WGK[j] * ((pair[0] - reskh).abs() + (pair[1] - reskh).abs());
    }

    let scale = half.abs();
    Panel {
        a,
        b,
        value: resk * half,
        error: rescale_error((resk - resg) * half, resabs * scale, resasc * scale),
    }
}

/// Adaptive integration of `f` over [a, b] to `abs_tol.max(rel_tol·|I|)`.
pub(crate) fn adaptive_gk15<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_tol: f64,
    max_subdivisions: usize,
) -> Result<Integral> {
    let mut evaluations: u64 = 15;
    let first = qk15(&mut f, a, b);
    let mut total_value = first.value;
    let mut total_error = first.error;
    let mut heap = BinaryHeap::new();
    heap.push(first);
    let mut subdivisions = 0usize;
    let min_width = (b - a).abs() * f64::EPSILON * 64.0;

    loop {
        let tol = abs_tol.max(rel_tol * total_value.abs());
        if total_error <= tol {
            return Ok(Integral {
                value: total_value,
                error: total_error,
                evaluations,
            });
        }
        let worst = match heap.pop() {
            Some(p) => p,
            // every panel hit the width floor: further refinement is roundoff
            None => {
                return Err(Error::Convergence {
                    value: total_value,
                    est_error: total_error,
                    evaluations,
                    max_subdivisions,
                })
            }
        };
        if (worst.b - worst.a).abs() <= min_width {
            // keep its contribution but stop refining it
            continue;
        }
        if subdivisions >= max_subdivisions {
            return Err(Error::Convergence {
                value: total_value,
                est_error: total_error,
                evaluations,
                max_subdivisions,
            });
        }
        subdivisions += 1;
        let mid = 0.5 * (worst.a + worst.b);
        let left = qk15(&mut f, worst.a, mid);
        let right = qk15(&mut f, mid, worst.b);
        evaluations += 30;
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
}
