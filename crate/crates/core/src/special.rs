//! Error-function family in double precision.
//!
//! `erfc` combines the everywhere-convergent positive-term series for
//! moderate arguments with the classical continued fraction beyond; the
//! Gaussian quantile inverts `erf` with a safeguarded Newton iteration.
//! Accuracy is a few ulp across the ranges used here (verified against
//! frozen 30-digit references and an independent quadrature oracle in the
//! test suite).

use crate::error::{Error, Result};

const SQRT_PI: f64 = 1.772_453_850_905_516;
const SERIES_CF_SPLIT: f64 = 2.0;

/// Complementary error function, full real line.
pub fn erfc(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x < 0.0 {
        return 2.0 - erfc(-x);
    }
    if x <= SERIES_CF_SPLIT {
        1.0 - erf_series(x)
    } else {
        erfc_continued_fraction(x)
    }
}

/// Error function, full real line.
pub fn erf(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    let ax = x.abs();
    let v = if ax <= SERIES_CF_SPLIT {
        erf_series(ax)
    } else {
        1.0 - erfc_continued_fraction(ax)
    };
    if x < 0.0 {
        -v
    } else {
        v
    }
}

/// erf via the positive-term confluent series
/// erf(x) = (2x/√π)·e^{−x²}·Σ_{n≥0} (2x²)^n / (1·3···(2n+1));
/// no cancellation, efficient for x ≲ 2.5.
fn erf_series(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let two_x2 = 2.0 * x * x;
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    let mut n = 0u32;
    loop {
        n += 1;
        term *= two_x2 / (2.0 * n as f64 + 1.0);
        sum += term;
        if term < sum * 1e-17 || n > 200 {
            break;
        }
    }
    2.0 * x * (-x * x).exp() * sum / SQRT_PI
}

/// erfc via the Legendre continued fraction
/// erfc(x) = e^{−x²}/√π · 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))),
/// evaluated by the modified Lentz algorithm; rapid for x ≳ 2.
fn erfc_continued_fraction(x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut f = x;
    let mut c = x;
    let mut d = 0.0_f64;
    for n in 1..400 {
        let a = 0.5 * n as f64;
        d = x + a * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = x + a / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-17 {
            break;
        }
    }
    (-x * x).exp() / (SQRT_PI * f)
}

/// Two-sided standard-normal quantile: the z with P(|Z| ≤ z) = confidence,
/// i.e. z = √2·erf⁻¹(confidence). Safeguarded Newton on erf, accurate to
/// well below 1e-10 for confidence ≤ 1 − 1e-12.
pub fn two_sided_normal_quantile(confidence: f64) -> Result<f64> {
    if !(confidence > 0.0 && confidence < 1.0) {
        return Err(Error::Domain(format!(
            "confidence must lie strictly inside (0, 1), got {confidence}"
        )));
    }
    // bracket the root of erf(t) = confidence
    let mut lo = 0.0_f64;
    let mut hi = 1.0_f64;
    while erf(hi) < confidence {
        lo = hi;
        hi *= 2.0;
        if hi > 64.0 {
            break;
        }
    }
    let mut t = 0.5 * (lo + hi);
    for _ in 0..100 {
        let residual = erf(t) - confidence;
        if residual > 0.0 {
            hi = t;
        } else {
            lo = t;
        }
        let derivative = 2.0 * (-t * t).exp() / SQRT_PI;
        let mut next = t - residual / derivative;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        let step = (next - t).abs();
        t = next;
        if step <= 1e-15 * (1.0 + t) {
            break;
        }
    }
    Ok(std::f64::consts::SQRT_2 * t)
}
