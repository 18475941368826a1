//! Chebyshev interpolation of expensive smooth functions.
//!
//! The corrugation phase averages re-evaluate the plate energy hundreds of
//! times inside a narrow separation window; fitting a Chebyshev series once
//! and evaluating it by Clenshaw recursion makes those sweeps cheap. The
//! antiderivative series (exact term-by-term integration) supports the
//! sphere-potential route.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Truncated Chebyshev series c₀ + Σ c_k T_k(u) on [lo, hi].
#[derive(Clone, Debug)]
pub struct ChebyshevSeries {
    lo: f64,
    hi: f64,
    coeffs: Vec<f64>,
    /// Largest |f| seen while sampling; callers use it to turn the relative
    /// fit tolerance into an absolute error scale.
    scale: f64,
}

impl ChebyshevSeries {
    /// Fits `f` on [lo, hi] by doubling Chebyshev–Lobatto grids until the
    /// trailing coefficients fall below `rel_tol` times the sampled scale.
    /// Function values are cached across doublings (the grids nest).
    pub fn fit<F>(lo: f64, hi: f64, rel_tol: f64, mut f: F) -> Result<Self>
    where
        F: FnMut(f64) -> Result<f64>,
    {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::Domain(format!(
                "interpolation interval must be finite with lo < hi, got [{lo:e}, {hi:e}]"
            )));
        }
        if !(rel_tol > 0.0 && rel_tol < 1.0) {
            return Err(Error::Domain(format!(
                "interpolation tolerance must lie in (0, 1), got {rel_tol:e}"
            )));
        }
        let center = 0.5 * (lo + hi);
        let half = 0.5 * (hi - lo);
        let mut cache: HashMap<u64, f64> = HashMap::new();
        let mut n = 16usize;
        loop {
            let mut values = Vec::with_capacity(n + 1);
            for j in 0..=n {
                let u = (std::f64::consts::PI * j as f64 / n as f64).cos();
                let v = match cache.get(&u.to_bits()) {
                    Some(&v) => v,
                    None => {
                        let v = f(center + half * u)?;
                        cache.insert(u.to_bits(), v);
                        v
                    }
                };
                values.push(v);
            }
            let coeffs = lobatto_coefficients(&values);
            let scale = values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
            let floor = scale.max(f64::MIN_POSITIVE);
            let tail = coeffs[n - 2..=n]
                .iter()
                .fold(0.0_f64, |m, c| m.max(c.abs()));
            let tail_rel = tail / floor;
            if tail_rel <= rel_tol {
                let mut coeffs = coeffs;
                let chop = rel_tol * floor * 0.25;
                while coeffs.len() > 2 && coeffs.last().unwrap().abs() <= chop {
                    coeffs.pop();
                }
                return Ok(Self {
                    lo,
                    hi,
                    coeffs,
                    scale,
                });
            }
            if n >= 1024 {
                return Err(Error::Interpolation {
                    achieved: tail_rel,
                    requested: rel_tol,
                });
            }
            n *= 2;
        }
    }

    /// A constant series (used for degenerate, zero-width physics windows).
    pub fn constant(lo: f64, hi: f64, value: f64) -> Self {
        Self {
            lo,
            hi,
            coeffs: vec![value],
            scale: value.abs(),
        }
    }

    /// Clenshaw evaluation. `x` slightly outside [lo, hi] extrapolates
    /// smoothly; callers keep arguments within the fitted window.
    pub fn eval(&self, x: f64) -> f64 {
        let u = (2.0 * x - self.lo - self.hi) / (self.hi - self.lo);
        let mut b1 = 0.0;
        let mut b2 = 0.0;
        for k in (1..self.coeffs.len()).rev() {
            let next = 2.0 * u * b1 - b2 + self.coeffs[k];
            b2 = b1;
            b1 = next;
        }
        self.coeffs[0] + u * b1 - b2
    }

    /// Series of G(x) = ∫_lo^x f(z) dz, exact for the stored polynomial.
    pub fn antiderivative(&self) -> ChebyshevSeries {
        let c = &self.coeffs;
        let m = c.len();
        let half = 0.5 * (self.hi - self.lo);
        let mut b = vec![0.0; m + 1];
        if m >= 1 {
            b[1] = half * (c[0] - if m > 2 { 0.5 * c[2] } else { 0.0 });
        }
        for k in 2..=m {
            let upper = if k + 1 < m { c[k + 1] } else { 0.0 };
            b[k] = half * (c[k - 1] - upper) / (2.0 * k as f64);
        }
        // pin G(lo) = 0:  G(-1) = b0 + Σ (-1)^k b_k
        let mut at_lo = 0.0;
        for (k, bk) in b.iter().enumerate().skip(1) {
            at_lo += if k % 2 == 0 { *bk } else { -*bk };
        }
        b[0] = -at_lo;
        let scale = self.scale * (self.hi - self.lo);
        ChebyshevSeries {
            lo: self.lo,
            hi: self.hi,
            coeffs: b,
            scale,
        }
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Largest |f| sampled during the fit.
    pub fn scale(&self) -> f64 {
        self.scale
    }
}

/// Chebyshev coefficients from values at the n+1 Lobatto points
/// x_j = cos(πj/n), ordered j = 0..=n.
fn lobatto_coefficients(values: &[f64]) -> Vec<f64> {
    let n = values.len() - 1;
    let mut coeffs = vec![0.0; n + 1];
    for (k, ck) in coeffs.iter_mut().enumerate() {
        let mut acc = 0.5 * (values[0] + if k % 2 == 0 { values[n] } else { -values[n] });
        for (j, vj) in values.iter().enumerate().take(n).skip(1) {
            acc += vj * (std::f64::consts::PI * (j * k) as f64 / n as f64).cos();
        }
        *ck = 2.0 * acc / n as f64;
    }
    coeffs[0] *= 0.5;
    coeffs[n] *= 0.5;
    coeffs
}
