//! Plasma-model permittivity on the imaginary frequency axis and the Fresnel
//! reflection coefficients that feed the Lifshitz integrals.
//!
//! The metal is lossless by construction: ε(iξ) = 1 + ω_P²/ξ². For this
//! dispersion the TE coefficient has a well-defined, nonzero ξ → 0 limit;
//! the quadrature layer relies on that when extending integrands to the
//! ξ = 0 edge.

use crate::constants::{plasma_frequency, SPEED_OF_LIGHT};
use crate::error::{Error, Result};

/// Lossless metal described by its plasma wavelength λ_P.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlasmaModel {
    lambda_p: f64,
    omega_p: f64,
}

impl PlasmaModel {
    /// Builds the model from λ_P (m); the plasma frequency is derived once
    /// and cached.
    pub fn new(lambda_p: f64) -> Result<Self> {
        let omega_p = plasma_frequency(lambda_p)?;
        Ok(Self { lambda_p, omega_p })
    }

    /// Plasma wavelength λ_P (m).
    pub fn lambda_p(&self) -> f64 {
        self.lambda_p
    }

    /// Plasma frequency ω_P = 2πc/λ_P (rad/s).
    pub fn omega_p(&self) -> f64 {
        self.omega_p
    }
}

/// Reflector type used in the two-plate kernels.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MaterialKind {
    /// Perfect reflector: |r_TM| = |r_TE| = 1 for all arguments.
    IdealMetal,
    /// Plasma-model metal.
    Plasma(PlasmaModel),
}

impl MaterialKind {
    /// Dimensionless plasma parameter ω_P·s/c for a length scale `s`,
    /// or `None` for the ideal metal.
    pub(crate) fn scaled_plasma(&self, scale: f64) -> Option<f64> {
        match self {
            MaterialKind::IdealMetal => None,
            MaterialKind::Plasma(m) => Some(m.omega_p * scale / SPEED_OF_LIGHT),
        }
    }
}

/// Permittivity along the imaginary frequency axis, ε(iξ) = 1 + ω_P²/ξ².
///
/// Always > 1 for ξ > 0; saturates to +∞ within f64 for ξ far below ω_P.
pub fn permittivity_imag(model: &PlasmaModel, xi: f64) -> Result<f64> {
    if !xi.is_finite() || xi <= 0.0 {
        return Err(Error::Domain(format!(
            "imaginary frequency must be positive and finite, got {xi:e} rad/s"
        )));
    }
    let r = model.omega_p / xi;
    Ok(1.0 + r * r)
}

/// TM (p-polarization) reflection coefficient at imaginary frequency ξ and
/// transverse wavenumber k_perp. Returns 1 exactly for the ideal metal;
/// values lie in [0, 1].
pub fn fresnel_tm(kind: MaterialKind, xi: f64, k_perp: f64) -> Result<f64> {
    check_fresnel_args(xi, k_perp)?;
    match kind {
        MaterialKind::IdealMetal => Ok(1.0),
        MaterialKind::Plasma(m) => {
            let sigma = xi / SPEED_OF_LIGHT;
            let kappa = k_perp.hypot(sigma);
            Ok(reflection_tm(sigma, kappa, m.omega_p / SPEED_OF_LIGHT))
        }
    }
}

/// TE (s-polarization) reflection coefficient. Returns −1 exactly for the
/// ideal metal; values lie in [−1, 0].
pub fn fresnel_te(kind: MaterialKind, xi: f64, k_perp: f64) -> Result<f64> {
    check_fresnel_args(xi, k_perp)?;
    match kind {
        MaterialKind::IdealMetal => Ok(-1.0),
        MaterialKind::Plasma(m) => {
            let sigma = xi / SPEED_OF_LIGHT;
            let kappa = k_perp.hypot(sigma);
            Ok(reflection_te(kappa, m.omega_p / SPEED_OF_LIGHT))
        }
    }
}

fn check_fresnel_args(xi: f64, k_perp: f64) -> Result<()> {
    if !xi.is_finite() || xi <= 0.0 {
        return Err(Error::Domain(format!(
            "imaginary frequency must be positive and finite, got {xi:e} rad/s"
        )));
    }
    if !k_perp.is_finite() || k_perp < 0.0 {
        return Err(Error::Domain(format!(
            "transverse wavenumber must be non-negative and finite, got {k_perp:e} 1/m"
        )));
    }
    Ok(())
}

// The kernels below work in scale-free variables: sigma = ξ·s/c, kappa = q·s,
// mu = ω_P·s/c for an arbitrary length s (the formulas are homogeneous of
// degree zero). For the plasma model q_m = sqrt(q² + ω_P²/c²), so only the
// TM coefficient depends on sigma explicitly.

/// r_TM in scaled variables. Requires sigma > 0, kappa >= sigma, mu > 0.
///
/// Uses the cancellation-free difference
///   ε·κ − κ_m = μ²·(κ/σ² − 1/(κ + κ_m)),
/// which stays accurate both for σ → 0 (where r_TM → 1) and for μ → 0
/// (where r_TM → 0).
pub(crate) fn reflection_tm(sigma: f64, kappa: f64, mu: f64) -> f64 {
    let km = kappa.hypot(mu);
    let ratio = mu / sigma;
    let eps = 1.0 + ratio * ratio;
    let num = mu * mu * (kappa / (sigma * sigma) - 1.0 / (kappa + km));
    let r = num / (eps * kappa + km);
    // sigma far below mu overflows eps; the limit there is exactly 1.
    if r.is_finite() {
        r
    } else {
        1.0
    }
}

/// r_TE in scaled variables; independent of sigma for the plasma model.
/// Written as −μ²/(κ + κ_m)² so the κ ≫ μ regime does not cancel.
pub(crate) fn reflection_te(kappa: f64, mu: f64) -> f64 {
    let km = kappa.hypot(mu);
    let t = mu / (kappa + km);
    -t * t
}

/// Squared reflection coefficients together with their one-complements,
/// computed without cancellation:
///   1 − r² = 4·A·B/(A + B)²  for r = (A − B)/(A + B).
pub(crate) struct ReflectionProducts {
    pub rtm2: f64,
    pub rte2: f64,
    pub one_minus_rtm2: f64,
    pub one_minus_rte2: f64,
}

pub(crate) fn reflection_products(sigma: f64, kappa: f64, mu: Option<f64>) -> ReflectionProducts {
    match mu {
        None => ReflectionProducts {
            rtm2: 1.0,
            rte2: 1.0,
            one_minus_rtm2: 0.0,
            one_minus_rte2: 0.0,
        },
        Some(mu) => {
            let km = kappa.hypot(mu);
            let rtm = reflection_tm(sigma, kappa, mu);
            let rte = reflection_te(kappa, mu);
            let ratio = mu / sigma;
            let eps = 1.0 + ratio * ratio;
            let a = eps * kappa;
            let sum = a + km;
            let one_minus_rtm2 = if sum.is_finite() {
                4.0 * a * km / (sum * sum)
            } else {
                // eps overflowed: r_TM = 1 limit
                0.0
            };
            let s_te = kappa + km;
            let one_minus_rte2 = 4.0 * kappa * km / (s_te * s_te);
            ReflectionProducts {
                rtm2: rtm * rtm,
                rte2: rte * rte,
                one_minus_rtm2,
                one_minus_rte2,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn gold() -> PlasmaModel {
        PlasmaModel::new(136e-9).unwrap()
    }

    #[test]
    fn permittivity_examples() {
        let m = gold();
        assert_relative_eq!(permittivity_imag(&m, m.omega_p()).unwrap(), 2.0, max_relative = 1e-14);
        assert_relative_eq!(
            permittivity_imag(&m, 10.0 * m.omega_p()).unwrap(),
            1.01,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            permittivity_imag(&m, 1.0e15).unwrap(),
            192.83300319123591,
            max_relative = 1e-12
        );
    }

    #[test]
    fn permittivity_rejects_nonpositive_frequency() {
        let m = gold();
        assert!(permittivity_imag(&m, 0.0).is_err());
        assert!(permittivity_imag(&m, -1.0).is_err());
    }

    #[test]
    fn permittivity_decreases_to_one() {
        let m = gold();
        let mut prev = f64::INFINITY;
        let mut xi = 1e12;
        while xi < 2e20 {
            let e = permittivity_imag(&m, xi).unwrap();
            assert!(e > 1.0 && e < prev);
            prev = e;
            xi *= 10.0;
        }
        assert!(prev - 1.0 < 1e-7);
    }

    #[test]
    fn ideal_metal_is_a_perfect_reflector() {
        assert_eq!(fresnel_tm(MaterialKind::IdealMetal, 1e15, 1e6).unwrap(), 1.0);
        assert_eq!(fresnel_te(MaterialKind::IdealMetal, 1e15, 1e6).unwrap(), -1.0);
    }

    #[test]
    fn no_contrast_means_no_reflection() {
        // lambda_P -> infinity: eps -> 1, both coefficients vanish
        let soft = MaterialKind::Plasma(PlasmaModel::new(1e9).unwrap());
        let rtm = fresnel_tm(soft, 1e15, 1e6).unwrap();
        let rte = fresnel_te(soft, 1e15, 1e6).unwrap();
        assert!(rtm.abs() < 1e-12, "rtm = {rtm}");
        assert!(rte.abs() < 1e-12, "rte = {rte}");
    }

    #[test]
    fn pinned_point_matches_high_precision_formula() {
        // lambda_P = 136 nm, L = 221 nm, xi = c/L, k_perp = 1/L; reference
        // values from a 50-digit evaluation of the two-square-root formula.
        let l = 221e-9;
        let kind = MaterialKind::Plasma(gold());
        let xi = SPEED_OF_LIGHT / l;
        let k_perp = 1.0 / l;
        let rtm = fresnel_tm(kind, xi, k_perp).unwrap();
        let rte = fresnel_te(kind, xi, k_perp).unwrap();
        assert_relative_eq!(rtm, 0.87046650045238276, max_relative = 1e-12);
        assert_relative_eq!(rte, -0.75870504307665469, max_relative = 1e-12);
        assert!(rtm > 0.0 && rtm < 1.0);
        assert!(rte > -1.0 && rte < 0.0);
    }

    #[test]
    fn reflection_grows_with_plasma_frequency() {
        // |r|^2 -> 1 monotonically as omega_P grows at fixed (xi, k_perp)
        let xi = 1e15;
        let k_perp = 5e6;
        let mut prev_tm = -1.0;
        let mut prev_te = -1.0;
        for lambda_p in [5e-6, 1e-6, 3e-7, 1.36e-7, 5e-8, 1e-8] {
            let kind = MaterialKind::Plasma(PlasmaModel::new(lambda_p).unwrap());
            let tm2 = fresnel_tm(kind, xi, k_perp).unwrap().powi(2);
            let te2 = fresnel_te(kind, xi, k_perp).unwrap().powi(2);
            assert!(tm2 > prev_tm && te2 > prev_te);
            prev_tm = tm2;
            prev_te = te2;
        }
        assert!(prev_tm > 0.98 && prev_te > 0.9);
    }

    #[test]
    fn scaled_coefficients_are_continuous_at_the_static_edge() {
        // plasma model: r_TM -> 1 and r_TE -> finite limit as sigma -> 0
        let mu = 10.2101761241668;
        let kappa = 1.5;
        let r_small = reflection_tm(1e-8, kappa, mu);
        let r_smaller = reflection_tm(1e-12, kappa, mu);
        assert!((1.0 - r_small).abs() < 1e-6);
        assert!((1.0 - r_smaller).abs() < 1e-12);
        // deep overflow region still pinned to the limit
        assert_eq!(reflection_tm(1e-300, kappa, mu), 1.0);
        // TE limit equals the sigma-independent closed form
        let km = kappa.hypot(mu);
        let expected = -(mu / (kappa + km)).powi(2);
        assert_relative_eq!(reflection_te(kappa, mu), expected, max_relative = 1e-15);
    }

    #[test]
    fn products_match_squares() {
        let mu = Some(3.7);
        for &(s, k) in &[(0.1, 0.2), (1.0, 1.4142135623730951), (4.0, 9.0)] {
            let p = reflection_products(s, k, mu);
            let rtm = reflection_tm(s, k, mu.unwrap());
            let rte = reflection_te(k, mu.unwrap());
            assert_relative_eq!(p.rtm2, rtm * rtm, max_relative = 1e-13);
            assert_relative_eq!(p.rte2, rte * rte, max_relative = 1e-13);
            assert_relative_eq!(p.one_minus_rtm2, 1.0 - rtm * rtm, max_relative = 1e-10);
            assert_relative_eq!(p.one_minus_rte2, 1.0 - rte * rte, max_relative = 1e-10);
        }
        // near the static edge the naive 1 - r^2 cancels catastrophically;
        // the product form must stay positive and agree to its full scale
        let p = reflection_products(1e-6, 2.0, mu);
        let rtm = reflection_tm(1e-6, 2.0, mu.unwrap());
        assert!(p.one_minus_rtm2 > 0.0 && p.one_minus_rtm2 < 1e-11);
        assert_relative_eq!(p.one_minus_rtm2, 1.0 - rtm * rtm, max_relative = 1e-3);
    }
}
