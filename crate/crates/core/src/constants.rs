//! Physical constants (CODATA 2018) and shared unit conventions.
//!
//! Every public interface in this crate works in SI base units: meters,
//! newtons, pascals, joules, rad/s. Display conversions (nm, pN, ...) are a
//! presentation concern and live in consuming code.

use crate::error::{Error, Result};

/// Reduced Planck constant ħ (J·s), CODATA 2018.
pub const HBAR: f64 = 1.054_571_817e-34;

/// Speed of light in vacuum c (m/s), exact by SI definition.
pub const SPEED_OF_LIGHT: f64 = 2.997_924_58e8;

/// Identifier for the constants revision, embedded in reports.
pub const CONSTANTS_REVISION: &str = "codata-2018";

/// The fixed constant set used by all numerical modules.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhysicalConstants {
    /// Reduced Planck constant (J·s).
    pub hbar: f64,
    /// Speed of light (m/s).
    pub c: f64,
}

/// The one and only constant set; not configurable at runtime so that
/// reported numbers are reproducible bit for bit.
pub const CODATA_2018: PhysicalConstants = PhysicalConstants {
    hbar: HBAR,
    c: SPEED_OF_LIGHT,
};

/// Plasma frequency ω_P = 2πc/λ_P (rad/s) for a plasma wavelength in meters.
pub fn plasma_frequency(lambda_p: f64) -> Result<f64> {
    if !lambda_p.is_finite() || lambda_p <= 0.0 {
        return Err(Error::Domain(format!(
            "plasma wavelength must be positive and finite, got {lambda_p:e} m"
        )));
    }
    Ok(2.0 * std::f64::consts::PI * SPEED_OF_LIGHT / lambda_p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gold_plasma_wavelength() {
        // lambda_P = 136 nm
        let w = plasma_frequency(136e-9).unwrap();
        assert_relative_eq!(w, 1.3850379171388627e16, max_relative = 1e-12);
    }

    #[test]
    fn inverse_relation_is_exact() {
        // lambda_P = 2 pi c meters gives omega_P = 1 rad/s
        let w = plasma_frequency(2.0 * std::f64::consts::PI * SPEED_OF_LIGHT).unwrap();
        assert_relative_eq!(w, 1.0, max_relative = 1e-15);
    }

    #[test]
    fn huge_wavelength_is_negligible_on_optical_scales() {
        let w = plasma_frequency(1e9).unwrap();
        assert_relative_eq!(w, 1.8836515673088532, max_relative = 1e-12);
        assert!(w / 1e15 < 1e-14);
    }

    #[test]
    fn product_with_wavelength_is_two_pi_c() {
        let two_pi_c = 2.0 * std::f64::consts::PI * SPEED_OF_LIGHT;
        let mut lambda = 1e-9;
        while lambda <= 1.0 {
            let w = plasma_frequency(lambda).unwrap();
            assert_relative_eq!(w * lambda, two_pi_c, max_relative = 1e-14);
            lambda *= 3.7;
        }
    }

    #[test]
    fn rejects_nonpositive_wavelength() {
        assert!(plasma_frequency(0.0).is_err());
        assert!(plasma_frequency(-1e-9).is_err());
        assert!(plasma_frequency(f64::NAN).is_err());
    }
}
