//! Statistical compatibility of theoretical force values with a measured
//! amplitude quoted as value ± half-width at a stated confidence level.
//!
//! The only error model supported is Gaussian: the confidence interval is
//! inverted at its stated level to recover σ, and compatibility is the
//! two-sided tail probability of the observed theory-measurement deviation.

use crate::error::{Error, Result};
use crate::special::{erfc, two_sided_normal_quantile};

/// A measured force with its confidence interval.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Measurement {
    value: f64,
    ci_halfwidth: f64,
    confidence: f64,
}

impl Measurement {
    pub fn new(value: f64, ci_halfwidth: f64, confidence: f64) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::Domain(format!(
                "measured value must be finite, got {value:e}"
            )));
        }
        if !(ci_halfwidth.is_finite() && ci_halfwidth > 0.0) {
            return Err(Error::Domain(format!(
                "confidence-interval half-width must be positive, got {ci_halfwidth:e}"
            )));
        }
        if !(confidence > 0.0 && confidence < 1.0) {
            return Err(Error::Domain(format!(
                "confidence must lie strictly inside (0, 1), got {confidence}"
            )));
        }
        Ok(Self {
            value,
            ci_halfwidth,
            confidence,
        })
    }

    pub fn value(&self) -> f64 {
        self.value
    }
    pub fn ci_halfwidth(&self) -> f64 {
        self.ci_halfwidth
    }
    pub fn confidence(&self) -> f64 {
        self.confidence
    }
}

/// Gaussian σ implied by the interval: half-width / z(confidence), with z
/// the two-sided standard-normal quantile (z(0.95) ≈ 1.95996).
pub fn sigma_from_ci(m: &Measurement) -> f64 {
    // the constructor already guaranteed a valid confidence level
    let z = two_sided_normal_quantile(m.confidence)
        .expect("Measurement invariant: confidence in (0, 1)");
    m.ci_halfwidth / z
}

/// Two-sided probability of a deviation at least as large as
/// |theory − value|: p = erfc(|Δ|/(σ√2)). Equals 1 when theory matches the
/// measured value, and decreases monotonically with the deviation.
pub fn compatibility_probability(m: &Measurement, theory: f64) -> f64 {
    let sigma = sigma_from_ci(m);
    erfc((theory - m.value).abs() / (sigma * std::f64::consts::SQRT_2))
}

/// One-sided variant (half the two-sided probability); reported alongside
/// the contract value because quoting conventions differ.
pub fn one_sided_probability(m: &Measurement, theory: f64) -> f64 {
    0.5 * compatibility_probability(m, theory)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn measured() -> Measurement {
        // 0.32 +/- 0.077 pN at 95% confidence
        Measurement::new(0.32e-12, 0.077e-12, 0.95).unwrap()
    }

    #[test]
    fn sigma_matches_reference() {
        assert_relative_eq!(
            sigma_from_ci(&measured()),
            3.92864361831983509e-14,
            max_relative = 1e-12
        );
    }

    #[test]
    fn one_sigma_convention() {
        let m = Measurement::new(1.0, 0.5, 0.6827).unwrap();
        // z(0.6827) = 1 to four decimals
        assert_relative_eq!(sigma_from_ci(&m), 0.5, max_relative = 1e-4);
    }

    #[test]
    fn sigma_is_linear_in_the_halfwidth() {
        let m1 = Measurement::new(0.32e-12, 0.077e-12, 0.95).unwrap();
        let m2 = Measurement::new(0.32e-12, 0.154e-12, 0.95).unwrap();
        assert_relative_eq!(sigma_from_ci(&m2), 2.0 * sigma_from_ci(&m1), max_relative = 1e-14);
    }

    #[test]
    fn exact_agreement_has_probability_one() {
        assert_eq!(compatibility_probability(&measured(), 0.32e-12), 1.0);
    }

    #[test]
    fn probabilities_match_references() {
        let m = measured();
        assert_relative_eq!(
            compatibility_probability(&m, 0.20e-12),
            0.00225444036379235,
            max_relative = 1e-10
        );
        assert_relative_eq!(
            compatibility_probability(&m, 0.33e-12),
            0.799077805533937,
            max_relative = 1e-10
        );
        assert_relative_eq!(
            one_sided_probability(&m, 0.20e-12),
            0.5 * 0.00225444036379235,
            max_relative = 1e-10
        );
    }

    #[test]
    fn symmetric_and_monotone_in_the_deviation() {
        let m = measured();
        for delta in [0.01e-12, 0.05e-12, 0.12e-12] {
            assert_relative_eq!(
                compatibility_probability(&m, 0.32e-12 + delta),
                compatibility_probability(&m, 0.32e-12 - delta),
                max_relative = 1e-14
            );
        }
        let mut prev = 1.1;
        for theory in [0.32e-12, 0.30e-12, 0.26e-12, 0.20e-12, 0.10e-12] {
            let p = compatibility_probability(&m, theory);
            assert!(p < prev);
            prev = p;
        }
    }

    #[test]
    fn invariants_are_enforced() {
        assert!(Measurement::new(0.32e-12, 0.0, 0.95).is_err());
        assert!(Measurement::new(0.32e-12, -0.077e-12, 0.95).is_err());
        assert!(Measurement::new(0.32e-12, 0.077e-12, 0.0).is_err());
        assert!(Measurement::new(0.32e-12, 0.077e-12, 1.0).is_err());
        assert!(Measurement::new(f64::NAN, 0.077e-12, 0.95).is_err());
    }
}
