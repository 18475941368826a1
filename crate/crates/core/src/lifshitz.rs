//! Zero-temperature two-plate Casimir quantities from the Lifshitz double
//! integral, with the ideal-metal closed forms as built-in oracles.
//!
//! Energy per unit area between parallel half-spaces:
//!
//! ```text
//! E(L) = (ħ/4π²) ∫₀^∞ dξ ∫_{ξ/c}^∞ q dq Σ_α ln(1 − r_α²(iξ,q) e^{−2qL})
//! ```
//!
//! with α ∈ {TM, TE}. Differentiating under the integral gives the pressure
//! P = dE/dL (reported as a positive attraction magnitude) and the second
//! separation derivative needed by the linearized corrugation force.
//!
//! Internally the integral is reduced to scale-free variables σ = ξL/c,
//! κ = qL and mapped onto the unit square via σ = s/(1−s), κ = σ + t/(1−t),
//! which makes the integrand O(1) and lets a nested adaptive Gauss–Kronrod
//! rule converge quickly. The σ = 0 edge is covered by the analytic limits
//! built into the reflection kernels (r_TM → 1, finite plasma r_TE).

use std::cell::Cell;

use crate::constants::{HBAR, SPEED_OF_LIGHT};
use crate::dielectric::{reflection_products, MaterialKind, PlasmaModel};
use crate::error::{Error, Result};
use crate::quadrature::{adaptive_gk15, QuadratureSettings};

/// Converged value of one two-plate quantity.
#[derive(Clone, Copy, Debug)]
pub struct PlatePairResult {
    /// J/m² for energies, Pa for pressures, Pa/m for second derivatives.
    pub value: f64,
    /// Estimated absolute numerical error (same unit as `value`).
    pub est_error: f64,
    /// Number of integrand evaluations spent.
    pub evaluations: u64,
}

/// Separation-derivative order of the plate energy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DerivativeOrder {
    /// dE/dL (> 0; equals the attraction magnitude).
    First,
    /// d²E/dL² (< 0).
    Second,
}

#[derive(Clone, Copy)]
enum Kernel {
    Energy,
    FirstDerivative,
    SecondDerivative,
}

// Tolerance split between the two nesting levels. The inner integral runs
// tighter than the outer so that inner noise does not dominate the outer
// error estimate; both stay within the user's total budget.
const OUTER_REL_FACTOR: f64 = 0.5;
const INNER_REL_FACTOR: f64 = 0.25;
// Absolute floors in scale-free units (the dimensionless integrals are
// O(0.1..10)); they only matter in the deep exponential tail.
const INNER_ABS: f64 = 1e-18;
const OUTER_ABS_MIN: f64 = 1e-16;

fn integrand(sigma: f64, kappa: f64, mu: Option<f64>, kernel: Kernel) -> f64 {
    let p = reflection_products(sigma, kappa, mu);
    let decay = (-2.0 * kappa).exp();
    let x_tm = p.rtm2 * decay;
    let x_te = p.rte2 * decay;
    // 1 − x computed as (1 − e^{−2κ}) + e^{−2κ}(1 − r²): no cancellation
    let grow = -(-2.0 * kappa).exp_m1();
    let d_tm = grow + decay * p.one_minus_rtm2;
    let d_te = grow + decay * p.one_minus_rte2;
    match kernel {
        Kernel::Energy => {
            let ln_tm = if x_tm < 0.5 { (-x_tm).ln_1p() } else { d_tm.ln() };
            let ln_te = if x_te < 0.5 { (-x_te).ln_1p() } else { d_te.ln() };
            kappa * (ln_tm + ln_te)
        }
        Kernel::FirstDerivative => kappa * kappa * (x_tm / d_tm + x_te / d_te),
        Kernel::SecondDerivative => {
            kappa * kappa * kappa * (x_tm / (d_tm * d_tm) + x_te / (d_te * d_te))
        }
    }
}

/// Dimensionless double integral J = ∫₀^∞ dσ ∫_σ^∞ dκ kernel(σ, κ).
fn scaled_integral(
    mu: Option<f64>,
    kernel: Kernel,
    settings: &QuadratureSettings,
    abs_floor_scaled: f64,
) -> Result<(f64, f64, u64)> {
    let rel_outer = settings.rel_tolerance * OUTER_REL_FACTOR;
    let rel_inner = settings.rel_tolerance * INNER_REL_FACTOR;
    let max_sub = settings.max_subdivisions;

    let inner_failure: Cell<Option<Error>> = Cell::new(None);
    let inner_evaluations: Cell<u64> = Cell::new(0);

    let outer_integrand = |s: f64| -> f64 {
        let one_minus_s = 1.0 - s;
        let sigma = s / one_minus_s;
        let jac_s = 1.0 / (one_minus_s * one_minus_s);
        let inner = adaptive_gk15(
            |t: f64| {
                let one_minus_t = 1.0 - t;
                let kappa = sigma + t / one_minus_t;
                let jac_t = 1.0 / (one_minus_t * one_minus_t);
                jac_t * integrand(sigma, kappa, mu, kernel)
            },
            0.0,
            1.0,
            rel_inner,
            INNER_ABS,
            max_sub,
        );
        match inner {
            Ok(r) => {
                inner_evaluations.set(inner_evaluations.get() + r.evaluations);
                jac_s * r.value
            }
            Err(e) => {
                // keep the first failure
                let first = inner_failure.take().unwrap_or(e);
                inner_failure.set(Some(first));
                0.0
            }
        }
    };

    let abs_outer = abs_floor_scaled.max(OUTER_ABS_MIN);
    let outer = adaptive_gk15(outer_integrand, 0.0, 1.0, rel_outer, abs_outer, max_sub)?;
    if let Some(e) = inner_failure.take() {
        return Err(e);
    }
    let est_error = outer.error + rel_inner * outer.value.abs();
    Ok((
        outer.value,
        est_error,
        inner_evaluations.get() + outer.evaluations,
    ))
}

fn check_separation(l: f64) -> Result<()> {
    if !l.is_finite() || l <= 0.0 {
        return Err(Error::Domain(format!(
            "separation must be positive and finite, got {l:e} m"
        )));
    }
    Ok(())
}

/// Ideal-metal closed form: E = −π²ħc/(720 L³).
pub fn ideal_energy_per_area(l: f64) -> f64 {
    let pi2 = std::f64::consts::PI * std::f64::consts::PI;
    -pi2 * HBAR * SPEED_OF_LIGHT / (720.0 * l.powi(3))
}

/// Ideal-metal closed form: P = π²ħc/(240 L⁴).
pub fn ideal_pressure(l: f64) -> f64 {
    let pi2 = std::f64::consts::PI * std::f64::consts::PI;
    pi2 * HBAR * SPEED_OF_LIGHT / (240.0 * l.powi(4))
}

/// Casimir energy per unit area (J/m², negative: binding).
pub fn energy_per_area(
    kind: MaterialKind,
    l: f64,
    settings: &QuadratureSettings,
) -> Result<PlatePairResult> {
    check_separation(l)?;
    let prefactor = HBAR * SPEED_OF_LIGHT
        / (4.0 * std::f64::consts::PI * std::f64::consts::PI * l.powi(3));
    let mu = kind.scaled_plasma(l);
    let (j, err, evaluations) =
        scaled_integral(mu, Kernel::Energy, settings, settings.abs_floor / prefactor)?;
    Ok(PlatePairResult {
        value: prefactor * j,
        est_error: prefactor * err,
        evaluations,
    })
}

/// Attraction magnitude between the plates (Pa, positive). Equals dE/dL.
pub fn pressure(
    kind: MaterialKind,
    l: f64,
    settings: &QuadratureSettings,
) -> Result<PlatePairResult> {
    check_separation(l)?;
    let prefactor = HBAR * SPEED_OF_LIGHT
        / (2.0 * std::f64::consts::PI * std::f64::consts::PI * l.powi(4));
    let mu = kind.scaled_plasma(l);
    let (j, err, evaluations) = scaled_integral(
        mu,
        Kernel::FirstDerivative,
        settings,
        settings.abs_floor / prefactor,
    )?;
    Ok(PlatePairResult {
        value: prefactor * j,
        est_error: prefactor * err,
        evaluations,
    })
}

/// Separation derivatives of the plate energy, obtained by differentiating
/// under the integral sign (not by finite differences).
pub fn energy_derivative(
    kind: MaterialKind,
    l: f64,
    order: DerivativeOrder,
    settings: &QuadratureSettings,
) -> Result<PlatePairResult> {
    match order {
        DerivativeOrder::First => pressure(kind, l, settings),
        DerivativeOrder::Second => {
            check_separation(l)?;
            let prefactor = -HBAR * SPEED_OF_LIGHT
                / (std::f64::consts::PI * std::f64::consts::PI * l.powi(5));
            let mu = kind.scaled_plasma(l);
            let (j, err, evaluations) = scaled_integral(
                mu,
                Kernel::SecondDerivative,
                settings,
                settings.abs_floor / prefactor.abs(),
            )?;
            Ok(PlatePairResult {
                value: prefactor * j,
                est_error: prefactor.abs() * err,
                evaluations,
            })
        }
    }
}

/// E_plasma(L)/E_ideal(L) ∈ (0, 1): how far the finite plasma frequency
/// pulls the binding energy below the perfect-reflector value. The ideal
/// reference uses the closed form.
pub fn reduction_factor(
    model: &PlasmaModel,
    l: f64,
    settings: &QuadratureSettings,
) -> Result<f64> {
    let plasma = energy_per_area(MaterialKind::Plasma(*model), l, settings)?;
    Ok(plasma.value / ideal_energy_per_area(l))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn gold() -> MaterialKind {
        MaterialKind::Plasma(PlasmaModel::new(136e-9).unwrap())
    }

    #[test]
    fn ideal_energy_matches_closed_form() {
        let s = QuadratureSettings::default();
        for l in [150e-9, 221e-9, 1e-6, 3e-6] {
            let e = energy_per_area(MaterialKind::IdealMetal, l, &s).unwrap();
            assert_relative_eq!(e.value, ideal_energy_per_area(l), max_relative = 1e-7);
            assert!(e.value < 0.0);
            assert!(e.est_error <= s.rel_tolerance * e.value.abs() + 1e-300);
        }
    }

    #[test]
    fn ideal_pressure_matches_closed_form() {
        let s = QuadratureSettings::default();
        let p = pressure(MaterialKind::IdealMetal, 221e-9, &s).unwrap();
        assert_relative_eq!(p.value, 0.545024810609929, max_relative = 1e-7);
        let p = pressure(MaterialKind::IdealMetal, 1e-6, &s).unwrap();
        assert_relative_eq!(p.value, 1.30012577244775e-3, max_relative = 1e-7);
    }

    #[test]
    fn ideal_closed_form_values() {
        assert_relative_eq!(
            ideal_energy_per_area(1e-6),
            -4.33375257482584e-10,
            max_relative = 1e-12
        );
        assert_relative_eq!(ideal_pressure(221e-9), 0.545024810609929, max_relative = 1e-12);
    }

    #[test]
    fn ideal_energy_scales_as_inverse_cube() {
        let s = QuadratureSettings::default();
        let e1 = energy_per_area(MaterialKind::IdealMetal, 500e-9, &s).unwrap();
        let e2 = energy_per_area(MaterialKind::IdealMetal, 1000e-9, &s).unwrap();
        assert_relative_eq!(e1.value / e2.value, 8.0, max_relative = 1e-7);
    }

    #[test]
    fn first_derivative_is_the_pressure() {
        let s = QuadratureSettings::default();
        let p = pressure(gold(), 221e-9, &s).unwrap();
        let d1 = energy_derivative(gold(), 221e-9, DerivativeOrder::First, &s).unwrap();
        assert_eq!(p.value, d1.value);
        assert!(d1.value > 0.0);
    }

    #[test]
    fn ideal_second_derivative_matches_closed_form() {
        let s = QuadratureSettings::default();
        let d2 =
            energy_derivative(MaterialKind::IdealMetal, 221e-9, DerivativeOrder::Second, &s)
                .unwrap();
        assert_relative_eq!(d2.value, -9.86470245447836e6, max_relative = 1e-7);
        assert!(d2.value < 0.0);
    }

    #[test]
    fn magnitudes_decrease_with_separation() {
        let s = QuadratureSettings::default();
        let mut prev_e = f64::INFINITY;
        let mut prev_p = f64::INFINITY;
        for l in [150e-9, 221e-9, 400e-9, 1e-6] {
            let e = energy_per_area(gold(), l, &s).unwrap().value.abs();
            let p = pressure(gold(), l, &s).unwrap().value;
            assert!(e < prev_e && p < prev_p);
            prev_e = e;
            prev_p = p;
        }
    }

    #[test]
    fn reduction_factor_behaviour() {
        let s = QuadratureSettings::default();
        let m = PlasmaModel::new(136e-9).unwrap();
        let r221 = reduction_factor(&m, 221e-9, &s).unwrap();
        assert!(r221 > 0.5 && r221 < 0.8, "r221 = {r221}");
        let r2um = reduction_factor(&m, 2e-6, &s).unwrap();
        assert!(r2um > 0.9, "r2um = {r2um}");
        assert!(r2um > r221);
        // near-ideal limit
        let hard = PlasmaModel::new(0.1e-9).unwrap();
        let r = reduction_factor(&hard, 1e-6, &s).unwrap();
        assert!(r >= 0.999, "r = {r}");
    }

    #[test]
    fn exhausted_budget_surfaces_as_convergence_error() {
        let s = QuadratureSettings::new(1e-12, 0.0, 1).unwrap();
        let err = energy_per_area(MaterialKind::IdealMetal, 221e-9, &s).unwrap_err();
        assert!(matches!(err, Error::Convergence { .. }), "got {err:?}");
    }

    #[test]
    fn halving_tolerance_stays_within_previous_error_bar() {
        let coarse = QuadratureSettings::new(1e-6, 0.0, 200).unwrap();
        let fine = QuadratureSettings::new(5e-7, 0.0, 200).unwrap();
        let a = pressure(gold(), 221e-9, &coarse).unwrap();
        let b = pressure(gold(), 221e-9, &fine).unwrap();
        assert!((a.value - b.value).abs() <= a.est_error);
    }

    #[test]
    fn rejects_nonpositive_separation() {
        let s = QuadratureSettings::default();
        assert!(energy_per_area(gold(), 0.0, &s).is_err());
        assert!(pressure(gold(), -1e-9, &s).is_err());
    }
}
