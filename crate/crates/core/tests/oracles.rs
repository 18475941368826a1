//! Frozen reference values.
//!
//! Two-plate quantities were computed with an independent nested adaptive
//! quadrature at 1e-11 relative accuracy (cross-checked against the swapped
//! integration order and the ideal-metal closed forms at 2e-16); special
//! functions and pure arithmetic with 30–50 digit arithmetic. Phase-averaged
//! quantities come from an independent Chebyshev + uniform-grid pipeline.

use approx::assert_relative_eq;
use casimir_core::corrugation::{
    self, calibrate_radius, complete_amplitude_sphere, higher_order_ratio,
    linear_amplitude_sphere, linear_plate_amplitude, CorrugatedGeometry, CorrugationPfa,
};
use casimir_core::lifshitz::{self, DerivativeOrder};
use casimir_core::special::erfc;
use casimir_core::stats::{compatibility_probability, sigma_from_ci, Measurement};
use casimir_core::{LateralShift, MaterialKind, PlasmaModel, QuadratureSettings};

fn gold() -> MaterialKind {
    MaterialKind::Plasma(PlasmaModel::new(136e-9).unwrap())
}

fn experiment(radius: Option<f64>) -> CorrugatedGeometry {
    CorrugatedGeometry::new(221e-9, 1.2e-6, 59e-9, 8e-9, radius).unwrap()
}

#[test]
fn plasma_energy_and_pressure_at_experimental_separation() {
    let s = QuadratureSettings::default();
    let e = lifshitz::energy_per_area(gold(), 221e-9, &s).unwrap();
    assert_relative_eq!(e.value, -2.8651219932244697e-8, max_relative = 1e-6);
    let p = lifshitz::pressure(gold(), 221e-9, &s).unwrap();
    assert_relative_eq!(p.value, 0.3513344349999054, max_relative = 1e-6);
    assert!(p.value > 0.0 && p.value < 0.545024810609929);
}

#[test]
fn plasma_second_derivative_and_large_separation_energy() {
    let s = QuadratureSettings::default();
    let d2 = lifshitz::energy_derivative(gold(), 221e-9, DerivativeOrder::Second, &s).unwrap();
    assert_relative_eq!(d2.value, -5.77587524206162e6, max_relative = 1e-6);
    let e = lifshitz::energy_per_area(gold(), 500e-9, &s).unwrap();
    assert_relative_eq!(e.value, -2.949143433037107e-9, max_relative = 1e-6);
    let d1 = lifshitz::energy_derivative(gold(), 500e-9, DerivativeOrder::First, &s).unwrap();
    assert_relative_eq!(d1.value, 0.01680417563514056, max_relative = 1e-6);
}

#[test]
fn reduction_factors_track_the_ideal_limit() {
    let s = QuadratureSettings::default();
    let m = PlasmaModel::new(136e-9).unwrap();
    let r221 = lifshitz::reduction_factor(&m, 221e-9, &s).unwrap();
    assert_relative_eq!(r221, 0.7136016191268291, max_relative = 1e-6);
    let r2 = lifshitz::reduction_factor(&m, 2e-6, &s).unwrap();
    assert_relative_eq!(r2, 0.9583426680441928, max_relative = 1e-6);
    let r10 = lifshitz::reduction_factor(&m, 10e-6, &s).unwrap();
    assert_relative_eq!(r10, 0.9914089968950122, max_relative = 1e-6);
    assert!(r10 > 0.95 && r10 < 1.0);
}

#[test]
fn averaged_energy_at_aligned_and_opposed_shifts() {
    let s = QuadratureSettings::default();
    let pfa = CorrugationPfa::new(experiment(None), gold(), &s).unwrap();
    let aligned = pfa.averaged_energy(LateralShift { b: 0.0 });
    let opposed = pfa.averaged_energy(LateralShift { b: 0.6e-6 });
    assert_relative_eq!(aligned, -3.274523634188426e-8, max_relative = 1e-5);
    assert_relative_eq!(opposed, -3.619874753278456e-8, max_relative = 1e-5);
}

#[test]
fn lateral_force_at_quarter_period_shift() {
    let s = QuadratureSettings::default();
    let pfa = CorrugationPfa::new(experiment(Some(1e-4)), gold(), &s).unwrap();
    let f = pfa
        .lateral_force_sphere(LateralShift { b: 0.3e-6 })
        .unwrap();
    assert_relative_eq!(f, 3.187097398030709e-13, max_relative = 1e-5);
}

#[test]
fn complete_to_linear_ratio_for_the_experimental_geometry() {
    let s = QuadratureSettings::default();
    let geom = experiment(Some(1e-4));
    let ratio = higher_order_ratio(&geom, gold(), &s).unwrap();
    assert_relative_eq!(ratio, 1.1694537552880566, max_relative = 1e-5);
    assert!(ratio >= 1.0);
}

#[test]
fn radius_calibrated_to_the_linear_amplitude() {
    let s = QuadratureSettings::default();
    let geom = experiment(None);
    let r = calibrate_radius(&geom, gold(), 0.28e-12, &s).unwrap();
    assert_relative_eq!(r, 1.0264713205209346e-4, max_relative = 1e-6);
    // round trip through the linear amplitude
    let geom_r = geom.with_radius(r).unwrap();
    let linear = linear_amplitude_sphere(&geom_r, gold(), &s).unwrap();
    assert_relative_eq!(linear, 0.28e-12, max_relative = 1e-10);
    // the complete amplitude then lands on the all-powers value
    let complete = complete_amplitude_sphere(&geom_r, gold(), &s).unwrap();
    assert_relative_eq!(complete.amplitude, 3.2744705148065587e-13, max_relative = 1e-5);
    assert!(complete.b_max > 0.0 && complete.b_max < 1.2e-6);
}

#[test]
fn plate_lateral_force_and_linear_amplitude() {
    let s = QuadratureSettings::default();
    let geom = experiment(None);
    let f = corrugation::lateral_force_plate(&geom, LateralShift { b: 0.3e-6 }, gold(), &s)
        .unwrap();
    assert_relative_eq!(f, 9.033201585950685e-3, max_relative = 1e-5);
    let lin = linear_plate_amplitude(&geom, gold(), &s).unwrap();
    assert_relative_eq!(lin, 7.137209243214701e-3, max_relative = 1e-6);
}

#[test]
fn erfc_against_quadrature_oracle() {
    // independent route: composite Simpson on the defining integral
    // erfc(z) = (2/sqrt(pi)) * int_z^inf exp(-t^2) dt, truncated where the
    // integrand underflows
    fn erfc_simpson(z: f64) -> f64 {
        let upper = z + 12.0;
        let n = 40_000usize;
        let h = (upper - z) / n as f64;
        let g = |t: f64| (-t * t).exp();
        let mut acc = g(z) + g(upper);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            acc += w * g(z + i as f64 * h);
        }
        acc * h / 3.0 * 2.0 / std::f64::consts::PI.sqrt()
    }
    let mut z = 0.0;
    while z <= 6.0 {
        let reference = erfc_simpson(z);
        let got = erfc(z);
        assert!(
            (got - reference).abs() <= 1e-12 * reference.max(1e-300),
            "erfc({z}): {got:e} vs {reference:e}"
        );
        z += 0.25;
    }
}

#[test]
fn measurement_statistics_reference_values() {
    let m = Measurement::new(0.32e-12, 0.077e-12, 0.95).unwrap();
    assert_relative_eq!(sigma_from_ci(&m), 3.92864361831983509e-14, max_relative = 1e-10);
    // the two theory endpoints of the comparison
    let p_020 = compatibility_probability(&m, 0.20e-12);
    let p_033 = compatibility_probability(&m, 0.33e-12);
    assert_relative_eq!(p_020, 0.00225444036379235, max_relative = 1e-9);
    assert_relative_eq!(p_033, 0.799077805533937, max_relative = 1e-9);
    assert!(p_020 < 0.005 && p_020 > 0.001);
    assert!(p_033 > 0.5);
}
