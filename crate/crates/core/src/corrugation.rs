//! Lateral Casimir force between sinusoidally corrugated surfaces under the
//! proximity-force approximation.
//!
//! The local gap between the surfaces at lateral shift `b` is
//!
//! ```text
//! d(x, b) = L + a1·cos(kx + kb) − a2·cos(kx),    k = 2π/λ_C
//! ```
//!
//! Plate–plate quantities phase-average the two-plate result over one
//! corrugation period. The sphere–plate force follows from the Derjaguin
//! construction: V(L, b) = 2πR·⟨∫_d^∞ E(z) dz⟩ₓ, whose lateral derivative is
//! evaluated analytically,
//!
//! ```text
//! F_lat(b) = −2πR·a1·k·⟨E(d(x, b))·sin(kx + kb)⟩ₓ .
//! ```
//!
//! The phase average applies inside the Derjaguin integral (the two commute
//! by linearity); this assumes the usual scale separation λ_C ≲ √(R·L) of
//! the corrugated-sphere experiments.
//!
//! The "complete" amplitude maximizes |F_lat| over the shift and keeps every
//! power of the corrugation amplitudes through the nonlinearity of E(d); the
//! "linear" amplitude is its exact a1·a2 leading term π·R·k·a1·a2·P(L).
//!
//! E(d) is evaluated through a Chebyshev cache over the one reachable gap
//! window [L − a1 − a2, L + a1 + a2], so scans and maximizations cost
//! polynomial evaluations instead of double quadratures.

use std::f64::consts::PI;

use crate::chebyshev::ChebyshevSeries;
use crate::dielectric::MaterialKind;
use crate::error::{Error, Result};
use crate::lifshitz::{self, DerivativeOrder};
use crate::quadrature::QuadratureSettings;

/// Corrugated sphere-plate (or plate-plate, when `radius` is absent)
/// geometry. Lengths in meters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CorrugatedGeometry {
    separation: f64,
    lambda_c: f64,
    a1: f64,
    a2: f64,
    radius: Option<f64>,
}

impl CorrugatedGeometry {
    /// Validates `separation > a1 + a2` (surfaces never touch), positive
    /// corrugation wavelength and, when present, positive sphere radius.
    pub fn new(
        separation: f64,
        lambda_c: f64,
        a1: f64,
        a2: f64,
        radius: Option<f64>,
    ) -> Result<Self> {
        for (name, v) in [
            ("separation", separation),
            ("lambda_c", lambda_c),
            ("a1", a1),
            ("a2", a2),
        ] {
            if !v.is_finite() {
                return Err(Error::Domain(format!("{name} must be finite, got {v:e}")));
            }
        }
        if lambda_c <= 0.0 {
            return Err(Error::Domain(format!(
                "corrugation wavelength must be positive, got {lambda_c:e} m"
            )));
        }
        if a1 < 0.0 || a2 < 0.0 {
            return Err(Error::Domain(format!(
                "corrugation amplitudes must be non-negative, got a1 = {a1:e} m, a2 = {a2:e} m"
            )));
        }
        if separation <= a1 + a2 {
            return Err(Error::Domain(format!(
                "mean separation {separation:e} m must exceed a1 + a2 = {:e} m or the surfaces touch",
                a1 + a2
            )));
        }
        if let Some(r) = radius {
            if !(r.is_finite() && r > 0.0) {
                return Err(Error::Domain(format!(
                    "sphere radius must be positive and finite, got {r:e} m"
                )));
            }
        }
        Ok(Self {
            separation,
            lambda_c,
            a1,
            a2,
            radius,
        })
    }

    pub fn separation(&self) -> f64 {
        self.separation
    }
    pub fn lambda_c(&self) -> f64 {
        self.lambda_c
    }
    pub fn a1(&self) -> f64 {
        self.a1
    }
    pub fn a2(&self) -> f64 {
        self.a2
    }
    pub fn radius(&self) -> Option<f64> {
        self.radius
    }

    /// Corrugation wavevector k = 2π/λ_C (1/m).
    pub fn corrugation_wavevector(&self) -> f64 {
        2.0 * PI / self.lambda_c
    }

    /// Same geometry with the sphere radius replaced.
    pub fn with_radius(&self, radius: f64) -> Result<Self> {
        Self::new(self.separation, self.lambda_c, self.a1, self.a2, Some(radius))
    }
}

/// Lateral displacement of the sphere-side corrugation (m). All lateral
/// quantities are periodic in it with period λ_C.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LateralShift {
    pub b: f64,
}

impl From<f64> for LateralShift {
    fn from(b: f64) -> Self {
        Self { b }
    }
}

/// Local gap d(x, b); always positive under the geometry invariants.
pub fn local_gap(geom: &CorrugatedGeometry, x: f64, shift: LateralShift) -> f64 {
    let k = geom.corrugation_wavevector();
    geom.separation + geom.a1 * (k * x + k * shift.b).cos() - geom.a2 * (k * x).cos()
}

/// Maximum amplitude of the lateral force over one period, with the shift
/// where it is attained.
#[derive(Clone, Copy, Debug)]
pub struct LateralAmplitude {
    /// max_b |F_lat| (N).
    pub amplitude: f64,
    /// Shift of the maximum, in [0, λ_C) (m).
    pub b_max: f64,
    /// Estimated absolute numerical error on the amplitude (N).
    pub est_error: f64,
}

// Fixed internal tolerances of the phase-average machinery. The Chebyshev
// cache nodes run at min(rel/4, 1e-9); the fit tail and the trapezoid
// doubling track that accuracy.
const CHEB_FIT_REL: f64 = 4e-9;
const TRAP_REL: f64 = 1e-9;
const SCAN_SAMPLES: usize = 64;
const SHIFT_TOL_PERIODS: f64 = 1e-6;

fn node_settings(settings: &QuadratureSettings) -> Result<QuadratureSettings> {
    QuadratureSettings::new(
        (settings.rel_tolerance * 0.25).min(1e-9),
        settings.abs_floor,
        settings.max_subdivisions,
    )
}

/// Mean of a smooth 2π-periodic function by trapezoid doubling; spectrally
/// accurate. Returns (mean, last doubling change).
fn periodic_mean<F: Fn(f64) -> f64>(f: F, rel_tol: f64) -> (f64, f64) {
    let two_pi = 2.0 * PI;
    let mut n: usize = 32;
    let mut sum = 0.0;
    let mut max_abs = 0.0_f64;
    for j in 0..n {
        let v = f(two_pi * j as f64 / n as f64);
        sum += v;
        max_abs = max_abs.max(v.abs());
    }
    let mut mean = sum / n as f64;
    loop {
        let mut odd = 0.0;
        for j in 0..n {
            let v = f(two_pi * (j as f64 + 0.5) / n as f64);
            odd += v;
            max_abs = max_abs.max(v.abs());
        }
        let refined = 0.5 * (mean + odd / n as f64);
        let change = (refined - mean).abs();
        n *= 2;
        mean = refined;
        // the absolute floor rescues exactly-cancelling (zero-mean) cases
        if n >= 128 && change <= rel_tol * mean.abs().max(1e-12 * max_abs) {
            return (mean, change);
        }
        if n >= (1 << 16) {
            return (mean, change);
        }
    }
}

fn golden_max<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, xtol: f64) -> (f64, f64) {
    const INVPHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INVPHI * (b - a);
    let mut d = a + INVPHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while b - a > xtol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INVPHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INVPHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Reusable phase-averaging context: geometry plus the Chebyshev cache of
/// the plate energy over the reachable gap window.
pub struct CorrugationPfa {
    geom: CorrugatedGeometry,
    energy: ChebyshevSeries,
    energy_integral: ChebyshevSeries,
    flat_energy: Option<f64>,
    cache_err_abs: f64,
}

impl CorrugationPfa {
    pub fn new(
        geom: CorrugatedGeometry,
        kind: MaterialKind,
        settings: &QuadratureSettings,
    ) -> Result<Self> {
        let node = node_settings(settings)?;
        let width = geom.a1 + geom.a2;
        let l = geom.separation;
        if width == 0.0 {
            let e = lifshitz::energy_per_area(kind, l, &node)?;
            let energy = ChebyshevSeries::constant(l * (1.0 - 1e-9), l * (1.0 + 1e-9), e.value);
            let energy_integral = energy.antiderivative();
            return Ok(Self {
                geom,
                energy,
                energy_integral,
                flat_energy: Some(e.value),
                cache_err_abs: e.est_error,
            });
        }
        // margin keeps roundoff overshoot of cos inside the fitted window
        // while never letting the window reach d = 0
        let margin = (width * 1e-12).min(0.5 * (l - width));
        let (lo, hi) = (l - width - margin, l + width + margin);
        let energy = ChebyshevSeries::fit(lo, hi, CHEB_FIT_REL, |d| {
            Ok(lifshitz::energy_per_area(kind, d, &node)?.value)
        })?;
        let energy_integral = energy.antiderivative();
        let cache_err_abs = (CHEB_FIT_REL + node.rel_tolerance) * energy.scale();
        Ok(Self {
            geom,
            energy,
            energy_integral,
            flat_energy: None,
            cache_err_abs,
        })
    }

    pub fn geometry(&self) -> &CorrugatedGeometry {
        &self.geom
    }

    fn gap(&self, theta: f64, phi: f64) -> f64 {
        self.geom.separation + self.geom.a1 * (theta + phi).cos() - self.geom.a2 * theta.cos()
    }

    /// Phase-averaged plate energy Ē(L, b) (J/m²); equals E(L) exactly for
    /// flat surfaces.
    pub fn averaged_energy(&self, shift: LateralShift) -> f64 {
        if let Some(e) = self.flat_energy {
            return e;
        }
        let phi = self.geom.corrugation_wavevector() * shift.b;
        let (mean, _) = periodic_mean(|th| self.energy.eval(self.gap(th, phi)), TRAP_REL);
        mean
    }

    fn require_radius(&self) -> Result<f64> {
        self.geom.radius.ok_or_else(|| {
            Error::Domain("sphere radius is required for sphere-plate operations".to_string())
        })
    }

    /// Lateral sphere-plate force at shift `b` (N). Identically zero when
    /// either corrugation amplitude vanishes.
    pub fn lateral_force_sphere(&self, shift: LateralShift) -> Result<f64> {
        let radius = self.require_radius()?;
        let (a1, a2) = (self.geom.a1, self.geom.a2);
        if a1 * a2 == 0.0 {
            return Ok(0.0);
        }
        let k = self.geom.corrugation_wavevector();
        let phi = k * shift.b;
        let (mean, _) = periodic_mean(
            |th| self.energy.eval(self.gap(th, phi)) * (th + phi).sin(),
            TRAP_REL,
        );
        Ok(-2.0 * PI * radius * a1 * k * mean)
    }

    /// Derjaguin sphere potential at shift `b`, up to an additive constant
    /// independent of `b` (the gap-independent tail of ∫_d^∞ E). Its central
    /// difference in `b` reproduces `lateral_force_sphere` and serves as the
    /// energy-route cross-check.
    pub fn sphere_potential(&self, shift: LateralShift) -> Result<f64> {
        let radius = self.require_radius()?;
        let phi = self.geom.corrugation_wavevector() * shift.b;
        let (mean, _) = periodic_mean(|th| self.energy_integral.eval(self.gap(th, phi)), TRAP_REL);
        Ok(-2.0 * PI * radius * mean)
    }

    /// Complete-PFA amplitude: coarse scan over one period followed by
    /// golden-section refinement to |Δb| < λ_C·1e-6.
    pub fn complete_amplitude(&self) -> Result<LateralAmplitude> {
        let radius = self.require_radius()?;
        let (a1, a2) = (self.geom.a1, self.geom.a2);
        if a1 * a2 == 0.0 {
            return Ok(LateralAmplitude {
                amplitude: 0.0,
                b_max: 0.0,
                est_error: 0.0,
            });
        }
        let k = self.geom.corrugation_wavevector();
        let prefactor = 2.0 * PI * radius * a1 * k;
        let mean_at = |phi: f64| {
            periodic_mean(
                |th| self.energy.eval(self.gap(th, phi)) * (th + phi).sin(),
                TRAP_REL,
            )
        };
        let force_abs = |phi: f64| prefactor * mean_at(phi).0.abs();

        let step = 2.0 * PI / SCAN_SAMPLES as f64;
        let mut best_phi = 0.0;
        let mut best = -1.0;
        for j in 0..SCAN_SAMPLES {
            let phi = step * j as f64;
            let f = force_abs(phi);
            if f > best {
                best = f;
                best_phi = phi;
            }
        }
        let (phi_max, amplitude) = golden_max(
            force_abs,
            best_phi - step,
            best_phi + step,
            2.0 * PI * SHIFT_TOL_PERIODS,
        );
        let (_, trap_change) = mean_at(phi_max);
        let est_error = prefactor * (self.cache_err_abs + trap_change);
        let b_max = phi_max.rem_euclid(2.0 * PI) / k;
        Ok(LateralAmplitude {
            amplitude,
            b_max,
            est_error,
        })
    }
}

/// Phase-averaged plate energy for a one-off query. Sweeps should build a
/// [`CorrugationPfa`] once instead.
pub fn averaged_energy(
    geom: &CorrugatedGeometry,
    shift: LateralShift,
    kind: MaterialKind,
    settings: &QuadratureSettings,
) -> Result<f64> {
    Ok(CorrugationPfa::new(*geom, kind, settings)?.averaged_energy(shift))
}

/// Lateral sphere-plate force at one shift (N).
pub fn lateral_force_sphere(
    geom: &CorrugatedGeometry,
    shift: LateralShift,
    kind: MaterialKind,
    settings: &QuadratureSettings,
) -> Result<f64> {
    CorrugationPfa::new(*geom, kind, settings)?.lateral_force_sphere(shift)
}

/// Exact a1·a2 leading term of the lateral amplitude:
/// π·R·k·a1·a2·P(L), with P the attraction magnitude.
pub fn linear_amplitude_sphere(
    geom: &CorrugatedGeometry,
    kind: MaterialKind,
    settings: &QuadratureSettings,
) -> Result<f64> {
    let radius = geom.radius().ok_or_else(|| {
        Error::Domain("sphere radius is required for sphere-plate operations".to_string())
    })?;
    let p = lifshitz::pressure(kind, geom.separation(), settings)?;
    Ok(PI * radius * geom.corrugation_wavevector() * geom.a1() * geom.a2() * p.value)
}

/// Complete-PFA lateral amplitude (all powers of a1, a2) and its shift.
pub fn complete_amplitude_sphere(
    geom: &CorrugatedGeometry,
    kind: MaterialKind,
    settings: &QuadratureSettings,
) -> Result<LateralAmplitude> {
    CorrugationPfa::new(*geom, kind, settings)?.complete_amplitude()
}

/// complete/linear amplitude ratio; ≥ 1 for this geometry class and → 1 as
/// the amplitudes shrink. Undefined (0/0) when either amplitude vanishes.
pub fn higher_order_ratio(
    geom: &CorrugatedGeometry,
    kind: MaterialKind,
    settings: &QuadratureSettings,
) -> Result<f64> {
    if geom.a1() * geom.a2() == 0.0 {
        return Err(Error::Domain(
            "higher-order ratio is undefined (0/0) when either corrugation amplitude is zero"
                .to_string(),
        ));
    }
    let linear = linear_amplitude_sphere(geom, kind, settings)?;
    let complete = complete_amplitude_sphere(geom, kind, settings)?;
    Ok(complete.amplitude / linear)
}

/// Sphere radius for which the linear amplitude equals `target`:
/// R = target / (π·k·a1·a2·P(L)). Exact inversion of the linear formula.
pub fn calibrate_radius(
    geom: &CorrugatedGeometry,
    kind: MaterialKind,
    target: f64,
    settings: &QuadratureSettings,
) -> Result<f64> {
    if !(target.is_finite() && target > 0.0) {
        return Err(Error::Domain(format!(
            "calibration target must be positive and finite, got {target:e} N"
        )));
    }
    if geom.a1() * geom.a2() == 0.0 {
        return Err(Error::Domain(
            "cannot calibrate the radius: the linear amplitude vanishes when a1·a2 = 0"
                .to_string(),
        ));
    }
    let p = lifshitz::pressure(kind, geom.separation(), settings)?;
    Ok(target / (PI * geom.corrugation_wavevector() * geom.a1() * geom.a2() * p.value))
}

/// Lateral force per unit area between two corrugated plates at the given
/// shifts (N/m²), sharing one pressure cache:
/// F(b) = a1·k·⟨(dE/dL)(d(x, b))·sin(kx + kb)⟩.
pub fn lateral_force_plate_profile(
    geom: &CorrugatedGeometry,
    shifts: &[LateralShift],
    kind: MaterialKind,
    settings: &QuadratureSettings,
) -> Result<Vec<f64>> {
    let (a1, a2) = (geom.a1(), geom.a2());
    if a1 * a2 == 0.0 {
        return Ok(vec![0.0; shifts.len()]);
    }
    let node = node_settings(settings)?;
    let l = geom.separation();
    let width = a1 + a2;
    let margin = (width * 1e-12).min(0.5 * (l - width));
    let pressure_cache =
        ChebyshevSeries::fit(l - width - margin, l + width + margin, CHEB_FIT_REL, |d| {
            Ok(lifshitz::pressure(kind, d, &node)?.value)
        })?;
    let k = geom.corrugation_wavevector();
    Ok(shifts
        .iter()
        .map(|shift| {
            let phi = k * shift.b;
            let (mean, _) = periodic_mean(
                |th| {
                    let d = l + a1 * (th + phi).cos() - a2 * th.cos();
                    pressure_cache.eval(d) * (th + phi).sin()
                },
                TRAP_REL,
            );
            a1 * k * mean
        })
        .collect())
}

/// Single-shift convenience wrapper around [`lateral_force_plate_profile`].
pub fn lateral_force_plate(
    geom: &CorrugatedGeometry,
    shift: LateralShift,
    kind: MaterialKind,
    settings: &QuadratureSettings,
) -> Result<f64> {
    Ok(lateral_force_plate_profile(geom, &[shift], kind, settings)?[0])
}

/// Linearized plate-plate amplitude per unit area,
/// (k·a1·a2/2)·|d²E/dL²|(L).
pub fn linear_plate_amplitude(
    geom: &CorrugatedGeometry,
    kind: MaterialKind,
    settings: &QuadratureSettings,
) -> Result<f64> {
    let d2 = lifshitz::energy_derivative(kind, geom.separation(), DerivativeOrder::Second, settings)?;
    Ok(0.5 * geom.corrugation_wavevector() * geom.a1() * geom.a2() * d2.value.abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn experiment(radius: Option<f64>) -> CorrugatedGeometry {
        CorrugatedGeometry::new(221e-9, 1.2e-6, 59e-9, 8e-9, radius).unwrap()
    }

    #[test]
    fn geometry_invariants_are_enforced() {
        assert!(CorrugatedGeometry::new(60e-9, 1.2e-6, 59e-9, 8e-9, None).is_err());
        assert!(CorrugatedGeometry::new(221e-9, 0.0, 59e-9, 8e-9, None).is_err());
        assert!(CorrugatedGeometry::new(221e-9, 1.2e-6, -1e-9, 8e-9, None).is_err());
        assert!(CorrugatedGeometry::new(221e-9, 1.2e-6, 59e-9, 8e-9, Some(0.0)).is_err());
    }

    #[test]
    fn local_gap_examples() {
        let flat = CorrugatedGeometry::new(221e-9, 1.2e-6, 0.0, 0.0, None).unwrap();
        for x in [0.0, 3.3e-7, 9.9e-7] {
            assert_eq!(local_gap(&flat, x, 0.77e-6.into()), 221e-9);
        }
        let geom = experiment(None);
        assert_relative_eq!(
            local_gap(&geom, 0.0, 0.0.into()),
            221e-9 + 59e-9 - 8e-9,
            max_relative = 1e-15
        );
        // deepest point over x at half-period shift: L - a1 - a2 = 154 nm
        let b = LateralShift { b: 0.6e-6 };
        let min = (0..200_001)
            .map(|i| local_gap(&geom, 1.2e-6 * i as f64 / 200_000.0, b))
            .fold(f64::INFINITY, f64::min);
        assert_relative_eq!(min, 154e-9, max_relative = 1e-9);
        assert!(min > 0.0);
    }

    #[test]
    fn flat_surfaces_reduce_to_plain_plates() {
        let geom = CorrugatedGeometry::new(221e-9, 1.2e-6, 0.0, 0.0, Some(1e-4)).unwrap();
        let s = QuadratureSettings::default();
        let pfa = CorrugationPfa::new(geom, MaterialKind::IdealMetal, &s).unwrap();
        let direct = lifshitz::energy_per_area(
            MaterialKind::IdealMetal,
            221e-9,
            &node_settings(&s).unwrap(),
        )
        .unwrap();
        assert_eq!(pfa.averaged_energy(0.3e-6.into()), direct.value);
        assert_eq!(pfa.lateral_force_sphere(0.3e-6.into()).unwrap(), 0.0);
    }

    #[test]
    fn single_sided_corrugation_has_no_lateral_force() {
        let geom = CorrugatedGeometry::new(221e-9, 1.2e-6, 59e-9, 0.0, Some(1e-4)).unwrap();
        let s = QuadratureSettings::default();
        let pfa = CorrugationPfa::new(geom, MaterialKind::IdealMetal, &s).unwrap();
        // averaged energy is shift-independent
        let e0 = pfa.averaged_energy(0.0.into());
        let e1 = pfa.averaged_energy(0.4e-6.into());
        assert_relative_eq!(e0, e1, max_relative = 1e-10);
        // force vanishes identically, as does the amplitude
        assert_eq!(pfa.lateral_force_sphere(0.4e-6.into()).unwrap(), 0.0);
        let amp = pfa.complete_amplitude().unwrap();
        assert_eq!(amp.amplitude, 0.0);
    }

    #[test]
    fn aligned_corrugations_feel_no_lateral_force() {
        let geom = experiment(Some(1e-4));
        let s = QuadratureSettings::default();
        let pfa = CorrugationPfa::new(geom, MaterialKind::IdealMetal, &s).unwrap();
        let f0 = pfa.lateral_force_sphere(0.0.into()).unwrap();
        assert!(f0.abs() < 1e-18, "F(0) = {f0:e} N");
    }

    #[test]
    fn deeper_gap_dominates_the_averaged_energy() {
        let geom = experiment(None);
        let s = QuadratureSettings::default();
        let pfa = CorrugationPfa::new(geom, MaterialKind::IdealMetal, &s).unwrap();
        let at_zero = pfa.averaged_energy(0.0.into());
        let at_half = pfa.averaged_energy((0.6e-6).into());
        assert!(at_half < at_zero, "{at_half} vs {at_zero}");
        assert!(at_half.abs() > at_zero.abs());
    }

    #[test]
    fn ideal_linear_amplitude_matches_hand_arithmetic() {
        // pi * R * k * a1 * a2 * P_ideal(221 nm) with R = 100 um: 0.42 pN
        let geom = experiment(Some(1e-4));
        let s = QuadratureSettings::default();
        let linear = linear_amplitude_sphere(&geom, MaterialKind::IdealMetal, &s).unwrap();
        let expected = PI
            * 1e-4
            * geom.corrugation_wavevector()
            * 59e-9
            * 8e-9
            * lifshitz::ideal_pressure(221e-9);
        assert_relative_eq!(linear, expected, max_relative = 1e-6);
        assert_relative_eq!(linear, 0.42e-12, max_relative = 0.01);
    }

    #[test]
    fn calibration_round_trips_and_is_linear() {
        let geom = experiment(Some(1e-4));
        let s = QuadratureSettings::default();
        let kind = MaterialKind::IdealMetal;
        let target = linear_amplitude_sphere(&geom, kind, &s).unwrap();
        let r = calibrate_radius(&geom, kind, target, &s).unwrap();
        assert_relative_eq!(r, 1e-4, max_relative = 1e-12);
        let r2 = calibrate_radius(&geom, kind, 2.0 * target, &s).unwrap();
        assert_relative_eq!(r2, 2.0 * r, max_relative = 1e-12);
    }

    #[test]
    fn degenerate_calibration_is_rejected() {
        let geom = CorrugatedGeometry::new(221e-9, 1.2e-6, 0.0, 8e-9, None).unwrap();
        let s = QuadratureSettings::default();
        assert!(calibrate_radius(&geom, MaterialKind::IdealMetal, 0.28e-12, &s).is_err());
        assert!(higher_order_ratio(&geom, MaterialKind::IdealMetal, &s).is_err());
    }

    #[test]
    fn perturbative_limit_collapses_to_the_linear_amplitude() {
        let scale = 1e-3;
        let geom =
            CorrugatedGeometry::new(221e-9, 1.2e-6, 59e-9 * scale, 8e-9 * scale, Some(1e-4))
                .unwrap();
        let s = QuadratureSettings::default();
        let kind = MaterialKind::IdealMetal;
        let linear = linear_amplitude_sphere(&geom, kind, &s).unwrap();
        let complete = complete_amplitude_sphere(&geom, kind, &s).unwrap();
        assert_relative_eq!(complete.amplitude / linear, 1.0, epsilon = 1e-4);
    }

    #[test]
    fn plate_force_vanishes_when_aligned() {
        let geom = experiment(None);
        let s = QuadratureSettings::default();
        let f =
            lateral_force_plate(&geom, 0.0.into(), MaterialKind::IdealMetal, &s).unwrap();
        assert!(f.abs() < 1e-12, "F_plate(0) = {f:e}");
    }

    #[test]
    fn ideal_linear_plate_amplitude_matches_closed_form() {
        let geom = experiment(None);
        let s = QuadratureSettings::default();
        let got = linear_plate_amplitude(&geom, MaterialKind::IdealMetal, &s).unwrap();
        let pi2 = PI * PI;
        let d2 = 4.0 * pi2 * crate::constants::HBAR * crate::constants::SPEED_OF_LIGHT
            / (240.0 * 221e-9_f64.powi(5));
        let expected = 0.5 * geom.corrugation_wavevector() * 59e-9 * 8e-9 * d2;
        assert_relative_eq!(got, expected, max_relative = 1e-6);
    }
}
