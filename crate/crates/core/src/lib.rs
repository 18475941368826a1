//! Lateral Casimir force between corrugated metal surfaces in the
//! proximity-force approximation on top of zero-temperature Lifshitz theory
//! with the plasma model.
//!
//! The crate is organized bottom-up:
//!
//! - [`constants`]: CODATA 2018 constants; SI units everywhere.
//! - [`dielectric`]: plasma-model permittivity ε(iξ) and imaginary-frequency
//!   Fresnel coefficients, including the ideal-metal limit.
//! - [`quadrature`]: adaptive Gauss–Kronrod integration.
//! - [`lifshitz`]: two-plate energy, pressure and separation derivatives.
//! - [`chebyshev`]: interpolation cache for expensive integrands.
//! - [`corrugation`]: lateral forces for corrugated sphere-plate and
//!   plate-plate geometry, complete and linearized PFA amplitudes.
//! - [`deviation`]: tabulated beyond-PFA deviation curves, kL-collapse and
//!   rescaling analysis, validity diagnostics.
//! - [`stats`]: Gaussian compatibility of theory values with a measurement.

pub mod chebyshev;
pub mod constants;
pub mod corrugation;
pub mod deviation;
pub mod dielectric;
pub mod error;
pub mod lifshitz;
pub mod quadrature;
pub mod special;
pub mod stats;

pub use corrugation::{CorrugatedGeometry, CorrugationPfa, LateralAmplitude, LateralShift};
pub use deviation::{DeviationCurve, DeviationPoint, ValidityReport};
pub use dielectric::{MaterialKind, PlasmaModel};
pub use error::{Error, Result};
pub use lifshitz::{DerivativeOrder, PlatePairResult};
pub use quadrature::QuadratureSettings;
pub use stats::Measurement;
