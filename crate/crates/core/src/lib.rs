//! Casimir pressure between parallel plates at zero temperature.
//!
//! Three routes to the same quantity live side by side:
//!
//! * closed forms for reflection coefficients that are constant in frequency
//!   and angle ([`spectrum`]), built on complex polylogarithms ([`polylog`]);
//! * direct integration of the Lifshitz formula over real frequencies with
//!   dispersive permittivities ([`lifshitz`]), whose integrand oscillates
//!   strongly;
//! * the Wick-rotated integral over imaginary frequencies ([`lifshitz`]).
//!
//! The [`dielectric`] module supplies Drude, plasma and tabulated permittivity
//! models together with transparency-window perturbations, and [`reflection`]
//! the single-interface Fresnel coefficients on every branch of the
//! integration contour.

pub mod constants;
pub mod dielectric;
pub mod error;
pub mod lifshitz;
pub mod polylog;
pub mod quadrature;
pub mod reflection;
pub mod spectrum;

pub use error::{CasimirError, Result};
