//! Numerical toolkit for the scale-invariant kinetic equation of oceanic
//! internal gravity waves.
//!
//! The library evaluates, classifies, and root-solves the collision integral
//! of the wave-action kinetic equation for power-law spectra
//! `n(k, m) = k^-a |m|^-b`:
//!
//! * [`spectral`] — dispersion relation, power-law action spectra, and the
//!   (a, b) / (a~, b~) / (c, d) exponent coordinate systems;
//! * [`vertex`] — interaction matrix elements I, J, K, V, U and the triad
//!   kinematics of the azimuthally-averaged kinetic equation;
//! * [`resonance`] — the six resonant-manifold branches, their Jacobians,
//!   scale-separated limit classification, and both kinematic boxes;
//! * [`convergence`] — closed-form IR/UV convergence classification of the
//!   (a, b) plane, divergence signs, and leading-order tables;
//! * [`quadrature`] — adaptive evaluation of the collision integral, cutoff
//!   regularization and scaling fits, the steady-exponent root search, and
//!   the Coriolis-regularized corner integral with its closed form;
//! * [`catalog`] — the observational power-law catalog with classification.

pub mod catalog;
pub mod config;
pub mod convergence;
pub mod error;
pub mod quadrature;
pub mod resonance;
pub mod spectral;
pub mod vertex;

pub use config::ToolConfig;
pub use error::{Error, Result, SpectralEnd};
pub use spectral::{Exponents, OmegaExponents, PhysicalParams, Wavevector};
