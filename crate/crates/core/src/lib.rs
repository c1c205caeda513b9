//! Spectra of position-dependent-mass (PDM) charged particles in a uniform
//! magnetic field threaded by an Aharonov-Bohm flux line.
//!
//! The crate has two independent paths to every energy level:
//!
//! * [`analytic`] evaluates the closed forms for the four PDM models (two
//!   pseudoharmonic, two Killingbeck/biconfluent-Heun) and the z-channel.
//! * [`oracle`] discretizes the separated radial and z equations with
//!   second-order finite differences and solves the nonlinear-in-E
//!   eigenproblem by Sturm-count bisection.
//!
//! [`validate`] pairs the two per level. Units are `ħ = 2m₀ = 1` throughout;
//! every quantity is dimensionless.

// `!(x > 0.0)` is how NaN is rejected throughout
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod error;
pub mod model;
pub mod oracle;
pub mod specfun;
pub mod validate;

pub use error::{Error, Result};
pub use model::{
    FieldConfig, KillingbeckParams, MassProfile, PseudoharmonicParams, QuantumNumbers,
    RadialModel, RadialPotential, RadialProblem, ZPotential,
};
