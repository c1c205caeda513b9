//! Special-function kernels: Kummer's ₁F₁, generalized Laguerre
//! polynomials, and the biconfluent Heun series with its termination
//! analysis.

mod dd;
pub mod heun;
pub mod kummer;
pub mod laguerre;
pub mod residual;

pub use heun::{
    heun_coeffs, heun_eval, heun_polynomial, heun_termination_deltas, termination_residual, HeunParams, HeunSeries,
};
pub use kummer::kummer_1f1;
pub use laguerre::laguerre;
pub use residual::{fd_derivatives, ode_residual, HeunOde, LinearOde};
