//! Independent numerical reference for the closed forms: finite-difference
//! discretization, Sturm-count eigenvalues, self-consistent energies,
//! shooting and quadrature.

pub mod grid;
pub mod quad;
pub mod shoot;
pub mod solve;
pub mod tridiag;

pub use grid::{build_operator, discretize, Form, Grid};
pub use quad::{integrate, normalize_radial, Measure};
pub use shoot::{shooting_check, ShootingReport};
pub use solve::{
    choose_rho_max, default_grid, linear_eigenvalue, richardson_refine, solve_self_consistent_e,
    z_channel_eigenvalue, OracleConfig, Refined,
};
pub use tridiag::{count_nodes, eigenvector, kth_eigenvalue, sturm_count, TridiagonalOperator};
