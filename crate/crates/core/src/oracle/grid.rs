//! Finite-difference discretizations of `-U'' + q(ρ) U = μ U`.
//!
//! Two grids are available. [`Grid::Uniform`] is the textbook
//! `ρ_i = i h` scheme with Dirichlet ends. Near a regular singular point with
//! a small indicial exponent `U ~ ρ^s` its error decays only like
//! `h^{2s+1}`, so the radial problems use [`Grid::Log`]: with `ρ = eˣ` and
//! `U = ρ^{1/2} W` the equation becomes the pencil
//!
//! ```text
//! -W'' + (ρ² q + 1/4) W = μ ρ² W
//! ```
//!
//! whose solutions behave like `e^{sx}` with `s = sqrt(ρ² q + 1/4)` as
//! `x → -∞`, smooth in `x`. The inner end carries the exact Robin condition
//! `W_{-1} = e^{-s dx} W_0` and the outer end is Dirichlet; the scheme is
//! uniformly second order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{MassProfile, RadialModel, RadialProblem};

use super::tridiag::TridiagonalOperator;

/// Smallest admissible number of interior nodes.
pub const MIN_NODES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Grid {
    /// Nodes `ρ_i = (i+1) h`, `i < n`, with `h = rho_max/(n+1)`.
    Uniform { lo: f64, hi: f64, n: usize },
    /// Nodes `x_i = ln(rho_min) + i dx`, `i < n`, with `dx = ln(rho_max/rho_min)/n`.
    Log { rho_min: f64, rho_max: f64, n: usize },
}

impl Grid {
    pub fn uniform(rho_max: f64, n: usize) -> Result<Self> {
        Self::uniform_on(0.0, rho_max, n)
    }

    pub fn uniform_on(lo: f64, hi: f64, n: usize) -> Result<Self> {
        if !(hi > lo && lo.is_finite() && hi.is_finite()) || n < MIN_NODES {
            return Err(Error::Domain(format!(
                "uniform grid needs lo < hi and n >= {MIN_NODES}, got [{lo}, {hi}], n = {n}"
            )));
        }
        Ok(Grid::Uniform { lo, hi, n })
    }

    pub fn log(rho_min: f64, rho_max: f64, n: usize) -> Result<Self> {
        if !(rho_min > 0.0 && rho_max > rho_min && rho_max.is_finite()) || n < MIN_NODES {
            return Err(Error::Domain(format!(
                "log grid needs 0 < rho_min < rho_max and n >= {MIN_NODES}, got \
                 [{rho_min}, {rho_max}], n = {n}"
            )));
        }
        Ok(Grid::Log { rho_min, rho_max, n })
    }

    pub fn len(&self) -> usize {
        match *self {
            Grid::Uniform { n, .. } | Grid::Log { n, .. } => n,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Step in the grid's own variable (`ρ` or `ln ρ`).
    pub fn step(&self) -> f64 {
        match *self {
            Grid::Uniform { lo, hi, n } => (hi - lo) / (n as f64 + 1.0),
            Grid::Log { rho_min, rho_max, n } => (rho_max / rho_min).ln() / n as f64,
        }
    }

    pub fn outer(&self) -> f64 {
        match *self {
            Grid::Uniform { hi, .. } => hi,
            Grid::Log { rho_max, .. } => rho_max,
        }
    }

    /// The same interval with the step halved.
    pub fn refined(&self) -> Self {
        match *self {
            Grid::Uniform { lo, hi, n } => Grid::Uniform { lo, hi, n: 2 * n + 1 },
            Grid::Log { rho_min, rho_max, n } => Grid::Log { rho_min, rho_max, n: 2 * n },
        }
    }

    /// The interval stretched outward by `factor` at (nearly) the same step.
    pub fn stretched(&self, factor: f64) -> Self {
        match *self {
            Grid::Uniform { lo, hi, n } => {
                let h = (hi - lo) / (n as f64 + 1.0);
                let hi = lo + (hi - lo) * factor;
                Grid::Uniform { lo, hi, n: ((hi - lo) / h).round() as usize - 1 }
            }
            Grid::Log { rho_min, rho_max, n } => {
                let dx = (rho_max / rho_min).ln() / n as f64;
                let rho_max = rho_max * factor;
                Grid::Log { rho_min, rho_max, n: ((rho_max / rho_min).ln() / dx).round() as usize }
            }
        }
    }

    pub fn nodes(&self) -> Vec<f64> {
        let h = self.step();
        match *self {
            Grid::Uniform { lo, n, .. } => (0..n).map(|i| lo + (i as f64 + 1.0) * h).collect(),
            Grid::Log { rho_min, n, .. } => {
                let x0 = rho_min.ln();
                (0..n).map(|i| (x0 + i as f64 * h).exp()).collect()
            }
        }
    }

    /// Converts a discrete eigenvector into samples of `U` at [`Self::nodes`].
    pub fn to_u(&self, v: &[f64]) -> Vec<f64> {
        match self {
            Grid::Uniform { .. } => v.to_vec(),
            Grid::Log { .. } => self.nodes().iter().zip(v).map(|(r, w)| r.sqrt() * w).collect(),
        }
    }
}

/// Assembles `-d² + q` on `grid`.
pub fn build_operator<Q>(q: Q, grid: &Grid) -> Result<TridiagonalOperator>
where
    Q: Fn(f64) -> Result<f64>,
{
    let h = grid.step();
    let nodes = grid.nodes();
    let inv = 1.0 / (h * h);
    let off = vec![-inv; nodes.len() - 1];
    match grid {
        Grid::Uniform { .. } => {
            let diag = nodes.iter().map(|&r| Ok(2.0 * inv + q(r)?)).collect::<Result<Vec<_>>>()?;
            TridiagonalOperator::new(diag, off)
        }
        Grid::Log { .. } => {
            let mut diag = Vec::with_capacity(nodes.len());
            for &r in &nodes {
                diag.push(2.0 * inv + r * r * q(r)? + 0.25);
            }
            let r0 = nodes[0];
            let s = (r0 * r0 * q(r0)? + 0.25).max(0.0).sqrt();
            diag[0] -= (-s * h).exp() * inv;
            let weight = nodes.iter().map(|r| r * r).collect();
            TridiagonalOperator::with_weight(diag, off, Some(weight))
        }
    }
}

/// Which reduced radial equation is discretized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Form {
    /// `-U'' + [(m̃² - 1/4)/ρ² + V_eff(ρ; E)] U = Ẽ U`.
    U,
    /// `g = λρ` only: `-R'' + [(β² - 3/16)/ρ² + V₃/ρ - (λE - V₁)ρ + γ²ρ²] R = k̃² R`
    /// with `β² = m̃² + V₄`, `γ² = e²B₀²/4 + V₂`, `k̃² = eB₀m̃ - k_z² - V₀`.
    R,
}

impl Form {
    pub fn check(&self, problem: &RadialProblem) -> Result<()> {
        match (self, problem.mass()) {
            (Form::R, MassProfile::LambdaRho(_)) | (Form::U, _) => Ok(()),
            (Form::R, other) => Err(Error::Config(format!(
                "the R-form needs the g = λρ profile, got {other:?}"
            ))),
        }
    }

    /// `q(ρ; E)`.
    pub fn q(&self, problem: &RadialProblem, rho: f64, energy: f64) -> Result<f64> {
        match self {
            Form::U => problem.u_form_potential(rho, energy),
            Form::R => match problem.model {
                RadialModel::III { lambda, pot } => {
                    if !(rho > 0.0) {
                        return Err(Error::Domain(format!("rho must be > 0, got {rho}")));
                    }
                    let mt = problem.m_tilde;
                    let eb = problem.field.eb();
                    let beta_sq = mt * mt + pot.v4;
                    let gamma_sq = eb * eb / 4.0 + pot.v2;
                    Ok((beta_sq - 3.0 / 16.0) / (rho * rho) + pot.v3 / rho
                        - (lambda * energy - pot.v1) * rho
                        + gamma_sq * rho * rho)
                }
                _ => Err(Error::Config("the R-form needs the g = λρ profile".into())),
            },
        }
    }

    /// Eigenvalue the discretized operator has to reach.
    pub fn target(&self, problem: &RadialProblem) -> f64 {
        match self {
            Form::U => problem.e_tilde(),
            Form::R => problem.reduced_target(),
        }
    }
}

/// The operator of `form` at energy `energy`.
pub fn discretize(problem: &RadialProblem, energy: f64, grid: &Grid, form: Form) -> Result<TridiagonalOperator> {
    form.check(problem)?;
    build_operator(|r| form.q(problem, r, energy), grid)
}
