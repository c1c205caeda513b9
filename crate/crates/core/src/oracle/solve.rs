//! Self-consistent energies from the discretized radial equation.
//!
//! At fixed `E` the radial operator is linear with eigenvalues `μ_k(E)`; a
//! level of the physical problem is a root of `φ(E) = μ_{n_ρ}(E) - target`.
//! Because the operator moves by `-g(ρ)E` with `g > 0`, `φ` is strictly
//! decreasing, and `φ(E) > 0` exactly when fewer than `n_ρ + 1` eigenvalues
//! lie below the target. The root is bracketed and bisected on that Sturm
//! count alone, so no eigenvalue is ever computed explicitly.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{RadialProblem, ZPotential};

use super::grid::{build_operator, discretize, Form, Grid};
use super::tridiag::{kth_eigenvalue, sturm_count};

/// Solver tolerances and grid defaults.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OracleConfig {
    /// Interior nodes of the base grid.
    pub nodes: usize,
    /// Inner end of the logarithmic radial grid.
    pub rho_min: f64,
    /// Outer end; chosen from the potential when absent.
    pub rho_max: Option<f64>,
    /// Bisection width for linear eigenvalues.
    pub eig_tol: f64,
    /// Relative bisection width for self-consistent energies.
    pub energy_tol: f64,
    pub bracket_expansion_factor: f64,
    pub max_refinements: u32,
    /// Outward stretch of the grid used to estimate the truncation error.
    pub rho_max_sweep: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            nodes: 4000,
            rho_min: 1e-8,
            rho_max: None,
            eig_tol: 1e-12,
            energy_tol: 1e-13,
            bracket_expansion_factor: 2.0,
            max_refinements: 40,
            rho_max_sweep: 1.5,
        }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = [self.rho_min, self.eig_tol, self.energy_tol];
        if positive.iter().any(|x| !(*x > 0.0 && x.is_finite())) {
            return Err(Error::Config("oracle tolerances and rho_min must be positive".into()));
        }
        if self.nodes < super::grid::MIN_NODES {
            return Err(Error::Config(format!("oracle needs at least {} nodes", super::grid::MIN_NODES)));
        }
        if !(self.bracket_expansion_factor > 1.0) || !(self.rho_max_sweep > 1.0) {
            return Err(Error::Config("expansion and sweep factors must exceed 1".into()));
        }
        if let Some(r) = self.rho_max {
            if !(r > self.rho_min && r.is_finite()) {
                return Err(Error::Config(format!("rho_max = {r} must exceed rho_min")));
            }
        }
        Ok(())
    }
}

/// Fallback outer radius when the potential has no usable turning point.
pub const FALLBACK_RHO_MAX: f64 = 20.0;
/// WKB decay exponent `∫ sqrt(q - target)` required beyond the turning point.
const TAIL_ACTION: f64 = 20.0;

/// Outer radius: `1.5×` the outer classical turning point at `energy`, and
/// far enough that the WKB tail has decayed by `e^{-20}`.
pub fn choose_rho_max(problem: &RadialProblem, form: Form, energy: f64) -> f64 {
    let target = form.target(problem);
    let excess = |r: f64| form.q(problem, r, energy).map(|q| q - target).unwrap_or(f64::NAN);
    // log-spaced scan for the outermost allowed point
    let samples = 2000;
    let (lo, hi) = (1e-3f64.ln(), 1e4f64.ln());
    let mut turning = None;
    for i in (0..=samples).rev() {
        let r = (lo + (hi - lo) * i as f64 / samples as f64).exp();
        if excess(r) < 0.0 {
            turning = Some(r);
            break;
        }
    }
    let Some(rt) = turning else { return FALLBACK_RHO_MAX };
    if rt >= 1e4 * 0.999 {
        return FALLBACK_RHO_MAX;
    }
    let mut r = rt;
    let mut action = 0.0;
    let dr = rt.max(1.0) * 1e-3;
    while action < TAIL_ACTION && r < 1e4 {
        let e = excess(r + 0.5 * dr);
        action += e.max(0.0).sqrt() * dr;
        r += dr;
    }
    (1.5 * rt).max(r)
}

/// The default logarithmic grid for a level with energy near `guess`.
pub fn default_grid(problem: &RadialProblem, form: Form, guess: f64, cfg: &OracleConfig) -> Result<Grid> {
    let rho_max = cfg.rho_max.unwrap_or_else(|| choose_rho_max(problem, form, guess));
    Grid::log(cfg.rho_min, rho_max, cfg.nodes)
}

/// `φ(E) > 0`, i.e. at most `n_rho` eigenvalues below the target.
fn above(problem: &RadialProblem, form: Form, grid: &Grid, n_rho: u32, energy: f64) -> Result<bool> {
    let op = discretize(problem, energy, grid, form)?;
    Ok(sturm_count(&op, form.target(problem)) <= n_rho as usize)
}

/// Root of `μ_{n_ρ}(E) = target` on a fixed grid.
pub fn solve_self_consistent_e(
    problem: &RadialProblem,
    form: Form,
    n_rho: u32,
    grid: &Grid,
    guess: f64,
    cfg: &OracleConfig,
) -> Result<f64> {
    let cap = problem.admissible_energy_max();
    // keep strictly inside the admissible window
    let cap = cap.map(|c| c - 1e-12 * c.abs().max(1.0));
    let guess = match cap {
        Some(c) if !(guess < c) => c - 0.5 * c.abs().max(1.0),
        _ if !guess.is_finite() => 0.0,
        _ => guess,
    };
    let width = (0.5 * guess.abs()).max(1.0);
    let mut lo = guess - width;
    let mut hi = match cap {
        Some(c) => (guess + width).min(c),
        None => guess + width,
    };
    let mut step = width;
    let mut found_lo = above(problem, form, grid, n_rho, lo)?;
    let mut found_hi = !above(problem, form, grid, n_rho, hi)?;
    let mut tries = 0;
    while !(found_lo && found_hi) {
        if tries >= cfg.max_refinements {
            return Err(Error::NoRoot(format!(
                "bracket [{lo}, {hi}] for n_rho = {n_rho} never changed sign"
            )));
        }
        tries += 1;
        step *= cfg.bracket_expansion_factor;
        if !found_lo {
            hi = lo;
            found_hi = true;
            lo -= step;
            found_lo = above(problem, form, grid, n_rho, lo)?;
        } else {
            if let Some(c) = cap {
                if hi >= c {
                    return Err(Error::NoRoot(format!(
                        "no level n_rho = {n_rho} below the admissible limit E = {c}"
                    )));
                }
            }
            lo = hi;
            hi += step;
            if let Some(c) = cap {
                hi = hi.min(c);
            }
            found_hi = !above(problem, form, grid, n_rho, hi)?;
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= cfg.energy_tol * mid.abs().max(1.0) || mid <= lo || mid >= hi {
            break;
        }
        if above(problem, form, grid, n_rho, mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Extrapolated energy with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Refined {
    pub value: f64,
    /// `max(|E_{h/2} - E_h|/3, |ΔE| under the outward stretch)`.
    pub error_estimate: f64,
    pub coarse: f64,
    pub fine: f64,
    pub grid: Grid,
}

fn extrapolate<F>(grid: &Grid, sweep: f64, solve: F) -> Result<Refined>
where
    F: Fn(&Grid) -> Result<f64> + Sync,
{
    let fine_grid = grid.refined();
    let wide = grid.stretched(sweep);
    let wide_fine = wide.refined();
    let grids = [*grid, fine_grid, wide, wide_fine];
    let vals: Vec<f64> = grids.par_iter().map(&solve).collect::<Result<_>>()?;
    let [coarse, fine, wc, wf] = [vals[0], vals[1], vals[2], vals[3]];
    let value = (4.0 * fine - coarse) / 3.0;
    let wide_value = (4.0 * wf - wc) / 3.0;
    let error_estimate = ((fine - coarse).abs() / 3.0).max((wide_value - value).abs());
    Ok(Refined { value, error_estimate, coarse, fine, grid: *grid })
}

/// Solves on `grid` and on `grid` with half the step, extrapolates assuming
/// `O(h²)`, and repeats on a grid stretched by `cfg.rho_max_sweep`.
pub fn richardson_refine(
    problem: &RadialProblem,
    form: Form,
    n_rho: u32,
    grid: &Grid,
    guess: f64,
    cfg: &OracleConfig,
) -> Result<Refined> {
    extrapolate(grid, cfg.rho_max_sweep, |g| solve_self_consistent_e(problem, form, n_rho, g, guess, cfg))
}

/// `k`-th eigenvalue of a fixed linear operator `-d² + q`, refined.
pub fn linear_eigenvalue<Q>(q: Q, k: usize, grid: &Grid, cfg: &OracleConfig) -> Result<Refined>
where
    Q: Fn(f64) -> Result<f64> + Sync,
{
    extrapolate(grid, cfg.rho_max_sweep, |g| kth_eigenvalue(&build_operator(&q, g)?, k, cfg.eig_tol))
}

/// Interval on which the z equation is discretized: the well itself, or
/// `[-5/σ, z₊]` with `2D e^{-σ z₊} = 1e-8` for the Morse channel.
pub fn z_domain(pot: &ZPotential) -> (f64, f64) {
    match *pot {
        ZPotential::InfiniteWell { width } => (0.0, width),
        ZPotential::Morse { depth, range } => (-5.0 / range, (2.0 * depth / 1e-8).ln() / range),
    }
}

/// `k_z²` of the `n_z`-th state from the discretized z equation. The Morse
/// domain is held fixed, so the estimate carries only the grid term.
pub fn z_channel_eigenvalue(pot: &ZPotential, n_z: u32, cfg: &OracleConfig) -> Result<Refined> {
    pot.validate()?;
    let (lo, hi) = z_domain(pot);
    let grid = Grid::uniform_on(lo, hi, cfg.nodes)?;
    let q = |z: f64| Ok(pot.value(z));
    let solve = |g: &Grid| kth_eigenvalue(&build_operator(q, g)?, n_z as usize, cfg.eig_tol);
    let coarse = solve(&grid)?;
    let fine = solve(&grid.refined())?;
    Ok(Refined {
        value: (4.0 * fine - coarse) / 3.0,
        error_estimate: (fine - coarse).abs() / 3.0,
        coarse,
        fine,
        grid,
    })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::model::{FieldConfig, KillingbeckParams, PseudoharmonicParams, RadialModel};

    fn field() -> FieldConfig {
        FieldConfig::new(1.0, 2.0, 0.0).unwrap()
    }

    fn solve(model: RadialModel, form: Form, m: i64, kz2: f64, n: u32, guess: f64) -> Refined {
        let cfg = OracleConfig::default();
        let p = RadialProblem::new(model, field(), m, kz2).unwrap();
        let grid = default_grid(&p, form, guess, &cfg).unwrap();
        richardson_refine(&p, form, n, &grid, guess, &cfg).unwrap()
    }

    #[test]
    fn model1_acceptance_level() {
        let pot = PseudoharmonicParams::new(0.0, 1.0).unwrap();
        let r = solve(RadialModel::I { eta: 1.0, pot }, Form::U, 1, 1.0, 0, 0.9);
        assert!((r.value - 0.944271909999).abs() < 1e-8, "{r:?}");
        assert!(r.error_estimate < 1e-5);
    }

    #[test]
    fn model4_acceptance_level() {
        let kb = KillingbeckParams::default();
        let r = solve(RadialModel::IV { lambda: 1.0, pot: kb }, Form::U, 3, 0.0, 0, 5.0);
        assert!((r.value - 5.25).abs() < 1e-8, "{r:?}");
    }

    #[test]
    fn model3_both_forms() {
        let kb = KillingbeckParams { v3: 2.371708245126284, ..Default::default() };
        let m = RadialModel::III { lambda: 1.0, pot: kb };
        let exact = 2.0 * 2.5f64.sqrt();
        for form in [Form::U, Form::R] {
            let r = solve(m, form, 0, 0.0, 0, 3.0);
            assert!((r.value - exact).abs() < 1e-8, "{form:?}: {r:?}");
        }
    }

    #[test]
    fn model2_missing_level_is_no_root() {
        let pot = PseudoharmonicParams::new(1.0, 1.0).unwrap();
        let p = RadialProblem::new(RadialModel::II { eta: 1.0, pot }, field(), 1, 0.0).unwrap();
        let cfg = OracleConfig::default();
        let grid = default_grid(&p, Form::U, 2.0, &cfg).unwrap();
        let r = solve_self_consistent_e(&p, Form::U, 1, &grid, 2.0, &cfg);
        assert!(matches!(r, Err(Error::NoRoot(_))), "{r:?}");
    }

    #[test]
    fn r_form_needs_lambda_rho() {
        let pot = PseudoharmonicParams::new(0.0, 1.0).unwrap();
        let p = RadialProblem::new(RadialModel::I { eta: 1.0, pot }, field(), 1, 1.0).unwrap();
        let grid = Grid::log(1e-8, 10.0, 100).unwrap();
        assert!(matches!(discretize(&p, 1.0, &grid, Form::R), Err(Error::Config(_))));
    }

    #[test]
    fn eigenvalue_decreases_with_energy() {
        let kb = KillingbeckParams { v3: 0.4, v1: 0.2, ..Default::default() };
        let pot = PseudoharmonicParams::new(0.5, 1.2).unwrap();
        let models = [
            RadialModel::I { eta: 1.0, pot },
            RadialModel::II { eta: 1.0, pot },
            RadialModel::III { lambda: 1.0, pot: kb },
            RadialModel::IV { lambda: 1.0, pot: kb },
            RadialModel::ConstantMass { pot },
        ];
        let grid = Grid::log(1e-8, 12.0, 800).unwrap();
        for model in models {
            let p = RadialProblem::new(model, field(), 2, 0.0).unwrap();
            for k in 0..3 {
                let mu = |e: f64| {
                    kth_eigenvalue(&discretize(&p, e, &grid, Form::U).unwrap(), k, 1e-12).unwrap()
                };
                assert!(mu(1.1) < mu(1.0), "{:?}", model.id());
            }
        }
    }

    #[test]
    fn constant_mass_is_affine() {
        let pot = PseudoharmonicParams::new(0.5, 1.2).unwrap();
        let p = RadialProblem::new(RadialModel::ConstantMass { pot }, field(), 1, 0.0).unwrap();
        let grid = Grid::log(1e-8, 12.0, 800).unwrap();
        let mu = |e: f64| kth_eigenvalue(&discretize(&p, e, &grid, Form::U).unwrap(), 0, 1e-12).unwrap();
        let (a, b, c) = (mu(0.0), mu(1.0), mu(3.0));
        assert!((a - b - 1.0).abs() < 1e-9 && (b - c - 2.0).abs() < 1e-9);
    }

    #[test]
    fn z_channel_matches_closed_forms() {
        let cfg = OracleConfig::default();
        let well = ZPotential::InfiniteWell { width: PI };
        for n in 0..4 {
            let r = z_channel_eigenvalue(&well, n, &cfg).unwrap();
            assert!((r.value - ((n + 1) * (n + 1)) as f64).abs() < 1e-7, "{r:?}");
        }
        let morse = ZPotential::Morse { depth: 4.0, range: 1.0 };
        for (n, exact) in [(0, -2.25), (1, -0.25)] {
            let r = z_channel_eigenvalue(&morse, n, &cfg).unwrap();
            assert!((r.value - exact).abs() < 1e-6, "{r:?}");
        }
    }

    #[test]
    fn box_richardson() {
        let cfg = OracleConfig::default();
        let grid = Grid::uniform(PI, 199).unwrap();
        let (a, b) = (
            kth_eigenvalue(&build_operator(|_| Ok(0.0), &grid).unwrap(), 0, 1e-14).unwrap(),
            kth_eigenvalue(&build_operator(|_| Ok(0.0), &grid.refined()).unwrap(), 0, 1e-14).unwrap(),
        );
        assert!(((a - 1.0) / (b - 1.0) - 4.0).abs() < 0.01);
        let r = z_channel_eigenvalue(&ZPotential::InfiniteWell { width: PI }, 0, &OracleConfig { nodes: 199, ..cfg })
            .unwrap();
        assert!((r.value - 1.0).abs() < 1e-7);
        let err = (r.fine - 1.0).abs();
        assert!(r.error_estimate <= 5.0 * err && err <= 5.0 * r.error_estimate);
    }
}
