//! Per-level comparison of the closed forms against the oracle.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic::{total_energy, LevelResult, SpectrumRanges, ZChannel};
use crate::error::{Error, Result};
use crate::model::{FieldConfig, QuantumNumbers, RadialModel, RadialProblem};
use crate::oracle::shoot::ShootingControls;
use crate::oracle::{
    count_nodes, default_grid, discretize, eigenvector, richardson_refine, shooting_check,
    z_channel_eigenvalue, Form, OracleConfig,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum Status {
    Pass,
    Fail,
    /// The oracle found no level with this radial quantum number.
    NoRoot,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::NoRoot => "NO-ROOT",
        })
    }
}

/// Agreement threshold `max(abs, rel·|E|)`; a level passes when the
/// difference is strictly below it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { abs: 1e-5, rel: 1e-5 }
    }
}

impl Tolerance {
    pub fn accepts(&self, delta: f64, energy: f64) -> bool {
        delta < self.abs.max(self.rel * energy.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ValidationConfig {
    pub oracle: OracleConfig,
    pub tolerance: Tolerance,
    /// Discretized equation; the R-form for `g = λρ`, otherwise the U-form.
    pub form: Option<Form>,
    pub shooting: ShootingControls,
}

impl ValidationConfig {
    pub fn form_for(&self, model: &RadialModel) -> Form {
        self.form.unwrap_or(match model {
            RadialModel::III { .. } => Form::R,
            _ => Form::U,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelValidation {
    pub level: LevelResult,
    /// `k_z²` from the discretized z equation, for potential channels.
    pub kz2_oracle: Option<f64>,
    pub oracle_energy: Option<f64>,
    pub oracle_error: Option<f64>,
    /// `|E_oracle - E|` for the derived closed form.
    pub delta: Option<f64>,
    /// `|E_oracle - E_literal|`.
    pub delta_literal: Option<f64>,
    /// Sign changes of the discrete eigenvector.
    pub nodes: Option<usize>,
    pub shooting_mismatch: Option<f64>,
    pub shooting_nodes: Option<usize>,
    pub gated: bool,
    pub status: Status,
    pub note: String,
}

/// Runs the oracle for one level and compares.
pub fn validate_level(
    model: &RadialModel,
    z: &ZChannel,
    field: &FieldConfig,
    qn: QuantumNumbers,
    cfg: &ValidationConfig,
) -> Result<LevelValidation> {
    let level = total_energy(model, z, field, qn)?;
    let kz2_oracle = match z {
        ZChannel::Potential(p) => Some(z_channel_eigenvalue(p, qn.n_z, &cfg.oracle)?.value),
        ZChannel::Fixed(_) => None,
    };
    let problem = RadialProblem::new(*model, *field, qn.m, level.kz2)?;
    let form = cfg.form_for(model);
    let guess = level.energy.or(level.literal).unwrap_or(0.0);
    let grid = default_grid(&problem, form, guess, &cfg.oracle)?;
    let gated = level.is_gated();
    let mut out = LevelValidation {
        level,
        kz2_oracle,
        oracle_energy: None,
        oracle_error: None,
        delta: None,
        delta_literal: None,
        nodes: None,
        shooting_mismatch: None,
        shooting_nodes: None,
        gated,
        status: Status::NoRoot,
        note: String::new(),
    };
    let refined = match richardson_refine(&problem, form, qn.n_rho, &grid, guess, &cfg.oracle) {
        Ok(r) => r,
        Err(Error::NoRoot(msg)) => {
            out.note = msg;
            return Ok(out);
        }
        Err(e) => return Err(e),
    };
    out.oracle_energy = Some(refined.value);
    out.oracle_error = Some(refined.error_estimate);
    out.delta = out.level.energy.map(|e| (refined.value - e).abs());
    out.delta_literal = out.level.literal.map(|e| (refined.value - e).abs());
    out.status = match (out.delta, out.level.energy) {
        (Some(d), Some(e)) if cfg.tolerance.accepts(d, e) => Status::Pass,
        _ => Status::Fail,
    };
    if out.status == Status::Fail {
        out.note = "oracle level lies elsewhere".into();
    }

    let op = discretize(&problem, refined.coarse, &grid, form)?;
    match eigenvector(&op, form.target(&problem)) {
        Ok(v) => out.nodes = Some(count_nodes(&grid.to_u(&v), 1e-8)),
        Err(e) => out.note = format!("eigenvector: {e}"),
    }
    match shooting_check(&problem, form, refined.value, cfg.oracle.rho_min, grid.outer(), &cfg.shooting) {
        Ok(s) => {
            out.shooting_mismatch = Some(s.mismatch);
            out.shooting_nodes = Some(s.nodes);
        }
        Err(e) => out.note = format!("shooting: {e}"),
    }
    Ok(out)
}

/// Validates every level of the ranges, in table order.
pub fn validate_table(
    model: &RadialModel,
    z: &ZChannel,
    field: &FieldConfig,
    ranges: &SpectrumRanges,
    cfg: &ValidationConfig,
) -> Result<Vec<LevelValidation>> {
    ranges
        .levels()
        .into_par_iter()
        .map(|qn| validate_level(model, z, field, qn, cfg))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub no_root: usize,
    /// Gated levels that did not pass.
    pub gated_failures: usize,
}

impl Summary {
    pub fn of(report: &[LevelValidation]) -> Self {
        let mut s = Summary::default();
        for r in report {
            match r.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::NoRoot => s.no_root += 1,
            }
            if r.gated && r.status != Status::Pass {
                s.gated_failures += 1;
            }
        }
        s
    }

    pub fn ok(&self) -> bool {
        self.gated_failures == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::KillingbeckParams;

    fn field() -> FieldConfig {
        FieldConfig::new(1.0, 2.0, 0.0).unwrap()
    }

    #[test]
    fn model4_levels() {
        let model = RadialModel::IV { lambda: 1.0, pot: KillingbeckParams::default() };
        let z = ZChannel::Fixed(0.0);
        let cfg = ValidationConfig::default();
        let r = validate_level(&model, &z, &field(), QuantumNumbers::new(0, 3, 0), &cfg).unwrap();
        assert_eq!(r.status, Status::Pass, "{r:?}");
        assert!(r.gated && r.delta.unwrap() <= 1e-5);
        assert_eq!(r.nodes, Some(0));
        assert!(r.shooting_mismatch.unwrap() <= 1e-6);
        let r = validate_level(&model, &z, &field(), QuantumNumbers::new(1, 3, 0), &cfg).unwrap();
        assert!(!r.gated);
        assert_ne!(r.status, Status::Pass, "{r:?}");
    }

    #[test]
    fn zero_tolerance_fails_everything() {
        let model = RadialModel::IV { lambda: 1.0, pot: KillingbeckParams::default() };
        let cfg = ValidationConfig { tolerance: Tolerance { abs: 0.0, rel: 0.0 }, ..Default::default() };
        let r = validate_level(&model, &ZChannel::Fixed(0.0), &field(), QuantumNumbers::new(0, 3, 0), &cfg)
            .unwrap();
        assert_eq!(r.status, Status::Fail);
        assert!(!Summary::of(&[r]).ok());
    }
}
