//! Job configuration: one JSON document, physical parameters always explicit.

use std::fmt;

use pdm_core::analytic::{SpectrumRanges, ZChannel};
use pdm_core::oracle::shoot::ShootingControls;
use pdm_core::oracle::{Form, OracleConfig};
use pdm_core::validate::{Tolerance, ValidationConfig};
use pdm_core::model::Model;
use pdm_core::{FieldConfig, KillingbeckParams, PseudoharmonicParams, QuantumNumbers, RadialModel, ZPotential};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Anything wrong with the job description; maps to exit code 2.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "configuration error: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

fn bad<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(msg.into()))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub e: f64,
    #[serde(rename = "B0")]
    pub b0: f64,
    #[serde(rename = "phi_AB", default, skip_serializing_if = "Option::is_none")]
    pub phi_ab: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PseudoharmonicSpec {
    #[serde(rename = "V0")]
    pub v0: f64,
    pub rho0: f64,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KillingbeckSpec {
    #[serde(rename = "V0")]
    pub v0: f64,
    #[serde(rename = "V1")]
    pub v1: f64,
    #[serde(rename = "V2")]
    pub v2: f64,
    #[serde(rename = "V3")]
    pub v3: f64,
    #[serde(rename = "V4")]
    pub v4: f64,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ZModelSpec {
    Well { width: f64 },
    Morse { depth: f64, range: f64 },
    FixedKz2(f64),
}

/// Either an explicit list or an inclusive `{min, max}` span.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RangeSpec<T> {
    List(Vec<T>),
    Span { min: T, max: T },
}

impl RangeSpec<u32> {
    fn values(&self) -> Vec<u32> {
        match self {
            RangeSpec::List(v) => v.clone(),
            RangeSpec::Span { min, max } => (*min..=*max).collect(),
        }
    }
}

impl RangeSpec<i64> {
    fn values(&self) -> Vec<i64> {
        match self {
            RangeSpec::List(v) => v.clone(),
            RangeSpec::Span { min, max } => (*min..=*max).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RangesSpec {
    pub n_rho: RangeSpec<u32>,
    pub m: RangeSpec<i64>,
    pub n_z: RangeSpec<u32>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Lattice {
    pub min: f64,
    pub max: f64,
    pub n: usize,
}

impl Lattice {
    pub fn points(&self) -> Vec<f64> {
        if self.n == 1 {
            return vec![self.min];
        }
        let h = (self.max - self.min) / (self.n - 1) as f64;
        (0..self.n).map(|i| if i + 1 == self.n { self.max } else { self.min + i as f64 * h }).collect()
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WavefunctionSpec {
    pub level: QuantumNumbers,
    pub rho: Lattice,
    pub z: Lattice,
    #[serde(default = "yes")]
    pub normalize: bool,
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub model: String,
    pub z_model: ZModelSpec,
    pub field: FieldSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pseudoharmonic: Option<PseudoharmonicSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub killingbeck: Option<KillingbeckSpec>,
    pub ranges: RangesSpec,
    #[serde(default)]
    pub oracle: OracleConfig,
    #[serde(default)]
    pub shooting: ShootingControls,
    #[serde(default)]
    pub tolerance: Tolerance,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<Form>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wavefunction: Option<WavefunctionSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
}

/// A checked job, ready for the core library.
#[derive(Debug, Clone)]
pub struct Job {
    pub raw: JobConfig,
    pub model: RadialModel,
    pub z: ZChannel,
    pub field: FieldConfig,
    pub ranges: SpectrumRanges,
    pub validation: ValidationConfig,
    /// sha256 of the canonical re-serialization.
    pub hash: String,
}

impl JobConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        serde_json::from_str(text).map_err(|e| ConfigError(format!("schema: {e}")))
    }

    pub fn check(self) -> Result<Job, ConfigError> {
        let core = |e: pdm_core::Error| ConfigError(e.to_string());
        let model: Model = self.model.parse().map_err(core)?;
        let field = match (self.field.phi_ab, self.field.alpha) {
            (Some(phi), None) => FieldConfig::new(self.field.e, self.field.b0, phi),
            (None, Some(a)) => FieldConfig::from_alpha(self.field.e, self.field.b0, a),
            _ => return bad("field needs exactly one of phi_AB or alpha"),
        }
        .map_err(core)?;

        let (pseudo, killing) = (model_needs_pseudo(model), !model_needs_pseudo(model));
        if pseudo && self.killingbeck.is_some() {
            return bad(format!("{model} takes pseudoharmonic parameters, not killingbeck"));
        }
        if killing && self.pseudoharmonic.is_some() {
            return bad(format!("{model} takes killingbeck parameters, not pseudoharmonic"));
        }
        let ph = || -> Result<PseudoharmonicParams, ConfigError> {
            let Some(p) = self.pseudoharmonic else {
                return bad(format!("{model} needs a pseudoharmonic section"));
            };
            PseudoharmonicParams::new(p.v0, p.rho0).map_err(core)
        };
        let kb = || -> Result<KillingbeckParams, ConfigError> {
            let Some(k) = self.killingbeck else {
                return bad(format!("{model} needs a killingbeck section"));
            };
            KillingbeckParams::new(k.v0, k.v1, k.v2, k.v3, k.v4).map_err(core)
        };
        let need = |name: &str, v: Option<f64>, wanted: bool| -> Result<f64, ConfigError> {
            match (v, wanted) {
                (Some(x), true) => Ok(x),
                (None, true) => bad(format!("{model} needs '{name}'")),
                (Some(_), false) => bad(format!("{model} does not take '{name}'")),
                (None, false) => Ok(0.0),
            }
        };
        let uses_eta = matches!(model, Model::I | Model::II);
        let uses_lambda = matches!(model, Model::III | Model::IV);
        let eta = need("eta", self.eta, uses_eta)?;
        let lambda = need("lambda", self.lambda, uses_lambda)?;
        let radial = match model {
            Model::I => RadialModel::I { eta, pot: ph()? },
            Model::II => RadialModel::II { eta, pot: ph()? },
            Model::III => RadialModel::III { lambda, pot: kb()? },
            Model::IV => RadialModel::IV { lambda, pot: kb()? },
            Model::ConstantMass => RadialModel::ConstantMass { pot: ph()? },
        };
        radial.validate().map_err(core)?;
        if model.is_heun() {
            let v2 = kb()?.v2;
            let c = pdm_core::model::heun_constraint_check(&field, v2, pdm_core::model::HEUN_CONSTRAINT_TOL);
            if !c.passed {
                return bad(format!(
                    "{model} requires e²B0²/4 + V2 = 1, got {} (deviation {:e})",
                    c.gamma_sq, c.deviation
                ));
            }
        }

        let z = match self.z_model {
            ZModelSpec::Well { width } => ZChannel::Potential(ZPotential::InfiniteWell { width }),
            ZModelSpec::Morse { depth, range } => ZChannel::Potential(ZPotential::Morse { depth, range }),
            ZModelSpec::FixedKz2(v) => ZChannel::Fixed(v),
        };
        z.validate().map_err(core)?;
        self.oracle.validate().map_err(core)?;
        let tol = self.tolerance;
        if !(tol.abs >= 0.0 && tol.rel >= 0.0 && tol.abs.is_finite() && tol.rel.is_finite()) {
            return bad("tolerances must be finite and non-negative");
        }
        if let Some(w) = &self.wavefunction {
            for (name, l) in [("rho", w.rho), ("z", w.z)] {
                if l.n == 0 || !(l.min.is_finite() && l.max.is_finite()) || l.max < l.min {
                    return bad(format!("wavefunction {name} lattice is malformed"));
                }
            }
            if w.rho.min <= 0.0 {
                return bad("wavefunction rho lattice must start above 0");
            }
        }

        let ranges = SpectrumRanges {
            n_rho: self.ranges.n_rho.values(),
            m: self.ranges.m.values(),
            n_z: self.ranges.n_z.values(),
        };
        let validation = ValidationConfig {
            oracle: self.oracle,
            tolerance: tol,
            form: self.form,
            shooting: self.shooting,
        };
        let canonical = serde_json::to_vec(&self).map_err(|e| ConfigError(e.to_string()))?;
        let hash = Sha256::digest(&canonical).iter().map(|b| format!("{b:02x}")).collect();
        Ok(Job { raw: self, model: radial, z, field, ranges, validation, hash })
    }
}

fn model_needs_pseudo(model: Model) -> bool {
    matches!(model, Model::I | Model::II | Model::ConstantMass)
}
