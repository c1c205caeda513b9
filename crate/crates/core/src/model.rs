//! Physical parameters and the separated radial problem.
//!
//! The radial equation is handled in its one-dimensional Schrödinger form
//!
//! ```text
//! -U'' + (m̃² - 1/4)/ρ² U + V_eff(ρ; E) U = Ẽ U,     R = sqrt(g/ρ) U
//! V_eff = V(ρ) + e²B₀²ρ²/4 - g(ρ) E + (5/16)(g'/g)² - (1/4)(g''/g) - (1/4) g'/(ρ g)
//! Ẽ     = e B₀ m̃ - k_z²
//! ```
//!
//! with `m̃ = m - α` and `α = e Φ_AB / 2π`. The energy `E` sits inside the
//! effective potential, so the physical levels are the fixed points of the
//! linear problem rather than its eigenvalues.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default absolute slack for the `γ² = 1` solvability constraint.
pub const HEUN_CONSTRAINT_TOL: f64 = 1e-9;

/// Resolution (in flux quanta) to which the fractional AB flux is snapped.
///
/// Shifting `Φ_AB` by one flux quantum in floating point perturbs `α` by a
/// few ulps; snapping the fractional part makes `m̃` exactly periodic.
/// Exact periodicity fails only when the raw `α` sits within a few ulps of a
/// snapping boundary.
const FLUX_RESOLUTION: f64 = 1.0 / (1u64 << 32) as f64;

/// Charge, uniform field and Aharonov-Bohm flux.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldConfig {
    e: f64,
    b0: f64,
    phi_ab: f64,
}

impl FieldConfig {
    pub fn new(e: f64, b0: f64, phi_ab: f64) -> Result<Self> {
        if !(e.is_finite() && e != 0.0) {
            return Err(Error::Config(format!("charge must be finite and non-zero, got {e}")));
        }
        if !(b0.is_finite() && b0 >= 0.0) {
            return Err(Error::Config(format!("B0 must be finite and >= 0, got {b0}")));
        }
        if !phi_ab.is_finite() {
            return Err(Error::Config("phi_AB must be finite".into()));
        }
        Ok(Self { e, b0, phi_ab })
    }

    /// Builds the field from the flux measured in quanta `Φ₀ = 2π/e`.
    pub fn from_alpha(e: f64, b0: f64, alpha: f64) -> Result<Self> {
        if !(e.is_finite() && e != 0.0) {
            return Err(Error::Config(format!("charge must be finite and non-zero, got {e}")));
        }
        Self::new(e, b0, 2.0 * PI * alpha / e)
    }

    pub fn e(&self) -> f64 {
        self.e
    }

    pub fn b0(&self) -> f64 {
        self.b0
    }

    pub fn phi_ab(&self) -> f64 {
        self.phi_ab
    }

    /// Flux quantum `Φ₀ = 2π/e` (signed).
    pub fn flux_quantum(&self) -> f64 {
        2.0 * PI / self.e
    }

    /// `α` split into an integer part and a snapped fraction in `[0, 1)`.
    fn alpha_parts(&self) -> (f64, f64) {
        let raw = self.e * self.phi_ab / (2.0 * PI);
        let whole = raw.floor();
        let frac = ((raw - whole) / FLUX_RESOLUTION).round() * FLUX_RESOLUTION;
        if frac >= 1.0 {
            (whole + 1.0, 0.0)
        } else {
            (whole, frac)
        }
    }

    /// `α = Φ_AB/Φ₀ = e Φ_AB / 2π`.
    pub fn alpha(&self) -> f64 {
        let (whole, frac) = self.alpha_parts();
        whole + frac
    }

    /// `eB₀`, the signed cyclotron scale.
    pub fn eb(&self) -> f64 {
        self.e * self.b0
    }
}

/// `m̃ = m - α`.
pub fn m_tilde(m: i64, field: &FieldConfig) -> f64 {
    let (whole, frac) = field.alpha_parts();
    (m as f64 - whole) - frac
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuantumNumbers {
    pub n_rho: u32,
    pub m: i64,
    pub n_z: u32,
}

impl QuantumNumbers {
    pub fn new(n_rho: u32, m: i64, n_z: u32) -> Self {
        Self { n_rho, m, n_z }
    }
}

/// Radial mass multiplier `g(ρ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum MassProfile {
    Constant,
    /// `η ρ²`
    EtaRhoSq(f64),
    /// `η / ρ²`
    EtaOverRhoSq(f64),
    /// `λ ρ`
    LambdaRho(f64),
    /// `λ / ρ²`
    LambdaOverRhoSq(f64),
}

impl MassProfile {
    pub fn validate(&self) -> Result<()> {
        match *self {
            MassProfile::Constant => Ok(()),
            MassProfile::EtaRhoSq(c)
            | MassProfile::EtaOverRhoSq(c)
            | MassProfile::LambdaRho(c)
            | MassProfile::LambdaOverRhoSq(c) => {
                if c.is_finite() && c > 0.0 {
                    Ok(())
                } else {
                    Err(Error::Config(format!("mass coefficient must be > 0, got {c}")))
                }
            }
        }
    }

    pub fn g(&self, rho: f64) -> f64 {
        match *self {
            MassProfile::Constant => 1.0,
            MassProfile::EtaRhoSq(c) => c * rho * rho,
            MassProfile::EtaOverRhoSq(c) | MassProfile::LambdaOverRhoSq(c) => c / (rho * rho),
            MassProfile::LambdaRho(c) => c * rho,
        }
    }

    pub fn dg(&self, rho: f64) -> f64 {
        match *self {
            MassProfile::Constant => 0.0,
            MassProfile::EtaRhoSq(c) => 2.0 * c * rho,
            MassProfile::EtaOverRhoSq(c) | MassProfile::LambdaOverRhoSq(c) => {
                -2.0 * c / (rho * rho * rho)
            }
            MassProfile::LambdaRho(c) => c,
        }
    }

    pub fn d2g(&self, rho: f64) -> f64 {
        match *self {
            MassProfile::Constant | MassProfile::LambdaRho(_) => 0.0,
            MassProfile::EtaRhoSq(c) => 2.0 * c,
            MassProfile::EtaOverRhoSq(c) | MassProfile::LambdaOverRhoSq(c) => {
                6.0 * c / (rho * rho * rho * rho)
            }
        }
    }
}

/// PDM kinetic correction `(5/16)(g'/g)² - (1/4)(g''/g) - (1/4) g'/(ρ g)`.
pub fn mass_term(profile: &MassProfile, rho: f64) -> Result<f64> {
    if !(rho > 0.0) {
        return Err(Error::Domain(format!("mass_term needs rho > 0, got {rho}")));
    }
    let g = profile.g(rho);
    let r1 = profile.dg(rho) / g;
    let r2 = profile.d2g(rho) / g;
    Ok(5.0 / 16.0 * r1 * r1 - 0.25 * r2 - 0.25 * r1 / rho)
}

/// `𝒱₁ρ² + 𝒱₂/ρ² - 2𝒱₀` with `𝒱₁ = 𝒱₀/ρ₀²`, `𝒱₂ = 𝒱₀ρ₀²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PseudoharmonicParams {
    pub v0_chem: f64,
    pub rho0: f64,
}

impl PseudoharmonicParams {
    pub fn new(v0_chem: f64, rho0: f64) -> Result<Self> {
        if !(v0_chem.is_finite() && v0_chem >= 0.0) {
            return Err(Error::Config(format!("chemical potential must be >= 0, got {v0_chem}")));
        }
        if !(rho0.is_finite() && rho0 > 0.0) {
            return Err(Error::Config(format!("rho0 must be > 0, got {rho0}")));
        }
        Ok(Self { v0_chem, rho0 })
    }

    pub fn v1(&self) -> f64 {
        self.v0_chem / (self.rho0 * self.rho0)
    }

    pub fn v2(&self) -> f64 {
        self.v0_chem * self.rho0 * self.rho0
    }

    pub fn value(&self, rho: f64) -> f64 {
        self.v1() * rho * rho + self.v2() / (rho * rho) - 2.0 * self.v0_chem
    }
}

/// `V₀ + V₁ρ + V₂ρ² + V₃/ρ + V₄/ρ²`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct KillingbeckParams {
    pub v0: f64,
    pub v1: f64,
    pub v2: f64,
    pub v3: f64,
    pub v4: f64,
}

impl KillingbeckParams {
    pub fn new(v0: f64, v1: f64, v2: f64, v3: f64, v4: f64) -> Result<Self> {
        let p = Self { v0, v1, v2, v3, v4 };
        if [v0, v1, v2, v3, v4].iter().all(|v| v.is_finite()) {
            Ok(p)
        } else {
            Err(Error::Config("Killingbeck coefficients must be finite".into()))
        }
    }

    pub fn value(&self, rho: f64) -> f64 {
        self.v0 + self.v1 * rho + self.v2 * rho * rho + self.v3 / rho + self.v4 / (rho * rho)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum RadialPotential {
    Pseudoharmonic(PseudoharmonicParams),
    Killingbeck(KillingbeckParams),
}

impl RadialPotential {
    pub fn value(&self, rho: f64) -> f64 {
        match self {
            RadialPotential::Pseudoharmonic(p) => p.value(rho),
            RadialPotential::Killingbeck(k) => k.value(rho),
        }
    }
}

/// Potential in the z channel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ZPotential {
    /// Impenetrable walls at `z = 0` and `z = width`.
    InfiniteWell { width: f64 },
    /// `D [exp(-2σz) - 2 exp(-σz)]`.
    Morse { depth: f64, range: f64 },
}

impl ZPotential {
    pub fn validate(&self) -> Result<()> {
        match *self {
            ZPotential::InfiniteWell { width } if !(width.is_finite() && width > 0.0) => {
                Err(Error::Config(format!("well width must be > 0, got {width}")))
            }
            ZPotential::Morse { depth, range }
                if !(depth.is_finite() && depth > 0.0 && range.is_finite() && range > 0.0) =>
            {
                Err(Error::Config(format!(
                    "Morse depth and range must be > 0, got D = {depth}, sigma = {range}"
                )))
            }
            _ => Ok(()),
        }
    }

    /// Potential value; the well is zero inside and infinite outside.
    pub fn value(&self, z: f64) -> f64 {
        match *self {
            ZPotential::InfiniteWell { width } => {
                if (0.0..=width).contains(&z) {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
            ZPotential::Morse { depth, range } => {
                let x = (-range * z).exp();
                depth * (x * x - 2.0 * x)
            }
        }
    }
}

/// Model identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Model {
    /// `g = ηρ²`, pseudoharmonic.
    #[serde(rename = "model1")]
    I,
    /// `g = η/ρ²`, pseudoharmonic.
    #[serde(rename = "model2")]
    II,
    /// `g = λρ`, Killingbeck.
    #[serde(rename = "model3")]
    III,
    /// `g = λ/ρ²`, Killingbeck.
    #[serde(rename = "model4")]
    IV,
    /// `g = 1`, pseudoharmonic.
    #[serde(rename = "constant-mass")]
    ConstantMass,
}

impl Model {
    pub fn is_heun(&self) -> bool {
        matches!(self, Model::III | Model::IV)
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Model::I => "model1",
            Model::II => "model2",
            Model::III => "model3",
            Model::IV => "model4",
            Model::ConstantMass => "constant-mass",
        };
        f.write_str(s)
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "model1" => Ok(Model::I),
            "model2" => Ok(Model::II),
            "model3" => Ok(Model::III),
            "model4" => Ok(Model::IV),
            "constant-mass" => Ok(Model::ConstantMass),
            other => Err(Error::Config(format!("unknown model '{other}'"))),
        }
    }
}

/// Mass profile paired with the potential it is solvable with.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum RadialModel {
    I { eta: f64, pot: PseudoharmonicParams },
    II { eta: f64, pot: PseudoharmonicParams },
    III { lambda: f64, pot: KillingbeckParams },
    IV { lambda: f64, pot: KillingbeckParams },
    ConstantMass { pot: PseudoharmonicParams },
}

impl RadialModel {
    pub fn id(&self) -> Model {
        match self {
            RadialModel::I { .. } => Model::I,
            RadialModel::II { .. } => Model::II,
            RadialModel::III { .. } => Model::III,
            RadialModel::IV { .. } => Model::IV,
            RadialModel::ConstantMass { .. } => Model::ConstantMass,
        }
    }

    pub fn mass(&self) -> MassProfile {
        match *self {
            RadialModel::I { eta, .. } => MassProfile::EtaRhoSq(eta),
            RadialModel::II { eta, .. } => MassProfile::EtaOverRhoSq(eta),
            RadialModel::III { lambda, .. } => MassProfile::LambdaRho(lambda),
            RadialModel::IV { lambda, .. } => MassProfile::LambdaOverRhoSq(lambda),
            RadialModel::ConstantMass { .. } => MassProfile::Constant,
        }
    }

    pub fn potential(&self) -> RadialPotential {
        match *self {
            RadialModel::I { pot, .. }
            | RadialModel::II { pot, .. }
            | RadialModel::ConstantMass { pot } => RadialPotential::Pseudoharmonic(pot),
            RadialModel::III { pot, .. } | RadialModel::IV { pot, .. } => {
                RadialPotential::Killingbeck(pot)
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.mass().validate()?;
        match self.potential() {
            RadialPotential::Pseudoharmonic(p) => PseudoharmonicParams::new(p.v0_chem, p.rho0).map(|_| ()),
            RadialPotential::Killingbeck(k) => {
                KillingbeckParams::new(k.v0, k.v1, k.v2, k.v3, k.v4).map(|_| ())
            }
        }
    }
}

/// Outcome of the `γ² = e²B₀²/4 + V₂ = 1` check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstraintCheck {
    pub passed: bool,
    pub gamma_sq: f64,
    pub deviation: f64,
}

/// Solvability constraint of the biconfluent Heun reduction.
pub fn heun_constraint_check(field: &FieldConfig, v2: f64, tol: f64) -> ConstraintCheck {
    let eb = field.eb();
    let gamma_sq = eb * eb / 4.0 + v2;
    let deviation = (gamma_sq - 1.0).abs();
    ConstraintCheck { passed: deviation <= tol, gamma_sq, deviation }
}

/// Coefficient of `1/ρ²` in the model's reduced one-dimensional equation.
///
/// Models II and IV carry the energy in this coefficient and need `energy`.
pub fn centrifugal_strength(model: &RadialModel, m_tilde: f64, energy: Option<f64>) -> Result<f64> {
    let m2 = m_tilde * m_tilde;
    let need = |e: Option<f64>| {
        e.ok_or_else(|| Error::Domain(format!("model {} needs an energy", model.id())))
    };
    Ok(match *model {
        RadialModel::I { pot, .. } => m2 + pot.v2(),
        RadialModel::II { eta, pot } => m2 + pot.v2() - eta * need(energy)?,
        RadialModel::III { pot, .. } => m2 + pot.v4 - 3.0 / 16.0,
        RadialModel::IV { lambda, pot } => m2 + pot.v4 - lambda * need(energy)?,
        RadialModel::ConstantMass { pot } => m2 + pot.v2() - 0.25,
    })
}

/// One fixed-`m`, fixed-`k_z²` radial problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialProblem {
    pub model: RadialModel,
    pub field: FieldConfig,
    pub m: i64,
    pub m_tilde: f64,
    pub kz2: f64,
}

impl RadialProblem {
    pub fn new(model: RadialModel, field: FieldConfig, m: i64, kz2: f64) -> Result<Self> {
        model.validate()?;
        if !kz2.is_finite() {
            return Err(Error::Config("kz2 must be finite".into()));
        }
        Ok(Self { model, field, m, m_tilde: m_tilde(m, &field), kz2 })
    }

    pub fn mass(&self) -> MassProfile {
        self.model.mass()
    }

    pub fn potential(&self) -> RadialPotential {
        self.model.potential()
    }

    /// `Ẽ = eB₀m̃ - k_z²`, the eigenvalue the U-form operator must reach.
    pub fn e_tilde(&self) -> f64 {
        self.field.eb() * self.m_tilde - self.kz2
    }

    /// Right-hand side of the model's own reduced equation: `Ẽ + 2𝒱₀` for
    /// the pseudoharmonic models and `k̃² = Ẽ - V₀` for the Killingbeck ones.
    pub fn reduced_target(&self) -> f64 {
        match self.potential() {
            RadialPotential::Pseudoharmonic(p) => self.e_tilde() + 2.0 * p.v0_chem,
            RadialPotential::Killingbeck(k) => self.e_tilde() - k.v0,
        }
    }

    /// `V_eff(ρ; E)`; the full potential, constants included, is kept here
    /// and the matching eigenvalue is [`RadialProblem::e_tilde`].
    pub fn v_eff(&self, rho: f64, energy: f64) -> Result<f64> {
        let mass = self.mass();
        let mt = mass_term(&mass, rho)?;
        let eb = self.field.eb();
        Ok(self.potential().value(rho) + eb * eb * rho * rho / 4.0 - mass.g(rho) * energy + mt)
    }

    /// Full U-form potential `(m̃² - 1/4)/ρ² + V_eff(ρ; E)`.
    pub fn u_form_potential(&self, rho: f64, energy: f64) -> Result<f64> {
        let c = self.m_tilde * self.m_tilde - 0.25;
        Ok(c / (rho * rho) + self.v_eff(rho, energy)?)
    }

    pub fn centrifugal_strength(&self, energy: Option<f64>) -> Result<f64> {
        centrifugal_strength(&self.model, self.m_tilde, energy)
    }

    /// Largest energy for which the radial operator stays confining and
    /// limit-point at the origin; `None` when there is no such bound.
    pub fn admissible_energy_max(&self) -> Option<f64> {
        let m2 = self.m_tilde * self.m_tilde;
        let eb = self.field.eb();
        match self.model {
            // ω² = 4𝒱₁ + e²B₀² - 4ηE > 0
            RadialModel::I { eta, pot } => Some((4.0 * pot.v1() + eb * eb) / (4.0 * eta)),
            // ℓ̃² = m̃² + 𝒱₂ - ηE + 1/4 >= 0
            RadialModel::II { eta, pot } => Some((m2 + pot.v2() + 0.25) / eta),
            // ξ² + 1/4 >= 0
            RadialModel::IV { lambda, pot } => Some((m2 + pot.v4 + 0.25) / lambda),
            RadialModel::III { .. } | RadialModel::ConstantMass { .. } => None,
        }
    }
}

/// Free-function form of [`RadialProblem::v_eff`].
pub fn v_eff(problem: &RadialProblem, rho: f64, energy: f64) -> Result<f64> {
    problem.v_eff(rho, energy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn field(e: f64, b0: f64, phi: f64) -> FieldConfig {
        FieldConfig::new(e, b0, phi).unwrap()
    }

    #[test]
    fn m_tilde_examples() {
        assert_eq!(m_tilde(2, &field(1.0, 0.0, PI)), 1.5);
        assert_eq!(m_tilde(0, &field(1.0, 0.0, 0.0)), 0.0);
        assert_eq!(m_tilde(3, &field(-1.0, 0.0, 2.0 * PI)), 4.0);
    }

    #[test]
    fn field_rejects_bad_inputs() {
        assert!(FieldConfig::new(0.0, 1.0, 0.0).is_err());
        assert!(FieldConfig::new(1.0, -1.0, 0.0).is_err());
        assert!(FieldConfig::new(1.0, 1.0, f64::NAN).is_err());
    }

    #[test]
    fn flux_round_trip() {
        for &(e, phi) in &[(1.0, 0.3), (-2.0, 5.1), (0.7, -12.0)] {
            let f = field(e, 1.0, phi);
            let back = 2.0 * PI * f.alpha() / e;
            let snap = f.flux_quantum().abs() * FLUX_RESOLUTION;
            assert!((back - phi).abs() <= snap + 1e-14 * phi.abs());
        }
    }

    #[test]
    fn mass_term_examples() {
        assert!((mass_term(&MassProfile::EtaRhoSq(1.0), 2.0).unwrap() - 0.0625).abs() < 1e-15);
        assert!((mass_term(&MassProfile::LambdaRho(1.0), 1.0).unwrap() - 1.0 / 16.0).abs() < 1e-15);
        assert_eq!(mass_term(&MassProfile::Constant, 5.0).unwrap(), 0.0);
        assert!(matches!(mass_term(&MassProfile::Constant, 0.0), Err(Error::Domain(_))));
        assert!(mass_term(&MassProfile::EtaRhoSq(1.0), -1.0).is_err());
    }

    #[test]
    fn v_eff_examples() {
        let free = RadialModel::ConstantMass { pot: PseudoharmonicParams::new(0.0, 1.0).unwrap() };
        let p = RadialProblem::new(free, field(1.0, 0.0, 0.0), 0, 0.0).unwrap();
        assert_eq!(p.v_eff(1.0, 3.7).unwrap(), -3.7);

        let m1 = RadialModel::I { eta: 1.0, pot: PseudoharmonicParams::new(0.0, 1.0).unwrap() };
        let p = RadialProblem::new(m1, field(1.0, 2.0, 0.0), 0, 0.0).unwrap();
        assert!((p.v_eff(1.0, 1.0).unwrap() - 0.25).abs() < 1e-15);

        let m4 = RadialModel::IV { lambda: 1.0, pot: KillingbeckParams::default() };
        let p = RadialProblem::new(m4, field(1.0, 0.0, 0.0), 0, 0.0).unwrap();
        assert!((p.v_eff(1.0, 2.0).unwrap() + 1.75).abs() < 1e-15);
        assert!(p.v_eff(0.0, 2.0).is_err());
    }

    #[test]
    fn heun_constraint_examples() {
        let c = heun_constraint_check(&field(1.0, 2.0, 0.0), 0.0, HEUN_CONSTRAINT_TOL);
        assert!(c.passed);
        assert_eq!(c.deviation, 0.0);
        assert!(heun_constraint_check(&field(1.0, 0.0, 0.0), 1.0, HEUN_CONSTRAINT_TOL).passed);
        let c = heun_constraint_check(&field(1.0, 2.0, 0.0), 0.5, HEUN_CONSTRAINT_TOL);
        assert!(!c.passed);
        assert!((c.deviation - 0.5).abs() < 1e-15);
    }

    #[test]
    fn centrifugal_examples() {
        let ph0 = PseudoharmonicParams::new(0.0, 1.0).unwrap();
        let s = centrifugal_strength(&RadialModel::I { eta: 1.0, pot: ph0 }, 0.0, None).unwrap();
        assert_eq!(s, 0.0);
        assert_eq!((s + 0.25).sqrt(), 0.5);

        let ph1 = PseudoharmonicParams::new(1.0, 1.0).unwrap();
        let m2 = RadialModel::II { eta: 1.0, pot: ph1 };
        // ℓ̃² - 1/4 with |ℓ̃| = sqrt(2) - 1
        let s = centrifugal_strength(&m2, 1.0, Some(2.078427)).unwrap();
        assert!((s + 0.25 - 0.171573).abs() < 1e-6);
        assert!(centrifugal_strength(&m2, 1.0, None).is_err());

        let m4 = RadialModel::IV { lambda: 1.0, pot: KillingbeckParams::default() };
        assert!((centrifugal_strength(&m4, 3.0, Some(5.25)).unwrap() - 3.75).abs() < 1e-15);
    }

    #[test]
    fn model_names_round_trip() {
        for m in [Model::I, Model::II, Model::III, Model::IV, Model::ConstantMass] {
            assert_eq!(m.to_string().parse::<Model>().unwrap(), m);
        }
        assert!("model5".parse::<Model>().is_err());
    }

    fn profiles() -> impl Strategy<Value = (MassProfile, f64)> {
        (0.01f64..50.0).prop_flat_map(|c| {
            prop_oneof![
                Just((MassProfile::EtaRhoSq(c), 0.25)),
                Just((MassProfile::EtaOverRhoSq(c), 0.25)),
                Just((MassProfile::LambdaRho(c), 1.0 / 16.0)),
                Just((MassProfile::LambdaOverRhoSq(c), 0.25)),
            ]
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig {
            rng_seed: proptest::test_runner::RngSeed::Fixed(0x5eed),
            ..ProptestConfig::default()
        })]

        #[test]
        fn mass_term_is_inverse_square((profile, c) in profiles(), rho in 0.1f64..10.0) {
            let got = mass_term(&profile, rho).unwrap();
            let want = c / (rho * rho);
            prop_assert!(((got - want) / want).abs() <= 1e-12);
        }

        #[test]
        fn mass_term_ignores_coefficient(a in 0.01f64..50.0, b in 0.01f64..50.0, rho in 0.1f64..10.0) {
            let x = mass_term(&MassProfile::EtaRhoSq(a), rho).unwrap();
            let y = mass_term(&MassProfile::EtaRhoSq(b), rho).unwrap();
            prop_assert!(((x - y) / x).abs() <= 1e-14);
        }

        #[test]
        fn v_eff_affine_in_energy(rho in 0.1f64..8.0, e0 in -5.0f64..5.0, de in 0.01f64..3.0, c in 0.1f64..4.0) {
            let pot = KillingbeckParams::new(0.3, -0.2, 0.5, 0.7, 0.1).unwrap();
            let model = RadialModel::III { lambda: c, pot };
            let p = RadialProblem::new(model, field(1.0, 1.0, 0.4), 1, 0.5).unwrap();
            let slope = (p.v_eff(rho, e0 + de).unwrap() - p.v_eff(rho, e0).unwrap()) / de;
            prop_assert!(slope < 0.0);
            prop_assert!((slope + p.mass().g(rho)).abs() <= 1e-9 * (1.0 + p.mass().g(rho)));
        }

        #[test]
        fn ab_shift_leaves_m_tilde_identical(m in -20i64..20, phi in -30.0f64..30.0, e in prop_oneof![-3.0f64..-0.1, 0.1f64..3.0]) {
            let f = field(e, 1.0, phi);
            let shifted = field(e, 1.0, phi + f.flux_quantum());
            prop_assert_eq!(m_tilde(m, &f).to_bits(), m_tilde(m + 1, &shifted).to_bits());
        }
    }
}
