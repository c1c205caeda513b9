//! Radial level × z mode: total energies, wavefunctions and tables.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::model::{FieldConfig, QuantumNumbers, RadialModel};

use super::levels::{radial_level, LevelResult};
use super::radial::RadialFunction;
use super::zchannel::ZChannel;

/// `E_{n_ρ, m, α, n_z}`: the radial level with `k_z²` from the z channel.
/// The literal column also uses the literal Morse `k_z²`.
pub fn total_energy(
    model: &RadialModel,
    z: &ZChannel,
    field: &FieldConfig,
    qn: QuantumNumbers,
) -> Result<LevelResult> {
    let kz2 = z.kz2(qn.n_z)?;
    let mut level = radial_level(model, field, qn.m, kz2, qn.n_rho)?;
    let literal_kz2 = z.kz2_literal(qn.n_z)?;
    if literal_kz2 != kz2 {
        level.literal = radial_level(model, field, qn.m, literal_kz2, qn.n_rho)?.literal;
    }
    level.qn.n_z = qn.n_z;
    Ok(level)
}

/// `ψ(ρ, φ, z) = R(ρ) Z(z) e^{imφ}`, unnormalized.
pub fn total_wavefunction(
    model: &RadialModel,
    z: &ZChannel,
    field: &FieldConfig,
    qn: QuantumNumbers,
    point: (f64, f64, f64),
) -> Result<Complex64> {
    let (rho, phi, zz) = point;
    let kz2 = z.kz2(qn.n_z)?;
    let r = RadialFunction::new(model, field, qn.m, kz2, qn.n_rho)?.r(rho)?;
    let zf = z.eigenfunction(qn.n_z, zz)?;
    Ok(Complex64::from_polar(r * zf, qn.m as f64 * phi))
}

/// Quantum-number ranges of a table; order and duplicates are ignored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumRanges {
    pub n_rho: Vec<u32>,
    pub m: Vec<i64>,
    pub n_z: Vec<u32>,
}

impl SpectrumRanges {
    /// All `(n_z, m, n_ρ)` combinations in lexicographic order.
    pub fn levels(&self) -> Vec<QuantumNumbers> {
        fn sorted<T: Ord + Copy>(v: &[T]) -> Vec<T> {
            let mut v = v.to_vec();
            v.sort_unstable();
            v.dedup();
            v
        }
        let (nr, ms, nz) = (sorted(&self.n_rho), sorted(&self.m), sorted(&self.n_z));
        let mut out = Vec::with_capacity(nr.len() * ms.len() * nz.len());
        for &n_z in &nz {
            for &m in &ms {
                for &n_rho in &nr {
                    out.push(QuantumNumbers { n_rho, m, n_z });
                }
            }
        }
        out
    }
}

/// Every level of the ranges, invalid ones included and flagged, in
/// `(n_z, m, n_ρ)` order.
pub fn spectrum_table(
    model: &RadialModel,
    z: &ZChannel,
    field: &FieldConfig,
    ranges: &SpectrumRanges,
) -> Result<Vec<LevelResult>> {
    ranges
        .levels()
        .into_par_iter()
        .map(|qn| total_energy(model, z, field, qn))
        .collect()
}

/// Valid levels sorted by energy, ties broken by quantum numbers.
pub fn sorted_by_energy(table: &[LevelResult]) -> Vec<LevelResult> {
    let mut v: Vec<LevelResult> = table.iter().filter(|l| l.is_valid()).cloned().collect();
    v.sort_by(|a, b| {
        let (ea, eb) = (a.energy.unwrap_or(f64::NAN), b.energy.unwrap_or(f64::NAN));
        ea.total_cmp(&eb).then_with(|| (a.qn.n_z, a.qn.m, a.qn.n_rho).cmp(&(b.qn.n_z, b.qn.m, b.qn.n_rho)))
    });
    v
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::analytic::levels::{model1_energy, model2_energy};
    use crate::model::{KillingbeckParams, PseudoharmonicParams, ZPotential};

    fn field() -> FieldConfig {
        FieldConfig::new(1.0, 2.0, 0.0).unwrap()
    }

    fn model1() -> RadialModel {
        RadialModel::I { eta: 1.0, pot: PseudoharmonicParams::new(0.0, 1.0).unwrap() }
    }

    const WELL: ZChannel = ZChannel::Potential(ZPotential::InfiniteWell { width: PI });
    const MORSE: ZChannel = ZChannel::Potential(ZPotential::Morse { depth: 4.0, range: 1.0 });

    #[test]
    fn composition_identities() {
        let t = total_energy(&model1(), &WELL, &field(), QuantumNumbers::new(0, 1, 0)).unwrap();
        let pot = PseudoharmonicParams::new(0.0, 1.0).unwrap();
        let r = model1_energy(1.0, &field(), &pot, 1, 1.0, 0);
        assert!((t.energy.unwrap() - r.energy.unwrap()).abs() < 1e-15);

        let pot = PseudoharmonicParams::new(1.0, 1.0).unwrap();
        let m2 = RadialModel::II { eta: 1.0, pot };
        let t = total_energy(&m2, &MORSE, &field(), QuantumNumbers::new(0, 1, 0)).unwrap();
        let r = model2_energy(1.0, &field(), &pot, 1, -2.25, 0);
        let lit = model2_energy(1.0, &field(), &pot, 1, 2.25, 0);
        assert_eq!(t.energy, r.energy);
        assert_eq!(t.literal, lit.energy);
        assert_eq!(t.qn.n_z, 0);
    }

    #[test]
    fn ab_shift_is_bit_identical() {
        let kb = KillingbeckParams { v3: 0.3, v4: 0.2, ..Default::default() };
        let models = [
            model1(),
            RadialModel::II { eta: 1.0, pot: PseudoharmonicParams::new(1.0, 1.0).unwrap() },
            RadialModel::III { lambda: 1.0, pot: kb },
            RadialModel::IV { lambda: 1.0, pot: kb },
        ];
        let e = 1.0;
        for phi in [0.0, 0.3, 1.7, -2.9] {
            let a = FieldConfig::new(e, 2.0, phi).unwrap();
            let b = FieldConfig::new(e, 2.0, phi + 2.0 * PI / e).unwrap();
            for model in &models {
                for m in -1..4 {
                    let qa = QuantumNumbers::new(0, m, 0);
                    let qb = QuantumNumbers::new(0, m + 1, 0);
                    let la = total_energy(model, &WELL, &a, qa).unwrap();
                    let lb = total_energy(model, &WELL, &b, qb).unwrap();
                    assert_eq!(la.m_tilde.to_bits(), lb.m_tilde.to_bits());
                    assert_eq!(la.energy.map(f64::to_bits), lb.energy.map(f64::to_bits));
                    assert_eq!(la.flags, lb.flags);
                }
            }
        }
    }

    #[test]
    fn wavefunction_properties() {
        let q = QuantumNumbers::new(0, 1, 0);
        let a = total_wavefunction(&model1(), &WELL, &field(), q, (0.7, 0.0, 1.0)).unwrap();
        let b = total_wavefunction(&model1(), &WELL, &field(), q, (0.7, 2.1, 1.0)).unwrap();
        assert!((a.norm() - b.norm()).abs() < 1e-15 * a.norm());
        let w = total_wavefunction(&model1(), &WELL, &field(), q, (0.7, 0.4, PI)).unwrap();
        assert!(w.norm() < 1e-15);
        let w = total_wavefunction(&model1(), &WELL, &field(), q, (0.7, 0.4, 0.0)).unwrap();
        assert_eq!(w.norm(), 0.0);
        let pot = PseudoharmonicParams::new(0.5, 1.0).unwrap();
        let cm = RadialModel::ConstantMass { pot };
        let z = total_wavefunction(&cm, &WELL, &field(), QuantumNumbers::new(1, 0, 0), (0.7, 1.3, 1.0));
        assert_eq!(z.unwrap().im, 0.0);
    }

    #[test]
    fn table_counts_and_order() {
        let ranges = SpectrumRanges { n_rho: vec![0, 1, 2], m: vec![-2, -1, 0, 1, 2], n_z: vec![0] };
        let t = spectrum_table(&model1(), &WELL, &field(), &ranges).unwrap();
        assert_eq!(t.len(), 15);
        assert_eq!(t.iter().filter(|l| !l.is_valid()).count(), 9);
        let shuffled = SpectrumRanges { n_rho: vec![2, 0, 1, 0], m: vec![1, -2, 2, 0, -1], n_z: vec![0] };
        assert_eq!(spectrum_table(&model1(), &WELL, &field(), &shuffled).unwrap(), t);
        let keys: Vec<_> = t.iter().map(|l| (l.qn.n_z, l.qn.m, l.qn.n_rho)).collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        let empty = SpectrumRanges::default();
        assert!(spectrum_table(&model1(), &WELL, &field(), &empty).unwrap().is_empty());
        let sorted = sorted_by_energy(&t);
        assert_eq!(sorted.len(), 6);
        assert!(sorted.windows(2).all(|w| w[0].energy <= w[1].energy));
    }
}
