//! Closed-form solutions of `[-∂_z² + V(z)] Z = k_z² Z`.
//!
//! The Morse well `D[e^{-2σz} - 2e^{-σz}]` is attractive, so its bound states
//! sit below zero: `k_z² = -σ²(√D/σ - n_z - 1/2)²`. The positive square
//! `(√D/σ - n_z - 1/2)²` is kept as [`kz2_morse_literal`] for side-by-side
//! reporting.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::ZPotential;
use crate::specfun::laguerre;

/// `(n_z + 1)² π² / L²`.
pub fn kz2_infinite_well(width: f64, n_z: u32) -> Result<f64> {
    if !(width.is_finite() && width > 0.0) {
        return Err(Error::Domain(format!("well width must be > 0, got {width}")));
    }
    let k = (n_z as f64 + 1.0) * PI / width;
    Ok(k * k)
}

/// `√D/σ - n_z - 1/2`, positive for a bound state.
fn morse_s(depth: f64, range: f64, n_z: u32) -> Result<f64> {
    if !(depth > 0.0 && range > 0.0) {
        return Err(Error::Domain(format!(
            "Morse depth and range must be > 0, got D = {depth}, sigma = {range}"
        )));
    }
    let s = depth.sqrt() / range - n_z as f64 - 0.5;
    if s > 0.0 {
        Ok(s)
    } else {
        Err(Error::NoBoundState(s))
    }
}

/// Bound-state eigenvalue `-σ²(√D/σ - n_z - 1/2)²` of the Morse channel.
pub fn kz2_morse(depth: f64, range: f64, n_z: u32) -> Result<f64> {
    let s = morse_s(depth, range, n_z)?;
    Ok(-(range * s) * (range * s))
}

/// `(√D/σ - n_z - 1/2)²`, sign and `σ²` as commonly quoted for this
/// channel. Not an eigenvalue of the z equation unless `σ = 1`, and then
/// only up to sign.
pub fn kz2_morse_literal(depth: f64, range: f64, n_z: u32) -> Result<f64> {
    let s = morse_s(depth, range, n_z)?;
    Ok(s * s)
}

/// Unnormalized `Z(z)`.
///
/// Well: `sin((n_z+1)πz/L)` on `[0, L]`. Morse: `y^s e^{-y/2} L_{n_z}^{(2s)}(y)`
/// with `y = (2√D/σ) e^{-σz}` and `s = √D/σ - n_z - 1/2`.
pub fn z_eigenfunction(pot: &ZPotential, n_z: u32, z: f64) -> Result<f64> {
    match *pot {
        ZPotential::InfiniteWell { width } => {
            if !(width > 0.0) {
                return Err(Error::Domain(format!("well width must be > 0, got {width}")));
            }
            if !(0.0..=width).contains(&z) {
                return Err(Error::Domain(format!("z = {z} outside the well [0, {width}]")));
            }
            let k = n_z as f64 + 1.0;
            // reflect about the centre so both walls are exact zeros
            if 2.0 * z <= width {
                Ok((k * PI * z / width).sin())
            } else {
                let sign = if n_z % 2 == 0 { 1.0 } else { -1.0 };
                Ok(sign * (k * PI * (width - z) / width).sin())
            }
        }
        ZPotential::Morse { depth, range } => {
            let s = morse_s(depth, range, n_z)?;
            let ln_y = (2.0 * depth.sqrt() / range).ln() - range * z;
            let y = ln_y.exp();
            if y == 0.0 {
                return Ok(0.0);
            }
            let envelope = (s * ln_y - 0.5 * y).exp();
            Ok(envelope * laguerre(n_z, 2.0 * s, y))
        }
    }
}

/// Source of `k_z²` for a table: a solvable z potential or a fixed value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ZChannel {
    Potential(ZPotential),
    /// `k_z²` supplied directly; `Z ≡ 1`.
    Fixed(f64),
}

impl ZChannel {
    pub fn validate(&self) -> Result<()> {
        match self {
            ZChannel::Potential(p) => p.validate(),
            ZChannel::Fixed(v) if !v.is_finite() => Err(Error::Config("kz2 must be finite".into())),
            ZChannel::Fixed(_) => Ok(()),
        }
    }

    pub fn kz2(&self, n_z: u32) -> Result<f64> {
        match *self {
            ZChannel::Potential(ZPotential::InfiniteWell { width }) => kz2_infinite_well(width, n_z),
            ZChannel::Potential(ZPotential::Morse { depth, range }) => kz2_morse(depth, range, n_z),
            ZChannel::Fixed(v) => Ok(v),
        }
    }

    /// The positive-square Morse value where it differs from [`Self::kz2`].
    pub fn kz2_literal(&self, n_z: u32) -> Result<f64> {
        match *self {
            ZChannel::Potential(ZPotential::Morse { depth, range }) => {
                kz2_morse_literal(depth, range, n_z)
            }
            _ => self.kz2(n_z),
        }
    }

    pub fn eigenfunction(&self, n_z: u32, z: f64) -> Result<f64> {
        match self {
            ZChannel::Potential(p) => z_eigenfunction(p, n_z, z),
            ZChannel::Fixed(_) => Ok(1.0),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn well_examples() {
        assert!((kz2_infinite_well(PI, 0).unwrap() - 1.0).abs() < 1e-15);
        assert!((kz2_infinite_well(PI, 2).unwrap() - 9.0).abs() < 1e-14);
        assert!((kz2_infinite_well(2.0 * PI, 1).unwrap() - 1.0).abs() < 1e-15);
        assert!(kz2_infinite_well(0.0, 0).is_err());
    }

    #[test]
    fn morse_examples() {
        assert_eq!(kz2_morse_literal(4.0, 1.0, 0).unwrap(), 2.25);
        assert_eq!(kz2_morse_literal(4.0, 1.0, 1).unwrap(), 0.25);
        assert_eq!(kz2_morse(4.0, 1.0, 0).unwrap(), -2.25);
        assert_eq!(kz2_morse(4.0, 1.0, 1).unwrap(), -0.25);
        assert!(matches!(kz2_morse(1.0, 2.0, 1), Err(Error::NoBoundState(_))));
        assert!(matches!(kz2_morse(4.0, 1.0, 2), Err(Error::NoBoundState(_))));
        // σ enters squared
        assert!((kz2_morse(16.0, 2.0, 0).unwrap() + 4.0 * 2.25).abs() < 1e-14);
    }

    #[test]
    fn eigenfunction_examples() {
        let well = ZPotential::InfiniteWell { width: PI };
        assert!((z_eigenfunction(&well, 0, PI / 2.0).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(z_eigenfunction(&well, 3, 0.0).unwrap(), 0.0);
        assert!(z_eigenfunction(&well, 0, 4.0).is_err());
        let morse = ZPotential::Morse { depth: 4.0, range: 1.0 };
        assert!(z_eigenfunction(&morse, 0, 60.0).unwrap().abs() < 1e-30);
        assert_eq!(z_eigenfunction(&morse, 0, -50.0).unwrap(), 0.0);
    }

    #[test]
    fn morse_eigenfunction_solves_the_z_equation() {
        let (d, sigma) = (4.0, 1.0);
        let pot = ZPotential::Morse { depth: d, range: sigma };
        for n in 0..2 {
            let k2 = kz2_morse(d, sigma, n).unwrap();
            let f = |z: f64| z_eigenfunction(&pot, n, z).unwrap();
            let scale = (0..400).map(|i| f(-2.0 + 0.02 * i as f64).abs()).fold(0.0, f64::max);
            for i in 0..40 {
                let z = -1.5 + 0.1 * i as f64;
                let h = 1e-3;
                let d2 = (f(z + h) - 2.0 * f(z) + f(z - h)) / (h * h);
                let r = -d2 + pot.value(z) * f(z) - k2 * f(z);
                assert!(r.abs() / scale < 1e-5, "n = {n}, z = {z}: {r}");
            }
        }
    }
}
