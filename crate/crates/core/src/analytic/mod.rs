//! Closed-form spectra: the z channel, the radial levels of each model,
//! their eigenfunctions, and the composed three-dimensional states.

pub mod compose;
pub mod levels;
pub mod radial;
pub mod zchannel;

pub use compose::{sorted_by_energy, spectrum_table, total_energy, total_wavefunction, SpectrumRanges};
pub use levels::{
    constant_mass_energy, heun_level, model1_energy, model2_energy, model3_energy, model4_energy,
    radial_level, terminates, HeunLevel, LevelFlags, LevelResult,
};
pub use radial::RadialFunction;
pub use zchannel::{kz2_infinite_well, kz2_morse, kz2_morse_literal, z_eigenfunction, ZChannel};
