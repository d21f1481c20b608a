//! Shear perturbations of two-step examples: detecting shear data, the
//! conjugacy series solving the cohomological equation, and the Fourier
//! witness that the Lipschitz criterion fails.

mod data;
mod series;
mod trigpoly;

pub use data::{find_shear_data, ShearData};
pub use series::{
    cohomology_defect, cohomology_residual, conjugacy_series, lipschitz_pairing_test, skew_orbit,
    telescoping_gap, PairingResult, SkewPoint,
};
pub use trigpoly::{frequency, Frequency, IntMatrix, TrigPoly};

#[cfg(test)]
mod tests;
