//! Exact and certified analysis of Anosov automorphisms of nilmanifolds.
//!
//! The crate is organised bottom-up:
//!
//! * [`rational`]: exact rationals, matrices, polynomials over Q, factorization,
//!   Sturm sequences, certified complex roots and canonical subspaces.
//! * [`lie`]: rational nilpotent Lie algebras given by structure constants.
//! * [`analysis`]: automorphism validation, L-gradings, spectra, sortedness,
//!   irreducibility and the rigidity verdict.
//! * [`geometry`]: BCH group law, Guivarc'h length, weak/strong distances and
//!   escape-speed experiments.
//! * [`shear`]: shear perturbations of two-step automorphisms, the conjugacy
//!   series and the Fourier-space Lipschitz witness.
//!
//! With the default `parallel` feature the data-parallel loops run on rayon;
//! without it every loop runs sequentially with identical results.

pub mod analysis;
pub mod error;
pub mod examples;
pub mod geometry;
pub mod lie;
pub mod par;
pub mod rational;
pub mod shear;

pub use error::{Error, Result};
