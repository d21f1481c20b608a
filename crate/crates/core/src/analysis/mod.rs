//! Automorphism validation, L-gradings, certified spectra and the rigidity
//! verdict.

mod automorphism;
mod grading;
mod spectrum;
mod verdict;

pub use automorphism::{
    check_automorphism, extend_from_generators, induced_matrix, is_unimodular_integral, restrict_matrix,
    validate_automorphism,
    Automorphism, AutomorphismCheck,
};
pub use grading::{compute_grading, GradingReport};
pub use spectrum::{compute_spectrum, EigenRef, Eigenvalue, SpectrumReport, Stability};
pub use verdict::{
    check_irreducible, check_sorted, rigidity_verdict, IrreducibilityReport, QuotientAction,
    RigidityVerdict, SortWitness, SortedReport, Verdict,
};

#[cfg(test)]
mod tests;
