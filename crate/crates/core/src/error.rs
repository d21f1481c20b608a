use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("subspace is not contained in the ambient subspace")]
    Containment,
    #[error("matrix is singular")]
    Singular,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("algebra is not nilpotent: {0}")]
    NotNilpotent(String),
    #[error("subspace is not an ideal: {0}")]
    NotIdeal(String),
    #[error("unimplemented: {0}")]
    Unimplemented(String),
    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("lattice not preserved: {0}")]
    LatticeNotPreserved(String),
    #[error("grading not splittable (repeated spectral factor across filtration): {0}")]
    GradingNotSplittable(String),
    #[error("modulus tie between roots {0} and {1}")]
    ModulusTie(usize, usize),
    #[error("hyperbolicity undecided: {0}")]
    HyperbolicityUndecided(String),
    #[error("root certification failed: {0}")]
    Certification(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("periodic frequency, choose another m: {0}")]
    PeriodicFrequency(String),
    #[error("mode invisible to u-derivative: {0}")]
    ModeInvisible(String),
    #[error("invalid shear data: {0}")]
    InvalidShearData(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}
