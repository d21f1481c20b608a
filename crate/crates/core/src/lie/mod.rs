//! Rational nilpotent Lie algebras given by structure constants.

mod algebra;
mod builders;

pub use algebra::{AlgebraElement, LieAlgebra, ValidationReport};
pub use builders::{
    abelian, direct_sum, free32_algebra, free_nilpotent, heisenberg, smale_algebra,
    strict_upper_triangular,
};
