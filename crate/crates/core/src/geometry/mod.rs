//! Group arithmetic in exponential coordinates, Guivarc'h length, weak and
//! strong distances inside unstable leaves, and escape-rate experiments.

mod bch;
mod eigen;
mod escape;
mod frame;
mod group;
mod guivarch;

pub use bch::{bch, dynkin_terms, DynkinTerm, MAX_BCH_DEPTH};
pub use eigen::{eigenvector_from_root, real_eigenpairs, stable_unstable_bracket_defect, RealEigenpair};
pub use escape::{escape_experiment, escape_experiment_coords, EscapeReport, SpectralFrame};
pub use frame::{weak_distance_scaling_check, ScalingReport, WeakStrongFrame, FRAME_TOL};
pub use group::{bch_product, GroupElement, NilpotentGroup, RatGroupElement};
pub use guivarch::{guivarch_length, GradeProjector};
