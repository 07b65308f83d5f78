//! Exact integer and rational linear algebra.

mod hermite;
mod lattice;
mod lp;
mod matrix;
mod smith;

pub use hermite::hermite_normal_form;
pub use lattice::{image_saturation_index, kernel_basis, lattice_index_in_ambient, primitive, Index};
pub use lp::{strict_feasible, ColumnKind, Feasibility, StrictFeasibilityProblem};
pub use matrix::IntegerMatrix;
pub use smith::{smith_normal_form, SmithDecomposition};
