//! Exact linear algebra over `Q` and `F_p`.

mod echelon;
mod homology;
mod matrix;
mod scalar;
mod subspace;

pub use echelon::{image_basis, inverse, kernel_basis, rank, rref};
pub use homology::{homology_at, HomologySpace};
pub use matrix::Matrix;
pub use scalar::{Field, Scalar};
pub use subspace::{combine, Combine, QuotientStructure, Subspace};
