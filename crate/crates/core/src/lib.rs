pub mod builders;
pub mod complex;
pub mod deform;
pub mod error;
pub mod format;
pub mod homology;
pub mod linear;
pub mod poly;

pub use complex::{MixedComplex, MixedMorphism, OperatorFamily};
pub use error::{Error, Result};
pub use linear::{Field, Matrix, Scalar, Subspace};
pub use poly::{cyclic_c, Poly, PolySeq, SeqKind, SeqStats};
