//! Mixed complexes, their canonical operators, morphisms and sub/quotient
//! complexes.

mod mixed;
mod morphism;
mod sub;

pub use mixed::{validate_parts, MixedComplex, OperatorFamily, ValidationReport, Violation, ViolationKind};
pub use morphism::{morphism_check, MixedMorphism, MorphismReport};
pub use sub::{
    contracting_homotopy, hat, images_of, kernels_of, quotient_complex, sub_complex, subquotient,
    ContractionReport, QuotientComplex, Selection, SubComplex, SubquotientMode,
};
