//! Constructors for algebras, noncommutative forms, named examples and
//! random complexes.

mod algebra;
mod examples;
mod forms;
mod random;

pub use algebra::{
    algebra_build, exterior_algebra, exterior_sign_flip, quantum_plane_algebra, Algebra, AlgebraSpec,
};
pub use examples::{
    appendix0, banalitaet_pair, banalitaet_target, builtin_example, example1, example2, point,
    Builtin, BuiltinParams, Twist, BUILTIN_NAMES,
};
pub use forms::{
    big_xi_by_formula, cyclic_operator, forms_dim, ncforms_build, upsilon_by_formula, xi_by_formula,
};
pub use random::random_mixed;
