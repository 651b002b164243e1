//! Small named complexes.

use std::sync::Arc;

use crate::builders::{exterior_algebra, exterior_sign_flip, ncforms_build, quantum_plane_algebra};
use crate::complex::{MixedComplex, MixedMorphism};
use crate::error::{Error, Result};
use crate::linear::{Field, Matrix, Scalar};
use crate::poly::PolySeq;

pub const BUILTIN_NAMES: &[&str] = &[
    "appendix0",
    "banalitaet",
    "exterior2",
    "example1",
    "example2",
    "point",
];

/// Twist choices for the exterior algebra forms.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Twist {
    #[default]
    Identity,
    /// `x -> -x`, `y -> -y`.
    SignFlip,
}

#[derive(Clone, Debug)]
pub struct BuiltinParams {
    pub field: Field,
    /// Parameter of the quantum plane; defaults to 2.
    pub q: Option<Scalar>,
    /// Truncation degree for unbounded examples.
    pub top: Option<usize>,
    pub twist: Twist,
}

impl BuiltinParams {
    pub fn new(field: Field) -> Self {
        BuiltinParams {
            field,
            q: None,
            top: None,
            twist: Twist::Identity,
        }
    }
}

/// A builtin complex together with the polynomial sequence it is meant to
/// be deformed by.
#[derive(Clone, Debug)]
pub struct Builtin {
    pub complex: MixedComplex,
    pub recommended: Option<PolySeq>,
}

pub fn builtin_example(name: &str, params: &BuiltinParams) -> Result<Builtin> {
    let f = params.field;
    let top = |default: usize, min: usize| -> Result<usize> {
        let n = params.top.unwrap_or(default);
        if n < min {
            return Err(Error::InvalidParameter(format!(
                "{name} needs a truncation degree of at least {min}"
            )));
        }
        Ok(n)
    };
    Ok(match name {
        "appendix0" => Builtin {
            complex: appendix0(f),
            recommended: None,
        },
        "banalitaet" => Builtin {
            complex: banalitaet_target(f, top(6, 4)?),
            recommended: Some(PolySeq::one(f)),
        },
        "exterior2" => {
            let alg = exterior_algebra(f);
            let alg = match params.twist {
                Twist::Identity => alg,
                Twist::SignFlip => alg.with_sigma(Some(exterior_sign_flip(f)))?,
            };
            Builtin {
                complex: ncforms_build(&alg, top(4, 2)?)?,
                recommended: Some(PolySeq::cyclic(f)),
            }
        }
        "example1" => {
            let q = params.q.clone().unwrap_or_else(|| f.from_i64(2));
            if q.field() != f {
                return Err(Error::FieldMismatch);
            }
            Builtin {
                complex: example1(&q, top(6, 4)?),
                recommended: Some(PolySeq::geometric(q)),
            }
        }
        "example2" => Builtin {
            complex: example2(f),
            recommended: Some(PolySeq::one(f)),
        },
        "point" => Builtin {
            complex: point(f),
            recommended: Some(PolySeq::one(f)),
        },
        other => return Err(Error::UnknownBuiltin(other.to_string())),
    })
}

/// `D_0 = D_1 = k^2`, `d(r, s) = (r, s)`, `b(u, v) = (0, u)`.
pub fn appendix0(f: Field) -> MixedComplex {
    MixedComplex::new(
        f,
        vec![2, 2],
        vec![Matrix::from_i64(f, &[&[0, 0], &[1, 0]])],
        vec![Matrix::identity(f, 2)],
    )
    .expect("valid")
    .with_name("appendix0")
}

/// `k` in degree 0, all maps zero.
pub fn point(f: Field) -> MixedComplex {
    MixedComplex::zero(f, vec![1]).with_name("point")
}

/// `k` in every degree, `b = 0`, `d_n = id` for odd `n`, truncated at `top`.
pub fn banalitaet_target(f: Field, top: usize) -> MixedComplex {
    let one = Matrix::identity(f, 1);
    let zero = Matrix::zeros(f, 1, 1);
    let b = vec![zero.clone(); top];
    let d = (0..top)
        .map(|n| if n % 2 == 1 { one.clone() } else { zero.clone() })
        .collect();
    MixedComplex::new(f, vec![1; top + 1], b, d)
        .expect("valid")
        .with_name("banalitaet")
        .with_trusted_degree(Some(top - 2))
}

/// The point, the complex of [`banalitaet_target`], and the map that is the
/// identity in degree 0 and zero above.
pub fn banalitaet_pair(f: Field, top: usize) -> (Arc<MixedComplex>, Arc<MixedComplex>, MixedMorphism) {
    let source = Arc::new(point(f));
    let target = Arc::new(banalitaet_target(f, top));
    let mut maps = vec![Matrix::identity(f, 1)];
    maps.extend((1..=top).map(|_| Matrix::zeros(f, 1, 0)));
    let phi = MixedMorphism::new(source.clone(), target.clone(), maps).expect("shapes match");
    (source, target, phi)
}

/// `D_0 = R / R yx`, `D_n = R` for `n > 0`, where `R` is the quantum plane
/// with parameter `q`; `b` and `d` are right multiplication by `x` and `y`.
pub fn example1(q: &Scalar, top: usize) -> MixedComplex {
    let f = q.field();
    let alg = quantum_plane_algebra(q);
    let right_mult = |j: usize| {
        let cols: Vec<Vec<Scalar>> = (0..4).map(|i| alg.product(i, j).to_vec()).collect();
        Matrix::from_columns(f, 4, &cols)
    };
    let (rx, ry) = (right_mult(1), right_mult(2));
    // D_0 has basis 1, x, y; the class of yx is zero.
    let b1 = rx.block(0, 0, 3, 4);
    let d0 = ry.block(0, 0, 4, 3);
    let mut b = vec![b1];
    b.extend((2..=top).map(|_| rx.clone()));
    let mut d = vec![d0];
    d.extend((1..top).map(|_| ry.clone()));
    let mut dims = vec![3];
    dims.extend(std::iter::repeat_n(4, top));
    MixedComplex::new(f, dims, b, d)
        .expect("valid")
        .with_name(format!("example1(q={q})"))
        .with_trusted_degree(Some(top - 2))
}

/// `k` in degrees 0, 1, 2 with `b_1 = d_1 = id`.
pub fn example2(f: Field) -> MixedComplex {
    let one = Matrix::identity(f, 1);
    let zero = Matrix::zeros(f, 1, 1);
    MixedComplex::new(
        f,
        vec![1, 1, 1],
        vec![one.clone(), zero.clone()],
        vec![zero, one],
    )
    .expect("valid")
    .with_name("example2")
}
