//! Subspaces of `k^n` in canonical form, and quotients by them.

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linear::echelon::{densify, reduce_rows};
use crate::linear::{kernel_basis, Field, Matrix, Scalar};

/// A subspace stored by its reduced basis: the columns of `basis` are the
/// rows of the reduced row-echelon form of any spanning set, and `pivots[i]`
/// is the leading position of column `i`. Two subspaces are equal iff their
/// canonical data are.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace(dim {} in k^{}, pivots {:?})", self.dim(), self.ambient(), self.pivots)
    }
}

impl Serialize for Subspace {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Subspace", 3)?;
        st.serialize_field("ambient", &self.ambient())?;
        st.serialize_field("dim", &self.dim())?;
        st.serialize_field("basis", &self.basis.transpose().to_strings())?;
        st.end()
    }
}

/// How two subspaces are combined by [`combine`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Combine {
    Sum,
    Intersection,
}

impl Subspace {
    pub fn span(field: Field, ambient: usize, vectors: &[Vec<Scalar>]) -> Subspace {
        let rows = reduce_rows(field, vectors.iter().map(|v| {
            assert_eq!(v.len(), ambient, "vector length must match the ambient dimension");
            v.as_slice()
        }));
        let pivots = rows.iter().map(|r| r[0].0).collect();
        let columns: Vec<Vec<Scalar>> = rows.iter().map(|r| densify(field, ambient, r)).collect();
        Subspace {
            basis: Matrix::from_columns(field, ambient, &columns),
            pivots,
        }
    }

    /// Column space of `m`.
    pub fn column_space(m: &Matrix) -> Subspace {
        Subspace::span(m.field(), m.rows(), &m.columns())
    }

    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace {
            basis: Matrix::zeros(field, ambient, 0),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        Subspace {
            basis: Matrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn ambient(&self) -> usize {
        self.basis.rows()
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn codim(&self) -> usize {
        self.ambient() - self.dim()
    }

    /// Basis vectors as the columns of an `ambient x dim` matrix.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient()
    }

    /// Coordinates of `v` in the reduced basis, or `None` if `v` is not in
    /// the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.ambient());
        let coords: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        (self.basis.mul_vec(&coords) == v).then_some(coords)
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Coordinates of every column of `m`; `None` if some column lies outside.
    pub fn coordinate_matrix(&self, m: &Matrix) -> Option<Matrix> {
        assert_eq!(m.rows(), self.ambient());
        let coords = m.select_rows(&self.pivots);
        (&self.basis * &coords == *m).then_some(coords)
    }

    pub fn is_contained_in(&self, other: &Subspace) -> bool {
        self.ambient() == other.ambient() && other.coordinate_matrix(&self.basis).is_some()
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        combine(Combine::Sum, self, other)
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        combine(Combine::Intersection, self, other)
    }

    /// Image under a linear map `m: k^ambient -> k^rows`.
    pub fn image_under(&self, m: &Matrix) -> Result<Subspace> {
        if m.cols() != self.ambient() {
            return Err(Error::ShapeMismatch {
                op: "image_under",
                left: m.shape(),
                right: self.basis.shape(),
            });
        }
        Ok(Subspace::column_space(&m.checked_mul(&self.basis)?))
    }

    /// Preimage under `m: k^ambient' -> k^ambient`.
    pub fn preimage_under(&self, m: &Matrix) -> Result<Subspace> {
        if m.rows() != self.ambient() {
            return Err(Error::ShapeMismatch {
                op: "preimage_under",
                left: m.shape(),
                right: self.basis.shape(),
            });
        }
        // v is in the preimage iff the projection to the quotient kills m v.
        let q = QuotientStructure::new(self.clone());
        Ok(kernel_basis(&q.projection().checked_mul(m)?))
    }
}

/// Sum or intersection of two subspaces of the same ambient space.
pub fn combine(mode: Combine, u: &Subspace, v: &Subspace) -> Result<Subspace> {
    if u.ambient() != v.ambient() {
        return Err(Error::AmbientMismatch {
            left: u.ambient(),
            right: v.ambient(),
        });
    }
    if u.field() != v.field() {
        return Err(Error::FieldMismatch);
    }
    let field = u.field();
    let n = u.ambient();
    match mode {
        Combine::Sum => {
            let mut cols = u.basis.columns();
            cols.extend(v.basis.columns());
            Ok(Subspace::span(field, n, &cols))
        }
        Combine::Intersection => {
            // (a, c) with U a = V c gives the intersection U a.
            let stacked = Matrix::hstack(field, n, &[&u.basis, &(-&v.basis)]);
            let ker = kernel_basis(&stacked);
            let a = ker.basis().block(0, 0, u.dim(), ker.dim());
            Ok(Subspace::column_space(&(&u.basis * &a)))
        }
    }
}

/// `k^n / W` with the complement spanned by the non-pivot coordinate vectors.
///
/// `projection` is `dim(quotient) x n` and `section` is `n x dim(quotient)`;
/// `projection * section = id` and the kernel of `projection` is `W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientStructure {
    subspace: Subspace,
    complement: Vec<usize>,
    projection: Matrix,
    section: Matrix,
}

impl QuotientStructure {
    pub fn new(subspace: Subspace) -> QuotientStructure {
        let field = subspace.field();
        let n = subspace.ambient();
        let mut is_pivot = vec![false; n];
        for &p in subspace.pivots() {
            is_pivot[p] = true;
        }
        let complement: Vec<usize> = (0..n).filter(|&j| !is_pivot[j]).collect();
        let q = complement.len();
        // Row for the non-pivot j: e_j - sum_i u_i[j] e_{p_i}.
        let mut projection = Matrix::zeros(field, q, n);
        let mut section = Matrix::zeros(field, n, q);
        for (r, &j) in complement.iter().enumerate() {
            projection.set(r, j, field.one());
            section.set(j, r, field.one());
            for (i, &p) in subspace.pivots().iter().enumerate() {
                let u = subspace.basis().get(j, i);
                if !u.is_zero() {
                    projection.set(r, p, -u);
                }
            }
        }
        QuotientStructure {
            subspace,
            complement,
            projection,
            section,
        }
    }

    pub fn ambient(&self) -> usize {
        self.subspace.ambient()
    }

    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    pub fn subspace(&self) -> &Subspace {
        &self.subspace
    }

    /// Ambient coordinates whose unit vectors represent a basis of the quotient.
    pub fn complement(&self) -> &[usize] {
        &self.complement
    }

    pub fn projection(&self) -> &Matrix {
        &self.projection
    }

    pub fn section(&self) -> &Matrix {
        &self.section
    }

    pub fn project(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.projection.mul_vec(v)
    }

    /// Matrix of the map `V/W -> V'/W'` induced by `m: V -> V'`.
    /// Returns `None` when `m` does not carry `W` into `W'`.
    pub fn induced(&self, target: &QuotientStructure, m: &Matrix) -> Option<Matrix> {
        assert_eq!(m.cols(), self.ambient());
        assert_eq!(m.rows(), target.ambient());
        let moved = m * self.subspace.basis();
        target.subspace.coordinate_matrix(&moved)?;
        Some(&(target.projection() * m) * &self.section)
    }
}
