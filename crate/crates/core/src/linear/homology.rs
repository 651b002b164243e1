//! Homology of a single spot `A --d_in--> V --d_out--> B`.

use crate::error::{Error, Result};
use crate::linear::{kernel_basis, Matrix, QuotientStructure, Scalar, Subspace};

/// `ker d_out / im d_in` with a chosen basis.
#[derive(Clone, Debug)]
pub struct HomologySpace {
    cycles: Subspace,
    boundaries: Subspace,
    /// Quotient of cycle coordinates by boundary coordinates.
    quotient: QuotientStructure,
    representatives: Matrix,
}

impl HomologySpace {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn cycles(&self) -> &Subspace {
        &self.cycles
    }

    pub fn boundaries(&self) -> &Subspace {
        &self.boundaries
    }

    /// Cycles representing the chosen basis, as columns.
    pub fn representatives(&self) -> &Matrix {
        &self.representatives
    }

    /// Coordinates of the class of a cycle.
    pub fn class_of(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        let z = self.cycles.coordinates(v).ok_or(Error::NotACycle)?;
        Ok(self.quotient.project(&z))
    }

    pub fn is_boundary(&self, v: &[Scalar]) -> bool {
        self.boundaries.contains_vector(v)
    }

    /// Matrix whose columns are the classes of the columns of `m` (all cycles).
    pub fn classes_of(&self, m: &Matrix) -> Result<Matrix> {
        let z = self.cycles.coordinate_matrix(m).ok_or(Error::NotACycle)?;
        Ok(self.quotient.projection() * &z)
    }
}

/// Homology at the middle of `d_in: k^a -> k^n`, `d_out: k^n -> k^b`.
pub fn homology_at(d_in: &Matrix, d_out: &Matrix) -> Result<HomologySpace> {
    if d_in.rows() != d_out.cols() {
        return Err(Error::ShapeMismatch {
            op: "homology_at",
            left: d_out.shape(),
            right: d_in.shape(),
        });
    }
    if !d_out.checked_mul(d_in)?.is_zero() {
        return Err(Error::NotAComplex);
    }
    let cycles = kernel_basis(d_out);
    let boundaries = Subspace::column_space(d_in);
    let in_cycles = cycles
        .coordinate_matrix(boundaries.basis())
        .expect("boundaries are cycles");
    let quotient = QuotientStructure::new(Subspace::column_space(&in_cycles));
    let representatives = cycles.basis() * quotient.section();
    Ok(HomologySpace {
        cycles,
        boundaries,
        quotient,
        representatives,
    })
}
