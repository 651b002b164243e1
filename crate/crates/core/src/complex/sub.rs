use std::sync::Arc;

use serde::Serialize;

use crate::complex::{MixedComplex, MixedMorphism, OperatorFamily};
use crate::error::{Error, Result};
use crate::linear::{inverse, kernel_basis, Matrix, QuotientStructure, Subspace};

/// A subcomplex with its reduced bases and the inclusion.
#[derive(Clone, Debug)]
pub struct SubComplex {
    pub complex: Arc<MixedComplex>,
    pub inclusion: MixedMorphism,
    pub spaces: Vec<Subspace>,
}

/// A quotient complex with the projection and the degreewise quotient data.
#[derive(Clone, Debug)]
pub struct QuotientComplex {
    pub complex: Arc<MixedComplex>,
    pub projection: MixedMorphism,
    pub structures: Vec<QuotientStructure>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubquotientMode {
    Sub,
    Quotient,
}

/// Which graded subspace a [`subquotient`] is taken with respect to.
#[derive(Clone, Copy, Debug)]
pub enum Selection<'a> {
    /// `sum_i im op_i` in each degree.
    ImageOf(&'a [&'a OperatorFamily]),
    /// `ker op` in each degree.
    KernelOf(&'a OperatorFamily),
}

fn check_len(c: &MixedComplex, spaces: &[Subspace]) -> Result<()> {
    if spaces.len() != c.dims().len() {
        return Err(Error::InvalidParameter(format!(
            "graded subspace has {} degrees, complex has {}",
            spaces.len(),
            c.dims().len()
        )));
    }
    for (n, s) in spaces.iter().enumerate() {
        if s.ambient() != c.dims()[n] {
            return Err(Error::AmbientMismatch {
                left: s.ambient(),
                right: c.dims()[n],
            });
        }
    }
    Ok(())
}

/// The subcomplex on a graded subspace stable under `b` and `d`.
pub fn sub_complex(c: &Arc<MixedComplex>, spaces: Vec<Subspace>) -> Result<SubComplex> {
    check_len(c, &spaces)?;
    let field = c.field();
    let top = c.top();
    let mut b = Vec::with_capacity(top);
    for n in 1..=top {
        let moved = c.b(n) * spaces[n].basis();
        b.push(
            spaces[n - 1]
                .coordinate_matrix(&moved)
                .ok_or(Error::NotInvariant { degree: n, map: "b" })?,
        );
    }
    let mut d = Vec::with_capacity(top);
    for n in 0..top {
        let moved = c.d(n) * spaces[n].basis();
        d.push(
            spaces[n + 1]
                .coordinate_matrix(&moved)
                .ok_or(Error::NotInvariant { degree: n, map: "d" })?,
        );
    }
    let dims = spaces.iter().map(Subspace::dim).collect();
    let complex = Arc::new(
        MixedComplex::new(field, dims, b, d)?
            .with_name(format!("sub({})", c.name()))
            .with_trusted_degree(c.trusted_degree()),
    );
    let maps = spaces.iter().map(|s| s.basis().clone()).collect();
    let inclusion = MixedMorphism::new(complex.clone(), c.clone(), maps)?;
    Ok(SubComplex {
        complex,
        inclusion,
        spaces,
    })
}

/// The quotient by a graded subspace stable under `b` and `d`.
pub fn quotient_complex(c: &Arc<MixedComplex>, spaces: Vec<Subspace>) -> Result<QuotientComplex> {
    check_len(c, &spaces)?;
    let field = c.field();
    let top = c.top();
    let structures: Vec<QuotientStructure> = spaces.into_iter().map(QuotientStructure::new).collect();
    let mut b = Vec::with_capacity(top);
    for n in 1..=top {
        b.push(
            structures[n]
                .induced(&structures[n - 1], c.b(n))
                .ok_or(Error::NotInvariant { degree: n, map: "b" })?,
        );
    }
    let mut d = Vec::with_capacity(top);
    for n in 0..top {
        d.push(
            structures[n]
                .induced(&structures[n + 1], c.d(n))
                .ok_or(Error::NotInvariant { degree: n, map: "d" })?,
        );
    }
    let dims = structures.iter().map(QuotientStructure::dim).collect();
    let complex = Arc::new(
        MixedComplex::new(field, dims, b, d)?
            .with_name(format!("quot({})", c.name()))
            .with_trusted_degree(c.trusted_degree()),
    );
    let maps = structures.iter().map(|q| q.projection().clone()).collect();
    let projection = MixedMorphism::new(c.clone(), complex.clone(), maps)?;
    Ok(QuotientComplex {
        complex,
        projection,
        structures,
    })
}

/// `sum_i im op_i` per degree; each `op_i` must commute with `b` and `d`.
pub fn images_of(c: &MixedComplex, ops: &[&OperatorFamily]) -> Result<Vec<Subspace>> {
    for op in ops {
        c.check_commutes(op)?;
    }
    Ok((0..c.dims().len())
        .map(|n| {
            let cols: Vec<_> = ops.iter().flat_map(|op| op.get(n).columns()).collect();
            Subspace::span(c.field(), c.dims()[n], &cols)
        })
        .collect())
}

/// `ker op` per degree; `op` must commute with `b` and `d`.
pub fn kernels_of(c: &MixedComplex, op: &OperatorFamily) -> Result<Vec<Subspace>> {
    c.check_commutes(op)?;
    Ok(op.ops().iter().map(kernel_basis).collect())
}

/// Subcomplex or quotient complex cut out by commuting operators, with the
/// inclusion or projection.
pub fn subquotient(
    c: &Arc<MixedComplex>,
    mode: SubquotientMode,
    selection: Selection<'_>,
) -> Result<(Arc<MixedComplex>, MixedMorphism)> {
    let spaces = match selection {
        Selection::ImageOf(ops) => images_of(c, ops)?,
        Selection::KernelOf(op) => kernels_of(c, op)?,
    };
    Ok(match mode {
        SubquotientMode::Sub => {
            let s = sub_complex(c, spaces)?;
            (s.complex, s.inclusion)
        }
        SubquotientMode::Quotient => {
            let q = quotient_complex(c, spaces)?;
            (q.complex, q.projection)
        }
    })
}

/// `D -> D/im xi`.
pub fn hat(c: &Arc<MixedComplex>) -> Result<QuotientComplex> {
    let xi = c.xi();
    quotient_complex(c, images_of(c, &[&xi])?)
}

/// `h_n = xi_{n+1}^{-1} d_n`, together with the degrees where
/// `b h + h b = id` fails.
#[derive(Clone, Debug, Serialize)]
pub struct ContractionReport {
    #[serde(skip)]
    pub homotopy: Vec<Matrix>,
    pub failing_degrees: Vec<usize>,
}

impl ContractionReport {
    pub fn holds(&self) -> bool {
        self.failing_degrees.is_empty()
    }
}

/// Contracting homotopy of `(D, b)` built from an invertible `xi`.
pub fn contracting_homotopy(c: &MixedComplex) -> Result<ContractionReport> {
    let xi = c.xi();
    let inverses = xi
        .ops()
        .iter()
        .enumerate()
        .map(|(n, m)| inverse(m).ok_or(Error::NotInvertible { degree: n }))
        .collect::<Result<Vec<_>>>()?;
    let top = c.top();
    // h_n: D_n -> D_{n+1}; h_N lands in the missing D_{N+1}.
    let homotopy: Vec<Matrix> = (0..=top)
        .map(|n| {
            if n < top {
                &inverses[n + 1] * c.d(n)
            } else {
                Matrix::zeros(c.field(), 0, c.dims()[top])
            }
        })
        .collect();
    let failing_degrees = (0..=top)
        .filter(|&n| {
            let mut sum = c.b(n + 1) * &homotopy[n];
            if n > 0 {
                sum = &sum + &(&homotopy[n - 1] * c.b(n));
            }
            !sum.is_identity()
        })
        .collect();
    Ok(ContractionReport {
        homotopy,
        failing_degrees,
    })
}
