use std::sync::Arc;

use serde::Serialize;

use crate::complex::MixedComplex;
use crate::error::{Error, Result};
use crate::linear::Matrix;

/// Degreewise maps `phi_n: source_n -> target_n`, for `n` up to the larger of
/// the two top degrees.
#[derive(Clone, Debug)]
pub struct MixedMorphism {
    source: Arc<MixedComplex>,
    target: Arc<MixedComplex>,
    maps: Vec<Matrix>,
}

/// Outcome of [`MixedMorphism::check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorphismReport {
    pub commutes_with_b: bool,
    pub commutes_with_d: bool,
    /// First degree `n` where `phi_{n-1} b_n != b_n phi_n`.
    pub first_b_failure: Option<usize>,
    /// First degree `n` where `phi_{n+1} d_n != d_n phi_n`.
    pub first_d_failure: Option<usize>,
}

impl MorphismReport {
    pub fn holds(&self) -> bool {
        self.commutes_with_b && self.commutes_with_d
    }
}

impl MixedMorphism {
    pub fn new(
        source: Arc<MixedComplex>,
        target: Arc<MixedComplex>,
        maps: Vec<Matrix>,
    ) -> Result<MixedMorphism> {
        if source.field() != target.field() {
            return Err(Error::FieldMismatch);
        }
        let len = source.top().max(target.top()) + 1;
        if maps.len() != len {
            return Err(Error::InvalidParameter(format!(
                "morphism needs {len} degreewise maps, got {}",
                maps.len()
            )));
        }
        for (n, m) in maps.iter().enumerate() {
            let expected = (target.dim(n as isize), source.dim(n as isize));
            if m.shape() != expected {
                return Err(Error::ShapeMismatch {
                    op: "morphism",
                    left: m.shape(),
                    right: expected,
                });
            }
        }
        Ok(MixedMorphism {
            source,
            target,
            maps,
        })
    }

    pub fn identity(c: Arc<MixedComplex>) -> MixedMorphism {
        let maps = c.dims().iter().map(|&n| Matrix::identity(c.field(), n)).collect();
        MixedMorphism {
            source: c.clone(),
            target: c,
            maps,
        }
    }

    pub fn source(&self) -> &Arc<MixedComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<MixedComplex> {
        &self.target
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    /// `phi_n`, zero beyond the stored range.
    pub fn map(&self, n: isize) -> Matrix {
        if n >= 0 && (n as usize) < self.maps.len() {
            self.maps[n as usize].clone()
        } else {
            Matrix::zeros(
                self.source.field(),
                self.target.dim(n),
                self.source.dim(n),
            )
        }
    }

    /// The same maps between complexes with the same spaces but other
    /// structure maps (for instance a deformed coboundary).
    pub fn rebase(&self, source: Arc<MixedComplex>, target: Arc<MixedComplex>) -> Result<MixedMorphism> {
        if source.dims() != self.source.dims() || target.dims() != self.target.dims() {
            return Err(Error::InvalidParameter(
                "rebase requires complexes with the same spaces".into(),
            ));
        }
        MixedMorphism::new(source, target, self.maps.clone())
    }

    pub fn compose(&self, after: &MixedMorphism) -> Result<MixedMorphism> {
        if after.source.dims() != self.target.dims() {
            return Err(Error::InvalidParameter("morphisms do not compose".into()));
        }
        let len = self.source.top().max(after.target.top()) + 1;
        let maps = (0..len as isize)
            .map(|n| &after.map(n) * &self.map(n))
            .collect();
        MixedMorphism::new(self.source.clone(), after.target.clone(), maps)
    }

    /// Checks `phi b = b phi` and `phi d = d phi` in every degree.
    pub fn check(&self) -> MorphismReport {
        let top = self.maps.len() as isize - 1;
        let (s, t) = (&self.source, &self.target);
        let first_b_failure = (1..=top)
            .find(|&n| &self.map(n - 1) * &s.b_any(n) != &t.b_any(n) * &self.map(n))
            .map(|n| n as usize);
        let first_d_failure = (0..top)
            .find(|&n| &self.map(n + 1) * &s.d_any(n) != &t.d_any(n) * &self.map(n))
            .map(|n| n as usize);
        MorphismReport {
            commutes_with_b: first_b_failure.is_none(),
            commutes_with_d: first_d_failure.is_none(),
            first_b_failure,
            first_d_failure,
        }
    }
}

/// Free-function form of [`MixedMorphism::check`].
pub fn morphism_check(phi: &MixedMorphism) -> MorphismReport {
    phi.check()
}
