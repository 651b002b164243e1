//! Chain, cochain and mixed homology, and maps induced on them.

use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::complex::{hat, MixedComplex, MixedMorphism, QuotientComplex};
use crate::deform::DeformedStructure;
use crate::error::{Error, Result};
use crate::homology::total::{total_map, Grading, TotalComplex};
use crate::linear::{homology_at, rank, HomologySpace, Matrix};
use crate::poly::PolySeq;

/// Columns of `m` rendered as strings, one vector per column.
pub(crate) fn columns_as_strings(m: &Matrix) -> Vec<Vec<String>> {
    m.transpose().to_strings()
}

/// Homology in one degree.
#[derive(Clone, Debug)]
pub struct DegreeHomology {
    pub degree: usize,
    /// `false` when the degree lies above the trusted range of a truncation.
    pub trusted: bool,
    pub space: HomologySpace,
}

impl DegreeHomology {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn representatives(&self) -> &Matrix {
        self.space.representatives()
    }
}

impl Serialize for DegreeHomology {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("DegreeHomology", 4)?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("dim", &self.dim())?;
        st.serialize_field("trusted", &self.trusted)?;
        st.serialize_field("representatives", &columns_as_strings(self.representatives()))?;
        st.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Homology of `(D, b)`.
    Chain,
    /// Homology of `(D, d)`.
    Cochain,
}

/// Homology of `(D, b)` or `(D, d)` in degree `n`; zero outside the stored range.
pub fn linear_homology_at(c: &MixedComplex, direction: Direction, n: usize) -> Result<HomologySpace> {
    let n = n as isize;
    match direction {
        Direction::Chain => homology_at(&c.b_any(n + 1), &c.b_any(n)),
        Direction::Cochain => homology_at(&c.d_any(n - 1), &c.d_any(n)),
    }
}

pub fn linear_homology(c: &MixedComplex, direction: Direction) -> Result<Vec<DegreeHomology>> {
    (0..=c.top())
        .map(|n| {
            Ok(DegreeHomology {
                degree: n,
                trusted: c.is_trusted(n),
                space: linear_homology_at(c, direction, n)?,
            })
        })
        .collect()
}

/// Which coboundary a mixed homology computation pairs with `b`.
#[derive(Clone, Copy, Debug)]
pub enum Coboundary<'a> {
    D,
    /// The deformed coboundary built from this sequence.
    Upsilon(&'a PolySeq),
}

/// `(D, b, cob)` as a complex.
pub fn with_coboundary_of(d: &Arc<MixedComplex>, cob: Coboundary<'_>) -> Result<Arc<MixedComplex>> {
    match cob {
        Coboundary::D => Ok(d.clone()),
        Coboundary::Upsilon(c) => Ok(DeformedStructure::new(d.clone(), c)?.deformed),
    }
}

/// `N` for truncations, `N + 2` for complexes given exactly.
pub fn default_max_degree(c: &MixedComplex) -> usize {
    if c.trusted_degree().is_some() {
        c.top()
    } else {
        c.top() + 2
    }
}

/// Mixed homology together with the hat complex and total complex it was
/// computed from.
#[derive(Clone, Debug)]
pub struct MixedHomology {
    pub hat: QuotientComplex,
    pub total: TotalComplex,
    pub degrees: Vec<DegreeHomology>,
}

impl MixedHomology {
    /// `dim H_n`, zero for negative `n`.
    pub fn dim(&self, n: isize) -> usize {
        if n < 0 {
            0
        } else {
            self.degrees[n as usize].dim()
        }
    }

    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(DegreeHomology::dim).collect()
    }
}

impl Serialize for MixedHomology {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("MixedHomology", 3)?;
        st.serialize_field("grading", &self.total.grading())?;
        st.serialize_field("hat_dims", self.hat.complex.dims())?;
        st.serialize_field("degrees", &self.degrees)?;
        st.end()
    }
}

/// Homology of `(tot E^, b + d)` where `E^ = E / im xi_E`.
///
/// The natural grading returns degrees `0..=max`; the parity grading returns
/// indices 0 and 1, flagged untrusted for truncated complexes.
pub fn total_homology(e: &Arc<MixedComplex>, grading: Grading, max: Option<usize>) -> Result<MixedHomology> {
    let hat = hat(e)?;
    let max = max.unwrap_or_else(|| default_max_degree(e));
    let (total, degrees) = match grading {
        Grading::Natural => {
            let total = TotalComplex::new(&hat.complex, grading, max + 1)?;
            let degrees = (0..=max)
                .map(|n| {
                    let into = total.differential_into(n).expect("assembled one index beyond max");
                    Ok(DegreeHomology {
                        degree: n,
                        trusted: e.is_trusted(n),
                        space: homology_at(into, total.differential(n))?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            (total, degrees)
        }
        Grading::Parity => {
            let total = TotalComplex::new(&hat.complex, grading, 1)?;
            let degrees = (0..2)
                .map(|s| {
                    Ok(DegreeHomology {
                        degree: s,
                        trusted: e.trusted_degree().is_none(),
                        space: homology_at(total.differential(1 - s), total.differential(s))?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            (total, degrees)
        }
    };
    Ok(MixedHomology { hat, total, degrees })
}

/// Mixed homology of `(D, b, cob)`.
pub fn mixed_homology(
    d: &Arc<MixedComplex>,
    cob: Coboundary<'_>,
    grading: Grading,
    max: Option<usize>,
) -> Result<MixedHomology> {
    total_homology(&with_coboundary_of(d, cob)?, grading, max)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MapMode {
    Chain,
    Cochain,
    Mixed,
}

/// `phi_*` in one degree, in the representative bases.
#[derive(Clone, Debug)]
pub struct InducedDegree {
    pub degree: usize,
    pub trusted: bool,
    pub source_dim: usize,
    pub target_dim: usize,
    pub matrix: Matrix,
    pub rank: usize,
}

impl InducedDegree {
    pub fn is_injective(&self) -> bool {
        self.rank == self.source_dim
    }

    pub fn is_surjective(&self) -> bool {
        self.rank == self.target_dim
    }

    pub fn is_iso(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

impl Serialize for InducedDegree {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("InducedDegree", 7)?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("trusted", &self.trusted)?;
        st.serialize_field("source_dim", &self.source_dim)?;
        st.serialize_field("target_dim", &self.target_dim)?;
        st.serialize_field("rank", &self.rank)?;
        st.serialize_field("iso", &self.is_iso())?;
        st.serialize_field("matrix", &self.matrix.to_strings())?;
        st.end()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InducedMaps {
    pub mode: MapMode,
    pub degrees: Vec<InducedDegree>,
    /// Every trusted degree is an isomorphism.
    pub quasi_iso: bool,
}

impl InducedMaps {
    pub fn degree(&self, n: usize) -> &InducedDegree {
        &self.degrees[n]
    }
}

fn induced_degree(
    degree: usize,
    trusted: bool,
    source: &HomologySpace,
    target: &HomologySpace,
    map: &Matrix,
) -> Result<InducedDegree> {
    let images = map.checked_mul(source.representatives())?;
    let matrix = target.classes_of(&images)?;
    let rank = rank(&matrix);
    Ok(InducedDegree {
        degree,
        trusted,
        source_dim: source.dim(),
        target_dim: target.dim(),
        matrix,
        rank,
    })
}

fn require_commuting(phi: &MixedMorphism, mode: MapMode) -> Result<()> {
    let report = phi.check();
    if matches!(mode, MapMode::Chain | MapMode::Mixed) {
        if let Some(n) = report.first_b_failure {
            return Err(Error::NotCommuting { degree: n, map: "b" });
        }
    }
    if matches!(mode, MapMode::Cochain | MapMode::Mixed) {
        if let Some(n) = report.first_d_failure {
            return Err(Error::NotCommuting { degree: n, map: "d" });
        }
    }
    Ok(())
}

/// Mixed-mode induced maps together with the source and target homologies.
pub(crate) fn mixed_induced(
    phi: &MixedMorphism,
    max: Option<usize>,
) -> Result<(Vec<InducedDegree>, MixedHomology, MixedHomology)> {
    require_commuting(phi, MapMode::Mixed)?;
    let (s, t) = (phi.source(), phi.target());
    let max = max.unwrap_or(default_max_degree(s).max(default_max_degree(t)));
    let hs = total_homology(s, Grading::Natural, Some(max))?;
    let ht = total_homology(t, Grading::Natural, Some(max))?;
    let hat_maps = (0..=max)
        .map(|m| {
            if m <= s.top() && m <= t.top() {
                hs.hat.structures[m]
                    .induced(&ht.hat.structures[m], &phi.map(m as isize))
                    .ok_or(Error::NotInvariant { degree: m, map: "morphism" })
            } else {
                Ok(Matrix::zeros(
                    s.field(),
                    ht.hat.complex.dim(m as isize),
                    hs.hat.complex.dim(m as isize),
                ))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let degrees = (0..=max)
        .map(|n| {
            let map = total_map(&hs.total, &ht.total, n, |m| hat_maps[m].clone());
            let trusted = s.is_trusted(n) && t.is_trusted(n);
            induced_degree(n, trusted, &hs.degrees[n].space, &ht.degrees[n].space, &map)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((degrees, hs, ht))
}

/// The maps induced by `phi` on homology, with a quasi-isomorphism verdict
/// over the degrees trusted on both sides.
pub fn induced_map(phi: &MixedMorphism, mode: MapMode, max: Option<usize>) -> Result<InducedMaps> {
    require_commuting(phi, mode)?;
    let (s, t) = (phi.source(), phi.target());
    let trusted = |n: usize| s.is_trusted(n) && t.is_trusted(n);
    let degrees = match mode {
        MapMode::Chain | MapMode::Cochain => {
            let dir = if mode == MapMode::Chain {
                Direction::Chain
            } else {
                Direction::Cochain
            };
            let max = max.unwrap_or(s.top().max(t.top()));
            (0..=max)
                .map(|n| {
                    induced_degree(
                        n,
                        trusted(n),
                        &linear_homology_at(s, dir, n)?,
                        &linear_homology_at(t, dir, n)?,
                        &phi.map(n as isize),
                    )
                })
                .collect::<Result<Vec<_>>>()?
        }
        MapMode::Mixed => mixed_induced(phi, max)?.0,
    };
    let quasi_iso = degrees.iter().filter(|d| d.trusted).all(InducedDegree::is_iso);
    Ok(InducedMaps {
        mode,
        degrees,
        quasi_iso,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{appendix0, banalitaet_pair, banalitaet_target, example1, point};
    use crate::linear::Field;

    const Q: Field = Field::Rationals;

    #[test]
    fn appendix0_chain_homology() {
        let h = linear_homology(&appendix0(Q), Direction::Chain).unwrap();
        assert_eq!(h.iter().map(DegreeHomology::dim).collect::<Vec<_>>(), vec![1, 1]);
    }

    #[test]
    fn appendix0_quotient_map() {
        let d = Arc::new(appendix0(Q));
        let q = hat(&d).unwrap();
        let m = induced_map(&q.projection, MapMode::Chain, None).unwrap();
        assert!(m.degree(0).matrix.is_identity());
        assert!(m.degree(1).matrix.is_zero());
        assert!(!m.quasi_iso);
    }

    #[test]
    fn point_is_k_in_even_degrees() {
        let h = total_homology(&Arc::new(point(Q)), Grading::Natural, Some(5)).unwrap();
        assert_eq!(h.dims(), vec![1, 0, 1, 0, 1, 0]);
        let p = total_homology(&Arc::new(point(Q)), Grading::Parity, None).unwrap();
        assert_eq!(p.dims(), vec![1, 0]);
    }

    #[test]
    fn banalitaet_target_is_k_everywhere() {
        let d = Arc::new(banalitaet_target(Q, 6));
        let h = total_homology(&d, Grading::Natural, None).unwrap();
        for deg in h.degrees.iter().filter(|h| h.trusted) {
            assert_eq!(deg.dim(), 1, "degree {}", deg.degree);
        }
    }

    #[test]
    fn banalitaet_map() {
        let (_, _, phi) = banalitaet_pair(Q, 6);
        assert!(induced_map(&phi, MapMode::Cochain, None).unwrap().quasi_iso);
        let mixed = induced_map(&phi, MapMode::Mixed, None).unwrap();
        assert!(!mixed.quasi_iso);
        assert_eq!((mixed.degree(1).source_dim, mixed.degree(1).target_dim), (0, 1));
    }

    #[test]
    fn identity_is_a_quasi_iso() {
        let d = Arc::new(example1(&Q.from_i64(2), 5));
        let id = MixedMorphism::identity(d);
        for mode in [MapMode::Chain, MapMode::Cochain, MapMode::Mixed] {
            assert!(induced_map(&id, mode, None).unwrap().quasi_iso);
        }
    }

    #[test]
    fn example1_mixed_degree_two() {
        let d = Arc::new(example1(&Q.from_i64(2), 6));
        let h = mixed_homology(&d, Coboundary::D, Grading::Natural, None).unwrap();
        assert_eq!(h.dim(2), 2);
    }
}
