//! The two short exact sequences relating `H(D, b, d)`, `H(D, b, Upsilon)`
//! and `H(D^, b^, Upsilon^)`, and the reduction for cyclic complexes.

use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::complex::{hat, images_of, quotient_complex, sub_complex, MixedComplex, QuotientComplex};
use crate::deform::{dtilde, DeformedStructure};
use crate::error::{Error, Result};
use crate::homology::compute::{
    columns_as_strings, default_max_degree, mixed_induced, total_homology, MixedHomology,
};
use crate::homology::skyscraper::skyscraper_test;
use crate::homology::{Coboundary, Grading};
use crate::linear::{combine, kernel_basis, Combine, Matrix, Subspace};
use crate::poly::PolySeq;

/// A quotient of `D` with the coboundary induced by `Upsilon`.
pub(crate) fn with_induced_upsilon(q: &QuotientComplex, s: &DeformedStructure) -> Result<Arc<MixedComplex>> {
    let top = q.complex.top();
    let ups = (0..top)
        .map(|m| {
            q.structures[m]
                .induced(&q.structures[m + 1], &s.upsilon[m])
                .ok_or(Error::NotInvariant { degree: m, map: "Upsilon" })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Arc::new(q.complex.with_coboundary(ups)?))
}

/// `im b` in each degree, as a graded subspace.
pub(crate) fn boundary_images(c: &MixedComplex) -> Vec<Subspace> {
    (0..=c.top()).map(|m| Subspace::column_space(c.b(m + 1))).collect()
}

/// `D~ = D / (im xi + im Xi)` with the coboundary induced by `Upsilon`.
pub(crate) fn tilde_upsilon(s: &DeformedStructure) -> Result<Arc<MixedComplex>> {
    with_induced_upsilon(&dtilde(s)?, s)
}

/// `ker pi_n` in one degree.
#[derive(Clone, Debug)]
pub struct PiDegree {
    pub degree: usize,
    pub trusted: bool,
    pub source_dim: usize,
    pub target_dim: usize,
    /// Representatives of a basis of the kernel, as cycles of `tot_n(D~)`.
    pub kernel: Matrix,
}

impl PiDegree {
    pub fn kernel_dim(&self) -> usize {
        self.kernel.cols()
    }
}

impl Serialize for PiDegree {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("PiDegree", 6)?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("trusted", &self.trusted)?;
        st.serialize_field("source_dim", &self.source_dim)?;
        st.serialize_field("target_dim", &self.target_dim)?;
        st.serialize_field("kernel_dim", &self.kernel_dim())?;
        st.serialize_field("kernel", &columns_as_strings(&self.kernel))?;
        st.end()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PiKernel {
    pub tilde_dims: Vec<usize>,
    pub degrees: Vec<PiDegree>,
    /// `H(D~, b~, Upsilon~)`.
    #[serde(skip)]
    pub source: MixedHomology,
}

fn pi_kernel_unchecked(s: &DeformedStructure, max: usize) -> Result<PiKernel> {
    let tilde = tilde_upsilon(s)?;
    let target = quotient_complex(&tilde, boundary_images(&tilde))?;
    let (maps, source, _) = mixed_induced(&target.projection, Some(max))?;
    let degrees = maps
        .iter()
        .map(|m| {
            let coeffs = kernel_basis(&m.matrix);
            let reps = source.degrees[m.degree].representatives();
            PiDegree {
                degree: m.degree,
                trusted: m.trusted,
                source_dim: m.source_dim,
                target_dim: m.target_dim,
                kernel: reps * coeffs.basis(),
            }
        })
        .collect();
    Ok(PiKernel {
        tilde_dims: tilde.dims().to_vec(),
        degrees,
        source,
    })
}

/// Kernel of `H(D~, b~, Upsilon~) -> H(D~/im b~, 0, Upsilon~)` in degrees
/// `0..=max`.
pub fn pi_kernel(d: &Arc<MixedComplex>, c: &PolySeq, max: Option<usize>) -> Result<PiKernel> {
    c.check_invertible(d.top())?;
    let s = DeformedStructure::new(d.clone(), c)?;
    pi_kernel_unchecked(&s, max.unwrap_or_else(|| default_max_degree(d)))
}

#[derive(Clone, Debug, Serialize)]
pub struct Preconditions {
    pub beta_invertible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta_detail: Option<String>,
    /// `(D, b, Upsilon)` is a homological skyscraper.
    pub skyscraper: bool,
}

impl Preconditions {
    pub fn hold(&self) -> bool {
        self.beta_invertible && self.skyscraper
    }
}

/// Dimensions and verdicts in one degree.
#[derive(Clone, Debug, Serialize)]
pub struct TheoremRow {
    pub degree: usize,
    pub trusted: bool,
    /// `dim H_n(D, b, Upsilon)`.
    pub deformed: usize,
    /// `dim H_n(D^, b^, Upsilon^)`.
    pub hat_deformed: usize,
    /// `dim H_{n-1}(im xi, b, Upsilon)`.
    pub image_xi_previous: usize,
    /// `dim H_n(D, b, d)`.
    pub mixed: usize,
    /// `dim ker pi_n`.
    pub ker_pi: usize,
    /// `H_n(D~, b~, Upsilon~)` computed separately has the same dimension.
    pub hat_equals_tilde: bool,
    pub part1: bool,
    pub part2_injective: bool,
    pub part2_exact: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub complex: String,
    pub sequence: String,
    pub preconditions: Preconditions,
    pub rows: Vec<TheoremRow>,
    pub part1_holds: bool,
    pub part2_holds: bool,
    pub holds: bool,
}

impl TheoremReport {
    pub fn row(&self, n: usize) -> &TheoremRow {
        &self.rows[n]
    }
}

/// Computes all five homology families for `(D, c)` in degrees `0..=max` and
/// checks both sequences in the trusted degrees.
pub fn verify_theorem(d: &Arc<MixedComplex>, c: &PolySeq, max: Option<usize>) -> Result<TheoremReport> {
    let max = max.unwrap_or_else(|| default_max_degree(d));
    let s = DeformedStructure::new(d.clone(), c)?;
    let beta = c.check_invertible(d.top());
    let preconditions = Preconditions {
        beta_invertible: beta.is_ok(),
        beta_detail: beta.err().map(|e| e.to_string()),
        skyscraper: skyscraper_test(d, Coboundary::Upsilon(c))?.holds,
    };

    let mixed = total_homology(d, Grading::Natural, Some(max))?;
    let hat_q = hat(d)?;
    let hat_ups = with_induced_upsilon(&hat_q, &s)?;
    let quotient = hat_q.projection.rebase(s.deformed.clone(), hat_ups)?;
    let (part2_maps, deformed, hat_deformed) = mixed_induced(&quotient, Some(max))?;
    let image = sub_complex(&s.deformed, images_of(&s.deformed, &[&s.xi])?)?;
    let image_h = total_homology(&image.complex, Grading::Natural, Some(max))?;
    let pi = pi_kernel_unchecked(&s, max)?;

    let rows: Vec<TheoremRow> = (0..=max)
        .map(|n| {
            let hat_dim = hat_deformed.dim(n as isize);
            let prev = image_h.dim(n as isize - 1);
            TheoremRow {
                degree: n,
                trusted: d.is_trusted(n),
                mixed: mixed.dim(n as isize),
                hat_deformed: hat_dim,
                deformed: deformed.dim(n as isize),
                image_xi_previous: prev,
                ker_pi: pi.degrees[n].kernel_dim(),
                hat_equals_tilde: hat_dim == pi.source.dim(n as isize),
                part1: mixed.dim(n as isize) == hat_dim,
                part2_injective: part2_maps[n].is_injective(),
                part2_exact: hat_dim == deformed.dim(n as isize) + prev,
            }
        })
        .collect();
    let trusted = || rows.iter().filter(|r| r.trusted);
    let part1_holds = trusted().all(|r| r.part1 && r.hat_equals_tilde);
    let part2_holds = trusted().all(|r| r.part2_injective && r.part2_exact && r.hat_equals_tilde);
    Ok(TheoremReport {
        complex: d.name().to_string(),
        sequence: c.label(),
        holds: preconditions.hold() && part1_holds && part2_holds,
        preconditions,
        rows,
        part1_holds,
        part2_holds,
    })
}

/// Degrees where a cyclic check of `Xi = 0` applies: all of them for an exact
/// complex, all but the cut-off top degree for a truncation.
pub(crate) fn cyclic_range(c: &MixedComplex) -> std::ops::Range<usize> {
    if c.trusted_degree().is_some() {
        0..c.top()
    } else {
        0..c.top() + 1
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CorollaryRow {
    pub degree: usize,
    pub trusted: bool,
    /// `dim H_n(D, b, d)`.
    pub mixed: usize,
    /// `dim H_n(D, b, Upsilon)`.
    pub deformed: usize,
    /// `sum_i dim (ker xi cap im xi)_{n-1-2i}`.
    pub correction: usize,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorollaryReport {
    pub complex: String,
    pub rows: Vec<CorollaryRow>,
    pub holds: bool,
}

/// `dim H_n(D,b,d) = dim H_n(D,b,Upsilon) + sum_i dim(ker xi cap im xi)_{n-1-2i}`
/// for a cyclic complex with the cyclic sequence.
pub fn corollary_check(d: &Arc<MixedComplex>, max: Option<usize>) -> Result<CorollaryReport> {
    let max = max.unwrap_or_else(|| default_max_degree(d));
    let c = PolySeq::cyclic(d.field());
    c.check_invertible(d.top())?;
    let s = DeformedStructure::new(d.clone(), &c)?;
    if let Some(n) = cyclic_range(d).find(|&n| !s.big_xi.get(n).is_zero()) {
        return Err(Error::Hypothesis(format!("not a cyclic complex: Xi != 0 in degree {n}")));
    }
    let mixed = total_homology(d, Grading::Natural, Some(max))?;
    let deformed = total_homology(&s.deformed, Grading::Natural, Some(max))?;
    let ker_im: Vec<usize> = s
        .xi
        .ops()
        .iter()
        .map(|x| {
            let both = combine(Combine::Intersection, &kernel_basis(x), &Subspace::column_space(x))?;
            Ok(both.dim())
        })
        .collect::<Result<Vec<_>>>()?;
    let rows: Vec<CorollaryRow> = (0..=max)
        .map(|n| {
            let correction = (1..=n)
                .rev()
                .step_by(2)
                .map(|k| ker_im.get(k - 1).copied().unwrap_or(0))
                .sum();
            let (m, u) = (mixed.dim(n as isize), deformed.dim(n as isize));
            CorollaryRow {
                degree: n,
                trusted: d.is_trusted(n),
                mixed: m,
                deformed: u,
                correction,
                holds: m == u + correction,
            }
        })
        .collect();
    Ok(CorollaryReport {
        complex: d.name().to_string(),
        holds: rows.iter().filter(|r| r.trusted).all(|r| r.holds),
        rows,
    })
}

/// `H_n(D^, b^, d^)` as a complex of its own agrees with `H_n(D, b, d)`.
pub fn hat_invariance(d: &Arc<MixedComplex>, max: Option<usize>) -> Result<bool> {
    let h = total_homology(d, Grading::Natural, max)?;
    let hat_q = hat(d)?;
    let again = total_homology(&hat_q.complex, Grading::Natural, Some(h.degrees.len() - 1))?;
    Ok(h.degrees
        .iter()
        .zip(&again.degrees)
        .filter(|(a, _)| a.trusted)
        .all(|(a, b)| a.dim() == b.dim()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{example1, example2, point};
    use crate::linear::Field;

    const Q: Field = Field::Rationals;

    #[test]
    fn example2_kernel() {
        let d = Arc::new(example2(Q));
        let pi = pi_kernel(&d, &PolySeq::one(Q), Some(4)).unwrap();
        let k = &pi.degrees[2];
        assert_eq!(k.kernel_dim(), 1);
        // The kernel is spanned by the class of (0, 1).
        let h = &pi.source.degrees[2].space;
        let class = h.class_of(&[Q.zero(), Q.one()]).unwrap();
        let kernel_class = h.class_of(&k.kernel.column(0)).unwrap();
        assert!(class.iter().any(|c| !c.is_zero()));
        assert_eq!(rank_of(&[class, kernel_class]), 1);
    }

    fn rank_of(cols: &[Vec<crate::linear::Scalar>]) -> usize {
        crate::linear::rank(&Matrix::from_columns(Q, cols[0].len(), cols))
    }

    #[test]
    fn example1_theorem() {
        let q = Q.from_i64(2);
        let d = Arc::new(example1(&q, 6));
        let r = verify_theorem(&d, &PolySeq::geometric(q.clone()), None).unwrap();
        assert!(r.holds, "{r:#?}");
        let row = r.row(2);
        assert_eq!((row.deformed, row.hat_deformed, row.mixed, row.image_xi_previous), (1, 2, 2, 1));
        assert!(r.rows.iter().filter(|r| r.trusted).count() == 5);
        // The extra generator ((1-q) y, 0) maps to Upsilon~(1 - q)/q mod im b~,
        // so it spans ker pi_2.
        assert_eq!(row.ker_pi, 1);
        let pi = pi_kernel(&d, &PolySeq::geometric(q.clone()), None).unwrap();
        let h = &pi.source.degrees[2].space;
        assert_eq!(pi.source.total.layout(2)[0].dim, 3);
        let mut v = vec![Q.zero(); 6];
        v[2] = &Q.one() - &q;
        let generator = h.class_of(&v).unwrap();
        let kernel = h.class_of(&pi.degrees[2].kernel.column(0)).unwrap();
        assert_eq!(rank_of(&[generator, kernel]), 1);
    }

    #[test]
    fn example1_without_deformation_has_no_kernel() {
        let q = Q.one();
        let d = Arc::new(example1(&q, 6));
        let pi = pi_kernel(&d, &PolySeq::geometric(q), None).unwrap();
        assert!(pi.degrees.iter().all(|k| k.kernel_dim() == 0));
    }

    #[test]
    fn example2_theorem() {
        let d = Arc::new(example2(Q));
        let r = verify_theorem(&d, &PolySeq::one(Q), None).unwrap();
        assert!(r.holds);
        assert_eq!(r.row(2).ker_pi, 1);
    }

    #[test]
    fn point_corollary_and_kernel() {
        let d = Arc::new(point(Q));
        let r = corollary_check(&d, Some(5)).unwrap();
        assert!(r.holds);
        let pi = pi_kernel(&d, &PolySeq::cyclic(Q), Some(5)).unwrap();
        assert!(pi.degrees.iter().all(|k| k.kernel_dim() == 0));
        assert!(hat_invariance(&d, None).unwrap());
    }

    #[test]
    fn forms_corollary() {
        use crate::builders::{exterior_algebra, ncforms_build};
        let d = Arc::new(ncforms_build(&exterior_algebra(Q), 4).unwrap());
        let r = corollary_check(&d, None).unwrap();
        assert!(r.holds);
        assert!(r.rows.iter().any(|r| r.trusted && r.correction > 0));
    }

    #[test]
    fn forms_theorem_degree_five() {
        use crate::builders::{exterior_algebra, ncforms_build};
        let d = Arc::new(ncforms_build(&exterior_algebra(Q), 5).unwrap());
        let r = verify_theorem(&d, &PolySeq::cyclic(Q), None).unwrap();
        assert!(r.holds);
        let c = corollary_check(&d, None).unwrap();
        assert!(c.holds);
        for (row, cor) in r.rows.iter().zip(&c.rows).filter(|(r, _)| r.trusted) {
            assert_eq!(row.image_xi_previous, cor.correction, "degree {}", row.degree);
        }
    }
}
