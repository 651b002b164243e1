//! Whether `(im xi, b)` is acyclic, checked directly and through the quotient
//! map `D -> D/im xi`.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::complex::{hat, images_of, sub_complex, MixedComplex};
use crate::error::Result;
use crate::homology::compute::{
    induced_map, linear_homology, linear_homology_at, with_coboundary_of, Coboundary, DegreeHomology,
    Direction, MapMode,
};
use crate::linear::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum QuotientFailure {
    Injectivity,
    Surjectivity,
}

/// A nontrivial class of `(im xi, b)`.
#[derive(Clone, Debug, Serialize)]
pub struct SkyscraperWitness {
    /// First degree where `D -> D/im xi` is not a quasi-isomorphism.
    pub failing_degree: Option<usize>,
    pub failure: Option<QuotientFailure>,
    pub class_degree: usize,
    /// Representative in the coordinates of `D_{class_degree}`.
    pub vector: Vec<String>,
    #[serde(skip)]
    pub scalars: Vec<Scalar>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SkyscraperReport {
    /// Chain homology of `(im xi, b)`.
    pub sub_homology: Vec<DegreeHomology>,
    /// `(im xi, b)` is acyclic in all trusted degrees.
    pub acyclic: bool,
    /// The quotient map is a chain quasi-isomorphism in all trusted degrees.
    pub quotient_quasi_iso: bool,
    /// The two computations agree as the long exact sequence requires.
    pub consistent: bool,
    pub holds: bool,
    pub witness: Option<SkyscraperWitness>,
}

fn witness(class_degree: usize, v: Vec<Scalar>, failing: Option<(usize, QuotientFailure)>) -> SkyscraperWitness {
    SkyscraperWitness {
        failing_degree: failing.map(|f| f.0),
        failure: failing.map(|f| f.1),
        class_degree,
        vector: v.iter().map(ToString::to_string).collect(),
        scalars: v,
    }
}

/// Tests whether `(D, b, cob)` is a homological skyscraper.
pub fn skyscraper_test(d: &Arc<MixedComplex>, cob: Coboundary<'_>) -> Result<SkyscraperReport> {
    let e = with_coboundary_of(d, cob)?;
    let xi = e.xi();
    let sub = sub_complex(&e, images_of(&e, &[&xi])?)?;
    let sub_homology = linear_homology(&sub.complex, Direction::Chain)?;
    let quotient = hat(&e)?;
    let maps = induced_map(&quotient.projection, MapMode::Chain, Some(e.top()))?;

    let sub_failures: BTreeSet<usize> = sub_homology
        .iter()
        .filter(|h| h.trusted && h.dim() > 0)
        .map(|h| h.degree)
        .collect();
    let map_failures: BTreeSet<usize> = maps
        .degrees
        .iter()
        .filter(|m| m.trusted && !m.is_iso())
        .map(|m| m.degree)
        .collect();
    let consistent = map_failures
        .iter()
        .all(|&n| sub_failures.contains(&n) || (n > 0 && sub_failures.contains(&(n - 1))))
        && sub_failures.iter().all(|&m| {
            !e.is_trusted(m + 1) || map_failures.contains(&m) || map_failures.contains(&(m + 1))
        });

    let representative = |m: usize, j: usize| sub.inclusion.map(m as isize).mul_vec(&sub_homology[m].representatives().column(j));
    let mut found = None;
    if let Some(&n) = map_failures.iter().next() {
        let map = maps.degree(n);
        if !map.is_injective() {
            // A class of im xi that survives in D.
            let h = linear_homology_at(&e, Direction::Chain, n)?;
            for j in 0..sub_homology[n].dim() {
                let v = representative(n, j);
                if h.class_of(&v)?.iter().any(|c| !c.is_zero()) {
                    found = Some(witness(n, v, Some((n, QuotientFailure::Injectivity))));
                    break;
                }
            }
        } else if n > 0 {
            // A class of im xi one degree down that dies in D.
            let h = linear_homology_at(&e, Direction::Chain, n - 1)?;
            for j in 0..sub_homology[n - 1].dim() {
                let v = representative(n - 1, j);
                if h.is_boundary(&v) {
                    found = Some(witness(n - 1, v, Some((n, QuotientFailure::Surjectivity))));
                    break;
                }
            }
        }
    }
    if found.is_none() {
        if let Some(&m) = sub_failures.iter().next() {
            found = Some(witness(m, representative(m, 0), None));
        }
    }
    let acyclic = sub_failures.is_empty();
    Ok(SkyscraperReport {
        sub_homology,
        acyclic,
        quotient_quasi_iso: map_failures.is_empty(),
        consistent,
        holds: acyclic,
        witness: found,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{appendix0, example1, example2};
    use crate::linear::Field;
    use crate::poly::PolySeq;

    const Q: Field = Field::Rationals;

    #[test]
    fn appendix0_is_not_a_skyscraper() {
        let r = skyscraper_test(&Arc::new(appendix0(Q)), Coboundary::D).unwrap();
        assert!(!r.holds && !r.quotient_quasi_iso && r.consistent);
        let w = r.witness.unwrap();
        assert_eq!(w.failing_degree, Some(1));
        assert_eq!(w.class_degree, 1);
        assert_eq!(w.vector, vec!["0", "1"]);
    }

    #[test]
    fn deformed_examples_are_skyscrapers() {
        let q = Q.from_i64(2);
        let d = Arc::new(example1(&q, 6));
        let r = skyscraper_test(&d, Coboundary::Upsilon(&PolySeq::geometric(q))).unwrap();
        assert!(r.holds && r.quotient_quasi_iso && r.consistent);
        let r = skyscraper_test(&Arc::new(example2(Q)), Coboundary::D).unwrap();
        assert!(r.holds);
    }

    #[test]
    fn forms_depend_on_the_coboundary() {
        use crate::builders::{exterior_algebra, ncforms_build};
        let d = Arc::new(ncforms_build(&exterior_algebra(Q), 4).unwrap());
        let r = skyscraper_test(&d, Coboundary::D).unwrap();
        assert!(!r.holds && r.consistent);
        let w = r.witness.as_ref().unwrap();
        assert_eq!((w.failing_degree, w.failure), (Some(2), Some(QuotientFailure::Surjectivity)));
        // 1 (x) xy is index 2 of D_1; it equals xi(x (x) y - y (x) x) / 2.
        let mut v = vec![Q.zero(); 12];
        v[2] = Q.one();
        let mut w2 = vec![Q.zero(); 12];
        w2[4] = Q.one().checked_div(&Q.from_i64(2)).unwrap();
        w2[6] = -&w2[4];
        assert_eq!(d.xi().get(1).mul_vec(&w2), v);
        let sub = sub_complex(&d, images_of(&d, &[&d.xi()]).unwrap()).unwrap();
        let coords = sub.spaces[1].coordinates(&v).unwrap();
        let class = r.sub_homology[1].space.class_of(&coords).unwrap();
        assert!(class.iter().any(|c| !c.is_zero()));
        let r = skyscraper_test(&d, Coboundary::Upsilon(&PolySeq::cyclic(Q))).unwrap();
        assert!(r.holds && r.quotient_quasi_iso && r.consistent);
    }
}
