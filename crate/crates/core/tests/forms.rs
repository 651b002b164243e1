use std::sync::Arc;

use mixhom_core::builders::{
    big_xi_by_formula, exterior_algebra, exterior_sign_flip, forms_dim, ncforms_build,
    upsilon_by_formula,
};
use mixhom_core::deform::DeformedStructure;
use mixhom_core::{Field, PolySeq};

const Q: Field = Field::Rationals;

#[test]
fn deformed_operators_follow_the_cyclic_operator() {
    for sigma in [None, Some(exterior_sign_flip(Q))] {
        let twisted = sigma.is_some();
        let alg = exterior_algebra(Q).with_sigma(sigma).unwrap();
        let top = 4;
        let d = Arc::new(ncforms_build(&alg, top).unwrap());
        let s = DeformedStructure::new(d, &PolySeq::cyclic(Q)).unwrap();
        for n in 0..top {
            assert_eq!(s.upsilon[n], upsilon_by_formula(&alg, n), "twisted {twisted}, degree {n}");
            assert_eq!(*s.big_xi.get(n), big_xi_by_formula(&alg, n), "twisted {twisted}, degree {n}");
            assert_eq!(s.big_xi.get(n).is_zero(), !twisted, "degree {n}");
        }
    }
}

#[test]
fn dimensions_grow_geometrically() {
    let alg = exterior_algebra(Q);
    let d = ncforms_build(&alg, 5).unwrap();
    for n in 0..=5 {
        assert_eq!(d.dims()[n], 4 * 3usize.pow(n as u32));
        assert_eq!(forms_dim(&alg, n), d.dims()[n]);
    }
}
