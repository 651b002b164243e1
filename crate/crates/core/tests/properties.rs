mod common;

use std::sync::Arc;

use proptest::prelude::*;

use common::{dense, graded, quotient_homology_dim, Dense};
use mixhom_core::builders::random_mixed;
use mixhom_core::complex::{hat, images_of, quotient_complex, sub_complex};
use mixhom_core::deform::{verify_relazion, DeformedStructure, BREXIT, WATT_FIRST, WATT_SECOND};
use mixhom_core::format::{complex_from_json, complex_to_json};
use mixhom_core::homology::{hat_invariance, total_homology, Grading, TotalComplex};
use mixhom_core::linear::{kernel_basis, rank, rref, Subspace};
use mixhom_core::{Field, Matrix, Poly, PolySeq};

const Q: Field = Field::Rationals;

fn f101() -> Field {
    Field::prime(101).unwrap()
}

fn matrix_strategy(field: Field, max: usize, range: i64) -> impl Strategy<Value = Matrix> {
    (1..=max, 1..=max).prop_flat_map(move |(r, c)| {
        prop::collection::vec(-range..=range, r * c).prop_map(move |xs| {
            Matrix::from_fn(field, r, c, |i, j| field.from_i64(xs[i * c + j]))
        })
    })
}

/// Low-rank matrices exercise the interesting cases of elimination.
fn product_strategy(field: Field) -> impl Strategy<Value = Matrix> {
    (1..=6usize, 0..=3usize, 1..=6usize).prop_flat_map(move |(r, k, c)| {
        (
            prop::collection::vec(-2i64..=2, r * k),
            prop::collection::vec(-2i64..=2, k * c),
        )
            .prop_map(move |(a, b)| {
                let a = Matrix::from_fn(field, r, k, |i, j| field.from_i64(a[i * k + j]));
                let b = Matrix::from_fn(field, k, c, |i, j| field.from_i64(b[i * c + j]));
                &a * &b
            })
    })
}

fn poly_strategy(field: Field) -> impl Strategy<Value = Poly> {
    prop::collection::vec(-4i64..=4, 0..4)
        .prop_map(move |cs| Poly::new(field, cs.into_iter().map(|c| field.from_i64(c)).collect()))
}

fn dims_strategy() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1..=4usize, 2..=5)
}

fn small_seq(field: Field) -> impl Strategy<Value = PolySeq> {
    prop_oneof![
        Just(PolySeq::cyclic(field)),
        Just(PolySeq::one(field)),
        (1i64..=5).prop_map(move |q| PolySeq::geometric(field.from_i64(q))),
        prop::collection::vec(poly_strategy(field), 6)
            .prop_map(move |ps| PolySeq::explicit(field, ps).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_plus_nullity(m in matrix_strategy(f101(), 7, 100)) {
        prop_assert_eq!(rank(&m) + kernel_basis(&m).dim(), m.cols());
        prop_assert!((&m * kernel_basis(&m).basis()).is_zero());
    }

    #[test]
    fn rank_matches_dense_oracle(m in product_strategy(Q)) {
        prop_assert_eq!(rank(&m), dense(&m).rank());
        let (r, pivots) = rref(&m);
        prop_assert_eq!(pivots.len(), rank(&m));
        // Pivot columns of the reduced form are unit vectors.
        for (i, &p) in pivots.iter().enumerate() {
            for k in 0..r.rows() {
                let expected = if k == i { Q.one() } else { Q.zero() };
                prop_assert_eq!(r.get(k, p), &expected);
            }
        }
        // Same row space as the input.
        let stacked = Matrix::vstack(Q, m.cols(), &[&m, &r]);
        prop_assert_eq!(rank(&stacked), rank(&m));
    }

    #[test]
    fn grassmann_identity(a in product_strategy(f101()), b in product_strategy(f101())) {
        prop_assume!(a.rows() == b.rows());
        let u = Subspace::column_space(&a);
        let v = Subspace::column_space(&b);
        let s = u.sum(&v).unwrap();
        let i = u.intersect(&v).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), u.dim() + v.dim());
        prop_assert!(i.is_contained_in(&u) && i.is_contained_in(&v));
        prop_assert!(u.is_contained_in(&s) && v.is_contained_in(&s));
    }

    #[test]
    fn eval_is_multiplicative(
        p in poly_strategy(Q),
        q in poly_strategy(Q),
        m in (1..=4usize).prop_flat_map(|n| prop::collection::vec(-2i64..=2, n * n)
            .prop_map(move |xs| Matrix::from_fn(Q, n, n, |i, j| Q.from_i64(xs[i * n + j])))),
    ) {
        let lhs = p.mul(&q).eval_at(&m).unwrap();
        let rhs = &p.eval_at(&m).unwrap() * &q.eval_at(&m).unwrap();
        prop_assert_eq!(lhs, rhs);
        let sum = p.add(&q).eval_at(&m).unwrap();
        prop_assert_eq!(sum, &p.eval_at(&m).unwrap() + &q.eval_at(&m).unwrap());
    }

    #[test]
    fn constant_term_of_consecutive_products(seq in small_seq(Q), n in 1usize..6) {
        let st = seq.stats(n).unwrap();
        prop_assert_eq!(st.eps, &seq.beta(n as isize - 1).unwrap() * &seq.beta(n as isize).unwrap());
    }

    #[test]
    fn xi_commutes_with_both_maps(dims in dims_strategy(), seed in any::<u64>()) {
        let c = random_mixed(f101(), &dims, seed);
        let xi = c.xi();
        prop_assert_eq!(c.commutation_failures(&xi), (None, None));
        prop_assert_eq!(c.commutation_failures(&xi.complement()), (None, None));
    }

    #[test]
    fn deformation_identities_on_random_complexes(
        dims in dims_strategy(),
        seed in any::<u64>(),
        seq in small_seq(f101()),
    ) {
        let c = Arc::new(random_mixed(f101(), &dims, seed));
        let s = DeformedStructure::new(c, &seq).unwrap();
        let report = verify_relazion(&s).unwrap();
        prop_assert!(report.holds_for(WATT_FIRST));
        prop_assert!(report.holds_for(WATT_SECOND));
        prop_assert!(report.holds_for(BREXIT));
        prop_assert!(report.holds());
    }

    #[test]
    fn sub_and_quotient_dimensions_add_up(dims in dims_strategy(), seed in any::<u64>()) {
        let c = Arc::new(random_mixed(f101(), &dims, seed));
        let xi = c.xi();
        let spaces = images_of(&c, &[&xi]).unwrap();
        let sub = sub_complex(&c, spaces.clone()).unwrap();
        let quo = quotient_complex(&c, spaces).unwrap();
        for (n, &dim) in dims.iter().enumerate() {
            prop_assert_eq!(sub.complex.dims()[n] + quo.complex.dims()[n], dim);
            // Include then project is zero.
            let composite = &quo.projection.map(n as isize) * &sub.inclusion.map(n as isize);
            prop_assert!(composite.is_zero());
        }
    }

    #[test]
    fn total_differential_squares_to_zero_on_the_hat(
        dims in dims_strategy(),
        seed in any::<u64>(),
        parity in any::<bool>(),
    ) {
        let c = Arc::new(random_mixed(f101(), &dims, seed));
        let h = hat(&c).unwrap();
        prop_assert!(h.complex.xi().is_zero());
        let grading = if parity { Grading::Parity } else { Grading::Natural };
        // The constructor rejects a differential that does not square to zero.
        prop_assert!(TotalComplex::new(&h.complex, grading, dims.len() + 2).is_ok());
    }

    #[test]
    fn hat_of_the_hat_changes_nothing(dims in dims_strategy(), seed in any::<u64>()) {
        let c = Arc::new(random_mixed(Q, &dims, seed));
        prop_assert!(hat_invariance(&c, None).unwrap());
    }

    #[test]
    fn mixed_homology_matches_dense_oracle(dims in prop::collection::vec(1..=3usize, 2..=4), seed in any::<u64>()) {
        let c = Arc::new(random_mixed(Q, &dims, seed));
        let g = graded(&c);
        let xi: Vec<Dense> = (0..dims.len()).map(|n| g.anticommutator(n)).collect();
        let h = total_homology(&hat(&c).unwrap().complex, Grading::Natural, None).unwrap();
        for n in 0..=dims.len() + 1 {
            prop_assert_eq!(h.dim(n as isize), quotient_homology_dim(&g, &xi, n as isize), "degree {}", n);
        }
    }

    #[test]
    fn file_format_round_trips(dims in dims_strategy(), seed in any::<u64>(), seq in small_seq(Q)) {
        let c = random_mixed(Q, &dims, seed);
        let text = complex_to_json(&c, Some(&seq));
        let (back, back_seq) = complex_from_json(&text).unwrap();
        prop_assert_eq!(complex_to_json(&back, back_seq.as_ref()), text);
    }

    #[test]
    fn random_complexes_are_reproducible(dims in dims_strategy(), seed in any::<u64>()) {
        let a = complex_to_json(&random_mixed(f101(), &dims, seed), None);
        let b = complex_to_json(&random_mixed(f101(), &dims, seed), None);
        prop_assert_eq!(a, b);
    }
}

#[test]
fn cyclic_polynomials_close_up() {
    // x c_n(x) = 1 - (1 - x)^{n+1}
    let one_minus_x = Poly::from_i64(Q, &[1, -1]);
    for n in 0..12usize {
        let lhs = Poly::x(Q).mul(&PolySeq::cyclic(Q).c(n as isize).unwrap());
        let rhs = Poly::one(Q).sub(&one_minus_x.pow(n as u32 + 1));
        assert_eq!(lhs, rhs, "n = {n}");
    }
}
