mod common;

use common::*;
use gca_core::{GaussInt, Shape, Tensor};
use proptest::prelude::*;

fn tuple(n: usize) -> impl Strategy<Value = Vec<Tensor>> {
    proptest::collection::vec(1usize..=4, 1..=3).prop_flat_map(move |dims| {
        let len: usize = dims.iter().product();
        let entry = (-2i64..=2, -2i64..=2).prop_map(|(re, im)| GaussInt::new(re, im));
        proptest::collection::vec(proptest::collection::vec(entry, len), n).prop_map(move |all| {
            let shape = Shape::new(dims.clone()).unwrap();
            all.into_iter().map(|e| Tensor::new(shape.clone(), e).unwrap()).collect()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn two_square_identity(t in tuple(4)) {
        prop_assert!(two_square(&t[0], &t[1], &t[2], &t[3]));
    }

    #[test]
    fn four_square_identity(t in tuple(8)) {
        let arr: [Tensor; 8] = t.try_into().unwrap();
        prop_assert!(four_square(&arr));
    }

    #[test]
    fn cross_product_identity(t in tuple(6), m in 1usize..=3, n in 1usize..=3) {
        prop_assert!(cross_product(&t[..m], &t[3..3 + n]));
    }

    #[test]
    fn paired_cross_product_identity(t in tuple(8), m in 1usize..=2, n in 1usize..=2) {
        prop_assert!(paired_cross_product(&t[..2 * m], &t[4..4 + 2 * n]));
    }
}

#[test]
fn a_wrong_sign_breaks_the_two_square_identity() {
    // The check is not vacuous: flipping the sign inside f fails it.
    let a = Tensor::from_ints(&[1, 2]);
    let b = Tensor::from_ints(&[0, 1]);
    let c = Tensor::from_ints(&[2, -1]);
    let d = Tensor::from_ints(&[1, 1]);
    let e = sum(&[mul(&a, &c), mul(&b, &d)]);
    let f = sum(&[mul(&star(&b), &c), mul(&star(&a), &d)]);
    let rhs = mul(&sum(&[norm(&a), norm(&b)]), &sum(&[norm(&c), norm(&d)]));
    assert_ne!(sum(&[norm(&e), norm(&f)]), rhs);
    assert!(two_square(&a, &b, &c, &d));
}
