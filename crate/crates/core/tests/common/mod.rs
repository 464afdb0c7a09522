//! Ring identities over Gaussian-integer tensors, shared by the property
//! suite and the acceptance run. Product is convolution, `*` is the
//! involution (reverse and conjugate).
#![allow(dead_code)]

use gca_core::{GaussInt, Shape, Tensor};
use rand::Rng;

pub fn mul(a: &Tensor, b: &Tensor) -> Tensor {
    a.convolve(b).expect("operands share a rank")
}

pub fn star(a: &Tensor) -> Tensor {
    a.involute()
}

pub fn norm(a: &Tensor) -> Tensor {
    mul(a, &star(a))
}

pub fn sum(terms: &[Tensor]) -> Tensor {
    let (first, rest) = terms.split_first().expect("at least one term");
    rest.iter().fold(first.clone(), |acc, t| acc.add(t).expect("terms share a shape"))
}

pub fn neg(a: &Tensor) -> Tensor {
    a.negate()
}

/// `e = ac + bd`, `f = b*c − a*d`.
pub fn two_square(a: &Tensor, b: &Tensor, c: &Tensor, d: &Tensor) -> bool {
    let e = sum(&[mul(a, c), mul(b, d)]);
    let f = sum(&[mul(&star(b), c), neg(&mul(&star(a), d))]);
    let lhs = sum(&[norm(&e), norm(&f)]);
    let rhs = mul(&sum(&[norm(a), norm(b)]), &sum(&[norm(c), norm(d)]));
    lhs == rhs
}

/// The four-square form used for quads.
pub fn four_square(x: &[Tensor; 8]) -> bool {
    let [a, b, c, d, e, f, g, h] = x;
    let p = sum(&[mul(a, &star(f)), neg(&mul(&star(b), e)), mul(c, g), mul(d, h)]);
    let q = sum(&[mul(&star(a), e), mul(b, &star(f)), neg(&mul(c, &star(h))), mul(d, &star(g))]);
    let r = sum(&[mul(&star(c), e), neg(&mul(d, f)), mul(a, &star(h)), mul(b, g)]);
    let s = sum(&[neg(&mul(c, f)), neg(&mul(&star(d), e)), mul(a, &star(g)), neg(&mul(b, h))]);
    let lhs = sum(&[norm(&p), norm(&q), norm(&r), norm(&s)]);
    let rhs = mul(&sum(&[norm(a), norm(b), norm(c), norm(d)]), &sum(&[norm(e), norm(f), norm(g), norm(h)]));
    lhs == rhs
}

/// `c_ij = a_i b_j`.
pub fn cross_product(a: &[Tensor], b: &[Tensor]) -> bool {
    let cs: Vec<Tensor> = a.iter().flat_map(|ai| b.iter().map(move |bj| norm(&mul(ai, bj)))).collect();
    let lhs = sum(&cs);
    let na: Vec<Tensor> = a.iter().map(norm).collect();
    let nb: Vec<Tensor> = b.iter().map(norm).collect();
    lhs == mul(&sum(&na), &sum(&nb))
}

/// Pairs up consecutive members: `c_ij = a_{2i−1}b_{2j−1} + a_{2i}b_{2j}`,
/// `d_ij = a_{2i−1}b_{2j}* − a_{2i}b_{2j−1}*`.
pub fn paired_cross_product(a: &[Tensor], b: &[Tensor]) -> bool {
    assert!(a.len() % 2 == 0 && b.len() % 2 == 0);
    let mut terms = vec![];
    for ai in a.chunks(2) {
        for bj in b.chunks(2) {
            let c = sum(&[mul(&ai[0], &bj[0]), mul(&ai[1], &bj[1])]);
            let d = sum(&[mul(&ai[0], &star(&bj[1])), neg(&mul(&ai[1], &star(&bj[0])))]);
            terms.push(norm(&c));
            terms.push(norm(&d));
        }
    }
    let na: Vec<Tensor> = a.iter().map(norm).collect();
    let nb: Vec<Tensor> = b.iter().map(norm).collect();
    sum(&terms) == mul(&sum(&na), &sum(&nb))
}

/// Rank 1..=3, each extent 1..=4.
pub fn random_shape(rng: &mut impl Rng) -> Shape {
    let rank = rng.gen_range(1..=3);
    Shape::new((0..rank).map(|_| rng.gen_range(1..=4)).collect::<Vec<_>>()).unwrap()
}

/// Entries with real and imaginary parts in -2..=2.
pub fn random_tensor(rng: &mut impl Rng, shape: &Shape) -> Tensor {
    let entries = (0..shape.len())
        .map(|_| GaussInt::new(rng.gen_range(-2..=2), rng.gen_range(-2..=2)))
        .collect();
    Tensor::new(shape.clone(), entries).unwrap()
}

pub fn random_tensors(rng: &mut impl Rng, shape: &Shape, n: usize) -> Vec<Tensor> {
    (0..n).map(|_| random_tensor(rng, shape)).collect()
}
