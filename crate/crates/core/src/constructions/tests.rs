use super::*;
use crate::complementarity::binary_pair_symmetry;
use crate::ring::test_support::seq;
use crate::seeds::SeedRegistry;

fn ints(v: &[i64]) -> Tensor {
    Tensor::from_ints(v)
}

fn pair(a: Tensor, b: Tensor) -> GcaSet {
    GcaSet::new(vec![a, b], "test").unwrap()
}

fn trivial() -> GcaSet {
    pair(ints(&[1]), ints(&[1]))
}

fn len2() -> GcaSet {
    pair(ints(&[1, 1]), ints(&[1, -1]))
}

fn bundled(alphabet: Alphabet, n: usize) -> GcaSet {
    let rec = SeedRegistry::bundled().get_golay_pair(alphabet, n).unwrap();
    GcaSet::new(rec.tensors().to_vec(), "seed").unwrap()
}

fn oriented(set: &GcaSet, dim: usize) -> GcaSet {
    orient_set(set, 2, dim).unwrap()
}

fn quat3() -> GcaSet {
    // {[1,1,−1],[1,i,1]}
    pair(seq(&[(1, 0), (1, 0), (-1, 0)]), seq(&[(1, 0), (0, 1), (1, 0)]))
}

fn bs21() -> Vec<Tensor> {
    vec![ints(&[1, 1]), ints(&[1, -1]), ints(&[1]), ints(&[1])]
}

#[test]
fn verifying_constructor_rejects_non_complementary() {
    let err = GcaSet::new(vec![ints(&[1, 1]), ints(&[1, 1])], "x").unwrap_err();
    assert!(matches!(err, Error::VerificationFailed(_)));
}

#[test]
fn binary_recursion_on_trivial_seeds() {
    let out = binary_turyn_pair(&trivial(), &trivial()).unwrap();
    assert_eq!(out.shape().dims(), &[1]);
    assert_eq!(out.alphabet(), Alphabet::Binary);
}

#[test]
fn binary_recursion_sizes() {
    let four = binary_turyn_pair(&len2(), &len2()).unwrap();
    assert_eq!(four.shape().dims(), &[4]);
    let twenty = binary_turyn_pair(&len2(), &bundled(Alphabet::Binary, 10)).unwrap();
    assert_eq!(twenty.shape().dims(), &[20]);
    assert_eq!(twenty.alphabet(), Alphabet::Binary);
    let (a, b) = (&twenty.arrays()[0], &twenty.arrays()[1]);
    assert!(binary_pair_symmetry(a, b).unwrap());
}

#[test]
fn binary_recursion_requires_binary_inputs() {
    assert_eq!(binary_turyn_pair(&quat3(), &len2()).unwrap_err(), Error::NotBinary);
}

#[test]
fn rank1_sizes() {
    assert_eq!(rank1_pair(&trivial(), &trivial()).unwrap().shape().dims(), &[2, 1]);
    let q = rank1_pair(&quat3(), &quat3()).unwrap();
    assert_eq!(q.shape().dims(), &[6, 3]);
    assert_eq!(q.alphabet(), Alphabet::Quaternary);
    assert_eq!(rank1_pair(&len2(), &quat3()).unwrap().shape().dims(), &[4, 3]);
}

#[test]
fn concat_pair_sizes() {
    let q31 = oriented(&quat3(), 0);
    let t = oriented(&trivial(), 0);
    let q32 = concat_pair(&q31, &t, 1).unwrap();
    assert_eq!(q32.shape().dims(), &[3, 2]);
    assert_eq!(q32.alphabet(), Alphabet::Quaternary);
    let q98 = concat_pair(&q32, &q32, 1).unwrap();
    assert_eq!(q98.shape().dims(), &[9, 8]);
    let two = concat_pair(&trivial(), &trivial(), 0).unwrap();
    assert_eq!(two.arrays(), &[ints(&[1, 1]), ints(&[1, -1])]);
}

#[test]
fn mask_of_length_two_pair() {
    let m = disjoint_mask_pair(&len2()).unwrap();
    assert_eq!(m.arrays(), &[ints(&[0, 0]), ints(&[1, 0])]);
    assert_eq!(m.total_weight(), 1);
}

#[test]
fn mask_of_length_ten_pair() {
    let m = disjoint_mask_pair(&bundled(Alphabet::Binary, 10)).unwrap();
    assert_eq!(m.total_weight(), 5);
}

#[test]
fn mask_requires_nontrivial_pair() {
    assert_eq!(disjoint_mask_pair(&trivial()).unwrap_err(), Error::Trivial);
}

#[test]
fn glue_makes_9x10() {
    let binder = oriented(&bundled(Alphabet::Binary, 10), 1);
    let q = oriented(&quat3(), 0);
    let out = glue_pair(&binder, &q, &q).unwrap();
    assert_eq!(out.shape().dims(), &[9, 10]);
    assert!(out.is_polyphase());
    assert_eq!(out.total_weight(), 180);
}

#[test]
fn glue_with_length_two_binder_matches_concat() {
    let binder = oriented(&len2(), 1);
    let q = oriented(&quat3(), 0);
    let glued = glue_pair(&binder, &q, &q).unwrap();
    let joined = concat_pair(&q, &q, 1).unwrap();
    assert_eq!(glued.shape(), joined.shape());
    assert_eq!(glued.total_weight(), joined.total_weight());
    assert_eq!(glue_pair(&len2(), &trivial(), &trivial()).unwrap().shape().dims(), &[2]);
}

#[test]
fn cross_set_sizes() {
    let q = cross_set(&oriented(&quat3(), 0), &oriented(&quat3(), 1)).unwrap();
    assert_eq!(q.shape().dims(), &[3, 3]);
    assert_eq!(q.len(), 4);
    let one = GcaSet::new(vec![ints(&[1])], "unit").unwrap();
    let same = cross_set(&one, &quat3()).unwrap();
    assert_eq!(same.arrays(), quat3().arrays());
}

#[test]
fn interleave_base_sequences() {
    let q = interleave_quad(&bs21(), 0).unwrap();
    assert_eq!(
        q.arrays(),
        &[ints(&[1, 0, 1]), ints(&[0, 1, 0]), ints(&[1, 0, -1]), ints(&[0, 1, 0])]
    );
    assert_eq!(q.total_weight(), 6);
    let bad = vec![ints(&[1, 1, 1]), ints(&[1, 1, -1]), ints(&[1]), ints(&[1])];
    assert!(matches!(interleave_quad(&bad, 0), Err(Error::ShapeMismatch { .. }) | Err(Error::NotComplementary)));
}

#[test]
fn interleave_rejects_extent_gap_of_two() {
    // Complementary after padding, yet the extents differ by two.
    let quad = vec![ints(&[1, 1, 1]), ints(&[1, 1, 1]), ints(&[1]), ints(&[1])];
    assert!(interleave_quad(&quad, 0).is_err());
}

#[test]
fn concat_zero_on_trivial_pairs() {
    let q = concat_zero_quad(&trivial(), &trivial(), 0).unwrap();
    assert_eq!(
        q.arrays(),
        &[ints(&[1, 0, 0, 1]), ints(&[0, 1, 1, 0]), ints(&[1, 0, 0, -1]), ints(&[0, 1, -1, 0])]
    );
    assert_eq!(q.total_weight(), 8);
}

#[test]
fn lagrange_from_two_base_sequence_quads() {
    let rows: Vec<Tensor> = bs21().iter().map(|t| t.orient(2, 0).unwrap()).collect();
    let cols: Vec<Tensor> = bs21().iter().map(|t| t.orient(2, 1).unwrap()).collect();
    let out = lagrange_quad(&interleave_quad(&rows, 0).unwrap(), &interleave_quad(&cols, 1).unwrap()).unwrap();
    assert_eq!(out.shape().dims(), &[3, 3]);
    assert_eq!(out.alphabet(), Alphabet::Binary);
    assert_eq!(out.total_weight(), 36);
}

#[test]
fn lagrange_mixing_both_deficient_builders() {
    let a = interleave_quad(&bs21(), 0).unwrap();
    let b = concat_zero_quad(&len2(), &trivial(), 0).unwrap();
    let out = lagrange_quad(&a, &b).unwrap();
    assert_eq!(out.shape().dims(), &[18]);
    assert!(out.is_polyphase());
}

#[test]
fn lagrange_rejects_unstructured_quads() {
    let q = cross_set(&len2(), &len2()).unwrap();
    assert!(matches!(lagrange_quad(&q, &q), Err(Error::StructureFailed(_))));
}

#[test]
fn halving_a_pair() {
    let ij = disjoint_from_pair(&len2()).unwrap();
    assert_eq!(ij.arrays(), &[ints(&[1, 0]), ints(&[0, 1])]);
    assert_eq!(disjoint_from_pair(&bundled(Alphabet::Binary, 10)).unwrap().total_weight(), 10);
    assert!(matches!(disjoint_from_pair(&quat3()), Err(Error::InexactDivision { .. })));
}

#[test]
fn expand_doubles_and_scales() {
    let q = concat_zero_quad(&trivial(), &trivial(), 0).unwrap();
    let q = lagrange_quad(&interleave_quad(&bs21(), 0).unwrap(), &q).unwrap();
    let out = expand_quad(&q, &disjoint_from_pair(&len2()).unwrap()).unwrap();
    assert_eq!(out.shape().dims(), &[24]);

    let rows: Vec<Tensor> = bs21().iter().map(|t| t.orient(2, 0).unwrap()).collect();
    let cols: Vec<Tensor> = bs21().iter().map(|t| t.orient(2, 1).unwrap()).collect();
    let q33 = lagrange_quad(&interleave_quad(&rows, 0).unwrap(), &interleave_quad(&cols, 1).unwrap()).unwrap();
    let p22 = binary_turyn_pair(&oriented(&len2(), 0), &oriented(&len2(), 1)).unwrap();
    assert_eq!(p22.shape().dims(), &[2, 2]);
    let out = expand_quad(&q33, &disjoint_from_pair(&p22).unwrap()).unwrap();
    assert_eq!(out.shape().dims(), &[6, 6]);
    assert_eq!(out.alphabet(), Alphabet::Binary);
}

#[test]
fn expand_requires_disjoint_pair() {
    let q = cross_set(&len2(), &len2()).unwrap();
    assert_eq!(expand_quad(&q, &len2()).unwrap_err(), Error::NotDisjoint);
}

#[test]
fn compromise_sizes() {
    let out = compromise_quad(&trivial(), &trivial(), 0, &trivial()).unwrap();
    assert_eq!(out.shape().dims(), &[2]);
    let out = compromise_quad(
        &oriented(&quat3(), 1),
        &oriented(&bundled(Alphabet::Quaternary, 5), 1),
        1,
        &oriented(&len2(), 0),
    )
    .unwrap();
    assert_eq!(out.shape().dims(), &[2, 8]);
    assert!(out.is_polyphase());
}

#[test]
fn reshape_keeps_complementarity() {
    let q = rank1_pair(&quat3(), &len2()).unwrap();
    let r = reshape_set(&q).unwrap();
    assert_eq!(r.shape().dims(), &[12]);
}

#[test]
fn set_documents_round_trip() {
    let q = interleave_quad(&bs21(), 0).unwrap();
    let doc = q.to_doc();
    let text = doc.to_json();
    let back = GcaSet::from_doc(&SetDoc::parse(&text).unwrap()).unwrap();
    assert_eq!(back, q);
    assert_eq!(back.to_doc().to_json(), text);
}

#[test]
fn forged_structure_is_rejected() {
    let mut doc = len2().to_doc();
    doc.structure.disjoint.push([0, 1]);
    assert!(matches!(GcaSet::from_doc(&doc), Err(Error::StructureFailed(_))));
}

#[test]
fn unit_quad_is_a_lagrange_identity() {
    let u = unit_quad(1).unwrap();
    assert_eq!(u.total_weight(), 2);
    let q = interleave_quad(&bs21(), 0).unwrap();
    let out = lagrange_quad(&u, &q).unwrap();
    assert_eq!(out.shape().dims(), &[3]);
    assert!(out.is_polyphase());
}

#[test]
fn zero_concatenation_accepts_a_whole_quad() {
    let quad = compromise_quad(&trivial(), &trivial(), 0, &trivial()).unwrap();
    let out = concat_zero_from_quad(&quad, 0).unwrap();
    assert_eq!(out.shape().dims(), &[8]);
    assert_eq!(out.total_weight(), 2 * quad.total_weight());
    assert!(concat_zero_from_quad(&len2(), 0).is_err());
}

#[test]
fn base_sequences_from_a_golay_pair() {
    let base = base_sequences_from_pair(&bundled(Alphabet::Binary, 10)).unwrap();
    assert_eq!(base[0].dims(), &[11]);
    assert_eq!(base[2].dims(), &[10]);
    let q = interleave_quad(&base, 0).unwrap();
    assert_eq!(q.shape().dims(), &[21]);
    let base = base_sequences_from_pair(&quat3()).unwrap();
    assert_eq!(interleave_quad(&base, 0).unwrap().shape().dims(), &[7]);
}
