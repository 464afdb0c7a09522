use super::*;
use crate::complementarity::is_gca_set_padded;
use crate::ring::test_support::{g, seq};
use crate::ring::GaussInt;
use proptest::prelude::*;

fn shape(dims: &[usize]) -> Shape {
    Shape::new(dims.to_vec()).unwrap()
}

fn found(s: SeedSearch) -> SeedRecord {
    match s {
        SeedSearch::Found { record, .. } => record,
        other => panic!("expected a solution, got {other:?}"),
    }
}

/// Counts complementary sets by enumerating every assignment and asking the oracle.
fn brute_force_count(shapes: &[Shape], alphabet: Alphabet) -> u64 {
    let values = alphabet.search_values();
    let total: usize = shapes.iter().map(Shape::len).sum();
    let mut digits = vec![0usize; total];
    let mut count = 0;
    loop {
        let mut it = digits.iter().map(|&d| values[d]);
        let tensors: Vec<Tensor> = shapes
            .iter()
            .map(|s| Tensor::new(s.clone(), it.by_ref().take(s.len()).collect()).unwrap())
            .collect();
        if is_gca_set_padded(&tensors).unwrap().is_complementary {
            count += 1;
        }
        let mut k = 0;
        loop {
            if k == total {
                return count;
            }
            digits[k] += 1;
            if digits[k] < values.len() {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}

#[test]
fn binary_length_10_pair_is_found() {
    let r = found(search_golay_pair(Alphabet::Binary, &shape(&[10]), 1_000_000).unwrap());
    assert!(is_gca_set(r.tensors()).unwrap().is_complementary);
    assert_eq!(r.key().to_string(), "golay-pair/binary/10");
}

#[test]
fn quaternary_length_3_pair_is_found() {
    let r = found(search_golay_pair(Alphabet::Quaternary, &shape(&[3]), 1_000).unwrap());
    let verdict = is_gca_set(r.tensors()).unwrap();
    assert!(verdict.is_complementary);
    assert_eq!(verdict.total_weight, 6);
}

#[test]
fn binary_2x5_pair_does_not_exist() {
    let out = search_golay_pair(Alphabet::Binary, &shape(&[2, 5]), 1 << 20).unwrap();
    assert!(matches!(out, SeedSearch::Exhausted { .. }), "{out:?}");
}

#[test]
fn quaternary_non_golay_lengths_are_refuted() {
    for n in [7, 9] {
        let out = search_golay_pair(Alphabet::Quaternary, &shape(&[n]), 10_000_000).unwrap();
        assert!(matches!(out, SeedSearch::Exhausted { .. }), "length {n}: {out:?}");
    }
}

#[test]
fn base_sequences_m1_match_the_known_quad() {
    let r = found(search_base_sequences(1, 100).unwrap());
    let expected = vec![seq(&[(1, 0), (1, 0)]), seq(&[(1, 0), (-1, 0)]), seq(&[(1, 0)]), seq(&[(1, 0)])];
    assert_eq!(r.tensors(), &expected[..]);
    assert_eq!(is_gca_set_padded(r.tensors()).unwrap().total_weight, 6);
}

#[test]
fn base_sequences_up_to_8_are_found() {
    for m in 1..=8 {
        let r = found(search_base_sequences(m, 10_000_000).unwrap());
        assert_eq!(r.key(), SeedKey::base_sequences(m));
    }
}

#[test]
fn tiny_budget_is_exceeded() {
    let out = search_base_sequences(6, 10).unwrap();
    assert_eq!(out, SeedSearch::BudgetExceeded { nodes: 10 });
}

#[test]
fn search_is_deterministic() {
    let a = search_golay_pair(Alphabet::Quaternary, &shape(&[5]), 1_000_000).unwrap();
    let b = search_golay_pair(Alphabet::Quaternary, &shape(&[5]), 1_000_000).unwrap();
    assert_eq!(a, b);
}

#[test]
fn record_rejects_non_complementary_pair() {
    let a = seq(&[(1, 0), (1, 0)]);
    let err = SeedRecord::new(SeedKind::GolayPair, Alphabet::Binary, vec![a.clone(), a], "test").unwrap_err();
    assert!(matches!(err, Error::VerificationFailed(_)));
}

#[test]
fn record_rejects_alphabet_lie() {
    let a = seq(&[(1, 0), (0, 1)]);
    let b = seq(&[(1, 0), (0, -1)]);
    let err = SeedRecord::new(SeedKind::GolayPair, Alphabet::Binary, vec![a, b], "test").unwrap_err();
    assert!(matches!(err, Error::AlphabetViolation { .. }));
}

#[test]
fn seed_keys_round_trip() {
    for text in ["golay-pair/binary/10", "golay-pair/quaternary/3x1", "base-sequences/binary/23"] {
        assert_eq!(text.parse::<SeedKey>().unwrap().to_string(), text);
    }
    assert!("golay-pair/binary".parse::<SeedKey>().is_err());
    assert!("base-sequences/binary/x".parse::<SeedKey>().is_err());
}

#[test]
fn empty_file_gives_empty_registry() {
    let (reg, report) = SeedRegistry::from_json("  \n").unwrap();
    assert!(reg.is_empty());
    assert_eq!(report, LoadReport::default());
}

#[test]
fn corrupted_record_is_isolated() {
    let good = found(search_golay_pair(Alphabet::Binary, &shape(&[2]), 100).unwrap());
    let mut bad = good.to_doc();
    bad.tensors[1].entries[0] = g(-1, 0);
    bad.tensors[1].entries[1] = g(-1, 0);
    let text = serde_json::to_string(&vec![bad, good.to_doc()]).unwrap();
    let (reg, report) = SeedRegistry::from_json(&text).unwrap();
    assert_eq!(report.loaded, 1);
    assert_eq!(report.rejected.len(), 1);
    assert_eq!(report.rejected[0].index, 0);
    assert_eq!(reg.get_golay_pair(Alphabet::Binary, 2).unwrap(), good);
}

#[test]
fn lookups_fall_back_sensibly() {
    let reg = SeedRegistry::empty();
    assert_eq!(reg.get_golay_pair(Alphabet::Quaternary, 1).unwrap().tensors()[0], seq(&[(1, 0)]));
    assert!(matches!(reg.get_golay_pair(Alphabet::Binary, 3), Err(Error::NotFound(_))));
    assert!(matches!(reg.get_base_sequences(39), Err(Error::NotFound(_))));

    let mut reg = SeedRegistry::empty();
    reg.insert(found(search_golay_pair(Alphabet::Binary, &shape(&[10]), 1_000_000).unwrap()));
    // A binary pair also serves quaternary requests.
    assert_eq!(reg.get_golay_pair(Alphabet::Quaternary, 10).unwrap().alphabet(), Alphabet::Binary);
}

#[test]
fn bundled_registry_holds_the_basic_seeds() {
    let reg = SeedRegistry::bundled();
    for n in [2, 10, 26] {
        assert_eq!(reg.get_golay_pair(Alphabet::Binary, n).unwrap().alphabet(), Alphabet::Binary);
    }
    for n in [3, 5, 11, 13] {
        reg.get_golay_pair(Alphabet::Quaternary, n).unwrap();
    }
    for m in 1..=8 {
        reg.get_base_sequences(m).unwrap();
    }
    assert!(matches!(reg.get_golay_pair(Alphabet::Binary, 3), Err(Error::NotFound(_))));
}

#[test]
fn bundled_table_round_trips() {
    let reg = SeedRegistry::bundled();
    let (again, report) = SeedRegistry::from_json(&reg.to_json()).unwrap();
    assert!(report.rejected.is_empty());
    assert_eq!(again.to_json(), reg.to_json());
}

fn check_orbit_count(shapes: Vec<Shape>, alphabet: Alphabet) {
    let problem = SearchProblem {
        shapes: shapes.clone(),
        alphabet,
        normalize: true,
    };
    let (normalized, _) = search::count_solutions(&problem);
    let (raw, _) = search::count_solutions(&SearchProblem {
        normalize: false,
        ..problem.clone()
    });
    let brute = brute_force_count(&shapes, alphabet);
    assert_eq!(raw, brute, "{shapes:?} {alphabet}");
    assert_eq!(normalized * problem.orbit_size(), brute, "{shapes:?} {alphabet}");
}

#[test]
fn normalization_loses_nothing_for_base_sequences() {
    for m in 1..=3 {
        let long = shape(&[m + 1]);
        let short = shape(&[m]);
        check_orbit_count(vec![long.clone(), long, short.clone(), short], Alphabet::Binary);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn normalization_loses_nothing_for_pairs(
        dims in prop_oneof![
            (1usize..=8).prop_map(|n| vec![n]),
            (1usize..=2, 1usize..=4).prop_map(|(a, b)| vec![a, b]),
        ],
        quaternary in any::<bool>(),
    ) {
        let alphabet = if quaternary { Alphabet::Quaternary } else { Alphabet::Binary };
        let s = shape(&dims);
        // Keep the brute force at most 4^8 assignments.
        prop_assume!(!quaternary || s.len() <= 4);
        check_orbit_count(vec![s.clone(), s], alphabet);
    }
}

#[test]
fn unit_entries_only() {
    let r = found(search_golay_pair(Alphabet::Quaternary, &shape(&[5]), 1_000_000).unwrap());
    assert!(r.tensors().iter().all(|t| t.entries().iter().all(|e| GaussInt::UNITS.contains(e))));
}
