mod support;

use std::collections::BTreeMap;

use hkit_core::arrangement::{build_discriminant, MultiplicityMode, WallKind};
use hkit_core::characterization::{classify_case, reconstruct_b, round_trip, CaseTag, DivisorData, REJECTION_REASON};
use hkit_core::{Error, IntMatrix, LatticeVector};
use proptest::prelude::*;

/// Up to five pairwise non-parallel primitive normals with multiplicities.
fn divisor() -> impl Strategy<Value = (usize, Vec<(Vec<i64>, u32)>)> {
    (1usize..=3).prop_flat_map(|n| {
        let walls = prop::collection::btree_map(
            prop::collection::vec(-3i64..=3, n)
                .prop_filter("primitive", |v| support::is_primitive(v))
                .prop_map(|v| support::canonical(&v)),
            1u32..=4,
            1..=5,
        );
        (Just(n), walls.prop_map(|m| m.into_iter().collect()))
    })
}

fn to_divisor(n: usize, walls: &[(Vec<i64>, u32)]) -> DivisorData {
    DivisorData::new(n, walls.iter().map(|(v, m)| (LatticeVector::from_i64(v), *m)).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reconstruction_reproduces_the_divisor((n, walls) in divisor()) {
        let d = to_divisor(n, &walls);
        let b = reconstruct_b(&d);
        prop_assert_eq!(b.rows(), d.total_multiplicity());
        let arr = build_discriminant(&b, MultiplicityMode::GroupParallel).unwrap();
        prop_assert!(arr.same_divisor(&d.to_arrangement()));
        let expected: BTreeMap<Vec<i64>, u32> = walls.iter().cloned().collect();
        prop_assert_eq!(support::probe_discriminant(&support::from_matrix(&b), n), expected);
    }

    #[test]
    fn round_trip_agrees_with_classification((n, walls) in divisor()) {
        let d = to_divisor(n, &walls);
        let b = support::from_matrix(&reconstruct_b(&d));
        match round_trip(&d) {
            Ok(report) => {
                prop_assert!(report.equal);
                prop_assert!(support::is_saturated(&b, n));
                prop_assert_eq!(report.b_unimodular.unimodular, support::is_unimodular(&b, n));
                prop_assert_eq!(report.leaves.is_some(), report.b_unimodular.unimodular);
                prop_assert_eq!(report.warnings.is_empty(), report.b_unimodular.unimodular);
            }
            Err(Error::CaseRejected(reason)) => {
                prop_assert_eq!(reason, REJECTION_REASON);
                prop_assert!(support::rank(&b) < n);
            }
            Err(Error::TorsionCokernel { .. }) => prop_assert!(!support::is_saturated(&b, n) && support::rank(&b) == n),
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn trichotomy_is_sound(b in (1usize..=3).prop_flat_map(|n| prop::collection::vec(
        prop::collection::vec(-2i64..=2, n).prop_filter("primitive", |v| support::is_primitive(v)), 1..=5))) {
        let n = b[0].len();
        let case = classify_case(&support::to_matrix(&b, n));
        let rank = support::rank(&b);
        match case {
            Ok(CaseTag::Rejected(_)) => prop_assert!(rank < n),
            Ok(CaseTag::SmoothAffineSpace) => prop_assert!(b.len() == n && support::det(&b).abs() == 1),
            Ok(CaseTag::Hypertoric) => prop_assert!(b.len() > n && support::is_saturated(&b, n)),
            Err(Error::TorsionCokernel { .. }) => prop_assert!(rank == n && !support::is_saturated(&b, n)),
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn coordinate_changes_commute(((n, walls), u) in divisor().prop_flat_map(|(n, walls)| (
        Just((n, walls)),
        prop::collection::vec(prop::collection::vec(-2i64..=2, n), n).prop_filter("det ±1", |u| support::det(u).abs() == 1),
    ))) {
        let d = to_divisor(n, &walls);
        let u = support::to_matrix(&u, n);
        let t = d.transformed(&u).unwrap();
        let bu = reconstruct_b(&d).mul(&u).unwrap();
        prop_assert!(build_discriminant(&bu, MultiplicityMode::GroupParallel).unwrap().same_divisor(&t.to_arrangement()));
    }
}

#[test]
fn worked_examples() {
    let d = to_divisor(1, &[(vec![1], 2)]);
    assert_eq!(reconstruct_b(&d), IntMatrix::from_i64(&[&[1], &[1]]));
    let r = round_trip(&d).unwrap();
    assert!(r.equal);
    assert_eq!(r.case, CaseTag::Hypertoric);

    let d = to_divisor(2, &[(vec![1, 0], 1), (vec![0, 1], 1)]);
    assert_eq!(round_trip(&d).unwrap().case, CaseTag::SmoothAffineSpace);

    let d = to_divisor(2, &[(vec![1, 0], 2), (vec![0, 1], 1), (vec![1, 1], 1)]);
    assert_eq!(reconstruct_b(&d), IntMatrix::from_i64(&[&[1, 0], &[1, 0], &[0, 1], &[1, 1]]));
    assert!(round_trip(&d).unwrap().equal);
    let kinds: Vec<WallKind> = d.to_arrangement().components().iter().map(|c| c.kind).collect();
    assert_eq!(kinds, [WallKind::FirstKind, WallKind::Unknown, WallKind::Unknown]);
}

#[test]
fn divisors_from_arrangements() {
    let arr = build_discriminant(&IntMatrix::from_i64(&[&[1, 1], &[-1, -1], &[0, 1]]), MultiplicityMode::GroupParallel)
        .unwrap();
    let d = DivisorData::from_arrangement(&arr).unwrap();
    assert_eq!(d.total_multiplicity(), 3);
    assert_eq!(d.canonical_multiset()[1], (LatticeVector::from_i64(&[1, 1]), 2));
}
