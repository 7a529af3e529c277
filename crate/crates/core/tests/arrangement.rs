mod support;

use std::collections::BTreeMap;

use hkit_core::arrangement::{
    build_discriminant, build_family_slice, check_simplicity, f_locus, generic_point, generic_point_on, sign_vector,
    stabilizer_rank, ArrangementSpec, Component, Hyperplane, MultiplicityMode,
};
use hkit_core::{Error, Int, IntMatrix, LatticeVector, Rat};
use num_traits::Zero;
use proptest::prelude::*;
use support::Mat;

fn discriminant(b: &[Vec<i64>], n: usize) -> ArrangementSpec {
    build_discriminant(&support::to_matrix(b, n), MultiplicityMode::GroupParallel).unwrap()
}

fn as_map(arr: &ArrangementSpec) -> BTreeMap<Vec<i64>, u32> {
    arr.canonical_multiset()
        .into_iter()
        .map(|(v, offset, m)| {
            assert!(offset.is_zero());
            (v.coords().iter().map(|x| i64::try_from(x).unwrap()).collect(), m)
        })
        .collect()
}

fn primitive_rows(max_n: usize, max_rows: usize) -> impl Strategy<Value = (usize, Mat)> {
    (1..=max_n)
        .prop_flat_map(move |n| (Just(n), 1..=max_rows))
        .prop_flat_map(|(n, rows)| (Just(n), prop::collection::vec(prop::collection::vec(-3i64..=3, n), rows)))
        .prop_filter("primitive rows", |(_, b)| b.iter().all(|r| support::is_primitive(r)))
}

fn gl_matrix(n: usize) -> impl Strategy<Value = Mat> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, n), n).prop_filter("det ±1", |u| support::det(u).abs() == 1)
}

#[test]
fn planar_corpus_matches_probing() {
    for n in 1..=2 {
        for b in support::row_multisets(n, 2, 6) {
            assert_eq!(as_map(&discriminant(&b, n)), support::probe_discriminant(&b, n), "{b:?}");
        }
    }
}

#[test]
fn corpus_is_deduplicated() {
    // eight canonical primitive directions in [−2,2]², three orbits under the
    // signed permutations: axes, diagonals and (1,±2)/(2,±1)
    assert_eq!(support::canonical_vectors(2, 2).len(), 8);
    assert_eq!(support::row_multisets(2, 2, 1).len(), 3);
    let all = support::row_multisets(2, 2, 3);
    let mut keys: Vec<Mat> = all.clone();
    keys.sort();
    keys.dedup();
    assert_eq!(keys.len(), all.len());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn matches_probing_in_rank_three((n, b) in primitive_rows(3, 5)) {
        prop_assert_eq!(as_map(&discriminant(&b, n)), support::probe_discriminant(&b, n));
    }

    #[test]
    fn invariant_under_row_order_and_sign((n, b) in primitive_rows(3, 6), seed in any::<u64>()) {
        let mut shuffled = b.clone();
        let k = shuffled.len();
        for i in (1..k).rev() {
            shuffled.swap(i, (seed as usize >> (i % 16)) % (i + 1));
        }
        for (i, r) in shuffled.iter_mut().enumerate() {
            if seed >> i & 1 == 1 {
                r.iter_mut().for_each(|x| *x = -*x);
            }
        }
        prop_assert!(discriminant(&b, n).same_divisor(&discriminant(&shuffled, n)));
    }

    #[test]
    fn equivariant_under_basis_change((b, u) in (1usize..=3).prop_flat_map(|n| (
        prop::collection::vec(prop::collection::vec(-3i64..=3, n), 1..=5)
            .prop_filter("primitive", |b| b.iter().all(|r| support::is_primitive(r))),
        gl_matrix(n),
    ))) {
        let n = u.len();
        let bu: Mat = b.iter().map(|r| (0..n).map(|j| (0..n).map(|k| r[k] * u[k][j]).sum()).collect()).collect();
        let mut expected: BTreeMap<Vec<i64>, u32> = BTreeMap::new();
        for (v, m) in support::probe_discriminant(&b, n) {
            let image: Vec<i64> = (0..n).map(|j| (0..n).map(|k| v[k] * u[k][j]).sum()).collect();
            expected.insert(support::canonical(&image), m);
        }
        prop_assert_eq!(as_map(&discriminant(&bu, n)), expected);
    }

    #[test]
    fn generic_points_have_trivial_stabilizer((n, b) in primitive_rows(3, 6)) {
        let arr = discriminant(&b, n);
        let eta = generic_point(&arr);
        prop_assert_eq!(stabilizer_rank(&arr, &eta).unwrap().rank, 0);
        prop_assert!(sign_vector(&arr, &eta).iter().all(|&s| s != 0));
        for i in 0..arr.len() {
            let on = generic_point_on(&arr, i).unwrap();
            let stab = stabilizer_rank(&arr, &on).unwrap();
            prop_assert_eq!(stab.rank, 1);
            prop_assert_eq!(stab.normals, vec![arr.components()[i].hyperplane.normal().clone()]);
        }
    }

    #[test]
    fn flats_contain_their_points((n, b) in primitive_rows(3, 5), offsets in prop::collection::vec(-3i64..=3, 5)) {
        let offsets: Vec<Rat> = offsets[..b.len()].iter().map(|&x| Rat::from_integer(x.into())).collect();
        let Ok(arr) = build_family_slice(&support::to_matrix(&b, n), &offsets, &Rat::from_integer(1.into())) else {
            return Ok(());
        };
        let locus = f_locus(&arr);
        for flat in &locus.flats {
            prop_assert!(flat.members.len() >= 2);
            let point = flat.point.as_ref().expect("flats in the locus are nonempty");
            let normal = |i: usize| -> Vec<i64> {
                arr.components()[i].hyperplane.normal().coords().iter().map(|x| i64::try_from(x).unwrap()).collect()
            };
            let rows: Mat = flat.members.iter().map(|&i| normal(i)).collect();
            prop_assert_eq!(flat.codimension, support::rank(&rows));
            // members contain the flat; any other hyperplane containing it
            // would have a normal dependent on the members' normals
            for (i, h) in arr.hyperplanes().enumerate() {
                if flat.members.contains(&i) {
                    prop_assert!(h.contains(point));
                } else {
                    let mut more = rows.clone();
                    more.push(normal(i));
                    prop_assert!(!(h.contains(point) && support::rank(&more) == flat.codimension));
                }
            }
        }
    }
}

#[test]
fn arrangement_validation() {
    let h = |v: &[i64]| Hyperplane::through_origin(LatticeVector::from_i64(v)).unwrap();
    assert_eq!(Hyperplane::through_origin(LatticeVector::from_i64(&[2, 0])), Err(Error::NonPrimitiveRow(0)));
    assert_eq!(
        ArrangementSpec::new(2, vec![Component::new(h(&[1, 0]), 1), Component::new(h(&[-1, 0]), 2)]),
        Err(Error::DuplicateHyperplane(1))
    );
    assert_eq!(ArrangementSpec::new(2, vec![Component::new(h(&[1, 0]), 0)]), Err(Error::ZeroMultiplicity(0)));
    assert!(matches!(
        ArrangementSpec::new(3, vec![Component::new(h(&[1, 0]), 1)]),
        Err(Error::DimensionMismatch { .. })
    ));
}

#[test]
fn central_lines_meet_at_origin() {
    let arr = discriminant(&[vec![1, 0], vec![0, 1], vec![1, 1]], 2);
    let locus = f_locus(&arr);
    assert_eq!(locus.codimension(), Some(2));
    assert!(!locus.truncated);
    // three lines through one point of the plane: not a simple arrangement
    assert!(!check_simplicity(&arr).passes());
    assert!(check_simplicity(&discriminant(&[vec![1, 0], vec![0, 1]], 2)).passes());
}

#[test]
fn family_slices_move_walls() {
    let b = IntMatrix::from_i64(&[&[1], &[1], &[1]]);
    let offsets: Vec<Rat> = [0, 1, 2].iter().map(|&x| Rat::from_integer(Int::from(x))).collect();
    let zero = build_family_slice(&b, &offsets, &Rat::zero()).unwrap();
    assert_eq!(zero.len(), 1);
    assert_eq!(zero.components()[0].multiplicity, 3);
    let one = build_family_slice(&b, &offsets, &Rat::from_integer(1.into())).unwrap();
    assert_eq!(one.len(), 3);
    assert!(one.components().iter().all(|c| c.multiplicity == 1));
}
