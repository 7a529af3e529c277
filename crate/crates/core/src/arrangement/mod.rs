//! Discriminant hyperplane arrangements.
//!
//! A [`Hyperplane`] is `{η : ⟨b, η⟩ = λ}` with `b` primitive and sign-normalized
//! (first nonzero coordinate positive). An [`ArrangementSpec`] is a weighted
//! list of distinct hyperplanes; central arrangements have every offset zero.

mod flats;
mod sample;

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::lattice::IntMatrix;
use crate::{Error, Int, LatticeVector, Rat, Result};

pub use flats::{check_simplicity, f_locus, flat, FLocus, FlatDescriptor, SimplicityReport, FLAT_ENUMERATION_LIMIT};
pub use sample::{generic_point, generic_point_on};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WallKind {
    /// Carries a codimension-2 leaf with a Klein `A_{m−1}` singularity.
    FirstKind,
    /// Degeneration over the smooth locus only.
    SecondKind,
    /// Not decidable from the data at hand.
    Unknown,
}

impl WallKind {
    /// Classification from multiplicity alone.
    pub fn from_multiplicity(m: u32) -> Self {
        if m >= 2 {
            WallKind::FirstKind
        } else {
            WallKind::SecondKind
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hyperplane {
    normal: LatticeVector,
    offset: Rat,
}

impl Hyperplane {
    /// `⟨normal, η⟩ = offset`. The normal is sign-normalized, flipping the
    /// offset along with it.
    pub fn new(normal: LatticeVector, offset: Rat) -> Result<Self> {
        if !normal.is_primitive() {
            return Err(Error::NonPrimitiveRow(0));
        }
        if normal.is_canonical() {
            Ok(Hyperplane { normal, offset })
        } else {
            Ok(Hyperplane { normal: -normal, offset: -offset })
        }
    }

    pub fn through_origin(normal: LatticeVector) -> Result<Self> {
        Self::new(normal, Rat::zero())
    }

    pub fn normal(&self) -> &LatticeVector {
        &self.normal
    }

    pub fn offset(&self) -> &Rat {
        &self.offset
    }

    pub fn dim(&self) -> usize {
        self.normal.dim()
    }

    /// `⟨b, η⟩ − λ`.
    pub fn evaluate(&self, eta: &[Rat]) -> Rat {
        self.normal.dot_rat(eta) - &self.offset
    }

    pub fn contains(&self, eta: &[Rat]) -> bool {
        self.evaluate(eta).is_zero()
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, η> = {}", self.normal, self.offset)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Component {
    pub hyperplane: Hyperplane,
    pub multiplicity: u32,
    pub kind: WallKind,
}

impl Component {
    /// Component whose kind is read off the multiplicity.
    pub fn new(hyperplane: Hyperplane, multiplicity: u32) -> Self {
        Component { hyperplane, multiplicity, kind: WallKind::from_multiplicity(multiplicity) }
    }
}

/// Weighted arrangement of pairwise distinct hyperplanes in `Qⁿ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ArrangementSpec {
    dim: usize,
    components: Vec<Component>,
}

impl ArrangementSpec {
    pub fn new(dim: usize, components: Vec<Component>) -> Result<Self> {
        for (i, c) in components.iter().enumerate() {
            if c.hyperplane.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: c.hyperplane.dim() });
            }
            if c.multiplicity == 0 {
                return Err(Error::ZeroMultiplicity(i));
            }
            if components[..i].iter().any(|d| d.hyperplane == c.hyperplane) {
                return Err(Error::DuplicateHyperplane(i));
            }
        }
        Ok(ArrangementSpec { dim, components })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn hyperplanes(&self) -> impl ExactSizeIterator<Item = &Hyperplane> + '_ {
        self.components.iter().map(|c| &c.hyperplane)
    }

    pub fn is_central(&self) -> bool {
        self.hyperplanes().all(|h| h.offset.is_zero())
    }

    /// Total multiplicity `Σ mᵢ`.
    pub fn degree(&self) -> u64 {
        self.components.iter().map(|c| u64::from(c.multiplicity)).sum()
    }

    /// Sorted `(normal, offset, multiplicity)` triples; kinds are ignored.
    pub fn canonical_multiset(&self) -> Vec<(LatticeVector, Rat, u32)> {
        let mut v: Vec<_> = self
            .components
            .iter()
            .map(|c| (c.hyperplane.normal.clone(), c.hyperplane.offset.clone(), c.multiplicity))
            .collect();
        v.sort();
        v
    }

    /// Equality as weighted divisors.
    pub fn same_divisor(&self, other: &ArrangementSpec) -> bool {
        self.dim == other.dim && self.canonical_multiset() == other.canonical_multiset()
    }

    /// Stacked normals, one row per component.
    pub fn normal_matrix(&self) -> IntMatrix {
        let rows = self.hyperplanes().map(|h| h.normal.coords().to_vec()).collect();
        IntMatrix::from_rows(self.dim, rows).expect("normals share the ambient dimension")
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum MultiplicityMode {
    /// Rows equal up to sign form one wall whose multiplicity is the group size.
    #[default]
    GroupParallel,
}

/// Discriminant arrangement of the moment map of `Y(A,0)`.
///
/// Rows of `b` equal up to sign are merged into one central hyperplane;
/// components appear in order of first occurrence.
pub fn build_discriminant(b: &IntMatrix, mode: MultiplicityMode) -> Result<ArrangementSpec> {
    let zero = alloc::vec![Rat::zero(); b.rows()];
    group_rows(b, &zero, mode)
}

/// The slice at parameter `t` of the family `⟨bᵢ, η⟩ = t·λᵢ`.
///
/// Identical hyperplanes merge and add their multiplicities. At `t = 0` this is
/// [`build_discriminant`].
pub fn build_family_slice(b: &IntMatrix, offsets: &[Rat], t: &Rat) -> Result<ArrangementSpec> {
    if offsets.len() != b.rows() {
        return Err(Error::ArityMismatch { expected: b.rows(), found: offsets.len() });
    }
    let scaled: Vec<Rat> = offsets.iter().map(|l| l * t).collect();
    group_rows(b, &scaled, MultiplicityMode::GroupParallel)
}

fn group_rows(b: &IntMatrix, offsets: &[Rat], mode: MultiplicityMode) -> Result<ArrangementSpec> {
    let MultiplicityMode::GroupParallel = mode;
    let mut order: Vec<Hyperplane> = Vec::new();
    let mut counts: BTreeMap<Hyperplane, u32> = BTreeMap::new();
    for (i, (row, offset)) in b.iter_rows().zip(offsets).enumerate() {
        let normal = LatticeVector::new(row.to_vec());
        let h = Hyperplane::new(normal, offset.clone()).map_err(|_| Error::NonPrimitiveRow(i))?;
        let count = counts.entry(h.clone()).or_insert(0);
        if *count == 0 {
            order.push(h);
        }
        *count += 1;
    }
    let components = order
        .into_iter()
        .map(|h| {
            let m = counts[&h];
            Component::new(h, m)
        })
        .collect();
    ArrangementSpec::new(b.cols(), components)
}

/// Rank of the span of the normals of the hyperplanes through a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stabilizer {
    pub rank: usize,
    /// Normals of the hyperplanes containing the point, in component order.
    pub normals: Vec<LatticeVector>,
}

/// Each hyperplane counts once regardless of multiplicity.
pub fn stabilizer_rank(arr: &ArrangementSpec, eta: &[Rat]) -> Result<Stabilizer> {
    if eta.len() != arr.dim {
        return Err(Error::DimensionMismatch { expected: arr.dim, found: eta.len() });
    }
    let normals: Vec<LatticeVector> = arr.hyperplanes().filter(|h| h.contains(eta)).map(|h| h.normal.clone()).collect();
    let rows: Vec<Vec<Int>> = normals.iter().map(|v| v.coords().to_vec()).collect();
    let rank = IntMatrix::from_rows(arr.dim, rows).expect("uniform width").rank();
    Ok(Stabilizer { rank, normals })
}

/// Sign of `⟨b, η⟩ − λ` for every hyperplane: which chamber (or wall) `η` is in.
pub fn sign_vector(arr: &ArrangementSpec, eta: &[Rat]) -> Vec<i8> {
    arr.hyperplanes()
        .map(|h| {
            let v = h.evaluate(eta);
            if v.is_zero() {
                0
            } else if v.is_positive() {
                1
            } else {
                -1
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::rational::rat;

    fn comp(normal: &[i64], m: u32) -> (LatticeVector, Rat, u32) {
        (LatticeVector::from_i64(normal), Rat::zero(), m)
    }

    #[test]
    fn hyperplane_sign_normalization() {
        let h = Hyperplane::new(LatticeVector::from_i64(&[-1, 2]), rat(3)).unwrap();
        assert_eq!(h.normal(), &LatticeVector::from_i64(&[1, -2]));
        assert_eq!(h.offset(), &rat(-3));
        assert!(h.contains(&[rat(-3), rat(0)]));
        assert!(Hyperplane::through_origin(LatticeVector::from_i64(&[2, 4])).is_err());
    }

    #[test]
    fn discriminant_examples() {
        let arr =
            build_discriminant(&IntMatrix::from_i64(&[&[1], &[1], &[1]]), MultiplicityMode::GroupParallel).unwrap();
        assert_eq!(arr.len(), 1);
        assert_eq!(arr.components()[0].multiplicity, 3);
        assert_eq!(arr.components()[0].kind, WallKind::FirstKind);

        let arr = build_discriminant(&IntMatrix::identity(2), MultiplicityMode::GroupParallel).unwrap();
        assert!(arr.components().iter().all(|c| c.multiplicity == 1 && c.kind == WallKind::SecondKind));
        assert_eq!(arr.canonical_multiset(), [comp(&[0, 1], 1), comp(&[1, 0], 1)]);

        let b = IntMatrix::from_i64(&[&[1, 0], &[-1, 0], &[0, 1], &[1, 1]]);
        let arr = build_discriminant(&b, MultiplicityMode::GroupParallel).unwrap();
        assert_eq!(arr.canonical_multiset(), [comp(&[0, 1], 1), comp(&[1, 0], 2), comp(&[1, 1], 1)]);
        assert!(arr.is_central());
        assert_eq!(arr.degree(), 4);
    }

    #[test]
    fn non_primitive_row_reported_by_index() {
        let err = build_discriminant(&IntMatrix::from_i64(&[&[1, 0], &[0, 2]]), MultiplicityMode::GroupParallel);
        assert_eq!(err, Err(Error::NonPrimitiveRow(1)));
    }

    #[test]
    fn arrangement_validation() {
        let h = Hyperplane::through_origin(LatticeVector::from_i64(&[1])).unwrap();
        let dup = ArrangementSpec::new(1, alloc::vec![Component::new(h.clone(), 1), Component::new(h.clone(), 2)]);
        assert_eq!(dup, Err(Error::DuplicateHyperplane(1)));
        let zero = ArrangementSpec::new(1, alloc::vec![Component::new(h.clone(), 0)]);
        assert_eq!(zero, Err(Error::ZeroMultiplicity(0)));
        let wrong = ArrangementSpec::new(2, alloc::vec![Component::new(h, 1)]);
        assert!(matches!(wrong, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn stabilizer_examples() {
        let arr = build_discriminant(&IntMatrix::identity(2), MultiplicityMode::GroupParallel).unwrap();
        let s = stabilizer_rank(&arr, &[rat(0), rat(7)]).unwrap();
        assert_eq!(s.rank, 1);
        assert_eq!(s.normals, [LatticeVector::from_i64(&[1, 0])]);
        assert_eq!(stabilizer_rank(&arr, &[rat(2), rat(3)]).unwrap().rank, 0);
        assert_eq!(stabilizer_rank(&arr, &[rat(0), rat(0)]).unwrap().rank, 2);
        assert!(stabilizer_rank(&arr, &[rat(0)]).is_err());
        assert_eq!(sign_vector(&arr, &[rat(-1), rat(0)]), [-1, 0]);
    }

    #[test]
    fn family_slices() {
        let b = IntMatrix::from_i64(&[&[1], &[1], &[-1]]);
        let offsets = [rat(0), rat(1), rat(1)];
        let slice = build_family_slice(&b, &offsets, &rat(1)).unwrap();
        // third row flips to <1, η> = -1
        assert_eq!(slice.len(), 3);
        assert!(slice.components().iter().all(|c| c.multiplicity == 1));
        let central = build_family_slice(&b, &offsets, &rat(0)).unwrap();
        assert_eq!(central.canonical_multiset(), [comp(&[1], 3)]);
        assert!(build_family_slice(&b, &offsets[..2], &rat(1)).is_err());
    }
}
