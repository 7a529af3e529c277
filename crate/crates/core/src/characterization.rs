//! From a weighted divisor back to `B`, and around again.
//!
//! Divisor data `m₁H₁ + … + m_kH_k + H_{k+1} + … + H_r` determines `B` by
//! repeating each primitive normal `bᵢ` `mᵢ` times. The discriminant of the
//! resulting `Y(A,0)` must reproduce the input.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::arrangement::{build_discriminant, ArrangementSpec, Component, Hyperplane, MultiplicityMode, WallKind};
use crate::hypertoric::{leaf_classification, HypertoricData, LeafDescriptor};
use crate::lattice::{
    gale_dual, smith_normal_form, unimodularity, IntMatrix, UnimodularityMethod, UnimodularityVerdict,
};
use crate::{Error, LatticeVector, Result};

/// Why a rank-deficient `B` is refused.
pub const REJECTION_REASON: &str =
    "B is not injective: Y(A,0) would contain a torus factor, contradicting conical contractibility";

/// Pairwise non-parallel primitive normals with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DivisorData {
    n: usize,
    entries: Vec<(LatticeVector, u32)>,
}

impl DivisorData {
    /// Normals are sign-normalized; their order is kept.
    pub fn new(n: usize, entries: Vec<(LatticeVector, u32)>) -> Result<Self> {
        let mut out: Vec<(LatticeVector, u32)> = Vec::with_capacity(entries.len());
        for (i, (normal, m)) in entries.into_iter().enumerate() {
            if normal.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, found: normal.dim() });
            }
            if !normal.is_primitive() {
                return Err(Error::NonPrimitiveRow(i));
            }
            if m == 0 {
                return Err(Error::ZeroMultiplicity(i));
            }
            let normal = normal.canonical();
            if let Some(j) = out.iter().position(|(v, _)| *v == normal) {
                return Err(Error::ParallelWalls(j, i));
            }
            out.push((normal, m));
        }
        Ok(DivisorData { n, entries: out })
    }

    pub fn from_arrangement(arr: &ArrangementSpec) -> Result<Self> {
        let entries = arr.components().iter().map(|c| (c.hyperplane.normal().clone(), c.multiplicity)).collect();
        Self::new(arr.dim(), entries)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[(LatticeVector, u32)] {
        &self.entries
    }

    /// `N = Σ mᵢ`.
    pub fn total_multiplicity(&self) -> usize {
        self.entries.iter().map(|(_, m)| *m as usize).sum()
    }

    pub fn canonical_multiset(&self) -> Vec<(LatticeVector, u32)> {
        let mut v = self.entries.clone();
        v.sort();
        v
    }

    /// The divisor as a central arrangement. Walls of multiplicity 1 get kind
    /// `Unknown`.
    pub fn to_arrangement(&self) -> ArrangementSpec {
        let comps = self
            .entries
            .iter()
            .map(|(v, m)| {
                let mut c = Component::new(Hyperplane::through_origin(v.clone()).expect("validated normal"), *m);
                // a simple wall in divisor data may be of either kind
                if *m == 1 {
                    c.kind = WallKind::Unknown;
                }
                c
            })
            .collect();
        ArrangementSpec::new(self.n, comps).expect("validated divisor")
    }

    /// Image under `b ↦ b·U`, the change of torus coordinates by `U`.
    pub fn transformed(&self, u: &IntMatrix) -> Result<Self> {
        if u.rows() != self.n || u.cols() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: u.rows() });
        }
        let entries = self
            .entries
            .iter()
            .map(|(v, m)| {
                let row = IntMatrix::from_rows(self.n, alloc::vec![v.coords().to_vec()])?;
                let image = row.mul(u)?;
                Ok((LatticeVector::new(image.row(0).to_vec()), *m))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.n, entries)
    }
}

/// Stacks the normals into `B`.
///
/// Walls of multiplicity at least 2 come first, each normal repeated `mᵢ`
/// times, then the multiplicity-1 walls. Within each block normals are sorted
/// colexicographically (last coordinate most significant), which puts the
/// standard basis in its usual order.
pub fn reconstruct_b(d: &DivisorData) -> IntMatrix {
    let mut sorted = d.entries.clone();
    sorted.sort_by(|(a, _), (b, _)| a.coords().iter().rev().cmp(b.coords().iter().rev()));
    let mut rows = Vec::with_capacity(d.total_multiplicity());
    for (v, m) in sorted.iter().filter(|(_, m)| *m >= 2) {
        for _ in 0..*m {
            rows.push(v.coords().to_vec());
        }
    }
    for (v, _) in sorted.iter().filter(|(_, m)| *m == 1) {
        rows.push(v.coords().to_vec());
    }
    IntMatrix::from_rows(d.n, rows).expect("normals share the ambient dimension")
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CaseTag {
    /// `N = n` and `B` is a Z-basis: `Y(A,0) = C^{2n}`.
    SmoothAffineSpace,
    /// `B` injective with `n < N` and torsion-free cokernel.
    Hypertoric,
    /// `B` not injective; such data cannot come from a conical symplectic variety.
    Rejected(String),
}

/// Sorts `B` into the smooth, hypertoric or impossible case.
///
/// Injective `B` whose cokernel has torsion fits none of the cases and is an
/// error rather than a rejection.
pub fn classify_case(b: &IntMatrix) -> Result<CaseTag> {
    for (i, row) in b.iter_rows().enumerate() {
        if !LatticeVector::new(row.to_vec()).is_primitive() {
            return Err(Error::NonPrimitiveRow(i));
        }
    }
    let snf = smith_normal_form(b);
    if snf.rank() < b.cols() {
        return Ok(CaseTag::Rejected(REJECTION_REASON.to_string()));
    }
    if !snf.torsion_free() {
        return Err(Error::TorsionCokernel { factors: snf.invariant_factors });
    }
    if b.rows() == b.cols() {
        Ok(CaseTag::SmoothAffineSpace)
    } else {
        Ok(CaseTag::Hypertoric)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundTripReport {
    pub case: CaseTag,
    pub b: IntMatrix,
    pub a: IntMatrix,
    pub b_unimodular: UnimodularityVerdict,
    pub a_unimodular: UnimodularityVerdict,
    /// Discriminant recomputed from `B`.
    pub discriminant: ArrangementSpec,
    /// Whether the recomputed discriminant equals the input divisor.
    pub equal: bool,
    /// Leaves of `Y(A,0)`; present when `B` is unimodular.
    pub leaves: Option<Vec<LeafDescriptor>>,
    pub warnings: Vec<String>,
}

/// Divisor → `B` → `(A, discriminant)`, compared against the input.
///
/// A non-unimodular `B` is reported with a warning, not refused.
pub fn round_trip(d: &DivisorData) -> Result<RoundTripReport> {
    let b = reconstruct_b(d);
    let case = classify_case(&b)?;
    if let CaseTag::Rejected(reason) = case {
        return Err(Error::CaseRejected(reason));
    }
    let a = gale_dual(&b)?;
    let b_unimodular = unimodularity(&b);
    let a_unimodular = unimodularity(&a);
    let discriminant = build_discriminant(&b, MultiplicityMode::GroupParallel)?;
    let equal = discriminant.same_divisor(&d.to_arrangement());
    let mut warnings = Vec::new();
    if !b_unimodular.unimodular {
        warnings.push("B is not unimodular; Y(A,0) is outside the resolvable case".to_string());
    }
    for (name, v) in [("B", b_unimodular), ("A", a_unimodular)] {
        if v.method == UnimodularityMethod::SmithFallback {
            warnings.push(alloc::format!("unimodularity of {name} decided by the Smith criterion only"));
        }
    }
    let leaves = HypertoricData::new(b.clone()).ok().map(|h| leaf_classification(&h));
    Ok(RoundTripReport { case, b, a, b_unimodular, a_unimodular, discriminant, equal, leaves, warnings })
}
