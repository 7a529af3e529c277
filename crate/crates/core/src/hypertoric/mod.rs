//! The hypertoric variety `Y(A,0) = Spec C[μ⁻¹(0)]^{T^{N−n}}`.
//!
//! Invariant monomials `z^u w^v` are exactly the pairs `(u, v) ∈ ℕ^{2N}` with
//! `u − v ∈ B·Zⁿ`; they form an affine monoid whose Hilbert basis generates
//! the invariant ring.

mod hilbert;
mod presentation;

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::fmt::Write as _;

use num_traits::ToPrimitive;

use crate::arrangement::WallKind;
use crate::lattice::{gale_dual, is_unimodular, IntMatrix};
use crate::{Error, Int, LatticeVector, Rat, Result};

pub use hilbert::{
    brute_force_invariants, graver_basis, hilbert_basis, hilbert_basis_with, Budget, BRUTE_FORCE_MAX_COORDS,
    BRUTE_FORCE_MAX_DEGREE,
};
pub use presentation::{
    dimension_check, presentation, presentation_with, Binomial, DimensionCheck, LinearForm, Presentation,
    ReducedPresentation, ReducedRelation,
};

/// Validated data `(B, A)` of a hypertoric variety.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypertoricData {
    b: IntMatrix,
    a: IntMatrix,
    groups: Vec<Vec<usize>>,
    normals: Vec<LatticeVector>,
}

impl HypertoricData {
    /// Requires primitive rows, an exact Gale dual and a unimodular `B`.
    pub fn new(b: IntMatrix) -> Result<Self> {
        for (i, row) in b.iter_rows().enumerate() {
            if !LatticeVector::new(row.to_vec()).is_primitive() {
                return Err(Error::NonPrimitiveRow(i));
            }
        }
        let a = gale_dual(&b)?;
        if !is_unimodular(&b) {
            return Err(Error::NotUnimodular);
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut normals: Vec<LatticeVector> = Vec::new();
        for (i, row) in b.iter_rows().enumerate() {
            let normal = LatticeVector::new(row.to_vec()).canonical();
            match normals.iter().position(|v| *v == normal) {
                Some(g) => groups[g].push(i),
                None => {
                    normals.push(normal);
                    groups.push(alloc::vec![i]);
                }
            }
        }
        Ok(HypertoricData { b, a, groups, normals })
    }

    pub fn b(&self) -> &IntMatrix {
        &self.b
    }

    pub fn a(&self) -> &IntMatrix {
        &self.a
    }

    /// `N`, the number of coordinate pairs `(zᵢ, wᵢ)`.
    pub fn num_coordinates(&self) -> usize {
        self.b.rows()
    }

    /// `n`, the rank of the residual torus.
    pub fn torus_rank(&self) -> usize {
        self.b.cols()
    }

    /// Row indices of `B` grouped by parallel class, in order of first appearance.
    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    /// Canonical normal of each parallel class.
    pub fn group_normals(&self) -> &[LatticeVector] {
        &self.normals
    }

    /// `A·(u − v) = 0`.
    pub fn is_invariant(&self, g: &MonomialGen) -> bool {
        let diff: Vec<Int> = g.u.iter().zip(&g.v).map(|(&x, &y)| Int::from(i64::from(x) - i64::from(y))).collect();
        g.u.len() == self.num_coordinates()
            && self.a.apply(&diff).is_ok_and(|r| r.iter().all(num_traits::Zero::is_zero))
    }

    /// `B` with entries as machine words, for enumeration.
    pub(crate) fn b_i64(&self) -> Result<Vec<Vec<i64>>> {
        to_i64_rows(&self.b)
    }

    pub(crate) fn a_i64(&self) -> Result<Vec<Vec<i64>>> {
        to_i64_rows(&self.a)
    }
}

pub(crate) fn to_i64_rows(m: &IntMatrix) -> Result<Vec<Vec<i64>>> {
    m.iter_rows().map(|r| r.iter().map(|x| x.to_i64().ok_or(Error::EntryOverflow)).collect()).collect()
}

/// `μ(z, w) = Σᵢ 𝐚ᵢ zᵢwᵢ` where `𝐚ᵢ` are the columns of `A`.
pub fn moment_map_eval(a: &IntMatrix, z: &[Rat], w: &[Rat]) -> Result<Vec<Rat>> {
    let big_n = a.cols();
    for len in [z.len(), w.len()] {
        if len != big_n {
            return Err(Error::DimensionMismatch { expected: big_n, found: len });
        }
    }
    let zw: Vec<Rat> = z.iter().zip(w).map(|(x, y)| x * y).collect();
    Ok(a.iter_rows().map(|row| crate::lattice::dot_rat(row, &zw)).collect())
}

/// The invariant monomial `z^u w^v`.
///
/// Ordered by degree, then by exponent vector `(u, v)` read left to right with
/// larger exponents first, so `z₁ < z₂ < … < w₁ < … < z₁²`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialGen {
    pub u: Vec<u32>,
    pub v: Vec<u32>,
}

impl MonomialGen {
    pub fn new(u: Vec<u32>, v: Vec<u32>) -> Self {
        assert_eq!(u.len(), v.len(), "exponent vectors of different length");
        MonomialGen { u, v }
    }

    pub fn z(n: usize, i: usize) -> Self {
        let mut g = Self::one(n);
        g.u[i] = 1;
        g
    }

    pub fn w(n: usize, i: usize) -> Self {
        let mut g = Self::one(n);
        g.v[i] = 1;
        g
    }

    /// The quadratic invariant `sᵢ = zᵢwᵢ`.
    pub fn s(n: usize, i: usize) -> Self {
        let mut g = Self::one(n);
        g.u[i] = 1;
        g.v[i] = 1;
        g
    }

    fn one(n: usize) -> Self {
        MonomialGen { u: alloc::vec![0; n], v: alloc::vec![0; n] }
    }

    pub fn len(&self) -> usize {
        self.u.len()
    }

    pub fn is_empty(&self) -> bool {
        self.u.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.u.iter().chain(&self.v).sum()
    }

    /// `min(u, v) = 0` componentwise.
    pub fn is_reduced(&self) -> bool {
        self.u.iter().zip(&self.v).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// `u − v`.
    pub fn weight(&self) -> Vec<i64> {
        self.u.iter().zip(&self.v).map(|(&a, &b)| i64::from(a) - i64::from(b)).collect()
    }

    /// Whether `other` divides `self`.
    pub fn divisible_by(&self, other: &MonomialGen) -> bool {
        self.u.iter().zip(&other.u).all(|(a, b)| a >= b) && self.v.iter().zip(&other.v).all(|(a, b)| a >= b)
    }

    pub fn mul(&self, other: &MonomialGen) -> MonomialGen {
        MonomialGen {
            u: self.u.iter().zip(&other.u).map(|(a, b)| a + b).collect(),
            v: self.v.iter().zip(&other.v).map(|(a, b)| a + b).collect(),
        }
    }

    /// `(u, v)` as one vector of length `2N`.
    pub fn exponents(&self) -> Vec<u32> {
        self.u.iter().chain(&self.v).copied().collect()
    }
}

impl Ord for MonomialGen {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| other.u.cmp(&self.u)).then_with(|| other.v.cmp(&self.v))
    }
}

impl PartialOrd for MonomialGen {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MonomialGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (name, exps) in [('z', &self.u), ('w', &self.v)] {
            for (i, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !out.is_empty() {
                    out.push('*');
                }
                let _ = write!(out, "{name}{}", i + 1);
                if e > 1 {
                    let _ = write!(out, "^{e}");
                }
            }
        }
        if out.is_empty() {
            out.push('1');
        }
        f.write_str(&out)
    }
}

/// Transversal singularity along a codimension-2 leaf.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Singularity {
    Smooth,
    /// Klein singularity `x₁x₂ = x₃^(k+1)`.
    A(u32),
}

impl fmt::Display for Singularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Singularity::Smooth => f.write_str("smooth"),
            Singularity::A(k) => write!(f, "A{k}"),
        }
    }
}

/// One parallel class of rows of `B`, i.e. one discriminant wall.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LeafDescriptor {
    pub group: usize,
    pub normal: LatticeVector,
    pub multiplicity: u32,
    pub singularity: Singularity,
    pub kind: WallKind,
}

impl LeafDescriptor {
    pub fn is_singular(&self) -> bool {
        self.multiplicity >= 2
    }
}

/// One descriptor per parallel class, singular leaves (`m ≥ 2`, type
/// `A_{m−1}`) and smooth walls alike.
pub fn leaf_classification(h: &HypertoricData) -> Vec<LeafDescriptor> {
    h.groups
        .iter()
        .zip(&h.normals)
        .enumerate()
        .map(|(g, (rows, normal))| {
            let m = rows.len() as u32;
            LeafDescriptor {
                group: g,
                normal: normal.clone(),
                multiplicity: m,
                singularity: if m >= 2 { Singularity::A(m - 1) } else { Singularity::Smooth },
                kind: WallKind::from_multiplicity(m),
            }
        })
        .collect()
}
