//! Intersection flats and the simplicity conditions of deformed arrangements.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec::Vec;

use num_traits::Zero;

use super::ArrangementSpec;
use crate::lattice::{rational, right_kernel, smith_normal_form, IntMatrix};
use crate::Rat;

/// Above this many hyperplanes only pairwise flats are produced.
pub const FLAT_ENUMERATION_LIMIT: usize = 12;

/// The intersection of a set of hyperplanes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatDescriptor {
    /// Component indices, ascending.
    pub members: Vec<usize>,
    /// Integer basis of the linear part, one vector per row.
    pub direction: IntMatrix,
    /// A point of the flat, `None` when the intersection is empty.
    pub point: Option<Vec<Rat>>,
    /// Rank of the stacked member normals.
    pub codimension: usize,
}

impl FlatDescriptor {
    pub fn is_empty(&self) -> bool {
        self.point.is_none()
    }

    /// Whether every point of this (nonempty) flat satisfies `⟨b, η⟩ = λ`.
    fn inside(&self, h: &super::Hyperplane) -> bool {
        let Some(p) = &self.point else { return false };
        h.contains(p) && self.direction.iter_rows().all(|d| h.normal().dot(d).is_zero())
    }
}

/// Intersection of the components listed in `members`.
pub fn flat(arr: &ArrangementSpec, members: &[usize]) -> FlatDescriptor {
    let mut members = members.to_vec();
    members.sort_unstable();
    members.dedup();
    let normals = arr.normal_matrix().select_rows(&members);
    let rows = rational::to_rat_rows(normals.iter_rows());
    let rhs: Vec<Rat> = members.iter().map(|&i| arr.components()[i].hyperplane.offset().clone()).collect();
    let point = rational::solve(&rows, &rhs, arr.dim());
    FlatDescriptor { codimension: normals.rank(), direction: right_kernel(&normals), point, members }
}

/// Multi-incidence locus of an arrangement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FLocus {
    /// Nonempty flats cut by at least two hyperplanes, each listed with every
    /// hyperplane containing it, in ascending member order.
    pub flats: Vec<FlatDescriptor>,
    /// Set when the arrangement was too large for the full intersection poset
    /// and only pairwise flats were produced.
    pub truncated: bool,
}

impl FLocus {
    /// Smallest codimension among the flats; `None` when the locus is empty.
    pub fn codimension(&self) -> Option<usize> {
        self.flats.iter().map(|f| f.codimension).min()
    }
}

fn closure(arr: &ArrangementSpec, f: &FlatDescriptor) -> FlatDescriptor {
    let members: Vec<usize> = arr.hyperplanes().enumerate().filter(|(_, h)| f.inside(h)).map(|(i, _)| i).collect();
    if members == f.members {
        f.clone()
    } else {
        FlatDescriptor { members, ..f.clone() }
    }
}

/// Every nonempty intersection of two or more hyperplanes.
///
/// Flats are generated from pairwise intersections and then refined by
/// intersecting with one more hyperplane at a time, so each flat of the
/// intersection poset appears exactly once.
pub fn f_locus(arr: &ArrangementSpec) -> FLocus {
    let k = arr.len();
    let truncated = k > FLAT_ENUMERATION_LIMIT;
    let mut found: BTreeMap<Vec<usize>, FlatDescriptor> = BTreeMap::new();
    let mut queue: VecDeque<FlatDescriptor> = VecDeque::new();
    for i in 0..k {
        for j in i + 1..k {
            let f = flat(arr, &[i, j]);
            if f.is_empty() {
                continue;
            }
            let f = closure(arr, &f);
            if !found.contains_key(&f.members) {
                found.insert(f.members.clone(), f.clone());
                queue.push_back(f);
            }
        }
    }
    if !truncated {
        while let Some(f) = queue.pop_front() {
            for h in 0..k {
                if f.members.contains(&h) {
                    continue;
                }
                let mut members = f.members.clone();
                members.push(h);
                let g = flat(arr, &members);
                if g.is_empty() {
                    continue;
                }
                let g = closure(arr, &g);
                if !found.contains_key(&g.members) {
                    found.insert(g.members.clone(), g.clone());
                    queue.push_back(g);
                }
            }
        }
    }
    FLocus { flats: found.into_values().collect(), truncated }
}

/// Simplicity of an affine arrangement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicityReport {
    /// No `n + 1` hyperplanes share a point.
    pub empty_intersections: bool,
    /// The normals of hyperplanes sharing a point are part of a Z-basis.
    pub basis_extension: bool,
    /// Member sets of flats lying on more than `n` hyperplanes.
    pub violating_empty: Vec<Vec<usize>>,
    /// Member sets of flats whose normals do not extend to a Z-basis.
    pub violating_basis: Vec<Vec<usize>>,
    pub truncated: bool,
}

impl SimplicityReport {
    pub fn passes(&self) -> bool {
        self.empty_intersections && self.basis_extension
    }
}

/// Checks both conditions over the flats of [`f_locus`].
///
/// A set of hyperplanes with a common point lies inside the member set of its
/// flat, and subsets of a basis are again part of a basis, so checking the
/// flats covers every subset.
pub fn check_simplicity(arr: &ArrangementSpec) -> SimplicityReport {
    let locus = f_locus(arr);
    let n = arr.dim();
    let normals = arr.normal_matrix();
    let mut violating_empty = Vec::new();
    let mut violating_basis = Vec::new();
    for f in &locus.flats {
        if f.members.len() > n {
            violating_empty.push(f.members.clone());
        }
        let stacked = normals.select_rows(&f.members);
        let snf = smith_normal_form(&stacked);
        if snf.rank() < f.members.len() || !snf.torsion_free() {
            violating_basis.push(f.members.clone());
        }
    }
    SimplicityReport {
        empty_intersections: violating_empty.is_empty(),
        basis_extension: violating_basis.is_empty(),
        violating_empty,
        violating_basis,
        truncated: locus.truncated,
    }
}
