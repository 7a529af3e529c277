//! Local normal forms of the moment map and deformation lines.
//!
//! Near a point of a codimension-2 leaf with multiplicity `m` the variety looks
//! like `{x₁x₂ = x₃^m} × (C* × C)^{n−1}` with moment map `(x₃, t₁, …, t_{n−1})`.
//! Along a one-parameter deformation the equation becomes
//! `x₁′x₂′ = (x₃ + a₁t)⋯(x₃ + a_mt)` with distinct `aᵢ`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::arrangement::{build_discriminant, build_family_slice, f_locus, ArrangementSpec, MultiplicityMode};
use crate::hypertoric::{HypertoricData, LeafDescriptor};
use crate::lattice::{rational, IntMatrix};
use crate::{Error, Rat, Result};

/// Residue form on the surface factor plus the standard form on the torus factors.
pub const SYMPLECTIC_FORM_TAG: &str = "Res(dx1^dx2^dx3/(x1x2 - f(x3))) + sum_j dt_j^dtheta_j/theta_j";

/// Homogeneous polynomial `Σₖ cₖ x₃ᵏ t^(m−k)`, stored as `[c₀, …, c_m]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BivariateForm {
    pub coeffs: Vec<Rat>,
}

impl BivariateForm {
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Coefficients of the polynomial in `x₃` obtained by fixing `t`.
    pub fn at(&self, t: &Rat) -> Vec<Rat> {
        let m = self.degree();
        self.coeffs.iter().enumerate().map(|(k, c)| c * pow(t, m - k)).collect()
    }

    pub fn evaluate(&self, x3: &Rat, t: &Rat) -> Rat {
        self.at(t).iter().rev().fold(Rat::zero(), |acc, c| acc * x3 + c)
    }

    /// Rendering in the variables `x3` and `t`, highest power of `x3` first.
    pub fn render(&self) -> String {
        let m = self.degree();
        let mut terms: Vec<String> = Vec::new();
        for k in (0..=m).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let mono = [monomial("x3", k), monomial("t", m - k)].into_iter().flatten().join("*");
            let term = match (mono.is_empty(), c.is_one(), (-c).is_one()) {
                (true, _, _) => format!("{c}"),
                (false, true, _) => mono,
                (false, _, true) => format!("-{mono}"),
                _ => format!("{c}*{mono}"),
            };
            terms.push(term);
        }
        if terms.is_empty() {
            return String::from("0");
        }
        let mut out = terms[0].clone();
        for t in &terms[1..] {
            match t.strip_prefix('-') {
                Some(rest) => out.push_str(&format!(" - {rest}")),
                None => out.push_str(&format!(" + {t}")),
            }
        }
        out
    }
}

fn monomial(var: &str, e: usize) -> Option<String> {
    match e {
        0 => None,
        1 => Some(String::from(var)),
        _ => Some(format!("{var}^{e}")),
    }
}

fn pow(x: &Rat, e: usize) -> Rat {
    (0..e).fold(Rat::one(), |acc, _| acc * x)
}

/// The central local model `x₁x₂ = x₃^m` over `n`-dimensional moment space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalModel {
    m: u32,
    n: usize,
}

impl LocalModel {
    pub fn new(m: u32, n: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidMultiplicity);
        }
        Ok(LocalModel { m, n })
    }

    pub fn multiplicity(&self) -> u32 {
        self.m
    }

    pub fn torus_rank(&self) -> usize {
        self.n
    }

    /// Right-hand side `x₃^m`.
    pub fn equation(&self) -> BivariateForm {
        let mut coeffs = vec![Rat::zero(); self.m as usize + 1];
        coeffs[self.m as usize] = Rat::one();
        BivariateForm { coeffs }
    }

    pub fn render_equation(&self) -> String {
        format!("x1*x2 = {}", self.equation().render())
    }

    /// `(x3, t1, …, t_{n−1})`.
    pub fn moment_coordinates(&self) -> Vec<String> {
        let mut v = vec![String::from("x3")];
        v.extend((1..self.n).map(|j| format!("t{j}")));
        v
    }

    pub fn symplectic_form(&self) -> &'static str {
        SYMPLECTIC_FORM_TAG
    }
}

pub fn local_model(leaf: &LeafDescriptor, n: usize) -> Result<LocalModel> {
    LocalModel::new(leaf.multiplicity, n)
}

/// `x₁′x₂′ = Π (x₃ + aᵢt)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DeformedLocalModel {
    base: LocalModel,
    shifts: Vec<Rat>,
    equation: BivariateForm,
}

impl DeformedLocalModel {
    pub fn base(&self) -> &LocalModel {
        &self.base
    }

    pub fn shifts(&self) -> &[Rat] {
        &self.shifts
    }

    pub fn equation(&self) -> &BivariateForm {
        &self.equation
    }

    /// The equation with `t = 0` substituted.
    pub fn at_zero(&self) -> BivariateForm {
        let coeffs = self.equation.at(&Rat::zero());
        BivariateForm { coeffs }
    }

    /// Values of `x₃` over which the fibre at `t` is singular: `−aᵢt`, ascending.
    pub fn discriminant_points(&self, t: &Rat) -> Vec<Rat> {
        let mut v: Vec<Rat> = self.shifts.iter().map(|a| -(a * t)).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn render_equation(&self) -> String {
        format!("x1'*x2' = {}", self.equation.render())
    }

    pub fn render_factored(&self) -> String {
        let factors = self.shifts.iter().map(|a| {
            if a.is_zero() {
                String::from("x3")
            } else if a.is_one() {
                String::from("(x3 + t)")
            } else if a < &Rat::zero() {
                format!("(x3 - {}*t)", -a)
            } else {
                format!("(x3 + {a}*t)")
            }
        });
        format!("x1'*x2' = {}", factors.format("*"))
    }
}

/// Expands `Π (x₃ + aᵢt)`; coefficient of `x₃ᵏ t^(m−k)` is `e_{m−k}(a)`.
pub fn deform_local_model(model: &LocalModel, shifts: &[Rat]) -> Result<DeformedLocalModel> {
    let m = model.m as usize;
    if shifts.len() != m {
        return Err(Error::ArityMismatch { expected: m, found: shifts.len() });
    }
    for j in 0..m {
        if let Some(i) = (0..j).find(|&i| shifts[i] == shifts[j]) {
            return Err(Error::DuplicateShift(i, j));
        }
    }
    // elementary symmetric polynomials, e[k] = e_k(a)
    let mut e = vec![Rat::zero(); m + 1];
    e[0] = Rat::one();
    for a in shifts {
        for k in (1..=m).rev() {
            let term = &e[k - 1] * a;
            e[k] += term;
        }
    }
    let coeffs = (0..=m).map(|k| e[m - k].clone()).collect();
    Ok(DeformedLocalModel { base: model.clone(), shifts: shifts.to_vec(), equation: BivariateForm { coeffs } })
}

/// A line `t ↦ t·(A·λ)` in the base of the family, given by offsets `λ`.
///
/// Over `t` the walls are `⟨bᵢ, η⟩ = tλᵢ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationLine {
    /// `A·λ`, a vector of length `N − n`.
    pub direction: Vec<Rat>,
    pub offsets: Vec<Rat>,
    /// Rows of `B` forming a Z-basis; their offsets are zero.
    pub basis_rows: Vec<usize>,
    /// Some seed offset on a basis row was nonzero and was set to zero.
    pub normalized: bool,
    /// The seeds failed the genericity check and were repaired.
    pub adjusted: bool,
}

impl DeformationLine {
    pub fn is_empty(&self) -> bool {
        self.direction.is_empty()
    }
}

/// Lexicographically first set of `n` rows of `B` with determinant `±1`.
pub fn default_basis_rows(h: &HypertoricData) -> Result<Vec<usize>> {
    let (big_n, n) = (h.num_coordinates(), h.torus_rank());
    (0..big_n).combinations(n).find(|rows| is_z_basis(h.b(), rows)).ok_or(Error::NotABasis(Vec::new()))
}

fn is_z_basis(b: &IntMatrix, rows: &[usize]) -> bool {
    b.select_rows(rows).determinant().is_some_and(|d| d == 1.into() || d == (-1).into())
}

/// Offsets `λ` from `seeds` with the basis rows forced to zero.
///
/// When the result fails [`verify_genericity`], the non-basis offsets are
/// replaced by `1, 2, 3, …` one at a time in index order until it passes.
/// With `N = n` there is nothing to choose and the empty line is returned.
pub fn choose_deformation_line(h: &HypertoricData, basis_rows: &[usize], seeds: &[Rat]) -> Result<DeformationLine> {
    let (big_n, n) = (h.num_coordinates(), h.torus_rank());
    if basis_rows.len() != n {
        return Err(Error::ArityMismatch { expected: n, found: basis_rows.len() });
    }
    if let Some(&index) = basis_rows.iter().find(|&&i| i >= big_n) {
        return Err(Error::IndexOutOfRange { index, len: big_n });
    }
    if !is_z_basis(h.b(), basis_rows) {
        return Err(Error::NotABasis(basis_rows.to_vec()));
    }
    if seeds.len() != big_n {
        return Err(Error::ArityMismatch { expected: big_n, found: seeds.len() });
    }
    let mut offsets = seeds.to_vec();
    let mut normalized = false;
    for &i in basis_rows {
        normalized |= !offsets[i].is_zero();
        offsets[i] = Rat::zero();
    }
    let mut line = DeformationLine {
        direction: direction(h, &offsets),
        offsets,
        basis_rows: basis_rows.to_vec(),
        normalized,
        adjusted: false,
    };
    if big_n == n {
        return Ok(line);
    }
    let free: Vec<usize> = (0..big_n).filter(|i| !basis_rows.contains(i)).collect();
    let mut value = 1i64;
    let mut next = free.iter();
    while !verify_genericity(h, &line).passes() {
        let Some(&i) = next.next() else { break };
        line.offsets[i] = Rat::from_integer(value.into());
        line.adjusted = true;
        value += 1;
    }
    line.direction = direction(h, &line.offsets);
    debug_assert!(verify_genericity(h, &line).passes());
    Ok(line)
}

fn direction(h: &HypertoricData, offsets: &[Rat]) -> Vec<Rat> {
    h.a().iter_rows().map(|row| crate::lattice::dot_rat(row, offsets)).collect()
}

/// Outcome of the genericity checks for a deformation line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericityReport {
    /// For `t ≠ 0` the walls `⟨bᵢ, η⟩ = tλᵢ` have no common point.
    pub empty_intersection: bool,
    /// At `t = 0` every wall passes through the origin and the slice is the
    /// central discriminant.
    pub degenerates_at_zero: bool,
    /// Some non-basis offset is nonzero.
    pub offsets_nonzero: bool,
    /// For `t ≠ 0` the `N` walls are pairwise different.
    pub distinct_walls: bool,
    /// Offsets on the basis rows are zero.
    pub normalized: bool,
    /// `N = n`: no offsets to test, every check holds trivially.
    pub vacuous: bool,
}

impl GenericityReport {
    pub fn passes(&self) -> bool {
        self.empty_intersection
            && self.degenerates_at_zero
            && self.offsets_nonzero
            && self.distinct_walls
            && self.normalized
    }
}

pub fn verify_genericity(h: &HypertoricData, line: &DeformationLine) -> GenericityReport {
    let (big_n, n) = (h.num_coordinates(), h.torus_rank());
    let normalized = line.basis_rows.iter().all(|&i| line.offsets.get(i).is_some_and(Zero::is_zero));
    if big_n == n {
        return GenericityReport {
            empty_intersection: true,
            degenerates_at_zero: true,
            offsets_nonzero: true,
            distinct_walls: true,
            normalized,
            vacuous: true,
        };
    }
    if line.offsets.len() != big_n {
        return GenericityReport {
            empty_intersection: false,
            degenerates_at_zero: false,
            offsets_nonzero: false,
            distinct_walls: false,
            normalized: false,
            vacuous: false,
        };
    }
    // solutions (η, t) of B·η − t·λ = 0; a common point for t ≠ 0 exists iff
    // some kernel vector has nonzero t-coordinate
    let rows: Vec<Vec<Rat>> = h
        .b()
        .iter_rows()
        .zip(&line.offsets)
        .map(|(r, l)| {
            let mut row: Vec<Rat> = r.iter().map(|x| Rat::from_integer(x.clone())).collect();
            row.push(-l.clone());
            row
        })
        .collect();
    let kernel = rational::nullspace(&rows, n + 1);
    let empty_intersection = kernel.iter().all(|v| v[n].is_zero());

    let central = build_discriminant(h.b(), MultiplicityMode::GroupParallel).expect("validated rows");
    let degenerates_at_zero = build_family_slice(h.b(), &line.offsets, &Rat::zero())
        .is_ok_and(|s| s.is_central() && s.same_divisor(&central));
    let offsets_nonzero = (0..big_n).any(|i| !line.basis_rows.contains(&i) && !line.offsets[i].is_zero());
    let distinct_walls = build_family_slice(h.b(), &line.offsets, &Rat::one()).is_ok_and(|s| s.len() == big_n);
    GenericityReport {
        empty_intersection,
        degenerates_at_zero,
        offsets_nonzero,
        distinct_walls,
        normalized,
        vacuous: false,
    }
}

/// The arrangement over the point `t` of the line.
pub fn family_slice(h: &HypertoricData, line: &DeformationLine, t: &Rat) -> Result<ArrangementSpec> {
    build_family_slice(h.b(), &line.offsets, t)
}

/// Codimension of the multi-incidence locus in the total base `(𝔱ⁿ)* × C`.
///
/// The locus sits over `t = 0`, so this is one more than its codimension in
/// the central slice. `None` when no two walls meet.
pub fn family_f_codimension(h: &HypertoricData) -> Option<usize> {
    let central = build_discriminant(h.b(), MultiplicityMode::GroupParallel).ok()?;
    f_locus(&central).codimension().map(|c| c + 1)
}
