//! Exact integer linear algebra: normal forms, primitivity, unimodularity and
//! Gale duality.

mod matrix;
mod normal_form;
pub mod rational;

use alloc::vec::Vec;

use itertools::Itertools;
use num_traits::{One, Signed, Zero};

pub(crate) use matrix::dot_rat;
pub use matrix::{IntMatrix, LatticeVector};
pub use normal_form::{hermite_normal_form, smith_normal_form, SmithResult};

use crate::{Error, Int, Result};

/// Largest number of maximal minors [`unimodularity`] will enumerate.
pub const MINOR_ENUMERATION_LIMIT: u128 = 1_000_000;

pub fn is_primitive(v: &LatticeVector) -> bool {
    v.is_primitive()
}

/// How a unimodularity verdict was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UnimodularityMethod {
    /// Every maximal minor was computed.
    MinorEnumeration,
    /// Too many minors; only the Smith criterion (full rank, all invariant
    /// factors 1) was checked. That criterion is necessary but not sufficient,
    /// so a `true` verdict reached this way is provisional.
    SmithFallback,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct UnimodularityVerdict {
    pub unimodular: bool,
    pub method: UnimodularityMethod,
}

/// Every maximal minor lies in {−1, 0, 1} and at least one is nonzero.
///
/// The empty minor of a matrix with no rows (or no columns) is 1.
pub fn is_unimodular(m: &IntMatrix) -> bool {
    unimodularity(m).unimodular
}

pub fn unimodularity(m: &IntMatrix) -> UnimodularityVerdict {
    let k = m.rows().min(m.cols());
    let wide = m.cols() >= m.rows();
    let big = m.rows().max(m.cols());
    if binomial(big, k) > MINOR_ENUMERATION_LIMIT {
        return UnimodularityVerdict { unimodular: smith_criterion(m), method: UnimodularityMethod::SmithFallback };
    }
    if m.is_square() {
        let det = m.determinant().expect("square");
        return UnimodularityVerdict { unimodular: det.abs().is_one(), method: UnimodularityMethod::MinorEnumeration };
    }
    let mut any_nonzero = false;
    for subset in (0..big).combinations(k) {
        let sub = if wide { m.select_cols(&subset) } else { m.select_rows(&subset) };
        let det = sub.determinant().expect("square");
        if det.abs() > Int::one() {
            return UnimodularityVerdict { unimodular: false, method: UnimodularityMethod::MinorEnumeration };
        }
        any_nonzero |= !det.is_zero();
    }
    UnimodularityVerdict { unimodular: any_nonzero, method: UnimodularityMethod::MinorEnumeration }
}

/// Full rank and every invariant factor equal to 1.
pub fn smith_criterion(m: &IntMatrix) -> bool {
    let snf = smith_normal_form(m);
    snf.rank() == m.rows().min(m.cols()) && snf.torsion_free()
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// Basis of the left kernel `{a ∈ Z^rows : a·M = 0}`, one vector per row.
///
/// The rows are taken from the unimodular transform of the Hermite form, so
/// they span the full (automatically saturated) kernel lattice.
pub fn left_kernel(m: &IntMatrix) -> IntMatrix {
    let (h, u) = hermite_normal_form(m);
    let rank = (0..h.rows()).take_while(|&i| h.row(i).iter().any(|x| !x.is_zero())).count();
    let idx: Vec<usize> = (rank..m.rows()).collect();
    u.select_rows(&idx)
}

/// Basis of the right kernel `{x ∈ Z^cols : M·x = 0}`, one vector per row.
pub fn right_kernel(m: &IntMatrix) -> IntMatrix {
    left_kernel(&m.transpose())
}

/// Drops zero rows of a row-style Hermite form, giving a canonical lattice basis.
pub fn canonical_row_basis(m: &IntMatrix) -> IntMatrix {
    let (h, _) = hermite_normal_form(m);
    let keep: Vec<usize> = (0..h.rows()).filter(|&i| h.row(i).iter().any(|x| !x.is_zero())).collect();
    h.select_rows(&keep)
}

/// The Gale dual `A` of `B` (`N×n`): an `(N−n)×N` matrix with
/// `0 → Zⁿ →B Z^N →A Z^(N−n) → 0` exact.
///
/// Rows of `A` are the Hermite-normalized basis of the left kernel of `B`, so
/// the output is deterministic. For `N = n` the result is the empty `0×N`
/// matrix.
pub fn gale_dual(b: &IntMatrix) -> Result<IntMatrix> {
    let (big_n, n) = (b.rows(), b.cols());
    let snf = smith_normal_form(b);
    if snf.rank() < n {
        return Err(Error::NotInjective { rank: snf.rank(), expected: n });
    }
    if !snf.torsion_free() {
        return Err(Error::TorsionCokernel { factors: snf.invariant_factors });
    }
    let kernel = left_kernel(b);
    debug_assert_eq!(kernel.rows(), big_n - n);
    if kernel.rows() == 0 {
        return Ok(IntMatrix::zeros(0, big_n));
    }
    Ok(canonical_row_basis(&kernel))
}
