//! Deterministic generic points.
//!
//! Candidates are tried in a fixed order: windows of consecutive primes, then
//! points `(s, s², …, sᵏ)` on the moment curve. An affine form that is not
//! constant vanishes at no more than `k` points of the curve, so the search
//! always ends.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::ArrangementSpec;
use crate::lattice::{rational, right_kernel};
use crate::{Error, Int, Rat, Result};

const PRIME_WINDOWS: usize = 16;

fn primes(count: usize) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::with_capacity(count);
    let mut k = 2u64;
    while out.len() < count {
        if out.iter().take_while(|&&p| p * p <= k).all(|&p| !k.is_multiple_of(p)) {
            out.push(k);
        }
        k += 1;
    }
    out
}

/// An affine form `c ↦ ⟨coeffs, c⟩ − rhs` to be avoided.
struct Form {
    coeffs: Vec<Rat>,
    rhs: Rat,
}

impl Form {
    fn vanishes(&self, c: &[Rat]) -> bool {
        let v: Rat = self.coeffs.iter().zip(c).map(|(a, x)| a * x).sum();
        v == self.rhs
    }
}

/// First candidate point in `Qᵏ` where no form vanishes. Constant forms are ignored.
fn avoid(forms: &[Form], k: usize) -> Vec<Rat> {
    let live: Vec<&Form> = forms.iter().filter(|f| f.coeffs.iter().any(|a| !a.is_zero())).collect();
    let ok = |c: &[Rat]| live.iter().all(|f| !f.vanishes(c));
    let ps = primes(k + PRIME_WINDOWS);
    for w in 0..PRIME_WINDOWS {
        let c: Vec<Rat> = ps[w..w + k].iter().map(|&p| Rat::from_integer(Int::from(p))).collect();
        if ok(&c) {
            return c;
        }
    }
    let mut s = Int::one();
    loop {
        let mut c = Vec::with_capacity(k);
        let mut pow = s.clone();
        for _ in 0..k {
            c.push(Rat::from_integer(pow.clone()));
            pow *= &s;
        }
        if ok(&c) {
            return c;
        }
        s += 1;
    }
}

/// A point on no hyperplane of `arr`.
pub fn generic_point(arr: &ArrangementSpec) -> Vec<Rat> {
    let forms: Vec<Form> = arr
        .hyperplanes()
        .map(|h| Form {
            coeffs: h.normal().coords().iter().map(|x| Rat::from_integer(x.clone())).collect(),
            rhs: h.offset().clone(),
        })
        .collect();
    avoid(&forms, arr.dim())
}

/// A point on hyperplane `index` and on no other hyperplane of `arr`.
///
/// The hyperplane is parametrized as `η₀ + Σ cₖdₖ` with `η₀ = λb/|b|²` and
/// `dₖ` an integer basis of `b^⊥`; the parameters `c` are then chosen generic.
pub fn generic_point_on(arr: &ArrangementSpec, index: usize) -> Result<Vec<Rat>> {
    let Some(target) = arr.components().get(index).map(|c| &c.hyperplane) else {
        return Err(Error::IndexOutOfRange { index, len: arr.len() });
    };
    let b = target.normal().coords();
    let norm2: Int = b.iter().map(|x| x * x).sum();
    let scale = target.offset() / Rat::from_integer(norm2);
    let eta0: Vec<Rat> = b.iter().map(|x| Rat::from_integer(x.clone()) * &scale).collect();
    let dirs = right_kernel(&crate::IntMatrix::from_rows(b.len(), vec![b.to_vec()]).expect("one row"));
    let dirs: Vec<Vec<Rat>> = rational::to_rat_rows(dirs.iter_rows());

    let forms: Vec<Form> = arr
        .hyperplanes()
        .enumerate()
        .filter(|&(j, _)| j != index)
        .map(|(_, h)| Form {
            coeffs: dirs.iter().map(|d| h.normal().dot_rat(d)).collect(),
            rhs: h.offset() - h.normal().dot_rat(&eta0),
        })
        .collect();
    let c = avoid(&forms, dirs.len());
    let mut eta = eta0;
    for (ck, d) in c.iter().zip(&dirs) {
        for (e, x) in eta.iter_mut().zip(d) {
            *e += ck * x;
        }
    }
    debug_assert!(target.contains(&eta));
    Ok(eta)
}
