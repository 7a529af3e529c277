//! Hilbert basis of the invariant monoid `{(u, v) ∈ ℕ^{2N} : u − v ∈ L}`, `L = B·Zⁿ`.
//!
//! Write an element as `(u, v) = (g⁺, g⁻) + Σ cᵢ(eᵢ, eᵢ)` with `g = u − v`.
//! Decomposing `g` conformally into Graver elements of `L` shows the monoid is
//! generated by the pairs `(g⁺, g⁻)` for Graver `g` together with the
//! `sᵢ = (eᵢ, eᵢ)`. Divisibility inside the monoid is componentwise `≤`, so the
//! Hilbert basis is the set of minimal elements among those generators.

use alloc::collections::BinaryHeap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use super::{HypertoricData, MonomialGen};
use crate::{Error, Result};

/// Brute-force enumeration is refused above these sizes.
pub const BRUTE_FORCE_MAX_COORDS: usize = 6;
pub const BRUTE_FORCE_MAX_DEGREE: u32 = 8;

/// Limits on the Graver completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Critical-pair candidates reduced before giving up.
    pub max_candidates: usize,
    /// Largest allowed degree `|g⁺| + |g⁻|` of a new Graver element.
    pub max_degree: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_candidates: 100_000, max_degree: 20 }
    }
}

fn norm1(g: &[i64]) -> u64 {
    g.iter().map(|x| x.unsigned_abs()).sum()
}

/// `g ⊑ s`: same sign pattern where `g` is nonzero and `|gᵢ| ≤ |sᵢ|`.
fn conformal_le(g: &[i64], s: &[i64]) -> bool {
    g.iter().zip(s).all(|(&a, &b)| a == 0 || (a.signum() == b.signum() && a.abs() <= b.abs()))
}

fn sign_compatible(f: &[i64], g: &[i64]) -> bool {
    f.iter().zip(g).all(|(&a, &b)| a == 0 || b == 0 || a.signum() == b.signum())
}

fn normal_form(mut s: Vec<i64>, basis: &[Vec<i64>]) -> Vec<i64> {
    'outer: loop {
        if s.iter().all(|&x| x == 0) {
            return s;
        }
        for g in basis {
            if conformal_le(g, &s) {
                for (x, y) in s.iter_mut().zip(g) {
                    *x -= y;
                }
                continue 'outer;
            }
        }
        return s;
    }
}

fn minimal_elements(set: &[Vec<i64>]) -> Vec<Vec<i64>> {
    set.iter().filter(|g| !set.iter().any(|h| h != *g && conformal_le(h, g))).cloned().collect()
}

/// Elements found before the budget ran out, and the limit that was hit.
type Partial = (Vec<Vec<i64>>, &'static str);

/// Graver basis of the column lattice of `b` (rows `N`, the vectors live in `Z^N`).
///
/// Completion over critical pairs `f + g`, processed by increasing 1-norm.
/// On budget exhaustion the error carries the elements found so far.
fn graver_completion(b: &[Vec<i64>], big_n: usize, budget: Budget) -> core::result::Result<Vec<Vec<i64>>, Partial> {
    let cols = b.first().map_or(0, Vec::len);
    let mut basis: Vec<Vec<i64>> = Vec::new();
    for j in 0..cols {
        let c: Vec<i64> = b.iter().take(big_n).map(|r| r[j]).collect();
        if c.iter().all(|&x| x == 0) {
            continue;
        }
        let neg: Vec<i64> = c.iter().map(|x| -x).collect();
        for v in [c, neg] {
            if !basis.contains(&v) {
                basis.push(v);
            }
        }
    }
    let mut heap: BinaryHeap<Reverse<(u64, usize, Vec<i64>)>> = BinaryHeap::new();
    let mut seq = 0usize;
    let push_pairs = |heap: &mut BinaryHeap<_>, f: &[i64], others: &[Vec<i64>], seq: &mut usize| {
        for g in others {
            if sign_compatible(f, g) {
                continue;
            }
            let s: Vec<i64> = f.iter().zip(g).map(|(a, b)| a + b).collect();
            if s.iter().all(|&x| x == 0) {
                continue;
            }
            heap.push(Reverse((norm1(&s), *seq, s)));
            *seq += 1;
        }
    };
    for i in 0..basis.len() {
        let f = basis[i].clone();
        push_pairs(&mut heap, &f, &basis[i + 1..], &mut seq);
    }
    let mut processed = 0usize;
    while let Some(Reverse((_, _, s))) = heap.pop() {
        processed += 1;
        if processed > budget.max_candidates {
            return Err((minimal_elements(&basis), "candidate limit reached"));
        }
        let r = normal_form(s, &basis);
        if r.iter().all(|&x| x == 0) {
            continue;
        }
        if norm1(&r) > u64::from(budget.max_degree) {
            return Err((minimal_elements(&basis), "degree limit reached"));
        }
        push_pairs(&mut heap, &r, &basis, &mut seq);
        basis.push(r);
    }
    Ok(minimal_elements(&basis))
}

/// Graver basis of `L = B·Zⁿ`, sorted.
pub fn graver_basis(h: &HypertoricData, budget: Budget) -> Result<Vec<Vec<i64>>> {
    let b = h.b_i64()?;
    match graver_completion(&b, h.num_coordinates(), budget) {
        Ok(mut g) => {
            g.sort();
            Ok(g)
        }
        Err((partial, reason)) => Err(Error::budget(reason.into(), monomials_from(&partial, h.num_coordinates()))),
    }
}

fn monomials_from(graver: &[Vec<i64>], big_n: usize) -> Vec<MonomialGen> {
    let mut cands: Vec<MonomialGen> = graver
        .iter()
        .map(|g| {
            let u = g.iter().map(|&x| x.max(0) as u32).collect();
            let v = g.iter().map(|&x| (-x).max(0) as u32).collect();
            MonomialGen { u, v }
        })
        .collect();
    cands.extend((0..big_n).map(|i| MonomialGen::s(big_n, i)));
    let mut basis: Vec<MonomialGen> =
        cands.iter().filter(|g| !cands.iter().any(|h| h != *g && g.divisible_by(h))).cloned().collect();
    basis.sort();
    basis.dedup();
    basis
}

/// Minimal generating set of the invariant monoid, with the default [`Budget`].
pub fn hilbert_basis(h: &HypertoricData) -> Result<Vec<MonomialGen>> {
    hilbert_basis_with(h, Budget::default())
}

pub fn hilbert_basis_with(h: &HypertoricData, budget: Budget) -> Result<Vec<MonomialGen>> {
    let b = h.b_i64()?;
    match graver_completion(&b, h.num_coordinates(), budget) {
        Ok(g) => Ok(monomials_from(&g, h.num_coordinates())),
        Err((partial, reason)) => Err(Error::budget(
            format!("{reason}; Hilbert basis incomplete"),
            monomials_from(&partial, h.num_coordinates()),
        )),
    }
}

/// Every nonzero invariant monomial of degree at most `d`, sorted.
///
/// Exhaustive scan of `ℕ^{2N}`; refused for `N > 6` or `d > 8`.
pub fn brute_force_invariants(h: &HypertoricData, d: u32) -> Result<Vec<MonomialGen>> {
    let big_n = h.num_coordinates();
    if big_n > BRUTE_FORCE_MAX_COORDS || d > BRUTE_FORCE_MAX_DEGREE {
        return Err(Error::budget(format!("brute force refused for N = {big_n}, d = {d}"), Vec::new()));
    }
    let a = h.a_i64()?;
    let mut out = Vec::new();
    let mut exps = vec![0u32; 2 * big_n];
    scan(&mut exps, 0, d, &a, big_n, &mut out);
    out.sort();
    Ok(out)
}

fn scan(exps: &mut [u32], pos: usize, left: u32, a: &[Vec<i64>], big_n: usize, out: &mut Vec<MonomialGen>) {
    if pos == exps.len() {
        if exps.iter().all(|&e| e == 0) {
            return;
        }
        let invariant = a.iter().all(|row| {
            row.iter().enumerate().map(|(i, &c)| c * (i64::from(exps[i]) - i64::from(exps[big_n + i]))).sum::<i64>()
                == 0
        });
        if invariant {
            out.push(MonomialGen { u: exps[..big_n].to_vec(), v: exps[big_n..].to_vec() });
        }
        return;
    }
    for e in 0..=left {
        exps[pos] = e;
        scan(exps, pos + 1, left - e, a, big_n, out);
    }
    exps[pos] = 0;
}
