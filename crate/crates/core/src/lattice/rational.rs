//! Small exact linear solver over Q.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::{Int, Rat};

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

pub fn rat_frac(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(m: &mut [Vec<Rat>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in 0..m[i].len() {
                let delta = &f * &m[r][j];
                m[i][j] -= delta;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// One solution of `M·x = rhs` (free variables set to zero), or `None` when inconsistent.
pub fn solve(rows: &[Vec<Rat>], rhs: &[Rat], cols: usize) -> Option<Vec<Rat>> {
    let mut aug: Vec<Vec<Rat>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut row = r.clone();
            row.push(b.clone());
            row
        })
        .collect();
    let pivots = rref(&mut aug, cols + 1);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Rat::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = aug[i][cols].clone();
    }
    Some(x)
}

/// Basis of `{x : M·x = 0}` over Q.
pub fn nullspace(rows: &[Vec<Rat>], cols: usize) -> Vec<Vec<Rat>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rat::zero(); cols];
            x[f] = Rat::one();
            for (i, &p) in pivots.iter().enumerate() {
                x[p] = -m[i][f].clone();
            }
            x
        })
        .collect()
}

pub fn rank(rows: &[Vec<Rat>], cols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, cols).len()
}

/// Integer rows as rationals.
pub fn to_rat_rows<'a>(rows: impl IntoIterator<Item = &'a [Int]>) -> Vec<Vec<Rat>> {
    rows.into_iter().map(|r| r.iter().map(|x| Rat::from_integer(x.clone())).collect()).collect()
}
