use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;
use crate::Int;

/// Row-style Hermite normal form `H = U·M` with `U` unimodular.
///
/// Pivots are positive and strictly move right going down; entries above a
/// pivot lie in `[0, pivot)`; zero rows sit at the bottom. An input already in
/// this form comes back with `U = I`.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut h = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        let mut found = false;
        loop {
            // smallest nonzero magnitude at or below the pivot row, first index on ties
            let best = (pivot_row..rows)
                .filter(|&i| !h.get(i, col).is_zero())
                .min_by(|&a, &b| h.get(a, col).abs().cmp(&h.get(b, col).abs()));
            let Some(best) = best else { break };
            found = true;
            h.swap_rows(pivot_row, best);
            u.swap_rows(pivot_row, best);
            let mut clean = true;
            for i in pivot_row + 1..rows {
                if h.get(i, col).is_zero() {
                    continue;
                }
                let q = h.get(i, col).div_floor(h.get(pivot_row, col));
                h.sub_row_multiple(i, pivot_row, &q);
                u.sub_row_multiple(i, pivot_row, &q);
                if !h.get(i, col).is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if !found {
            continue;
        }
        if h.get(pivot_row, col).is_negative() {
            h.negate_row(pivot_row);
            u.negate_row(pivot_row);
        }
        for i in 0..pivot_row {
            let q = h.get(i, col).div_floor(h.get(pivot_row, col));
            h.sub_row_multiple(i, pivot_row, &q);
            u.sub_row_multiple(i, pivot_row, &q);
        }
        pivot_row += 1;
    }
    (h, u)
}

/// Smith normal form `U·M·V = S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithResult {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    /// Nonzero diagonal entries of `S`, each dividing the next. Its length is the rank.
    pub invariant_factors: Vec<Int>,
}

impl SmithResult {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// `Coker(M)` restricted to the image's saturation is torsion-free.
    pub fn torsion_free(&self) -> bool {
        self.invariant_factors.iter().all(One::is_one)
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithResult {
    let (rows, cols) = (m.rows(), m.cols());
    let mut s = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut factors = Vec::new();

    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = s.get(i, j);
                    if x.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| x.abs() < s.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return SmithResult { s, u, v, invariant_factors: factors };
            };
            s.swap_rows(t, bi);
            u.swap_rows(t, bi);
            s.swap_cols(t, bj);
            v.swap_cols(t, bj);

            let mut dirty = false;
            for i in t + 1..rows {
                if s.get(i, t).is_zero() {
                    continue;
                }
                let q = s.get(i, t).div_floor(s.get(t, t));
                s.sub_row_multiple(i, t, &q);
                u.sub_row_multiple(i, t, &q);
                dirty |= !s.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                if s.get(t, j).is_zero() {
                    continue;
                }
                let q = s.get(t, j).div_floor(s.get(t, t));
                s.sub_col_multiple(j, t, &q);
                v.sub_col_multiple(j, t, &q);
                dirty |= !s.get(t, j).is_zero();
            }
            if dirty {
                continue;
            }
            // pivot must divide the whole trailing block
            let offender =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !Integer::is_multiple_of(s.get(i, j), s.get(t, t))));
            match offender {
                Some(i) => {
                    s.add_row(t, i);
                    u.add_row(t, i);
                }
                None => break,
            }
        }
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
        factors.push(s.get(t, t).clone());
    }
    SmithResult { s, u, v, invariant_factors: factors }
}
