use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Int, Rat, Result};

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Int>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: data.len() });
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Int::one();
        }
        m
    }

    /// Builds a matrix from row vectors. `cols` fixes the width when `rows` is empty.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Int>>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for row in rows {
            if row.len() != cols {
                return Err(Error::RaggedRows);
            }
            data.extend(row);
        }
        Ok(IntMatrix { rows: n, cols, data })
    }

    /// Convenience constructor from small integers; panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect();
        Self::from_rows(cols, rows).expect("ragged rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Int) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl ExactSizeIterator<Item = &[Int]> + '_ {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn column(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Int>> {
        self.iter_rows().map(|r| r.to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: rhs.rows });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.get(k, j);
                }
            }
        }
        Ok(out)
    }

    /// Matrix–vector product `M·x`.
    pub fn apply(&self, x: &[Int]) -> Result<Vec<Int>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: x.len() });
        }
        Ok(self.iter_rows().map(|r| dot(r, x)).collect())
    }

    /// Rows selected by index, in the given order.
    pub fn select_rows(&self, idx: &[usize]) -> IntMatrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        IntMatrix { rows: idx.len(), cols: self.cols, data }
    }

    pub fn select_cols(&self, idx: &[usize]) -> IntMatrix {
        let mut data = Vec::with_capacity(idx.len() * self.rows);
        for i in 0..self.rows {
            for &j in idx {
                data.push(self.get(i, j).clone());
            }
        }
        IntMatrix { rows: self.rows, cols: idx.len(), data }
    }

    /// Determinant by Bareiss fraction-free elimination. `None` if not square.
    pub fn determinant(&self) -> Option<Int> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut m = self.to_rows();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n {
            if m[k][k].is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                    return Some(Int::zero());
                };
                m.swap(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                    m[i][j] = v;
                }
            }
            prev = m[k][k].clone();
        }
        Some(if n == 0 { Int::one() } else { sign * &m[n - 1][n - 1] })
    }

    /// Rank over Q, by fraction-free elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.to_rows();
        let mut rank = 0;
        let mut prev = Int::one();
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(p) = (rank..self.rows).find(|&i| !m[i][col].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            for i in rank + 1..self.rows {
                for j in col + 1..self.cols {
                    let v = (&m[i][j] * &m[rank][col] - &m[i][col] * &m[rank][j]) / &prev;
                    m[i][j] = v;
                }
                m[i][col] = Int::zero();
            }
            prev = m[rank][col].clone();
            rank += 1;
        }
        rank
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for x in &mut self.data[i * self.cols..(i + 1) * self.cols] {
            *x = -core::mem::take(x);
        }
    }

    /// `row[target] -= factor · row[source]`.
    pub(crate) fn sub_row_multiple(&mut self, target: usize, source: usize, factor: &Int) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let delta = factor * &self.data[source * self.cols + j];
            self.data[target * self.cols + j] -= delta;
        }
    }

    /// `col[target] -= factor · col[source]`.
    pub(crate) fn sub_col_multiple(&mut self, target: usize, source: usize, factor: &Int) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let delta = factor * &self.data[i * self.cols + source];
            self.data[i * self.cols + target] -= delta;
        }
    }

    pub(crate) fn add_row(&mut self, target: usize, source: usize) {
        for j in 0..self.cols {
            let v = self.data[source * self.cols + j].clone();
            self.data[target * self.cols + j] += v;
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.iter_rows().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

pub(crate) fn dot(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn dot_rat(a: &[Int], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + y * Rat::from_integer(x.clone()))
}

/// An integer vector, typically a normal `b` of a rational hyperplane.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeVector(Vec<Int>);

impl LatticeVector {
    pub fn new(coords: Vec<Int>) -> Self {
        LatticeVector(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        LatticeVector(coords.iter().map(|&x| Int::from(x)).collect())
    }

    pub fn coords(&self) -> &[Int] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Int> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Non-negative gcd of the coordinates; zero for the zero vector.
    pub fn content(&self) -> Int {
        self.0.iter().fold(Int::zero(), |g, x| g.gcd(x))
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    /// Divides out the content. The zero vector is returned unchanged.
    pub fn primitive_part(&self) -> LatticeVector {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        LatticeVector(self.0.iter().map(|x| x / &g).collect())
    }

    /// Sign of the first nonzero coordinate (0 for the zero vector).
    pub fn leading_sign(&self) -> i8 {
        match self.0.iter().find(|x| !x.is_zero()) {
            Some(x) if x.is_negative() => -1,
            Some(_) => 1,
            None => 0,
        }
    }

    /// Sign-normalized copy: first nonzero coordinate positive.
    pub fn canonical(&self) -> LatticeVector {
        if self.leading_sign() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.leading_sign() >= 0
    }

    pub fn dot(&self, other: &[Int]) -> Int {
        dot(&self.0, other)
    }

    pub fn dot_rat(&self, point: &[Rat]) -> Rat {
        dot_rat(&self.0, point)
    }

    /// True iff the two vectors span the same line (both nonzero).
    pub fn is_parallel(&self, other: &LatticeVector) -> bool {
        if self.dim() != other.dim() || self.is_zero() || other.is_zero() {
            return false;
        }
        self.primitive_part().canonical() == other.primitive_part().canonical()
    }
}

impl core::ops::Neg for LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector(self.0.into_iter().map(|x| -x).collect())
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_small() {
        assert_eq!(IntMatrix::from_i64(&[&[2, 0], &[0, 3]]).determinant(), Some(Int::from(6)));
        assert_eq!(IntMatrix::from_i64(&[&[0, 1], &[1, 0]]).determinant(), Some(Int::from(-1)));
        assert_eq!(IntMatrix::from_i64(&[&[1, 2], &[2, 4]]).determinant(), Some(Int::zero()));
        assert_eq!(IntMatrix::zeros(0, 0).determinant(), Some(Int::one()));
        assert_eq!(IntMatrix::from_i64(&[&[1, 2]]).determinant(), None);
        let m = IntMatrix::from_i64(&[&[0, 2, 1], &[3, -1, 4], &[1, 1, 1]]);
        // cofactor expansion along the first row: -2*(3-4) + 1*(3+1) = 6
        assert_eq!(m.determinant(), Some(Int::from(6)));
    }

    #[test]
    fn rank_small() {
        assert_eq!(IntMatrix::from_i64(&[&[1, 0], &[1, 0], &[0, 1]]).rank(), 2);
        assert_eq!(IntMatrix::from_i64(&[&[1, 0], &[1, 0]]).rank(), 1);
        assert_eq!(IntMatrix::zeros(3, 2).rank(), 0);
        assert_eq!(IntMatrix::from_i64(&[&[0, 1, 1], &[0, 2, 2], &[1, 0, 0]]).rank(), 2);
    }

    #[test]
    fn primitivity() {
        assert!(LatticeVector::from_i64(&[1, 0]).is_primitive());
        assert!(!LatticeVector::from_i64(&[2, 4]).is_primitive());
        assert!(LatticeVector::from_i64(&[3, 5]).is_primitive());
        assert!(!LatticeVector::from_i64(&[0, 0]).is_primitive());
        assert_eq!(LatticeVector::from_i64(&[0, -2, 4]).primitive_part(), LatticeVector::from_i64(&[0, -1, 2]));
        assert_eq!(LatticeVector::from_i64(&[0, -1, 2]).canonical(), LatticeVector::from_i64(&[0, 1, -2]));
    }

    #[test]
    fn ragged_rows_rejected() {
        let rows = vec![vec![Int::one()], vec![Int::one(), Int::zero()]];
        assert_eq!(IntMatrix::from_rows(1, rows), Err(Error::RaggedRows));
    }
}
