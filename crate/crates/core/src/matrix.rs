//! Dense row-major matrices over integers, exact scalars and polynomials.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rings::{BaseRing, RingScalar};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IntMatrix = Matrix<BigInt>;
pub type ScalarMatrix = Matrix<RingScalar>;

/// Serialized as a list of rows.
impl<T: serde::Serialize> serde::Serialize for Matrix<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            seq.serialize_element(&self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        seq.end()
    }
}

impl<'de, T: serde::Deserialize<'de> + Clone> serde::Deserialize<'de> for Matrix<T> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<T>> = Vec::deserialize(d)?;
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(rows, cols).map_err(serde::de::Error::custom)
    }
}

impl<T: Clone> Matrix<T> {
    pub fn filled(rows: usize, cols: usize, value: T) -> Self {
        Matrix { rows, cols, data: vec![value; rows * cols] }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Build from row vectors; `cols` is needed when there are no rows.
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Dimension(format!("row {i} has length {} (expected {cols})", r.len())));
            }
            data.extend(r);
        }
        Ok(Matrix { rows: n, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [T] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<U: Clone>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<U: Clone, E>(&self, f: impl FnMut(&T) -> std::result::Result<U, E>) -> std::result::Result<Matrix<U>, E> {
        Ok(Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect::<std::result::Result<_, _>>()? })
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Rows `r0..r1`, all columns.
    pub fn row_block(&self, r0: usize, r1: usize) -> Self {
        Matrix::from_fn(r1 - r0, self.cols, |i, j| self[(r0 + i, j)].clone())
    }

    /// Columns `c0..c1`, all rows.
    pub fn col_block(&self, c0: usize, c1: usize) -> Self {
        Matrix::from_fn(self.rows, c1 - c0, |i, j| self[(i, c0 + j)].clone())
    }

    /// Stack `self` on top of `other`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::Dimension(format!("vstack {}x{} with {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix { rows: self.rows + other.rows, cols: self.cols, data })
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::filled(rows, cols, T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Block-diagonal sum.
    pub fn block_diag(blocks: &[&Self]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(r0 + i, c0 + j)] = b[(i, j)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero,
    for<'a> &'a T: Mul<&'a T, Output = T> + Add<&'a T, Output = T>,
{
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = T::zero();
                for k in 0..self.cols {
                    let a = &self[(i, k)];
                    if a.is_zero() {
                        continue;
                    }
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    acc = &acc + &(a * b);
                }
                out.push(acc);
            }
        }
        Ok(Matrix { rows: self.rows, cols: other.cols, data: out })
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if self.cols != v.len() {
            return Err(Error::Dimension(format!("{}x{} times vector of length {}", self.rows, self.cols, v.len())));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect())
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
        }
        write!(f, "]")
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub fn int_matrix(rows: &[&[i64]]) -> IntMatrix {
    let cols = rows.first().map_or(0, |r| r.len());
    Matrix::from_fn(rows.len(), cols, |i, j| BigInt::from(rows[i][j]))
}

pub fn scalar_matrix(rows: &[&[i64]]) -> ScalarMatrix {
    let cols = rows.first().map_or(0, |r| r.len());
    Matrix::from_fn(rows.len(), cols, |i, j| RingScalar::from_int(rows[i][j]))
}

impl IntMatrix {
    pub fn to_scalar(&self) -> ScalarMatrix {
        self.map(|x| RingScalar::from(x))
    }
}

impl ScalarMatrix {
    /// Integer matrix if every entry is an integer.
    pub fn to_int(&self) -> Option<IntMatrix> {
        self.try_map(|x| x.to_bigint().ok_or(())).ok()
    }

    pub fn entries_in(&self, ring: &BaseRing) -> bool {
        self.iter().all(|x| ring.contains(x))
    }

    /// Determinant by fraction-producing Gaussian elimination.
    pub fn det(&self) -> Result<RingScalar> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!("determinant of {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = RingScalar::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[(r, c)].is_zero()) else {
                return Ok(RingScalar::zero());
            };
            if p != c {
                a.swap_rows(p, c);
                det = -det;
            }
            let pivot = a[(c, c)].clone();
            det = &det * &pivot;
            for r in c + 1..n {
                if a[(r, c)].is_zero() {
                    continue;
                }
                let f = &a[(r, c)] / &pivot;
                for k in c..n {
                    let v = &a[(c, k)] * &f;
                    a[(r, k)] = &a[(r, k)] - &v;
                }
            }
        }
        Ok(det)
    }

    /// Inverse over the rationals.
    pub fn inverse(&self) -> Result<ScalarMatrix> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!("inverse of {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = ScalarMatrix::identity(n);
        for c in 0..n {
            let p = (c..n)
                .find(|&r| !a[(r, c)].is_zero())
                .ok_or_else(|| Error::Dimension("singular matrix".into()))?;
            a.swap_rows(p, c);
            inv.swap_rows(p, c);
            let pivot = a[(c, c)].recip().expect("nonzero pivot");
            for k in 0..n {
                a[(c, k)] = &a[(c, k)] * &pivot;
                inv[(c, k)] = &inv[(c, k)] * &pivot;
            }
            for r in 0..n {
                if r == c || a[(r, c)].is_zero() {
                    continue;
                }
                let f = a[(r, c)].clone();
                for k in 0..n {
                    let v = &a[(c, k)] * &f;
                    a[(r, k)] = &a[(r, k)] - &v;
                    let w = &inv[(c, k)] * &f;
                    inv[(r, k)] = &inv[(r, k)] - &w;
                }
            }
        }
        Ok(inv)
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let (n, m) = (a.rows, a.cols);
        let mut r = 0;
        for c in 0..m {
            let Some(p) = (r..n).find(|&i| !a[(i, c)].is_zero()) else { continue };
            a.swap_rows(p, r);
            let pivot = a[(r, c)].clone();
            for i in r + 1..n {
                if a[(i, c)].is_zero() {
                    continue;
                }
                let f = &a[(i, c)] / &pivot;
                for k in c..m {
                    let v = &a[(r, k)] * &f;
                    a[(i, k)] = &a[(i, k)] - &v;
                }
            }
            r += 1;
            if r == n {
                break;
            }
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_and_inverse() {
        let m = scalar_matrix(&[&[2, 1], &[7, 4]]);
        assert_eq!(m.det().unwrap(), RingScalar::one());
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), ScalarMatrix::identity(2));
        let a = scalar_matrix(&[&[0, 0, -2], &[0, 1, 0], &[-2, 0, 0]]);
        assert_eq!(a.det().unwrap(), RingScalar::from_int(-4));
        assert_eq!(scalar_matrix(&[&[1, 2], &[2, 4]]).det().unwrap(), RingScalar::zero());
        assert_eq!(scalar_matrix(&[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn block_diag_shapes() {
        let a = scalar_matrix(&[&[1]]);
        let b = scalar_matrix(&[&[2, 3], &[4, 5]]);
        let d = ScalarMatrix::block_diag(&[&a, &b]);
        assert_eq!(d.rows(), 3);
        assert_eq!(d[(1, 2)], RingScalar::from_int(3));
        assert!(d[(0, 1)].is_zero());
    }
}
