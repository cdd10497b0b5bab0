use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{check_dim, Error, Result};
use crate::linalg::Scalar;

/// A dense row-major matrix of exact rationals. Zero-row and zero-column
/// matrices are legal values.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    /// Builds a matrix from row vectors, each of which must have `cols` entries.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            check_dim(cols, r.len())?;
            data.extend(r);
        }
        Ok(Matrix { rows: n, cols, data })
    }

    /// Convenience constructor for integer literals. Panics on ragged input.
    pub fn from_ints<R: AsRef<[i64]>>(cols: usize, rows: &[R]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&v| Scalar::from_int(v)).collect())
            .collect();
        Self::from_rows(cols, rows).expect("ragged integer matrix")
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
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

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Scalar]> + '_ {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        self.row_iter().map(<[Scalar]>::to_vec).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// Matrix product. Panics if the inner dimensions disagree.
    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn checked_mul(&self, rhs: &Matrix) -> Result<Matrix> {
        check_dim(self.cols, rhs.rows)?;
        Ok(self.mul(rhs))
    }

    /// `self * v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        self.row_iter().map(|r| dot(r, v)).collect()
    }

    pub fn neg(&self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        check_dim(self.cols, other.cols)?;
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix { rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Block-diagonal sum of square or rectangular blocks.
    pub fn block_diag<'a>(blocks: impl IntoIterator<Item = &'a Matrix>) -> Matrix {
        let blocks: Vec<&Matrix> = blocks.into_iter().collect();
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

    pub fn is_skew_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                self[(i, i)].is_zero() && (0..i).all(|j| self[(i, j)] == -&self[(j, i)])
            })
    }

    pub fn rank(&self) -> usize {
        crate::linalg::rref(self).rank
    }

    /// Determinant by exact Gaussian elimination.
    pub fn determinant(&self) -> Result<Scalar> {
        check_dim(self.rows, self.cols)?;
        let n = self.rows;
        let mut a = self.to_rows();
        let mut det = Scalar::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Ok(Scalar::zero());
            };
            if p != col {
                a.swap(p, col);
                det = -det;
            }
            let pivot = a[col][col].clone();
            det *= &pivot;
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = &a[r][col] / &pivot;
                let (top, bottom) = a.split_at_mut(r);
                for (x, y) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                    *x = x.sub_mul(&f, y);
                }
            }
        }
        Ok(det)
    }

    /// Exact inverse, or `None` if singular.
    pub fn inverse(&self) -> Result<Option<Matrix>> {
        check_dim(self.rows, self.cols)?;
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Scalar::one();
        }
        let r = crate::linalg::rref(&aug);
        if r.pivots.iter().take(n).enumerate().any(|(i, &p)| p != i) || r.rank < n {
            return Ok(None);
        }
        Ok(Some(Matrix::from_fn(n, n, |i, j| r.reduced[(i, n + j)].clone())))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for (i, r) in self.row_iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let parts: Vec<String> = r.iter().map(Scalar::to_string).collect();
            write!(f, "{}", parts.join(" "))?;
        }
        write!(f, "]")
    }
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
    }
    acc
}

/// `Matrix::from_rows` for callers that already know the rows are well-formed.
pub(crate) fn rows_to_matrix(cols: usize, rows: Vec<Vec<Scalar>>) -> Matrix {
    Matrix::from_rows(cols, rows).unwrap_or_else(|e: Error| panic!("{e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_and_inverse() {
        let m = Matrix::from_ints(3, &[[2, 1, 1], [1, 1, 0], [1, 0, 2]]);
        assert_eq!(m.determinant().unwrap(), Scalar::from_int(1));
        let inv = m.inverse().unwrap().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(3));
        let sing = Matrix::from_ints(2, &[[1, 2], [2, 4]]);
        assert!(sing.determinant().unwrap().is_zero());
        assert!(sing.inverse().unwrap().is_none());
        assert_eq!(Matrix::zeros(0, 0).determinant().unwrap(), Scalar::one());
    }

    #[test]
    fn empty_shapes_are_legal() {
        let e = Matrix::zeros(0, 3);
        assert_eq!(e.rank(), 0);
        assert_eq!(e.transpose().rows(), 3);
        assert_eq!(Matrix::zeros(2, 0).mul(&Matrix::zeros(0, 4)), Matrix::zeros(2, 4));
    }

    #[test]
    fn skew_check() {
        assert!(Matrix::from_ints(2, &[[0, 1], [-1, 0]]).is_skew_symmetric());
        assert!(!Matrix::from_ints(2, &[[0, 1], [1, 0]]).is_skew_symmetric());
        assert!(!Matrix::from_ints(2, &[[1, 0], [0, 0]]).is_skew_symmetric());
        assert!(!Matrix::zeros(2, 3).is_skew_symmetric());
    }

    #[test]
    fn block_diag_layout() {
        let a = Matrix::from_ints(1, &[[5]]);
        let b = Matrix::from_ints(2, &[[0, 1], [-1, 0]]);
        let d = Matrix::block_diag([&a, &b]);
        assert_eq!(d, Matrix::from_ints(3, &[[5, 0, 0], [0, 0, 1], [0, -1, 0]]));
    }
}
