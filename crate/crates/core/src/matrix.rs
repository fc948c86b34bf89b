//! Dense matrices over a prime field.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::Fq;

/// Row-major dense matrix over F_q. Entries are always reduced mod q.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Fq,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Result of row reduction: the RREF, its pivot columns (0-based) and rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl Matrix {
    pub fn zeros(field: Fq, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Fq, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from a flat row-major buffer, reducing entries mod q.
    pub fn from_vec(field: Fq, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        let data = data.into_iter().map(|x| x % field.q()).collect();
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    /// Builds a matrix from rows. `cols` is needed to give an empty row list a width.
    pub fn from_rows<R: AsRef<[u32]>>(field: Fq, cols: usize, rows: &[R]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has length {}, expected {cols}",
                    r.len()
                )));
            }
            data.extend(r.iter().map(|&x| x % field.q()));
        }
        Ok(Matrix {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    #[inline]
    pub fn field(&self) -> Fq {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.field.q();
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    fn same_shape(&self, other: &Matrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols || self.field != other.field {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows || self.field != other.field {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let q = self.field.q() as u64;
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            let mut acc = vec![0u64; other.cols];
            for l in 0..self.cols {
                let a = self.get(i, l) as u64;
                if a == 0 {
                    continue;
                }
                for (j, slot) in acc.iter_mut().enumerate() {
                    *slot = (*slot + a * other.get(l, j) as u64) % q;
                }
            }
            for (j, v) in acc.into_iter().enumerate() {
                out.data[i * other.cols + j] = v as u32;
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} rows",
                v.len(),
                self.rows
            )));
        }
        let q = self.field.q() as u64;
        let mut acc = vec![0u64; self.cols];
        for (l, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, slot) in acc.iter_mut().enumerate() {
                *slot = (*slot + a as u64 * self.get(l, j) as u64) % q;
            }
        }
        Ok(acc.into_iter().map(|x| x as u32).collect())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols || self.field != other.field {
            return Err(Error::DimensionMismatch(format!(
                "cannot stack width {} on width {}",
                other.cols, self.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = m.reduce_in_place(self.cols);
        let rank = pivots.len();
        Rref {
            matrix: m,
            pivots,
            rank,
        }
    }

    /// Gauss-Jordan elimination restricted to the first `limit` columns.
    /// Returns the pivot columns; pivot rows are the first `len` rows.
    fn reduce_in_place(&mut self, limit: usize) -> Vec<usize> {
        let f = self.field;
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..limit {
            if r == self.rows {
                break;
            }
            let Some(src) = (r..self.rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if src != r {
                for j in 0..cols {
                    self.data.swap(src * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.data[r * cols + c]).expect("pivot is nonzero");
            if inv != 1 {
                for j in c..cols {
                    self.data[r * cols + j] = f.mul(self.data[r * cols + j], inv);
                }
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.data[i * cols + c];
                if factor == 0 {
                    continue;
                }
                for j in c..cols {
                    let v = f.mul(factor, self.data[r * cols + j]);
                    self.data[i * cols + j] = f.sub(self.data[i * cols + j], v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis (as rows) of the left kernel `{x : x M = 0}`.
    pub fn left_kernel(&self) -> Matrix {
        let n = self.rows;
        let width = self.cols + n;
        let mut aug = Matrix::zeros(self.field, n, width);
        for i in 0..n {
            for j in 0..self.cols {
                aug.data[i * width + j] = self.get(i, j);
            }
            aug.data[i * width + self.cols + i] = 1;
        }
        let rank = aug.reduce_in_place(self.cols).len();
        let mut ker = Matrix::zeros(self.field, n - rank, n);
        for (out, i) in (rank..n).enumerate() {
            for j in 0..n {
                ker.data[out * n + j] = aug.data[i * width + self.cols + j];
            }
        }
        ker
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::NotInvertible);
        }
        let n = self.rows;
        let width = 2 * n;
        let mut aug = Matrix::zeros(self.field, n, width);
        for i in 0..n {
            for j in 0..n {
                aug.data[i * width + j] = self.get(i, j);
            }
            aug.data[i * width + n + i] = 1;
        }
        if aug.reduce_in_place(n).len() < n {
            return Err(Error::NotInvertible);
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.data[i * n + j] = aug.data[i * width + n + j];
            }
        }
        Ok(inv)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[q={}]{:?}", self.field.q(), self.to_rows())
    }
}

impl PartialOrd for Matrix {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Matrix {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.field.q(), self.rows, self.cols, &self.data).cmp(&(
            other.field.q(),
            other.rows,
            other.cols,
            &other.data,
        ))
    }
}

/// `rank(A - B)`.
pub fn rank_distance(a: &Matrix, b: &Matrix) -> Result<usize> {
    Ok(a.sub(b)?.rank())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Fq {
        Fq::new(2).unwrap()
    }

    #[test]
    fn rref_of_identity_and_zero() {
        let id = Matrix::identity(f2(), 3);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.pivots, vec![0, 1, 2]);
        let z = Matrix::zeros(f2(), 2, 3);
        let r = z.rref();
        assert_eq!(r.rank, 0);
        assert!(r.matrix.is_zero());
    }

    #[test]
    fn rref_small_f2() {
        let m = Matrix::from_rows(f2(), 2, &[[1, 1], [1, 0]]).unwrap();
        assert_eq!(m.rref().matrix, Matrix::identity(f2(), 2));
    }

    #[test]
    fn rref_over_f5() {
        let f = Fq::new(5).unwrap();
        let m = Matrix::from_rows(f, 3, &[[2, 4, 1], [4, 3, 3]]).unwrap();
        let r = m.rref();
        assert_eq!(r.rank, 2);
        assert_eq!(r.matrix.row(0)[0], 1);
        assert_eq!(r.matrix.row(1)[0], 0);
    }

    #[test]
    fn rank_distances() {
        let a = Matrix::from_rows(f2(), 2, &[[1, 0], [0, 0]]).unwrap();
        let b = Matrix::from_rows(f2(), 2, &[[0, 0], [0, 1]]).unwrap();
        assert_eq!(rank_distance(&a, &b).unwrap(), 2);
        assert_eq!(rank_distance(&a, &a).unwrap(), 0);
        let z = Matrix::zeros(f2(), 4, 4);
        assert_eq!(rank_distance(&z, &Matrix::identity(f2(), 4)).unwrap(), 4);
        let c = Matrix::zeros(f2(), 2, 3);
        assert!(rank_distance(&a, &c).is_err());
    }

    #[test]
    fn left_kernel_annihilates() {
        let f = Fq::new(3).unwrap();
        let m = Matrix::from_rows(f, 3, &[[1, 2, 0], [2, 1, 0], [0, 0, 1], [1, 2, 1]]).unwrap();
        let k = m.left_kernel();
        assert_eq!(k.rows(), 4 - m.rank());
        assert!(k.mul(&m).unwrap().is_zero());
    }

    #[test]
    fn inverse_round_trip() {
        let f = Fq::new(3).unwrap();
        let m = Matrix::from_rows(f, 3, &[[1, 2, 0], [0, 1, 1], [2, 0, 1]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(f, 3));
        let singular = Matrix::from_rows(f, 2, &[[1, 2], [2, 1]]).unwrap();
        assert_eq!(singular.inverse(), Err(Error::NotInvertible));
    }
}
