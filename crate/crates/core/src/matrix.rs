//! Small dense real matrices, row-major.
//!
//! [`Matrix`] is a general square matrix (spin operators such as the
//! imaginary part of `Sy` are antisymmetric). [`SymmetricMatrix`] only
//! exposes mirrored writes, so `a[i][j] == a[j][i]` holds bitwise.

use std::ops::{Index, Mul};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        Matrix {
            dim,
            data: vec![0.0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = 1.0;
        }
        m
    }

    pub fn from_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    /// Builds a matrix from row-major entries; `entries.len()` must be a square.
    pub fn from_row_major(dim: usize, entries: Vec<f64>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::Shape(format!(
                "{} entries for a {dim}x{dim} matrix",
                entries.len()
            )));
        }
        Ok(Matrix { dim, data: entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.dim + j] = v;
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn transpose(&self) -> Matrix {
        let n = self.dim;
        let mut t = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn scaled(&self, s: f64) -> Matrix {
        Matrix {
            dim: self.dim,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.dim, other.dim);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Matrix {
            dim: self.dim,
            data,
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.scaled(-1.0))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let (n, m) = (self.dim, other.dim);
        let mut out = Matrix::zeros(n * m);
        for i in 0..n {
            for j in 0..n {
                let a = self.get(i, j);
                if a == 0.0 {
                    continue;
                }
                for k in 0..m {
                    for l in 0..m {
                        out.set(i * m + k, j * m + l, a * other.get(k, l));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.dim).map(|i| self.get(i, j)).collect()
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.get(k, j);
                }
            }
        }
        out
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.dim + j]
    }
}

/// Real symmetric matrix with exactly mirrored storage.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix(Matrix);

impl SymmetricMatrix {
    pub fn zeros(dim: usize) -> Self {
        SymmetricMatrix(Matrix::zeros(dim))
    }

    /// Fills entry `(i, j)` for `i <= j` from `f` and mirrors it.
    pub fn from_upper_fn(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in i..dim {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Accepts `m` only if it is bitwise symmetric.
    pub fn try_from_matrix(m: Matrix) -> Result<Self> {
        let n = m.dim();
        for i in 0..n {
            for j in (i + 1)..n {
                if m.get(i, j) != m.get(j, i) {
                    return Err(Error::Shape(format!("matrix not symmetric at ({i}, {j})")));
                }
            }
        }
        Ok(SymmetricMatrix(m))
    }

    /// Symmetrizes `m` by copying its upper triangle onto the lower one.
    pub fn from_upper(m: &Matrix) -> Self {
        Self::from_upper_fn(m.dim(), |i, j| m.get(i, j))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0.get(i, j)
    }

    /// Writes `v` at `(i, j)` and `(j, i)`.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.0.set(i, j, v);
        self.0.set(j, i, v);
    }

    #[inline]
    pub fn add_at(&mut self, i: usize, j: usize, v: f64) {
        let x = self.get(i, j) + v;
        self.set(i, j, x);
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }

    pub fn trace(&self) -> f64 {
        self.0.trace()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.frobenius_norm()
    }

    pub fn scaled(&self, s: f64) -> Self {
        SymmetricMatrix(self.0.scaled(s))
    }

    /// Conjugates by a permutation: `out[i][j] = self[p[i]][p[j]]`.
    pub fn permuted(&self, p: &[usize]) -> Self {
        assert_eq!(p.len(), self.dim());
        Self::from_upper_fn(self.dim(), |i, j| self.get(p[i], p[j]))
    }

    pub fn is_exactly_symmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (i + 1..n).all(|j| self.get(i, j).to_bits() == self.get(j, i).to_bits()))
    }
}

impl Index<(usize, usize)> for SymmetricMatrix {
    type Output = f64;
    fn index(&self, idx: (usize, usize)) -> &f64 {
        &self.0[idx]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kron_of_identities_is_identity() {
        let k = Matrix::identity(2).kron(&Matrix::identity(3));
        assert_eq!(k, Matrix::identity(6));
    }

    #[test]
    fn kron_places_blocks() {
        let a = Matrix::from_row_major(2, vec![0.0, 1.0, 2.0, 0.0]).unwrap();
        let b = Matrix::from_diag(&[1.0, -1.0]);
        let k = a.kron(&b);
        assert_eq!(k.get(0, 2), 1.0);
        assert_eq!(k.get(1, 3), -1.0);
        assert_eq!(k.get(2, 0), 2.0);
        assert_eq!(k.get(3, 1), -2.0);
        assert_eq!(k.get(0, 0), 0.0);
    }

    #[test]
    fn symmetric_writes_mirror() {
        let mut s = SymmetricMatrix::zeros(3);
        s.set(0, 2, 0.1);
        s.add_at(2, 0, 0.2);
        assert_eq!(s.get(0, 2), s.get(2, 0));
        assert!(s.is_exactly_symmetric());
    }

    #[test]
    fn rejects_asymmetric() {
        let m = Matrix::from_row_major(2, vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        assert!(SymmetricMatrix::try_from_matrix(m).is_err());
        assert!(Matrix::from_row_major(2, vec![1.0; 3]).is_err());
    }

    #[test]
    fn matmul_matches_hand_computation() {
        let a = Matrix::from_row_major(2, vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        let b = Matrix::from_row_major(2, vec![0.0, 1.0, 1.0, 0.0]).unwrap();
        assert_eq!((&a * &b).as_slice(), &[2.0, 1.0, 4.0, 3.0]);
    }
}
