//! Cyclic Jacobi eigensolver for small dense symmetric matrices.
//!
//! Serves both as the oracle for the closed-form spectrum and as the engine
//! for partially transposed density matrices, where the small negative
//! eigenvalues must be resolved with high relative accuracy.

use crate::error::{Error, Result};
use crate::matrix::{Matrix, SymmetricMatrix};

/// Sweep cap for [`eigh`].
pub const MAX_SWEEPS: usize = 100;

/// Convergence threshold on `off(A) / ‖A‖_F`.
pub const OFF_NORM_RTOL: f64 = 1e-13;

/// Eigenvalues in ascending order, column `k` of `eigenvectors` paired with
/// `eigenvalues[k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Matrix,
}

impl EigenDecomposition {
    pub fn eigenvector(&self, k: usize) -> Vec<f64> {
        self.eigenvectors.column(k)
    }
}

fn off_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j] * a[i * n + j];
            }
        }
    }
    s.sqrt()
}

/// Full eigendecomposition of a symmetric matrix by cyclic-by-rows Jacobi
/// rotations.
pub fn eigh(a: &SymmetricMatrix) -> Result<EigenDecomposition> {
    let n = a.dim();
    if n == 0 {
        return Err(Error::Shape("empty matrix".into()));
    }
    let mut w = a.as_matrix().as_slice().to_vec();
    let mut v = Matrix::identity(n);
    let scale = a.frobenius_norm();
    let target = OFF_NORM_RTOL * scale;

    let mut sweeps = 0;
    loop {
        let off = off_norm(&w, n);
        if off <= target {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: off,
            });
        }
        sweeps += 1;

        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let apq = w[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = w[p * n + p];
                let aqq = w[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
                    sign / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = w[k * n + p];
                    let akq = w[k * n + q];
                    let new_kp = c * akp - s * akq;
                    let new_kq = s * akp + c * akq;
                    w[k * n + p] = new_kp;
                    w[p * n + k] = new_kp;
                    w[k * n + q] = new_kq;
                    w[q * n + k] = new_kq;
                }
                w[p * n + p] = app - t * apq;
                w[q * n + q] = aqq + t * apq;
                w[p * n + q] = 0.0;
                w[q * n + p] = 0.0;

                for k in 0..n {
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q);
                    v.set(k, p, c * vkp - s * vkq);
                    v.set(k, q, s * vkp + c * vkq);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| w[x * n + x].total_cmp(&w[y * n + y]).then(x.cmp(&y)));
    let eigenvalues = order.iter().map(|&k| w[k * n + k]).collect();
    let mut eigenvectors = Matrix::zeros(n);
    for (col, &k) in order.iter().enumerate() {
        for row in 0..n {
            eigenvectors.set(row, col, v.get(row, k));
        }
    }
    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

/// Eigenvalues only, ascending.
pub fn eigvalsh(a: &SymmetricMatrix) -> Result<Vec<f64>> {
    eigh(a).map(|e| e.eigenvalues)
}
