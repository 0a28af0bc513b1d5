//! Spin operators and the dimer Hamiltonian
//!
//! `H = J[Δ(μˣSˣ + μʸSʸ) + μᶻSᶻ] + D(Sᶻ)²`
//!
//! in the product basis `|μᶻ, Sᶻ⟩`, ordered μᶻ-major (`+1/2` block first)
//! with `Sᶻ` descending inside each block.

use crate::error::{Error, Result};
use crate::half::HalfInt;
use crate::matrix::{Matrix, SymmetricMatrix};

/// Parameters of the mixed spin-(1/2, S) dimer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimerModel {
    /// Heisenberg exchange coupling `J`.
    pub j: f64,
    /// XXZ exchange anisotropy `Δ`.
    pub delta: f64,
    /// Uniaxial single-ion anisotropy `D`, acting on the spin-S site only.
    pub d: f64,
    /// Twice the larger spin, `2S >= 2`.
    pub two_s: u32,
}

impl DimerModel {
    pub fn new(j: f64, delta: f64, d: f64, two_s: u32) -> Result<Self> {
        if two_s < 2 {
            return Err(Error::InvalidSpin { two_s, min: 2 });
        }
        for (name, v) in [("J", j), ("Delta", delta), ("D", d)] {
            if !v.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "{name} = {v} is not finite"
                )));
            }
        }
        Ok(DimerModel { j, delta, d, two_s })
    }

    /// Model with `J = 1`, so `d_over_j` is `D` itself.
    pub fn reduced(delta: f64, d_over_j: f64, two_s: u32) -> Result<Self> {
        Self::new(1.0, delta, d_over_j, two_s)
    }

    pub fn spin(&self) -> f64 {
        f64::from(self.two_s) / 2.0
    }

    pub fn d_over_j(&self) -> f64 {
        self.d / self.j
    }

    /// Whether `S` is an integer.
    pub fn integer_spin(&self) -> bool {
        self.two_s.is_multiple_of(2)
    }

    /// Dimension of the spin-S factor, `2S + 1`.
    pub fn spin_dim(&self) -> usize {
        self.two_s as usize + 1
    }

    /// Hilbert-space dimension `2(2S + 1)`.
    pub fn dim(&self) -> usize {
        2 * self.spin_dim()
    }
}

/// A product-basis ket `|μᶻ, Sᶻ⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasisIndex {
    pub mu_z: HalfInt,
    pub m_z: HalfInt,
}

impl BasisIndex {
    pub fn new(mu_z: HalfInt, m_z: HalfInt) -> Self {
        BasisIndex { mu_z, m_z }
    }

    /// Linear index `(1/2 − μᶻ)(2S+1) + (S − Sᶻ)`, or `None` when the ket
    /// lies outside the space.
    pub fn linear(&self, two_s: u32) -> Option<usize> {
        let two_s = two_s as i32;
        let block = match self.mu_z.twice() {
            1 => 0,
            -1 => 1,
            _ => return None,
        };
        let m2 = self.m_z.twice();
        if m2.abs() > two_s || (two_s - m2) % 2 != 0 {
            return None;
        }
        Some(block * (two_s as usize + 1) + ((two_s - m2) / 2) as usize)
    }

    pub fn from_linear(index: usize, two_s: u32) -> Option<Self> {
        let n = two_s as usize + 1;
        if index >= 2 * n {
            return None;
        }
        let mu = if index < n { 1 } else { -1 };
        let k = (index % n) as i32;
        Some(BasisIndex::new(
            HalfInt::from_twice(mu),
            HalfInt::from_twice(two_s as i32 - 2 * k),
        ))
    }

    /// Total magnetization `μᶻ + Sᶻ`.
    pub fn total(&self) -> HalfInt {
        HalfInt::from_twice(self.mu_z.twice() + self.m_z.twice())
    }
}

/// Spin operators for one site, `Sy = i · sy_imag`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinMatrices {
    pub sx: Matrix,
    pub sy_imag: Matrix,
    pub sz: Matrix,
}

/// Spin-`two_s/2` matrices in the `m = S, S−1, …, −S` basis, built from the
/// ladder operators `S± |m⟩ = √(S(S+1) − m(m±1)) |m±1⟩`.
pub fn spin_matrices(two_s: u32) -> Result<SpinMatrices> {
    if two_s < 1 {
        return Err(Error::InvalidSpin { two_s, min: 1 });
    }
    let n = two_s as usize + 1;
    let s = f64::from(two_s) / 2.0;
    let m_of = |k: usize| s - k as f64;

    let mut raise = Matrix::zeros(n);
    for k in 1..n {
        // S+ maps index k (m) to index k-1 (m+1)
        let m = m_of(k);
        raise.set(k - 1, k, (s * (s + 1.0) - m * (m + 1.0)).sqrt());
    }
    let lower = raise.transpose();

    let sx = raise.add(&lower).scaled(0.5);
    // Sy = (S+ − S−)/(2i) = i (S− − S+)/2
    let sy_imag = lower.sub(&raise).scaled(0.5);
    let sz = Matrix::from_diag(&(0..n).map(m_of).collect::<Vec<_>>());
    Ok(SpinMatrices { sx, sy_imag, sz })
}

/// Assembles the dense dimer Hamiltonian in [`BasisIndex`] ordering.
pub fn build_hamiltonian(model: &DimerModel) -> SymmetricMatrix {
    let half = spin_matrices(1).expect("spin-1/2");
    let big = spin_matrices(model.two_s).expect("validated spin");
    let eye_half = Matrix::identity(2);

    // μʸSʸ = (i a)(i b) = −a⊗b
    let transverse = half.sx.kron(&big.sx).sub(&half.sy_imag.kron(&big.sy_imag));
    let longitudinal = half.sz.kron(&big.sz);
    let single_ion = eye_half.kron(&(&big.sz * &big.sz));

    let h = transverse
        .scaled(model.j * model.delta)
        .add(&longitudinal.scaled(model.j))
        .add(&single_ion.scaled(model.d));
    SymmetricMatrix::from_upper(&h)
}
