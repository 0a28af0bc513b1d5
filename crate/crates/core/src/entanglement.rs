//! Density matrices and negativity.
//!
//! Everything lives in the real product basis of [`BasisIndex`]: the
//! closed-form eigenvectors are real, so ground-state and Gibbs states are
//! real symmetric and so are their partial transposes.
//!
//! [`BasisIndex`]: crate::spin_algebra::BasisIndex

use crate::error::{Error, Result};
use crate::linalg::eigvalsh;
use crate::matrix::SymmetricMatrix;
use crate::spectrum::{
    eigenstates, eigenvector_in_product_basis, ground_state_manifold, DEFAULT_DEGENERACY_TOL,
};
use crate::spin_algebra::DimerModel;

/// Eigenvalues of the partial transpose above `−NEGATIVE_CUTOFF` count as zero.
pub const NEGATIVE_CUTOFF: f64 = 1e-12;

/// Negativity of a maximally entangled state of this system.
pub const MAX_NEGATIVITY: f64 = 0.5;

#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    two_s: u32,
    rho: SymmetricMatrix,
}

impl DensityMatrix {
    /// Wraps `rho` after checking its shape and unit trace.
    pub fn new(two_s: u32, rho: SymmetricMatrix) -> Result<Self> {
        let expected = 2 * (two_s as usize + 1);
        if rho.dim() != expected {
            return Err(Error::Shape(format!(
                "density matrix of dim {} for 2S = {two_s} (expected {expected})",
                rho.dim()
            )));
        }
        let tr = rho.trace();
        if (tr - 1.0).abs() > 1e-12 {
            return Err(Error::Shape(format!("trace {tr} differs from 1")));
        }
        Ok(DensityMatrix { two_s, rho })
    }

    /// `Σ wₖ |vₖ⟩⟨vₖ|` with weights normalized to sum to one.
    pub fn mixture<'a>(
        two_s: u32,
        states: impl IntoIterator<Item = (f64, &'a [f64])>,
    ) -> Result<Self> {
        let dim = 2 * (two_s as usize + 1);
        let mut rho = SymmetricMatrix::zeros(dim);
        let mut total = 0.0;
        for (w, v) in states {
            if v.len() != dim {
                return Err(Error::Shape(format!(
                    "state of length {} for dim {dim}",
                    v.len()
                )));
            }
            total += w;
            if w == 0.0 {
                continue;
            }
            for i in 0..dim {
                if v[i] == 0.0 {
                    continue;
                }
                for j in i..dim {
                    rho.add_at(i, j, w * v[i] * v[j]);
                }
            }
        }
        if total.is_nan() || total <= 0.0 {
            return Err(Error::Shape("mixture with no weight".into()));
        }
        Self::new(two_s, rho.scaled(1.0 / total))
    }

    pub fn pure(two_s: u32, v: &[f64]) -> Result<Self> {
        let norm2: f64 = v.iter().map(|x| x * x).sum();
        Self::mixture(two_s, [(1.0 / norm2, v)])
    }

    pub fn maximally_mixed(two_s: u32) -> Self {
        let dim = 2 * (two_s as usize + 1);
        let rho =
            SymmetricMatrix::from_upper_fn(dim, |i, j| if i == j { 1.0 / dim as f64 } else { 0.0 });
        DensityMatrix { two_s, rho }
    }

    pub fn two_s(&self) -> u32 {
        self.two_s
    }

    pub fn dim(&self) -> usize {
        self.rho.dim()
    }

    pub fn matrix(&self) -> &SymmetricMatrix {
        &self.rho
    }

    pub fn into_matrix(self) -> SymmetricMatrix {
        self.rho
    }
}

/// Equal-weight mixture over the ground-state manifold (the `T → 0` Gibbs limit).
pub fn ground_state_density(model: &DimerModel) -> DensityMatrix {
    let manifold = ground_state_manifold(model, DEFAULT_DEGENERACY_TOL);
    let vectors: Vec<Vec<f64>> = manifold
        .levels
        .iter()
        .map(|l| {
            eigenvector_in_product_basis(model, l.s_z_t, l.branch).expect("ground level exists")
        })
        .collect();
    DensityMatrix::mixture(model.two_s, vectors.iter().map(|v| (1.0, v.as_slice())))
        .expect("orthonormal eigenvectors")
}

/// Gibbs state `e^{−H/k_BT}/Z` at `temperature = k_BT/|J|`.
pub fn thermal_density(model: &DimerModel, temperature: f64) -> Result<DensityMatrix> {
    if !temperature.is_finite() || temperature <= 0.0 {
        return Err(Error::Temperature(temperature));
    }
    let kt = temperature * model.j.abs();
    let states = eigenstates(model);
    let e_min = states
        .iter()
        .map(|s| s.energy)
        .fold(f64::INFINITY, f64::min);
    DensityMatrix::mixture(
        model.two_s,
        states
            .iter()
            .map(|s| ((-(s.energy - e_min) / kt).exp(), s.vector.as_slice())),
    )
}

fn block_size(m: &SymmetricMatrix, block: usize) -> Result<usize> {
    if block == 0 || m.dim() != 2 * block {
        return Err(Error::Shape(format!(
            "dim {} is not 2 x {block} for a spin-1/2 (x) spin-S split",
            m.dim()
        )));
    }
    Ok(block)
}

/// Partial transpose over the spin-1/2 factor of a `2 × n` block matrix:
/// `out[(a,i),(b,j)] = m[(b,i),(a,j)]`.
pub fn partial_transpose_first(m: &SymmetricMatrix, block: usize) -> Result<SymmetricMatrix> {
    let n = block_size(m, block)?;
    Ok(SymmetricMatrix::from_upper_fn(2 * n, |r, c| {
        let (a, i) = (r / n, r % n);
        let (b, j) = (c / n, c % n);
        m.get(b * n + i, a * n + j)
    }))
}

/// Partial transpose over the spin-S factor: `out[(a,i),(b,j)] = m[(a,j),(b,i)]`.
pub fn partial_transpose_second(m: &SymmetricMatrix, block: usize) -> Result<SymmetricMatrix> {
    let n = block_size(m, block)?;
    Ok(SymmetricMatrix::from_upper_fn(2 * n, |r, c| {
        let (a, i) = (r / n, r % n);
        let (b, j) = (c / n, c % n);
        m.get(a * n + j, b * n + i)
    }))
}

pub fn partial_transpose_half(rho: &DensityMatrix) -> SymmetricMatrix {
    partial_transpose_first(&rho.rho, rho.two_s as usize + 1).expect("validated shape")
}

pub fn partial_transpose_spin(rho: &DensityMatrix) -> SymmetricMatrix {
    partial_transpose_second(&rho.rho, rho.two_s as usize + 1).expect("validated shape")
}

#[derive(Debug, Clone, PartialEq)]
pub struct NegativityResult {
    pub negativity: f64,
    /// The eigenvalues below `−NEGATIVE_CUTOFF` that were summed, ascending.
    pub negative_eigenvalues: Vec<f64>,
}

fn negativity_from_spectrum(eigenvalues: Vec<f64>) -> NegativityResult {
    let negative_eigenvalues: Vec<f64> = eigenvalues
        .into_iter()
        .filter(|&l| l < -NEGATIVE_CUTOFF)
        .collect();
    let negativity = negative_eigenvalues
        .iter()
        .fold(0.0, |acc, l| acc + l.abs());
    NegativityResult {
        negativity,
        negative_eigenvalues,
    }
}

/// `𝒩 = Σ_{λ<0} |λ|` over the spectrum of the spin-1/2 partial transpose.
pub fn negativity(rho: &DensityMatrix) -> Result<NegativityResult> {
    Ok(negativity_from_spectrum(eigvalsh(
        &partial_transpose_half(rho),
    )?))
}

/// Same as [`negativity`] but transposing the spin-S factor.
pub fn negativity_spin_side(rho: &DensityMatrix) -> Result<NegativityResult> {
    Ok(negativity_from_spectrum(eigvalsh(
        &partial_transpose_spin(rho),
    )?))
}

pub fn ground_state_negativity(model: &DimerModel) -> Result<f64> {
    negativity(&ground_state_density(model)).map(|r| r.negativity)
}

pub fn thermal_negativity(model: &DimerModel, temperature: f64) -> Result<f64> {
    negativity(&thermal_density(model, temperature)?).map(|r| r.negativity)
}

/// Closed-form ground-state negativity of the `|(±1/2)₋⟩` doublet (integer `S`):
///
/// ```text
/// 𝒩 = ¼ (1 − x/√α) (√((5√α + 3x)/(√α − x)) − 1),   x = 1 − 2D/J,
/// α = x² + 4Δ²S(S+1)
/// ```
///
/// `√α − x` is evaluated as `4Δ²S(S+1)/(√α + x)` when `x > 0`.
pub fn negativity_closed_pm_half(model: &DimerModel) -> Result<f64> {
    if !model.integer_spin() {
        return Err(Error::InvalidParameter(format!(
            "the |(±1/2)₋⟩ doublet closed form needs integer S, got 2S = {}",
            model.two_s
        )));
    }
    let s = model.spin();
    let x = 1.0 - 2.0 * model.d_over_j();
    let beta = 4.0 * model.delta * model.delta * s * (s + 1.0);
    let root_alpha = (x * x + beta).sqrt();
    let gap = if x > 0.0 {
        beta / (root_alpha + x)
    } else {
        root_alpha - x
    };
    if gap.is_nan() || gap <= 0.0 {
        return Err(Error::SingularDenominator);
    }
    let ratio = (5.0 * root_alpha + 3.0 * x) / gap;
    Ok(0.25 * (gap / root_alpha) * (ratio.sqrt() - 1.0).max(0.0))
}

/// Closed-form ground-state negativity of the `|(±(S−1/2))₋⟩` doublet:
/// `𝒩 = ½ √(8SΔ² / (8SΔ² + (1−2D/J)²(2S−1)²))`.
pub fn negativity_closed_stretched(model: &DimerModel) -> f64 {
    let s = model.spin();
    let x = 1.0 - 2.0 * model.d_over_j();
    let num = 8.0 * s * model.delta * model.delta;
    if num == 0.0 {
        return 0.0;
    }
    0.5 * (num / (num + x * x * (2.0 * s - 1.0).powi(2))).sqrt()
}
