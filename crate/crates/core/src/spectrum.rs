//! Closed-form eigenenergies and eigenvectors of the dimer.
//!
//! The total magnetization `Sᶻₜ = μᶻ + Sᶻ` is conserved. The two edge
//! sectors `Sᶻₜ = ±(S+1/2)` hold a single product state each; every interior
//! sector `|Sᶻₜ| ≤ S−1/2` couples `|1/2, Sᶻₜ−1/2⟩` with `|−1/2, Sᶻₜ+1/2⟩`:
//!
//! ```text
//! P = (J − 2D) − D(2Sᶻₜ−1)(2Sᶻₜ+1)
//! Q = (JΔ)² [4S(S+1) − (2Sᶻₜ−1)(2Sᶻₜ+1)]
//! R = 2(J − 2D) Sᶻₜ
//! ε∓ = −P/4 ∓ √(R² + Q)/4
//! c∓ = √(1 ∓ R/√(R² + Q)) / √2
//! |(Sᶻₜ)∓⟩ = c∓ |1/2, Sᶻₜ−1/2⟩ ∓ c± |−1/2, Sᶻₜ+1/2⟩
//! ```

use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};
use crate::half::HalfInt;
use crate::spin_algebra::{BasisIndex, DimerModel};

/// Relative tolerance for grouping degenerate ground levels.
pub const DEFAULT_DEGENERACY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    /// Lower level of a sector. Edge sectors only have this one.
    Minus,
    Plus,
}

/// One eigenstate label `|(Sᶻₜ)∓⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Level {
    pub s_z_t: HalfInt,
    pub branch: Branch,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorCoefficients {
    pub p: f64,
    pub q: f64,
    pub r: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SectorLevels {
    Edge {
        energy: f64,
    },
    Pair {
        energy_minus: f64,
        energy_plus: f64,
        c_minus: f64,
        c_plus: f64,
        coefficients: SectorCoefficients,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorSpectrum {
    pub s_z_t: HalfInt,
    pub levels: SectorLevels,
}

impl SectorSpectrum {
    pub fn energies(&self) -> Vec<f64> {
        match self.levels {
            SectorLevels::Edge { energy } => vec![energy],
            SectorLevels::Pair {
                energy_minus,
                energy_plus,
                ..
            } => vec![energy_minus, energy_plus],
        }
    }

    pub fn energy(&self, branch: Branch) -> Option<f64> {
        match (self.levels, branch) {
            (SectorLevels::Edge { energy }, Branch::Minus) => Some(energy),
            (SectorLevels::Edge { .. }, Branch::Plus) => None,
            (SectorLevels::Pair { energy_minus, .. }, Branch::Minus) => Some(energy_minus),
            (SectorLevels::Pair { energy_plus, .. }, Branch::Plus) => Some(energy_plus),
        }
    }

    /// `(c⁻, c⁺)` for two-dimensional sectors.
    pub fn amplitudes(&self) -> Option<(f64, f64)> {
        match self.levels {
            SectorLevels::Edge { .. } => None,
            SectorLevels::Pair {
                c_minus, c_plus, ..
            } => Some((c_minus, c_plus)),
        }
    }

    pub fn is_edge(&self) -> bool {
        matches!(self.levels, SectorLevels::Edge { .. })
    }
}

enum SectorKind {
    Edge,
    Pair,
}

fn classify(model: &DimerModel, s_z_t: HalfInt) -> Result<SectorKind> {
    let two_s = model.two_s as i32;
    let t2 = s_z_t.twice();
    // 2Sᶻₜ = 2Sᶻ ± 1 has the opposite parity of 2S
    if (t2 - two_s).rem_euclid(2) != 1 || t2.abs() > two_s + 1 {
        return Err(Error::SectorRange {
            s_z_t,
            two_s: model.two_s,
        });
    }
    Ok(if t2.abs() == two_s + 1 {
        SectorKind::Edge
    } else {
        SectorKind::Pair
    })
}

/// All sector labels, `S+1/2` down to `−S−1/2`.
pub fn sectors(model: &DimerModel) -> impl Iterator<Item = HalfInt> {
    let top = model.two_s as i32 + 1;
    (0..=top).map(move |k| HalfInt::from_twice(top - 2 * k))
}

/// `P`, `Q`, `R` for an interior sector.
pub fn sector_coefficients(model: &DimerModel, s_z_t: HalfInt) -> Result<SectorCoefficients> {
    match classify(model, s_z_t)? {
        SectorKind::Edge => Err(Error::SectorDimension(s_z_t)),
        SectorKind::Pair => Ok(coefficients_unchecked(model, s_z_t)),
    }
}

fn coefficients_unchecked(model: &DimerModel, s_z_t: HalfInt) -> SectorCoefficients {
    let DimerModel { j, delta, d, .. } = *model;
    let s = model.spin();
    let t = s_z_t.value();
    let bracket = (2.0 * t - 1.0) * (2.0 * t + 1.0);
    SectorCoefficients {
        p: (j - 2.0 * d) - d * bracket,
        q: (j * delta).powi(2) * (4.0 * s * (s + 1.0) - bracket),
        r: 2.0 * (j - 2.0 * d) * t,
    }
}

/// Energy of the one-dimensional sectors `±(S+1/2)`.
pub fn edge_energy(model: &DimerModel) -> f64 {
    let s = model.spin();
    s / 2.0 * (model.j + 2.0 * model.d * s)
}

fn sector_spectrum(model: &DimerModel, s_z_t: HalfInt, kind: SectorKind) -> SectorSpectrum {
    let levels = match kind {
        SectorKind::Edge => SectorLevels::Edge {
            energy: edge_energy(model),
        },
        SectorKind::Pair => {
            let coefficients = coefficients_unchecked(model, s_z_t);
            let SectorCoefficients { p, q, r } = coefficients;
            let root = (r * r + q).sqrt();
            let (c_minus, c_plus) = if root == 0.0 {
                (FRAC_1_SQRT_2, FRAC_1_SQRT_2)
            } else {
                // 1 − |R|/√(R²+Q) = Q / (√(R²+Q)(√(R²+Q) + |R|)), free of cancellation
                let small = (q / (2.0 * root * (root + r.abs()))).sqrt();
                let large = ((root + r.abs()) / (2.0 * root)).sqrt();
                if r >= 0.0 {
                    (small, large)
                } else {
                    (large, small)
                }
            };
            SectorLevels::Pair {
                energy_minus: -p / 4.0 - root / 4.0,
                energy_plus: -p / 4.0 + root / 4.0,
                c_minus,
                c_plus,
                coefficients,
            }
        }
    };
    SectorSpectrum { s_z_t, levels }
}

/// Closed-form spectrum of one sector.
pub fn sector(model: &DimerModel, s_z_t: HalfInt) -> Result<SectorSpectrum> {
    let kind = classify(model, s_z_t)?;
    Ok(sector_spectrum(model, s_z_t, kind))
}

/// Closed-form spectrum of every sector, ordered by descending `Sᶻₜ`.
pub fn closed_form_spectrum(model: &DimerModel) -> Vec<SectorSpectrum> {
    sectors(model)
        .map(|t| sector(model, t).expect("label from sectors()"))
        .collect()
}

/// Every eigenenergy, ascending.
pub fn sorted_energies(model: &DimerModel) -> Vec<f64> {
    let mut e: Vec<f64> = closed_form_spectrum(model)
        .iter()
        .flat_map(|s| s.energies())
        .collect();
    e.sort_by(f64::total_cmp);
    e
}

/// Eigenvector `|(Sᶻₜ)branch⟩` in [`BasisIndex`] ordering.
///
/// Signs follow the closed form for `JΔ ≥ 0`. For `JΔ < 0` the transverse
/// matrix element changes sign and so does the relative sign of the two
/// components.
pub fn eigenvector_in_product_basis(
    model: &DimerModel,
    s_z_t: HalfInt,
    branch: Branch,
) -> Result<Vec<f64>> {
    let spec = sector(model, s_z_t)?;
    let mut v = vec![0.0; model.dim()];
    let half_up = HalfInt::from_twice(1);
    let half_down = HalfInt::from_twice(-1);
    match (spec.levels, branch) {
        (SectorLevels::Edge { .. }, Branch::Plus) => return Err(Error::SectorDimension(s_z_t)),
        (SectorLevels::Edge { .. }, Branch::Minus) => {
            let ket = if s_z_t.twice() > 0 {
                BasisIndex::new(half_up, HalfInt::from_twice(model.two_s as i32))
            } else {
                BasisIndex::new(half_down, HalfInt::from_twice(-(model.two_s as i32)))
            };
            v[ket.linear(model.two_s).expect("edge ket in range")] = 1.0;
        }
        (
            SectorLevels::Pair {
                c_minus, c_plus, ..
            },
            _,
        ) => {
            let up = BasisIndex::new(half_up, HalfInt::from_twice(s_z_t.twice() - 1));
            let down = BasisIndex::new(half_down, HalfInt::from_twice(s_z_t.twice() + 1));
            let i_up = up.linear(model.two_s).expect("interior ket in range");
            let i_down = down.linear(model.two_s).expect("interior ket in range");
            let sign = if model.j * model.delta < 0.0 {
                -1.0
            } else {
                1.0
            };
            match branch {
                Branch::Minus => {
                    v[i_up] = c_minus;
                    v[i_down] = -sign * c_plus;
                }
                Branch::Plus => {
                    v[i_up] = c_plus;
                    v[i_down] = sign * c_minus;
                }
            }
        }
    }
    Ok(v)
}

/// A labelled eigenpair.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenstate {
    pub level: Level,
    pub energy: f64,
    pub vector: Vec<f64>,
}

/// All `2(2S+1)` closed-form eigenstates.
pub fn eigenstates(model: &DimerModel) -> Vec<Eigenstate> {
    let mut out = Vec::with_capacity(model.dim());
    for spec in closed_form_spectrum(model) {
        let branches: &[Branch] = if spec.is_edge() {
            &[Branch::Minus]
        } else {
            &[Branch::Minus, Branch::Plus]
        };
        for &branch in branches {
            out.push(Eigenstate {
                level: Level {
                    s_z_t: spec.s_z_t,
                    branch,
                },
                energy: spec.energy(branch).expect("branch exists"),
                vector: eigenvector_in_product_basis(model, spec.s_z_t, branch)
                    .expect("sector exists"),
            });
        }
    }
    out
}

/// The lowest energy and every level within `tol · max(|ε_min|, |J|)` of it.
#[derive(Debug, Clone, PartialEq)]
pub struct GroundManifold {
    pub energy: f64,
    pub levels: Vec<Level>,
}

impl GroundManifold {
    pub fn degeneracy(&self) -> usize {
        self.levels.len()
    }

    /// Distinct `|Sᶻₜ|` values, ascending.
    pub fn abs_sectors(&self) -> Vec<HalfInt> {
        let mut v: Vec<HalfInt> = self.levels.iter().map(|l| l.s_z_t.abs()).collect();
        v.sort();
        v.dedup();
        v
    }
}

pub fn ground_state_manifold(model: &DimerModel, degeneracy_tol: f64) -> GroundManifold {
    let mut all: Vec<(Level, f64)> = Vec::with_capacity(model.dim());
    for spec in closed_form_spectrum(model) {
        for branch in [Branch::Minus, Branch::Plus] {
            if let Some(e) = spec.energy(branch) {
                all.push((
                    Level {
                        s_z_t: spec.s_z_t,
                        branch,
                    },
                    e,
                ));
            }
        }
    }
    let energy = all.iter().map(|&(_, e)| e).fold(f64::INFINITY, f64::min);
    let window = degeneracy_tol * energy.abs().max(model.j.abs());
    let levels = all
        .into_iter()
        .filter(|&(_, e)| e - energy <= window)
        .map(|(l, _)| l)
        .collect();
    GroundManifold { energy, levels }
}
