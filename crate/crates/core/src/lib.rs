//! Exact spectra and bipartite entanglement of the mixed spin-(1/2, S) XXZ
//! Heisenberg dimer with uniaxial single-ion anisotropy.
//!
//! Energies are in units of `J` and temperatures are `k_B T / J` with
//! `k_B = 1`.

pub mod analysis;
pub mod entanglement;
pub mod error;
pub mod half;
pub mod linalg;
pub mod matrix;
pub mod spectrum;
pub mod spin_algebra;
pub mod table;

pub use entanglement::{
    ground_state_density, ground_state_negativity, negativity, negativity_closed_pm_half,
    negativity_closed_stretched, partial_transpose_half, thermal_density, thermal_negativity,
    DensityMatrix, NegativityResult,
};
pub use error::{Error, Result};
pub use half::HalfInt;
pub use linalg::{eigh, EigenDecomposition};
pub use matrix::{Matrix, SymmetricMatrix};
pub use spectrum::{
    closed_form_spectrum, eigenvector_in_product_basis, ground_state_manifold, sector_coefficients,
    Branch, Level, SectorSpectrum,
};
pub use spin_algebra::{build_hamiltonian, spin_matrices, BasisIndex, DimerModel};
pub use table::SweepTable;
