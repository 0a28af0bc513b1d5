//! Closed forms checked against independent routes: the Jacobi solver on
//! the assembled Hamiltonian, total-spin multiplets, and a Gibbs state built
//! from the numerical eigenbasis.

use dimer_core::analysis::threshold_temperature;
use dimer_core::entanglement::{negativity, DensityMatrix};
use dimer_core::spectrum::{eigenstates, sector, sorted_energies};
use dimer_core::{
    build_hamiltonian, eigh, ground_state_negativity, negativity_closed_pm_half, DimerModel,
    HalfInt, Matrix,
};

fn model(delta: f64, d: f64, two_s: u32) -> DimerModel {
    DimerModel::reduced(delta, d, two_s).unwrap()
}

/// Isotropic dimer: `F = S ± 1/2` multiplets at `(J/2)[F(F+1) − 3/4 − S(S+1)]`.
fn total_spin_levels(two_s: u32) -> Vec<f64> {
    let s = f64::from(two_s) / 2.0;
    let mut out = Vec::new();
    for f in [s + 0.5, s - 0.5] {
        let e = 0.5 * (f * (f + 1.0) - 0.75 - s * (s + 1.0));
        out.extend(std::iter::repeat_n(e, (2.0 * f + 1.0) as usize));
    }
    out.sort_by(f64::total_cmp);
    out
}

#[test]
fn isotropic_spectrum_matches_total_spin() {
    for two_s in 2..=10 {
        let expected = total_spin_levels(two_s);
        let closed = sorted_energies(&model(1.0, 0.0, two_s));
        let jacobi = eigh(&build_hamiltonian(&model(1.0, 0.0, two_s)))
            .unwrap()
            .eigenvalues;
        for ((a, b), c) in closed.iter().zip(&jacobi).zip(&expected) {
            assert!((a - c).abs() < 1e-13, "closed {a} vs {c}");
            assert!((b - c).abs() < 1e-13, "jacobi {b} vs {c}");
        }
    }
    // spin 1: {−1 ×2, 1/2 ×4}
    assert_eq!(total_spin_levels(2), vec![-1.0, -1.0, 0.5, 0.5, 0.5, 0.5]);
}

#[test]
fn clebsch_gordan_amplitudes() {
    // |F=1/2, M=1/2⟩ = √(1/3)|1/2, 0⟩ − √(2/3)|−1/2, 1⟩
    let (cm, cp) = sector(&model(1.0, 0.0, 2), HalfInt::from_twice(1))
        .unwrap()
        .amplitudes()
        .unwrap();
    assert!((cm * cm - 1.0 / 3.0).abs() < 1e-15);
    assert!((cp * cp - 2.0 / 3.0).abs() < 1e-15);
}

#[test]
fn eigenvectors_diagonalize_hamiltonian() {
    for two_s in 2..=9 {
        for &(delta, d) in &[(0.0, 0.3), (0.6, -1.2), (1.0, 0.0), (1.7, 1.9), (-0.8, 0.4)] {
            let m = model(delta, d, two_s);
            let h = build_hamiltonian(&m);
            let states = eigenstates(&m);
            for st in &states {
                let hv = h.as_matrix().mul_vec(&st.vector);
                let res: f64 = hv
                    .iter()
                    .zip(&st.vector)
                    .map(|(a, b)| (a - st.energy * b).powi(2))
                    .sum::<f64>()
                    .sqrt();
                assert!(
                    res <= 1e-10 * st.energy.abs().max(1.0),
                    "2S={two_s} {st:?} residual {res}"
                );
            }
            // Gram matrix = I
            let n = m.dim();
            let mut v = Matrix::zeros(n);
            for (k, st) in states.iter().enumerate() {
                for i in 0..n {
                    v.set(i, k, st.vector[i]);
                }
            }
            let gram = &v.transpose() * &v;
            assert!(gram.sub(&Matrix::identity(n)).max_abs() < 1e-12);
        }
    }
}

#[test]
fn hamiltonian_conserves_total_magnetization() {
    use dimer_core::BasisIndex;
    let m = model(1.3, -0.4, 5);
    let h = build_hamiltonian(&m);
    for i in 0..m.dim() {
        for j in 0..m.dim() {
            let a = BasisIndex::from_linear(i, 5).unwrap().total();
            let b = BasisIndex::from_linear(j, 5).unwrap().total();
            if a != b {
                assert_eq!(h.get(i, j), 0.0);
            }
        }
    }
}

/// Gibbs state from the numerical eigenbasis of the assembled Hamiltonian.
fn oracle_gibbs(m: &DimerModel, t: f64) -> DensityMatrix {
    let e = eigh(&build_hamiltonian(m)).unwrap();
    let e0 = e.eigenvalues[0];
    let vecs: Vec<Vec<f64>> = (0..m.dim()).map(|k| e.eigenvector(k)).collect();
    DensityMatrix::mixture(
        m.two_s,
        e.eigenvalues
            .iter()
            .zip(&vecs)
            .map(|(&ev, v)| ((-(ev - e0) / t).exp(), v.as_slice())),
    )
    .unwrap()
}

fn oracle_negativity(m: &DimerModel, t: f64) -> f64 {
    negativity(&oracle_gibbs(m, t)).unwrap().negativity
}

#[test]
fn thermal_negativity_matches_numerical_gibbs_state() {
    for &(delta, d, two_s) in &[(1.0, 0.0, 2), (0.4, -0.8, 3), (1.6, 0.9, 4), (0.9, 0.25, 7)] {
        let m = model(delta, d, two_s);
        for t in [0.05, 0.3, 0.9, 1.7] {
            let a = dimer_core::thermal_negativity(&m, t).unwrap();
            let b = oracle_negativity(&m, t);
            assert!((a - b).abs() < 1e-12, "{m:?} T={t}: {a} vs {b}");
        }
    }
}

#[test]
fn eq9_value_at_intermediate_anisotropy() {
    // frozen from an independent NumPy eigensolver run
    const FROZEN: f64 = 0.319_057_680_526_012_6;
    let m = model(1.0, 0.3, 4);
    assert!((negativity_closed_pm_half(&m).unwrap() - FROZEN).abs() < 1e-12);
    assert!((ground_state_negativity(&m).unwrap() - FROZEN).abs() < 1e-10);
}

#[test]
fn threshold_against_dense_scan() {
    // brute force: 10⁴-point linear scan of the numerical Gibbs state, then bisection
    let m = model(1.0, 0.0, 3);
    let temps: Vec<f64> = (0..=10_000)
        .map(|k| 1e-3 + (5.0 - 1e-3) * f64::from(k) / 1e4)
        .collect();
    let last = temps
        .iter()
        .rposition(|&t| oracle_negativity(&m, t) > 1e-10)
        .unwrap();
    let (mut lo, mut hi) = (temps[last], temps[last + 1]);
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if oracle_negativity(&m, mid) > 1e-10 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let dense = 0.5 * (lo + hi);
    // frozen from the same scan in NumPy
    const FROZEN: f64 = 1.242_669_868_707;
    assert!((dense - FROZEN).abs() < 1e-7 * FROZEN, "{dense}");
    let fast = threshold_temperature(&m).unwrap().t_threshold;
    assert!((fast - dense).abs() < 1e-7 * dense, "{fast} vs {dense}");
}
