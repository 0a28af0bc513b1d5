//! Phase diagrams, negativity sweeps and threshold temperatures.
//!
//! Grid points are evaluated in parallel and returned in row order, outer
//! axis first.

use rayon::prelude::*;

use crate::entanglement::{ground_state_density, negativity, thermal_negativity};
use crate::error::{Error, Result};
use crate::half::HalfInt;
use crate::spectrum::{ground_state_manifold, DEFAULT_DEGENERACY_TOL};
use crate::spin_algebra::DimerModel;
use crate::table::{Column, SweepTable};

/// Negativity at or below this level counts as separable.
pub const ENTANGLEMENT_EPS: f64 = 1e-10;

/// Evenly spaced points `min..=max`; a single point sits at `min`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Grid {
    pub fn new(min: f64, max: f64, count: usize) -> Self {
        Grid { min, max, count }
    }

    pub fn points(&self) -> Vec<f64> {
        match self.count {
            0 => vec![],
            1 => vec![self.min],
            n => {
                let step = (self.max - self.min) / (n - 1) as f64;
                (0..n)
                    .map(|k| {
                        if k == n - 1 {
                            self.max
                        } else {
                            self.min + step * k as f64
                        }
                    })
                    .collect()
            }
        }
    }
}

/// `count` points spaced geometrically over `[min, max]`.
pub fn geometric_points(min: f64, max: f64, count: usize) -> Vec<f64> {
    match count {
        0 => vec![],
        1 => vec![min],
        n => {
            let ratio = (max / min).ln() / (n - 1) as f64;
            (0..n)
                .map(|k| {
                    if k == n - 1 {
                        max
                    } else {
                        min * (ratio * k as f64).exp()
                    }
                })
                .collect()
        }
    }
}

fn with_ratio(template: &DimerModel, delta: f64, d_over_j: f64, two_s: u32) -> Result<DimerModel> {
    DimerModel::new(template.j, delta, d_over_j * template.j, two_s)
}

fn require_antiferro(model: &DimerModel) -> Result<()> {
    if model.j > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "analysis routines need J > 0, got J = {}",
            model.j
        )))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhasePoint {
    pub delta: f64,
    pub d_over_j: f64,
    /// Distinct `|Sᶻₜ|` in the ground manifold, ascending.
    pub ground_sectors: Vec<HalfInt>,
    pub degeneracy: usize,
    pub negativity: f64,
}

/// Zero-temperature phase and negativity over the `(Δ, D/J)` plane, `Δ` outer.
pub fn phase_diagram(
    template: &DimerModel,
    delta_axis: Grid,
    d_over_j_axis: Grid,
) -> Result<Vec<PhasePoint>> {
    require_antiferro(template)?;
    if delta_axis.count < 2 || d_over_j_axis.count < 2 {
        return Err(Error::InvalidParameter(
            "phase diagram grids need at least 2 points per axis".into(),
        ));
    }
    let deltas = delta_axis.points();
    let ds = d_over_j_axis.points();
    let cells: Vec<(f64, f64)> = deltas
        .iter()
        .flat_map(|&a| ds.iter().map(move |&b| (a, b)))
        .collect();
    cells
        .par_iter()
        .map(|&(delta, d_over_j)| phase_point(template, delta, d_over_j))
        .collect()
}

pub fn phase_point(template: &DimerModel, delta: f64, d_over_j: f64) -> Result<PhasePoint> {
    let model = with_ratio(template, delta, d_over_j, template.two_s)?;
    let manifold = ground_state_manifold(&model, DEFAULT_DEGENERACY_TOL);
    let n = negativity(&ground_state_density(&model))?.negativity;
    Ok(PhasePoint {
        delta,
        d_over_j,
        ground_sectors: manifold.abs_sectors(),
        degeneracy: manifold.degeneracy(),
        negativity: n,
    })
}

/// Cell-edge midpoints along `D/J` where the ground sectors change, for a
/// slice of points ordered by `D/J`.
pub fn phase_boundaries(slice: &[PhasePoint]) -> Vec<f64> {
    slice
        .windows(2)
        .filter(|w| w[0].ground_sectors != w[1].ground_sectors)
        .map(|w| 0.5 * (w[0].d_over_j + w[1].d_over_j))
        .collect()
}

/// Ground-state negativity versus `D/J` for several spins at fixed `Δ`.
/// Columns `S, D_over_J, negativity`, `S` outer.
pub fn negativity_vs_d(
    template: &DimerModel,
    two_s_list: &[u32],
    d_over_j_axis: Grid,
    delta: f64,
) -> Result<SweepTable> {
    require_antiferro(template)?;
    let ds = d_over_j_axis.points();
    let cells: Vec<(u32, f64)> = two_s_list
        .iter()
        .flat_map(|&t| ds.iter().map(move |&d| (t, d)))
        .collect();
    let values: Vec<f64> = cells
        .par_iter()
        .map(|&(two_s, d)| {
            let model = with_ratio(template, delta, d, two_s)?;
            Ok(negativity(&ground_state_density(&model))?.negativity)
        })
        .collect::<Result<_>>()?;
    let mut table = SweepTable::new(vec![
        Column::new("S", ""),
        Column::new("D_over_J", ""),
        Column::new("negativity", ""),
    ]);
    for (&(two_s, d), n) in cells.iter().zip(values) {
        table.push_row(vec![f64::from(two_s) / 2.0, d, n])?;
    }
    Ok(table)
}

/// Thermal negativity on a temperature grid. Columns `S, T, negativity`.
pub fn thermal_profile(model: &DimerModel, temperatures: &[f64]) -> Result<SweepTable> {
    require_antiferro(model)?;
    let values: Vec<f64> = temperatures
        .par_iter()
        .map(|&t| thermal_negativity(model, t))
        .collect::<Result<_>>()?;
    let mut table = SweepTable::new(vec![
        Column::new("S", ""),
        Column::new("T", "k_B T / J"),
        Column::new("negativity", ""),
    ]);
    for (&t, n) in temperatures.iter().zip(values) {
        table.push_row(vec![model.spin(), t, n])?;
    }
    Ok(table)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdConfig {
    pub eps: f64,
    pub t_min: f64,
    pub t_max: f64,
    pub scan_points: usize,
    /// Bisection stops once `hi − lo ≤ rel_width · hi`.
    pub rel_width: f64,
}

impl Default for ThresholdConfig {
    fn default() -> Self {
        ThresholdConfig {
            eps: ENTANGLEMENT_EPS,
            t_min: 1e-3,
            t_max: 50.0,
            scan_points: 400,
            rel_width: 1e-8,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdResult {
    /// In units of `k_B T / J`; zero if the ground state is separable.
    pub t_threshold: f64,
    pub bracket: (f64, f64),
    /// Sampled `(T, 𝒩(T))` used for bracketing.
    pub profile: Vec<(f64, f64)>,
}

/// Supremum of entangled temperatures, with the default scan.
pub fn threshold_temperature(model: &DimerModel) -> Result<ThresholdResult> {
    threshold_temperature_with(model, &ThresholdConfig::default())
}

/// Scans `𝒩(T)` on a geometric grid, takes the last sample above `eps` and
/// bisects the interval to the next sample. Non-monotonic profiles are
/// handled because only the last crossing matters.
pub fn threshold_temperature_with(
    model: &DimerModel,
    cfg: &ThresholdConfig,
) -> Result<ThresholdResult> {
    require_antiferro(model)?;
    let ground = negativity(&ground_state_density(model))?.negativity;
    if ground <= cfg.eps {
        return Ok(ThresholdResult {
            t_threshold: 0.0,
            bracket: (0.0, 0.0),
            profile: Vec::new(),
        });
    }

    let temps = geometric_points(cfg.t_min, cfg.t_max, cfg.scan_points);
    let values: Vec<f64> = temps
        .par_iter()
        .map(|&t| thermal_negativity(model, t))
        .collect::<Result<_>>()?;
    let profile: Vec<(f64, f64)> = temps.iter().copied().zip(values.iter().copied()).collect();

    let last = *values.last().expect("scan has points");
    if last > cfg.eps {
        return Err(Error::UnresolvedThreshold {
            t_max: cfg.t_max,
            last_negativity: last,
            profile,
        });
    }

    let (mut lo, mut hi) = match values.iter().rposition(|&n| n > cfg.eps) {
        Some(k) => (temps[k], temps[k + 1]),
        // entangled at T = 0 but not at any sampled temperature
        None => (0.0, temps[0]),
    };
    while hi - lo > cfg.rel_width * hi {
        let mid = 0.5 * (lo + hi);
        if thermal_negativity(model, mid)? > cfg.eps {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(ThresholdResult {
        t_threshold: 0.5 * (lo + hi),
        bracket: (lo, hi),
        profile,
    })
}

/// Number of sign changes in the second difference of a sampled curve.
/// Second differences within `tol` of zero are skipped.
pub fn count_flections(values: &[f64], tol: f64) -> usize {
    let signs: Vec<bool> = values
        .windows(3)
        .map(|w| w[2] - 2.0 * w[1] + w[0])
        .filter(|c| c.abs() > tol)
        .map(|c| c > 0.0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}
