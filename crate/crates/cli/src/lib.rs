//! Command-line front end: parses flags into a [`RunConfig`], runs the
//! requested computation and writes CSV or JSON.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use thiserror::Error;

use dimer_core::analysis::{
    count_flections, negativity_vs_d, phase_diagram, thermal_profile, threshold_temperature_with,
    Grid, ThresholdConfig,
};
use dimer_core::spectrum::SectorLevels;
use dimer_core::table::{format_significant, Column, SweepTable, SIGNIFICANT_DIGITS};
use dimer_core::{
    closed_form_spectrum, ground_state_negativity, thermal_negativity, DimerModel,
    Error as CoreError,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Numerical(#[from] CoreError),
    #[error("{0} threshold point(s) unresolved below T_max; partial output written")]
    Unresolved(usize),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Unresolved(_) => 3,
            CliError::Numerical(CoreError::InvalidSpin { .. } | CoreError::InvalidParameter(_)) => {
                2
            }
            CliError::Numerical(_) | CliError::Io(_) => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "dimer",
    version,
    about = "Spectra and negativity of the mixed spin-(1/2, S) XXZ dimer"
)]
pub struct Cli {
    /// Exchange coupling J; energies are reported in units of J.
    #[arg(
        long = "j",
        global = true,
        default_value_t = 1.0,
        allow_negative_numbers = true
    )]
    pub j: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; standard output when omitted.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct PointArgs {
    /// Twice the larger spin, 2S >= 2.
    #[arg(long = "two-s")]
    pub two_s: u32,
    #[arg(long, allow_negative_numbers = true)]
    pub delta: f64,
    #[arg(long = "d-over-j", allow_negative_numbers = true)]
    pub d_over_j: f64,
}

#[derive(Debug, Clone, Args)]
pub struct DAxisArgs {
    #[arg(long = "d-min", default_value_t = -2.0, allow_negative_numbers = true)]
    pub d_min: f64,
    #[arg(long = "d-max", default_value_t = 2.0, allow_negative_numbers = true)]
    pub d_max: f64,
    /// Number of D/J grid points.
    #[arg(long, default_value_t = 201)]
    pub points: usize,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Sector table of closed-form energies and amplitudes.
    Spectrum(PointArgs),
    /// Ground-state (or thermal, with --temperature) negativity at one point.
    Negativity {
        #[command(flatten)]
        point: PointArgs,
        /// k_B T / J; zero temperature when omitted.
        #[arg(long)]
        temperature: Option<f64>,
    },
    /// Zero-temperature phase and negativity on the (Delta, D/J) plane.
    PhaseDiagram {
        #[arg(long = "two-s")]
        two_s: u32,
        #[arg(
            long = "delta-min",
            default_value_t = 0.0,
            allow_negative_numbers = true
        )]
        delta_min: f64,
        #[arg(
            long = "delta-max",
            default_value_t = 2.0,
            allow_negative_numbers = true
        )]
        delta_max: f64,
        #[arg(long = "delta-points", default_value_t = 101)]
        delta_points: usize,
        #[command(flatten)]
        d_axis: DAxisArgs,
    },
    /// Ground-state negativity versus D/J for several spins.
    SweepD {
        #[arg(long = "two-s", value_delimiter = ',', required = true)]
        two_s: Vec<u32>,
        #[arg(long, allow_negative_numbers = true)]
        delta: f64,
        #[command(flatten)]
        d_axis: DAxisArgs,
    },
    /// Thermal negativity versus temperature for several spins.
    Thermal {
        #[arg(long = "two-s", value_delimiter = ',', required = true)]
        two_s: Vec<u32>,
        #[arg(long, allow_negative_numbers = true)]
        delta: f64,
        #[arg(long = "d-over-j", allow_negative_numbers = true)]
        d_over_j: f64,
        #[arg(long = "t-min", default_value_t = 0.01)]
        t_min: f64,
        #[arg(long = "t-max", default_value_t = 3.0)]
        t_max: f64,
        #[arg(long, default_value_t = 300)]
        points: usize,
    },
    /// Threshold temperature versus D/J for several spins and anisotropies.
    Threshold {
        #[arg(long = "two-s", value_delimiter = ',', required = true)]
        two_s: Vec<u32>,
        #[arg(
            long,
            value_delimiter = ',',
            required = true,
            allow_negative_numbers = true
        )]
        delta: Vec<f64>,
        #[command(flatten)]
        d_axis: DAxisArgs,
        /// Upper end of the temperature scan.
        #[arg(long = "t-max", default_value_t = 50.0)]
        t_max: f64,
    },
}

/// A parsed and validated invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub j: f64,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub command: Command,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let cfg = RunConfig {
            j: cli.j,
            format: cli.format,
            output: cli.output,
            command: cli.command,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), CliError> {
        let usage = |msg: String| Err(CliError::Usage(msg));
        if !self.j.is_finite() || self.j == 0.0 {
            return usage(format!("--j must be finite and nonzero, got {}", self.j));
        }
        let spins: Vec<u32> = match &self.command {
            Command::Spectrum(p) | Command::Negativity { point: p, .. } => vec![p.two_s],
            Command::PhaseDiagram { two_s, .. } => vec![*two_s],
            Command::SweepD { two_s, .. }
            | Command::Thermal { two_s, .. }
            | Command::Threshold { two_s, .. } => two_s.clone(),
        };
        if let Some(bad) = spins.iter().find(|&&t| t < 2) {
            return usage(format!("--two-s must be >= 2, got {bad}"));
        }
        let analysis = !matches!(
            self.command,
            Command::Spectrum(_) | Command::Negativity { .. }
        );
        if analysis && self.j <= 0.0 {
            return usage("phase-diagram, sweep-d, thermal and threshold need J > 0".into());
        }
        match &self.command {
            Command::PhaseDiagram {
                delta_points,
                d_axis,
                ..
            } => {
                if *delta_points < 2 || d_axis.points < 2 {
                    return usage("phase-diagram needs at least 2 points per axis".into());
                }
            }
            Command::SweepD { d_axis, .. } => {
                if d_axis.points < 1 {
                    return usage("--points must be >= 1".into());
                }
            }
            Command::Threshold { d_axis, t_max, .. } => {
                if d_axis.points < 1 {
                    return usage("--points must be >= 1".into());
                }
                if !t_max.is_finite() || *t_max <= ThresholdConfig::default().t_min {
                    return usage(format!("--t-max must exceed the scan start, got {t_max}"));
                }
            }
            Command::Thermal {
                t_min,
                t_max,
                points,
                ..
            } => {
                if *points < 1 {
                    return usage("--points must be >= 1".into());
                }
                if t_min.is_nan() || t_max.is_nan() || *t_min <= 0.0 || t_max < t_min {
                    return usage(format!("need 0 < t-min <= t-max, got [{t_min}, {t_max}]"));
                }
            }
            Command::Negativity {
                temperature: Some(t),
                ..
            } if t.is_nan() || *t <= 0.0 => {
                return usage(format!("--temperature must be positive, got {t}"));
            }
            _ => {}
        }
        Ok(())
    }

    fn model(&self, delta: f64, d_over_j: f64, two_s: u32) -> Result<DimerModel, CliError> {
        Ok(DimerModel::new(self.j, delta, d_over_j * self.j, two_s)?)
    }

    fn subcommand_name(&self) -> &'static str {
        match self.command {
            Command::Spectrum(_) => "spectrum",
            Command::Negativity { .. } => "negativity",
            Command::PhaseDiagram { .. } => "phase-diagram",
            Command::SweepD { .. } => "sweep-d",
            Command::Thermal { .. } => "thermal",
            Command::Threshold { .. } => "threshold",
        }
    }

    /// The configuration echoed into JSON output.
    pub fn to_json(&self) -> Value {
        let mut cfg = json!({ "subcommand": self.subcommand_name(), "J": self.j });
        let extra = match &self.command {
            Command::Spectrum(p) => point_json(p),
            Command::Negativity { point, temperature } => {
                let mut v = point_json(point);
                v["temperature"] = json!(temperature);
                v
            }
            Command::PhaseDiagram {
                two_s,
                delta_min,
                delta_max,
                delta_points,
                d_axis,
            } => json!({
                "two_s": two_s, "delta_min": delta_min, "delta_max": delta_max,
                "delta_points": delta_points, "d_min": d_axis.d_min, "d_max": d_axis.d_max,
                "points": d_axis.points,
            }),
            Command::SweepD {
                two_s,
                delta,
                d_axis,
            } => json!({
                "two_s": two_s, "delta": delta, "d_min": d_axis.d_min, "d_max": d_axis.d_max,
                "points": d_axis.points,
            }),
            Command::Thermal {
                two_s,
                delta,
                d_over_j,
                t_min,
                t_max,
                points,
            } => json!({
                "two_s": two_s, "delta": delta, "d_over_j": d_over_j, "t_min": t_min,
                "t_max": t_max, "points": points,
            }),
            Command::Threshold {
                two_s,
                delta,
                d_axis,
                t_max,
            } => json!({
                "two_s": two_s, "delta": delta, "d_min": d_axis.d_min, "d_max": d_axis.d_max,
                "points": d_axis.points, "t_max": t_max,
            }),
        };
        if let (Value::Object(base), Value::Object(more)) = (&mut cfg, extra) {
            base.extend(more);
        }
        cfg
    }
}

fn point_json(p: &PointArgs) -> Value {
    json!({ "two_s": p.two_s, "delta": p.delta, "d_over_j": p.d_over_j })
}

fn table(names: &[&str]) -> SweepTable {
    SweepTable::new(
        names
            .iter()
            .map(|&n| Column::new(n, if n.starts_with('T') { "k_B T / J" } else { "" }))
            .collect(),
    )
}

/// Result of one run: the table plus an optional one-line summary for stdout.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub table: SweepTable,
    pub summary: Option<String>,
    /// Diagnostics for standard error.
    pub notes: Vec<String>,
}

/// Runs the computation. `Err(CliError::Unresolved)` still carries a
/// partial table through `partial`.
pub fn compute(cfg: &RunConfig, partial: &mut Option<RunOutput>) -> Result<RunOutput, CliError> {
    let mut notes = Vec::new();
    let mut summary = None;
    let out = match &cfg.command {
        Command::Spectrum(p) => {
            let m = cfg.model(p.delta, p.d_over_j, p.two_s)?;
            let mut t = table(&["Szt", "branch", "energy", "c_minus", "c_plus"]);
            for sec in closed_form_spectrum(&m) {
                let tz = sec.s_z_t.value();
                match sec.levels {
                    SectorLevels::Edge { energy } => {
                        t.push_row(vec![tz, 0.0, energy / m.j, f64::NAN, f64::NAN])?
                    }
                    SectorLevels::Pair {
                        energy_minus,
                        energy_plus,
                        c_minus,
                        c_plus,
                        ..
                    } => {
                        t.push_row(vec![tz, -1.0, energy_minus / m.j, c_minus, c_plus])?;
                        t.push_row(vec![tz, 1.0, energy_plus / m.j, c_minus, c_plus])?;
                    }
                }
            }
            t
        }
        Command::Negativity { point, temperature } => {
            let m = cfg.model(point.delta, point.d_over_j, point.two_s)?;
            let n = match temperature {
                Some(t) => thermal_negativity(&m, *t)?,
                None => ground_state_negativity(&m)?,
            };
            summary = Some(format!("{n:.12}"));
            let mut t = table(&["S", "Delta", "D_over_J", "T", "negativity"]);
            t.push_row(vec![
                m.spin(),
                point.delta,
                point.d_over_j,
                temperature.unwrap_or(0.0),
                n,
            ])?;
            t
        }
        Command::PhaseDiagram {
            two_s,
            delta_min,
            delta_max,
            delta_points,
            d_axis,
        } => {
            let template = cfg.model(1.0, 0.0, *two_s)?;
            let pts = phase_diagram(
                &template,
                Grid::new(*delta_min, *delta_max, *delta_points),
                Grid::new(d_axis.d_min, d_axis.d_max, d_axis.points),
            )?;
            let mut t = table(&[
                "Delta",
                "D_over_J",
                "abs_Szt_min",
                "abs_Szt_max",
                "degeneracy",
                "negativity",
            ]);
            for p in pts {
                let lo = p.ground_sectors.first().map_or(f64::NAN, |h| h.value());
                let hi = p.ground_sectors.last().map_or(f64::NAN, |h| h.value());
                t.push_row(vec![
                    p.delta,
                    p.d_over_j,
                    lo,
                    hi,
                    p.degeneracy as f64,
                    p.negativity,
                ])?;
            }
            t
        }
        Command::SweepD {
            two_s,
            delta,
            d_axis,
        } => {
            let template = cfg.model(*delta, 0.0, two_s[0])?;
            negativity_vs_d(
                &template,
                two_s,
                Grid::new(d_axis.d_min, d_axis.d_max, d_axis.points),
                *delta,
            )?
        }
        Command::Thermal {
            two_s,
            delta,
            d_over_j,
            t_min,
            t_max,
            points,
        } => {
            let temps = Grid::new(*t_min, *t_max, *points).points();
            let mut t = table(&["S", "T", "negativity"]);
            for &s in two_s {
                let m = cfg.model(*delta, *d_over_j, s)?;
                for row in thermal_profile(&m, &temps)?.rows() {
                    t.push_row(row.clone())?;
                }
            }
            t
        }
        Command::Threshold {
            two_s,
            delta,
            d_axis,
            t_max,
        } => {
            let scan = ThresholdConfig {
                t_max: *t_max,
                ..ThresholdConfig::default()
            };
            let ds = Grid::new(d_axis.d_min, d_axis.d_max, d_axis.points).points();
            let mut t = table(&["S", "Delta", "D_over_J", "T_threshold"]);
            let mut unresolved = 0;
            for &s in two_s {
                for &dl in delta {
                    let mut curve = Vec::with_capacity(ds.len());
                    for &d in &ds {
                        let m = cfg.model(dl, d, s)?;
                        match threshold_temperature_with(&m, &scan) {
                            Ok(r) => {
                                curve.push(r.t_threshold);
                                t.push_row(vec![m.spin(), dl, d, r.t_threshold])?;
                            }
                            Err(CoreError::UnresolvedThreshold {
                                t_max,
                                last_negativity,
                                ..
                            }) => {
                                unresolved += 1;
                                notes.push(format!(
                                    "unresolved: S={} Delta={dl} D/J={d}: N(T_max={t_max}) = {last_negativity:e}",
                                    m.spin()
                                ));
                            }
                            Err(e) => return Err(e.into()),
                        }
                    }
                    notes.push(format!(
                        "flections S={} Delta={dl}: {}",
                        f64::from(s) / 2.0,
                        count_flections(&curve, 1e-6)
                    ));
                }
            }
            if unresolved > 0 {
                *partial = Some(RunOutput {
                    table: t,
                    summary: None,
                    notes,
                });
                return Err(CliError::Unresolved(unresolved));
            }
            t
        }
    };
    Ok(RunOutput {
        table: out,
        summary,
        notes,
    })
}

fn rounded(v: f64) -> Value {
    let s = format_significant(v, SIGNIFICANT_DIGITS);
    s.parse::<f64>()
        .ok()
        .and_then(|x| serde_json::Number::from_f64(x).map(Value::Number))
        .unwrap_or(Value::Null)
}

/// JSON document: `config` echo, column metadata and one object per row.
pub fn render_json(cfg: &RunConfig, t: &SweepTable) -> String {
    let columns: Vec<Value> = t
        .columns()
        .iter()
        .map(|c| json!({ "name": c.name, "unit": c.unit }))
        .collect();
    let rows: Vec<Value> = t
        .rows()
        .iter()
        .map(|r| {
            let mut obj = Map::new();
            for (c, v) in t.columns().iter().zip(r) {
                obj.insert(c.name.clone(), rounded(*v));
            }
            Value::Object(obj)
        })
        .collect();
    let doc = json!({ "config": cfg.to_json(), "columns": columns, "rows": rows });
    let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
    s.push('\n');
    s
}

pub fn render(cfg: &RunConfig, t: &SweepTable) -> String {
    match cfg.format {
        Format::Csv => t.to_csv(),
        Format::Json => render_json(cfg, t),
    }
}

fn emit(
    cfg: &RunConfig,
    out: &RunOutput,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), CliError> {
    for n in &out.notes {
        writeln!(stderr, "{n}")?;
    }
    let body = render(cfg, &out.table);
    match (&cfg.output, &out.summary, cfg.format) {
        (Some(path), summary, _) => {
            std::fs::write(path, body)?;
            if let Some(s) = summary {
                writeln!(stdout, "{s}")?;
            }
        }
        // a bare value for single-point CSV queries
        (None, Some(s), Format::Csv) => writeln!(stdout, "{s}")?,
        (None, _, _) => stdout.write_all(body.as_bytes())?,
    }
    Ok(())
}

/// Runs a validated config, writing results and diagnostics. Returns the
/// process exit code.
pub fn run(cfg: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let mut partial = None;
    let result = compute(cfg, &mut partial).and_then(|out| emit(cfg, &out, stdout, stderr));
    match result {
        Ok(()) => 0,
        Err(e) => {
            if let Some(p) = &partial {
                if let Err(io) = emit(cfg, p, stdout, stderr) {
                    let _ = writeln!(stderr, "error: {io}");
                }
            }
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
