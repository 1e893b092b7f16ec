//! Single solves and parameter sweeps that write plot-ready artifacts.
//!
//! Every run is described by an [`Experiment`]. Running it writes CSV files
//! whose first line is a `#`-prefixed copy of the [`ExperimentManifest`],
//! followed by a header row and data rows, plus a standalone `manifest.json`.
//! Re-running a manifest reproduces the data rows bitwise.
//!
//! | file             | columns                                          |
//! |------------------|--------------------------------------------------|
//! | `solution.csv`   | `x1,x2,psi_t,psi_a,e_abs` (21×21 test grid)      |
//! | `convergence.csv`| `epoch,pde_error_train,e_norm_train,e_norm_test` |
//! | `sweep_k.csv`    | `k,m_train,e_norm_test,pde_error_train`          |
//! | `sweep_h.csv`    | `h,m_train,e_norm_test,pde_error_train`          |
//! | `sweep_grid.csv` | `grid,m_train,e_norm_test,pde_error_train`       |
//!
//! Sweep rows with `repeats > 1` report the mean over seeds `seed..seed+repeats`.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evaluation::{e_abs_field, e_norm, ErrorField};
use crate::problems::{ProblemKind, ProblemSpec};
use crate::sampling::{test_grid, GridKind, GridSpec, RANDOM_GRID_RNG};
use crate::trainer::{train, TrainConfig, TrainResult};

pub const TOOL_VERSION: &str = concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION"));

pub const DEFAULT_K_LIST: [usize; 5] = [8, 16, 24, 30, 40];
pub const DEFAULT_H_LIST: [usize; 6] = [5, 10, 15, 25, 35, 45];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Solve,
    SweepK,
    SweepH,
    SweepGrid,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Solve => "solve",
            Command::SweepK => "sweep-k",
            Command::SweepH => "sweep-h",
            Command::SweepGrid => "sweep-grid",
        }
    }
}

/// Everything needed to reproduce a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Experiment {
    pub command: Command,
    pub problem: ProblemKind,
    /// Training grid. Sweeps over `K` or grid kind override the swept field per row.
    pub grid: GridSpec,
    pub h_count: usize,
    pub train_config: TrainConfig,
    /// Swept `K` values (sweep-k) or `H` values (sweep-h); empty otherwise.
    #[serde(default)]
    pub sweep_values: Vec<usize>,
    #[serde(default = "one")]
    pub repeats: usize,
}

fn one() -> usize {
    1
}

/// An [`Experiment`] plus provenance, embedded in every output file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentManifest {
    #[serde(flatten)]
    pub experiment: Experiment,
    pub random_grid_rng: String,
    pub uniform_grid_includes_boundary: bool,
    pub tool_version: String,
    pub timestamp: String,
}

impl ExperimentManifest {
    pub fn new(experiment: Experiment) -> Self {
        Self {
            experiment,
            random_grid_rng: RANDOM_GRID_RNG.to_string(),
            uniform_grid_includes_boundary: true,
            tool_version: TOOL_VERSION.to_string(),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
    }
}

/// Final errors of one sweep row.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub k: usize,
    pub h_count: usize,
    pub grid: GridKind,
    pub m_train: usize,
    pub e_norm_test: f64,
    pub pde_error_train: f64,
}

#[derive(Debug, Clone)]
pub struct SolveOutput {
    pub result: TrainResult,
    pub error: ErrorField,
    pub e_norm_test: f64,
}

#[derive(Debug, Clone)]
pub enum Outcome {
    Solve(Box<SolveOutput>),
    Sweep(Vec<SweepRow>),
}

/// What a run produced, and where.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub manifest: ExperimentManifest,
    pub outcome: Outcome,
    pub files: Vec<PathBuf>,
}

impl RunOutput {
    pub fn sweep_rows(&self) -> Option<&[SweepRow]> {
        match &self.outcome {
            Outcome::Sweep(rows) => Some(rows),
            Outcome::Solve(_) => None,
        }
    }

    pub fn solve(&self) -> Option<&SolveOutput> {
        match &self.outcome {
            Outcome::Solve(s) => Some(s),
            Outcome::Sweep(_) => None,
        }
    }
}

impl Experiment {
    pub fn solve(problem: ProblemKind, grid: GridSpec, h_count: usize, train_config: TrainConfig) -> Self {
        Self {
            command: Command::Solve,
            problem,
            grid,
            h_count,
            train_config,
            sweep_values: vec![],
            repeats: 1,
        }
    }

    pub fn sweep_k(
        problem: ProblemKind,
        grid_kind: GridKind,
        h_count: usize,
        ks: &[usize],
        train_config: TrainConfig,
    ) -> Self {
        let grid = GridSpec::new(grid_kind, ks.first().copied().unwrap_or(0), train_config.seed);
        Self {
            command: Command::SweepK,
            problem,
            grid,
            h_count,
            train_config,
            sweep_values: ks.to_vec(),
            repeats: 1,
        }
    }

    pub fn sweep_h(problem: ProblemKind, k: usize, hs: &[usize], train_config: TrainConfig) -> Self {
        Self {
            command: Command::SweepH,
            problem,
            grid: GridSpec::uniform(k),
            h_count: hs.first().copied().unwrap_or(0),
            train_config,
            sweep_values: hs.to_vec(),
            repeats: 1,
        }
    }

    pub fn sweep_grid(problem: ProblemKind, k: usize, h_count: usize, seed: u64, train_config: TrainConfig) -> Self {
        Self {
            command: Command::SweepGrid,
            problem,
            grid: GridSpec::new(GridKind::Uniform, k, seed),
            h_count,
            train_config,
            sweep_values: vec![],
            repeats: 1,
        }
    }

    pub fn with_repeats(mut self, repeats: usize) -> Self {
        self.repeats = repeats;
        self
    }

    fn validate(&self) -> Result<()> {
        self.train_config.validate()?;
        if self.repeats == 0 {
            return Err(Error::InvalidArgument("repeats must be at least 1".into()));
        }
        if matches!(self.command, Command::SweepK | Command::SweepH) && self.sweep_values.is_empty() {
            return Err(Error::InvalidArgument(format!(
                "{} needs a non-empty value list",
                self.command.name()
            )));
        }
        Ok(())
    }

    /// `(grid, h_count)` of each sweep row, in output order.
    fn rows(&self) -> Vec<(GridSpec, usize)> {
        match self.command {
            Command::Solve => vec![(self.grid, self.h_count)],
            Command::SweepK => self
                .sweep_values
                .iter()
                .map(|&k| {
                    (
                        GridSpec {
                            resolution: k,
                            ..self.grid
                        },
                        self.h_count,
                    )
                })
                .collect(),
            Command::SweepH => self.sweep_values.iter().map(|&h| (self.grid, h)).collect(),
            Command::SweepGrid => GridKind::ALL
                .iter()
                .map(|&kind| (GridSpec { kind, ..self.grid }, self.h_count))
                .collect(),
        }
    }

    /// Runs the experiment and writes its artifacts under `out_dir`.
    pub fn run(&self, out_dir: impl AsRef<Path>) -> Result<RunOutput> {
        run_manifest(&ExperimentManifest::new(self.clone()), out_dir)
    }
}

/// Re-runs a manifest, writing fresh artifacts under `out_dir`.
pub fn run_manifest(manifest: &ExperimentManifest, out_dir: impl AsRef<Path>) -> Result<RunOutput> {
    let exp = &manifest.experiment;
    exp.validate()?;
    let out_dir = out_dir.as_ref();
    fs::create_dir_all(out_dir)?;
    let problem = ProblemSpec::new(exp.problem);
    let header = manifest_comment(manifest)?;

    let mut files = Vec::new();
    let outcome = match exp.command {
        Command::Solve => {
            let result = train(&problem, exp.grid, exp.h_count, &exp.train_config)?;
            let test = test_grid();
            let error = e_abs_field(&problem, &result.params, &test)?;
            let e_norm_test = e_norm(&problem, &result.params, &test)?;

            let mut solution = header.clone();
            solution.push_str("x1,x2,psi_t,psi_a,e_abs\n");
            for (x, e) in &error.samples {
                let (x1, x2) = (x.coords()[0], x.coords()[1]);
                let psi_t = problem.trial_eval(&result.params, x)?;
                let psi_a = problem.analytic_solution(x)?;
                writeln!(solution, "{x1},{x2},{psi_t},{psi_a},{e}").expect("writing to a String");
            }
            files.push(write(out_dir, "solution.csv", &solution)?);

            let mut conv = header.clone();
            conv.push_str("epoch,pde_error_train,e_norm_train,e_norm_test\n");
            for r in &result.history {
                writeln!(
                    conv,
                    "{},{},{},{}",
                    r.epoch, r.pde_error_train, r.e_norm_train, r.e_norm_test
                )
                .expect("writing to a String");
            }
            files.push(write(out_dir, "convergence.csv", &conv)?);
            Outcome::Solve(Box::new(SolveOutput {
                result,
                error,
                e_norm_test,
            }))
        }
        Command::SweepK | Command::SweepH | Command::SweepGrid => {
            let rows = run_sweep(&problem, exp)?;
            let (name, key) = match exp.command {
                Command::SweepK => ("sweep_k.csv", "k"),
                Command::SweepH => ("sweep_h.csv", "h"),
                _ => ("sweep_grid.csv", "grid"),
            };
            let mut csv = header.clone();
            writeln!(csv, "{key},m_train,e_norm_test,pde_error_train").expect("writing to a String");
            for r in &rows {
                let label = match exp.command {
                    Command::SweepK => r.k.to_string(),
                    Command::SweepH => r.h_count.to_string(),
                    _ => r.grid.name().to_string(),
                };
                writeln!(csv, "{label},{},{},{}", r.m_train, r.e_norm_test, r.pde_error_train)
                    .expect("writing to a String");
            }
            files.push(write(out_dir, name, &csv)?);
            Outcome::Sweep(rows)
        }
    };
    files.push(write(
        out_dir,
        "manifest.json",
        &serde_json::to_string_pretty(manifest)?,
    )?);
    Ok(RunOutput {
        manifest: manifest.clone(),
        outcome,
        files,
    })
}

fn run_sweep(problem: &ProblemSpec, exp: &Experiment) -> Result<Vec<SweepRow>> {
    let rows = exp.rows();
    let jobs: Vec<(usize, u64)> = (0..rows.len())
        .flat_map(|row| (0..exp.repeats as u64).map(move |rep| (row, rep)))
        .collect();
    // Results come back in job order, so averaging below is order-stable.
    let finals = jobs
        .par_iter()
        .map(|&(row, rep)| {
            let (grid, h) = rows[row];
            let grid = GridSpec {
                seed: grid.seed.wrapping_add(rep),
                ..grid
            };
            let config = TrainConfig {
                seed: exp.train_config.seed.wrapping_add(rep),
                ..exp.train_config
            };
            let last = *train(problem, grid, h, &config)?.last();
            Ok((last.e_norm_test, last.pde_error_train))
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(rows
        .iter()
        .zip(finals.chunks(exp.repeats))
        .map(|(&(grid, h_count), reps)| {
            let n = reps.len() as f64;
            SweepRow {
                k: grid.resolution,
                h_count,
                grid: grid.kind,
                m_train: grid.size(),
                e_norm_test: reps.iter().map(|r| r.0).sum::<f64>() / n,
                pde_error_train: reps.iter().map(|r| r.1).sum::<f64>() / n,
            }
        })
        .collect())
}

fn manifest_comment(manifest: &ExperimentManifest) -> Result<String> {
    Ok(format!("# manifest: {}\n", serde_json::to_string(manifest)?))
}

fn write(dir: &Path, name: &str, contents: &str) -> Result<PathBuf> {
    let path = dir.join(name);
    fs::write(&path, contents)?;
    Ok(path)
}

/// Data rows of an artifact CSV: everything after the comment block and header row.
pub fn csv_data_rows(path: impl AsRef<Path>) -> Result<Vec<String>> {
    let text = fs::read_to_string(path)?;
    Ok(text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(str::to_owned)
        .collect())
}

/// Parses the manifest embedded in the comment block of an artifact CSV.
pub fn csv_manifest(path: impl AsRef<Path>) -> Result<ExperimentManifest> {
    let text = fs::read_to_string(path)?;
    let line = text
        .lines()
        .find_map(|l| l.strip_prefix("# manifest: "))
        .ok_or_else(|| Error::InvalidArgument("no manifest comment found".into()))?;
    Ok(serde_json::from_str(line)?)
}
