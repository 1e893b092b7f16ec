//! Command-line front end: single solves and error sweeps.
//!
//! Exit codes: 0 success, 2 usage error, 3 numerical divergence, 1 anything else.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nnbvp::experiments::{run_manifest, Experiment, ExperimentManifest, RunOutput, DEFAULT_H_LIST, DEFAULT_K_LIST};
use nnbvp::{Error, GridKind, GridSpec, ProblemKind, TrainConfig};

#[derive(Parser)]
#[command(
    name = "nnbvp",
    version,
    about = "Neural-network trial-solution solver for BVPs on the unit square"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Train one network and write the solution and convergence CSVs.
    Solve {
        #[arg(long, default_value = "laplace-dirichlet")]
        problem: ProblemKind,
        #[arg(long, default_value = "uniform")]
        grid: GridKind,
        /// Training grid resolution (K² points).
        #[arg(long, default_value_t = 16)]
        k: usize,
        /// Hidden units.
        #[arg(long, default_value_t = 15)]
        h: usize,
        #[command(flatten)]
        train: TrainArgs,
    },
    /// Final errors as a function of the training grid resolution.
    SweepK {
        #[arg(long, default_value = "laplace-dirichlet")]
        problem: ProblemKind,
        #[arg(long, default_value = "uniform")]
        grid: GridKind,
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_K_LIST)]
        k: Vec<usize>,
        #[arg(long, default_value_t = 15)]
        h: usize,
        #[command(flatten)]
        train: TrainArgs,
    },
    /// Final errors as a function of the number of hidden units.
    SweepH {
        #[arg(long, default_value = "laplace-dirichlet")]
        problem: ProblemKind,
        #[arg(long, default_value_t = 16)]
        k: usize,
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_H_LIST)]
        h: Vec<usize>,
        #[command(flatten)]
        train: TrainArgs,
    },
    /// Final errors for each of the four training point distributions.
    SweepGrid {
        #[arg(long, default_value = "laplace-dirichlet")]
        problem: ProblemKind,
        #[arg(long, default_value_t = 16)]
        k: usize,
        #[arg(long, default_value_t = 15)]
        h: usize,
        #[command(flatten)]
        train: TrainArgs,
    },
    /// Re-run a manifest.json written by an earlier run.
    Replay {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long, default_value = "out")]
        out_dir: PathBuf,
    },
}

#[derive(Args)]
struct TrainArgs {
    #[arg(long, default_value_t = TrainConfig::default().epochs)]
    epochs: usize,
    #[arg(long, default_value_t = TrainConfig::default().lr0)]
    lr0: f64,
    #[arg(long, default_value_t = TrainConfig::default().anneal)]
    anneal: f64,
    #[arg(long, default_value_t = TrainConfig::default().l2)]
    l2: f64,
    #[arg(long, default_value_t = TrainConfig::default().batch_size)]
    batch_size: usize,
    /// Seeds initialization and shuffling, and the random grid.
    #[arg(long, default_value_t = TrainConfig::default().seed)]
    seed: u64,
    #[arg(long, default_value_t = TrainConfig::default().eval_every)]
    eval_every: usize,
    /// Seeds averaged per sweep row.
    #[arg(long, default_value_t = 1)]
    repeats: usize,
    #[arg(long, default_value = "out")]
    out_dir: PathBuf,
}

impl TrainArgs {
    fn config(&self) -> TrainConfig {
        TrainConfig {
            epochs: self.epochs,
            lr0: self.lr0,
            anneal: self.anneal,
            l2: self.l2,
            batch_size: self.batch_size,
            seed: self.seed,
            eval_every: self.eval_every,
        }
    }
}

fn execute(cmd: Cmd) -> nnbvp::Result<RunOutput> {
    let (exp, args) = match cmd {
        Cmd::Solve {
            problem,
            grid,
            k,
            h,
            train,
        } => {
            let spec = GridSpec::new(grid, k, train.seed);
            (Experiment::solve(problem, spec, h, train.config()), train)
        }
        Cmd::SweepK {
            problem,
            grid,
            k,
            h,
            train,
        } => (Experiment::sweep_k(problem, grid, h, &k, train.config()), train),
        Cmd::SweepH { problem, k, h, train } => (Experiment::sweep_h(problem, k, &h, train.config()), train),
        Cmd::SweepGrid { problem, k, h, train } => {
            (Experiment::sweep_grid(problem, k, h, train.seed, train.config()), train)
        }
        Cmd::Replay { manifest, out_dir } => return run_manifest(&ExperimentManifest::load(manifest)?, out_dir),
    };
    exp.with_repeats(args.repeats).run(&args.out_dir)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(out) => {
            if let Some(solve) = out.solve() {
                println!("e_norm_test = {}", solve.e_norm_test);
                println!("max e_abs   = {}", solve.error.max_abs);
            }
            for row in out.sweep_rows().unwrap_or_default() {
                println!(
                    "K={:<3} H={:<3} grid={:<15} e_norm_test={:.4e} pde_error_train={:.4e}",
                    row.k, row.h_count, row.grid, row.e_norm_test, row.pde_error_train
                );
            }
            for f in &out.files {
                println!("wrote {}", f.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Divergence { .. } => ExitCode::from(3),
                Error::InvalidArgument(_) => ExitCode::from(2),
                _ => ExitCode::FAILURE,
            }
        }
    }
}
