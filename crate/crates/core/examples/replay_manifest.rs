//! Every artifact embeds its manifest; re-running it reproduces the data rows.
//!
//! cargo run --release --example replay_manifest

use nnbvp::experiments::{csv_data_rows, csv_manifest, run_manifest, Experiment};
use nnbvp::{GridKind, GridSpec, ProblemKind, TrainConfig};

fn main() -> nnbvp::Result<()> {
    let config = TrainConfig {
        epochs: 500,
        eval_every: 50,
        ..TrainConfig::default()
    };
    let grid = GridSpec::new(GridKind::Random, 10, 42);
    Experiment::solve(ProblemKind::PoissonMixed, grid, 8, config).run("replay-out/first")?;

    let manifest = csv_manifest("replay-out/first/solution.csv")?;
    println!(
        "manifest written by {} at {}",
        manifest.tool_version, manifest.timestamp
    );
    run_manifest(&manifest, "replay-out/second")?;

    for name in ["solution.csv", "convergence.csv"] {
        let a = csv_data_rows(format!("replay-out/first/{name}"))?;
        let b = csv_data_rows(format!("replay-out/second/{name}"))?;
        println!("{name}: {} rows, identical: {}", a.len(), a == b);
    }
    Ok(())
}
