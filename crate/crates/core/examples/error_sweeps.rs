//! Final error against training grid resolution and hidden layer width.
//!
//! Writes sweep_k.csv, sweep_h.csv and their manifests under `sweeps-out/`.
//!
//! cargo run --release --example error_sweeps [epochs]

use nnbvp::experiments::Experiment;
use nnbvp::{GridKind, ProblemKind, TrainConfig};

fn main() -> nnbvp::Result<()> {
    let epochs = std::env::args()
        .nth(1)
        .map_or(Ok(2_000), |s| s.parse())
        .expect("epochs must be an integer");
    let config = TrainConfig {
        epochs,
        ..TrainConfig::default()
    };
    let problem = ProblemKind::LaplaceDirichlet;

    let by_k = Experiment::sweep_k(problem, GridKind::Uniform, 15, &[8, 16, 24], config).run("sweeps-out/k")?;
    let by_h = Experiment::sweep_h(problem, 16, &[5, 15, 25], config).run("sweeps-out/h")?;

    for row in by_k.sweep_rows().into_iter().chain(by_h.sweep_rows()).flatten() {
        println!(
            "K={:<3} H={:<3} m_train={:<5} e_norm_test={:.4e}",
            row.k, row.h_count, row.m_train, row.e_norm_test
        );
    }
    for f in by_k.files.iter().chain(&by_h.files) {
        println!("wrote {}", f.display());
    }
    Ok(())
}
