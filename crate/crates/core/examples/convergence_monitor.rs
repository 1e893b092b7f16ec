//! Training history: PDE residual and relative error at each snapshot.
//!
//! cargo run --release --example convergence_monitor [poisson-mixed|laplace-dirichlet]

use nnbvp::{train, GridSpec, ProblemKind, ProblemSpec, TrainConfig};

fn main() -> nnbvp::Result<()> {
    let kind: ProblemKind = std::env::args()
        .nth(1)
        .as_deref()
        .unwrap_or("laplace-dirichlet")
        .parse()?;
    let config = TrainConfig {
        epochs: 10_000,
        eval_every: 1_000,
        ..TrainConfig::default()
    };
    let result = train(&ProblemSpec::new(kind), GridSpec::uniform(16), 15, &config)?;

    println!(
        "{:>6} {:>11} {:>11} {:>11} {:>9}",
        "epoch", "pde_error", "e_norm_tr", "e_norm_te", "lr"
    );
    for r in &result.history {
        println!(
            "{:>6} {:>11.4e} {:>11.4e} {:>11.4e} {:>9.2e}",
            r.epoch,
            r.pde_error_train,
            r.e_norm_train,
            r.e_norm_test,
            config.learning_rate(r.epoch)
        );
    }
    Ok(())
}
