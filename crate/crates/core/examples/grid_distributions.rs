//! The four training point distributions and how they affect the trained error.
//!
//! cargo run --release --example grid_distributions [epochs]

use nnbvp::sampling::axis_coordinates;
use nnbvp::{e_norm, generate, test_grid, train, GridKind, GridSpec, ProblemSpec, TrainConfig};

fn main() -> nnbvp::Result<()> {
    let epochs = std::env::args()
        .nth(1)
        .map_or(Ok(5_000), |s| s.parse())
        .expect("epochs must be an integer");
    for kind in GridKind::ALL {
        match axis_coordinates(kind, 6) {
            Some(t) => println!(
                "{kind:>15} axis: {}",
                t.iter().map(|v| format!("{v:.3}")).collect::<Vec<_>>().join(" ")
            ),
            None => {
                let first: Vec<String> = generate(GridSpec::new(kind, 6, 0))?
                    .iter()
                    .take(3)
                    .map(|p| format!("{:.3?}", p.coords()))
                    .collect();
                println!("{kind:>15} first points: {}", first.join(" "));
            }
        }
    }

    let problem = ProblemSpec::laplace();
    let config = TrainConfig {
        epochs,
        ..TrainConfig::default()
    };
    for kind in GridKind::ALL {
        let result = train(&problem, GridSpec::new(kind, 16, 0), 15, &config)?;
        println!(
            "{kind:>15}: e_norm_test = {:.4e}",
            e_norm(&problem, &result.params, &test_grid())?
        );
    }
    Ok(())
}
