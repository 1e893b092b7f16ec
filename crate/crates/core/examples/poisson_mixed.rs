//! Poisson's equation with a Neumann condition on the top edge.
//!
//! cargo run --release --example poisson_mixed [epochs]

use nnbvp::{e_abs_field, test_grid, train, GridSpec, Point, ProblemSpec, TrainConfig};

fn main() -> nnbvp::Result<()> {
    let epochs = std::env::args()
        .nth(1)
        .map_or(Ok(20_000), |s| s.parse())
        .expect("epochs must be an integer");
    let problem = ProblemSpec::poisson();
    let config = TrainConfig {
        epochs,
        ..TrainConfig::default()
    };
    let result = train(&problem, GridSpec::uniform(16), 15, &config)?;

    let field = e_abs_field(&problem, &result.params, &test_grid())?;
    let (worst, err) = field
        .samples
        .iter()
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .expect("test grid is not empty");
    println!(
        "max e_abs = {err:.4e} at {:?}, rms = {:.4e}",
        worst.coords(),
        field.rms()
    );

    // The Neumann condition holds by construction whatever the weights are.
    for t in [0.1, 0.5, 0.8] {
        let (grad, _) = problem.trial_gradient_and_laplacian(&result.params, &Point::xy(t, 1.0)?)?;
        println!(
            "d psi_t/d x2 at ({t}, 1) = {:.12}   2 sin(pi x1) = {:.12}",
            grad[1],
            2.0 * (std::f64::consts::PI * t).sin()
        );
    }
    Ok(())
}
