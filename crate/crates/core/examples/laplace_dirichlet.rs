//! Laplace's equation with Dirichlet data, trained on a uniform 16x16 grid.
//!
//! cargo run --release --example laplace_dirichlet [epochs]

use nnbvp::{e_abs_field, e_norm, test_grid, train, GridSpec, Point, ProblemSpec, TrainConfig};

fn main() -> nnbvp::Result<()> {
    let epochs = std::env::args()
        .nth(1)
        .map_or(Ok(20_000), |s| s.parse())
        .expect("epochs must be an integer");
    let problem = ProblemSpec::laplace();
    let config = TrainConfig {
        epochs,
        ..TrainConfig::default()
    };
    let result = train(&problem, GridSpec::uniform(16), 15, &config)?;

    let test = test_grid();
    let field = e_abs_field(&problem, &result.params, &test)?;
    println!(
        "e_norm on the 21x21 test grid: {:.4e}",
        e_norm(&problem, &result.params, &test)?
    );
    println!("max |psi_t - psi_a|:           {:.4e}", field.max_abs);

    for (a, b) in [(0.5, 0.5), (0.25, 0.9), (0.5, 1.0)] {
        let x = Point::xy(a, b)?;
        println!(
            "psi_t({a}, {b}) = {:.6}   psi_a = {:.6}",
            problem.trial_eval(&result.params, &x)?,
            problem.analytic_solution(&x)?
        );
    }
    Ok(())
}
