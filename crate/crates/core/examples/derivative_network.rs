//! Closed-form input partials of the network next to central finite differences.
//!
//! cargo run --release --example derivative_network

use nnbvp::{forward, init_params, param_gradient, partial, MultiIndex, Point};

fn main() -> nnbvp::Result<()> {
    let params = init_params(15, 2, 7)?;
    let x = Point::xy(0.3, 0.7)?;
    let f = |a: f64, b: f64| forward(&params, &Point::xy(a, b).unwrap()).unwrap();
    let h = 1e-3;

    println!("N(x) = {:.10}", forward(&params, &x)?);
    for idx in MultiIndex::all_up_to(2, 2) {
        let exact = partial(&params, &x, &idx)?;
        let (i, j) = (idx.order(0), idx.order(1));
        let fd = match (i, j) {
            (0, 0) => f(0.3, 0.7),
            (1, 0) => (f(0.3 + h, 0.7) - f(0.3 - h, 0.7)) / (2.0 * h),
            (0, 1) => (f(0.3, 0.7 + h) - f(0.3, 0.7 - h)) / (2.0 * h),
            (2, 0) => (f(0.3 + h, 0.7) - 2.0 * f(0.3, 0.7) + f(0.3 - h, 0.7)) / (h * h),
            (0, 2) => (f(0.3, 0.7 + h) - 2.0 * f(0.3, 0.7) + f(0.3, 0.7 - h)) / (h * h),
            _ => {
                (f(0.3 + h, 0.7 + h) - f(0.3 + h, 0.7 - h) - f(0.3 - h, 0.7 + h) + f(0.3 - h, 0.7 - h)) / (4.0 * h * h)
            }
        };
        println!("D^({i},{j}) N = {exact:+.8e}   finite difference {fd:+.8e}");
    }

    let third = MultiIndex::new(&[2, 1])?;
    println!("D^(2,1) N = {:+.8e}", partial(&params, &x, &third)?);

    let g = param_gradient(&params, &x, &MultiIndex::new(&[1, 0])?)?;
    println!(
        "d/dtheta of D^(1,0) N: {} entries, |w2 part| = {:.4e}",
        g.len(),
        g.w2.iter().map(|v| v * v).sum::<f64>().sqrt()
    );
    Ok(())
}
