//! The fast oracle criteria, shared by the regular tests and the acceptance runner.
//!
//! Each check returns a one-line summary on success and the first mismatch on failure.

use std::f64::consts::PI;

use nnbvp::{
    cost_gradient, forward, init_params, param_gradient, partial, MultiIndex, NetworkParams, Point, ProblemSpec,
};
use rand::Rng;

use super::*;

pub type Outcome = Result<String, String>;

const DERIV_REL: f64 = 1e-4;
const DERIV_ABS: f64 = 1e-8;
const GRAD_REL_LAPLACE: f64 = 1e-5;
const GRAD_REL_POISSON: f64 = 1e-4;
const GRAD_ABS: f64 = 1e-9;
const DIRICHLET_ABS: f64 = 1e-12;
const NEUMANN_ABS: f64 = 1e-6;

/// Parameters for pair `k`: even pairs use the library initializer, odd pairs a wider spread.
fn oracle_params(r: &mut ChaCha8Rng, k: usize, h: usize) -> NetworkParams {
    if k % 2 == 0 {
        init_params(h, 2, r.gen()).unwrap()
    } else {
        random_params(r, h, 2, 1.5)
    }
}

/// Central-difference oracle for every multi-index of total order ≤ 3.
pub fn derivative_oracle() -> Outcome {
    let mut r = rng(1001);
    let step = 0.02;
    let indices = MultiIndex::all_up_to(2, 3);
    let mut pairs = 0;
    let mut worst = 0.0f64;
    for h in [1, 5, 15] {
        for k in 0..40 {
            let params = oracle_params(&mut r, k, h);
            let x = interior_point(&mut r, 2, 0.1);
            let f = |y: &[f64]| forward(&params, &Point::new(y).unwrap()).unwrap();
            for idx in &indices {
                let orders: Vec<u32> = idx.orders().collect();
                let fd = richardson_partial(&f, x.coords(), &orders, step);
                let exact = partial(&params, &x, idx).map_err(|e| e.to_string())?;
                if !close(exact, fd, DERIV_REL, DERIV_ABS) {
                    return Err(format!(
                        "H={h} x={:?} {orders:?}: closed form {exact:e}, finite difference {fd:e}",
                        x.coords()
                    ));
                }
                worst = worst.max((exact - fd).abs() / fd.abs().max(DERIV_ABS / DERIV_REL));
            }
            pairs += 1;
        }
    }
    Ok(format!(
        "{pairs} (params, x) pairs x {} multi-indices, worst scaled error {worst:.2e}",
        indices.len()
    ))
}

/// Richardson-extrapolated per-parameter central differences.
fn fd_gradient(params: &NetworkParams, f: &dyn Fn(&NetworkParams) -> f64) -> Vec<f64> {
    let step = 1e-3;
    let coarse = fd_param_gradient(params, f, step);
    let fine = fd_param_gradient(params, f, step / 2.0);
    fine.iter().zip(&coarse).map(|(f, c)| (4.0 * f - c) / 3.0).collect()
}

fn compare(what: &str, got: &[f64], want: &[f64], rel: f64) -> Result<(), String> {
    match gradient_mismatch(got, want, rel, GRAD_ABS) {
        None => Ok(()),
        Some((k, g, w)) => Err(format!(
            "{what}: parameter {k} closed form {g:e}, finite difference {w:e}"
        )),
    }
}

/// All three parameter-gradient paths against finite differences.
pub fn gradient_oracle() -> Outcome {
    let mut r = rng(2002);
    let mut checked = 0;
    for k in 0..6 {
        let params = oracle_params(&mut r, k, [1, 5, 15][k % 3]);
        let x = interior_point(&mut r, 2, 0.0);
        for idx in MultiIndex::all_up_to(2, 3) {
            let got: Vec<f64> = param_gradient(&params, &x, &idx).unwrap().values().collect();
            let want = fd_gradient(&params, &|p| partial(p, &x, &idx).unwrap());
            compare(&format!("param_gradient {idx:?}"), &got, &want, GRAD_REL_LAPLACE)?;
            checked += 1;
        }
    }
    for (problem, rel) in [
        (ProblemSpec::laplace(), GRAD_REL_LAPLACE),
        (ProblemSpec::poisson(), GRAD_REL_POISSON),
    ] {
        for k in 0..6 {
            let params = oracle_params(&mut r, k, [1, 5, 15][k % 3]);
            let mut points = vec![Point::xy(0.3, 0.7).unwrap()];
            points.extend((0..3).map(|_| interior_point(&mut r, 2, 0.0)));
            for x in &points {
                let got: Vec<f64> = problem.residual_param_gradient(&params, x).unwrap().values().collect();
                let want = fd_gradient(&params, &|p| problem.residual(p, x).unwrap());
                compare(
                    &format!("{} residual gradient at {:?}", problem.kind, x.coords()),
                    &got,
                    &want,
                    rel,
                )?;
                checked += 1;
            }
            let l2 = 1e-3;
            let got: Vec<f64> = cost_gradient(&problem, &params, &points, l2)
                .unwrap()
                .values()
                .collect();
            let cost = |p: &NetworkParams| {
                let mse = points
                    .iter()
                    .map(|x| problem.residual(p, x).unwrap().powi(2))
                    .sum::<f64>()
                    / points.len() as f64;
                mse + l2 * p.weight_norm_sq()
            };
            let want = fd_gradient(&params, &cost);
            compare(&format!("{} cost gradient", problem.kind), &got, &want, rel)?;
            checked += 1;
        }
    }
    Ok(format!("{checked} gradients matched"))
}

/// Dirichlet data on every Laplace edge and the Neumann condition on the Poisson top edge.
pub fn boundary_satisfaction() -> Outcome {
    let mut r = rng(3003);
    let laplace = ProblemSpec::laplace();
    let poisson = ProblemSpec::poisson();
    let step = 1e-4;
    let (mut worst_d, mut worst_n) = (0.0f64, 0.0f64);
    for k in 0..50 {
        let params = oracle_params(&mut r, k, 15);
        for _ in 0..50 {
            let t: f64 = r.gen();
            let edges = [(0.0, t, 0.0), (1.0, t, 0.0), (t, 0.0, 0.0), (t, 1.0, (PI * t).sin())];
            for (x1, x2, want) in edges {
                let got = laplace.trial_eval(&params, &Point::xy(x1, x2).unwrap()).unwrap();
                worst_d = worst_d.max((got - want).abs());
                if (got - want).abs() > DIRICHLET_ABS {
                    return Err(format!(
                        "Laplace trial at ({x1}, {x2}) is {got:e}, boundary data {want:e}"
                    ));
                }
            }
            let f = |y: &[f64]| poisson.trial_eval(&params, &Point::new(y).unwrap()).unwrap();
            let slope = backward_derivative(&f, &[t, 1.0], 1, step);
            let want = 2.0 * (PI * t).sin();
            worst_n = worst_n.max((slope - want).abs());
            if (slope - want).abs() > NEUMANN_ABS {
                return Err(format!(
                    "Poisson normal derivative at x1={t} is {slope:e}, expected {want:e}"
                ));
            }
        }
    }
    Ok(format!(
        "50 parameter sets x 50 points per edge; Dirichlet worst {worst_d:.1e}, Neumann worst {worst_n:.1e}"
    ))
}
