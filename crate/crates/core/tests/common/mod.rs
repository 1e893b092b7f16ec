//! Finite-difference oracles and tolerance helpers shared by the integration tests.
//!
//! Nothing here calls into the closed-form derivative code; every reference
//! value is built from plain function evaluations.

#![allow(dead_code)]

pub mod criteria;

use nnbvp::{NetworkParams, Point};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `|got − want| ≤ max(abs, rel·|want|)`.
pub fn close(got: f64, want: f64, rel: f64, abs: f64) -> bool {
    (got - want).abs() <= abs.max(rel * want.abs())
}

/// Mixed partial of `f` by nested central differences, one axis at a time.
pub fn central_partial(f: &dyn Fn(&[f64]) -> f64, x: &[f64], orders: &[u32], step: f64) -> f64 {
    match orders.iter().position(|&o| o > 0) {
        None => f(x),
        Some(axis) => {
            let mut rest = orders.to_vec();
            rest[axis] -= 1;
            let shifted = |delta: f64| {
                let mut y = x.to_vec();
                y[axis] += delta;
                central_partial(f, &y, &rest, step)
            };
            (shifted(step) - shifted(-step)) / (2.0 * step)
        }
    }
}

/// Richardson-extrapolated [`central_partial`]: `(4·D(h/2) − D(h)) / 3`.
///
/// Fourth-order accurate, so a larger step keeps third-order stencils clear of
/// the rounding floor.
pub fn richardson_partial(f: &dyn Fn(&[f64]) -> f64, x: &[f64], orders: &[u32], step: f64) -> f64 {
    (4.0 * central_partial(f, x, orders, step / 2.0) - central_partial(f, x, orders, step)) / 3.0
}

/// Second-order one-sided difference `∂f/∂x_axis` looking backwards from `x`.
pub fn backward_derivative(f: &dyn Fn(&[f64]) -> f64, x: &[f64], axis: usize, step: f64) -> f64 {
    let at = |k: f64| {
        let mut y = x.to_vec();
        y[axis] -= k * step;
        f(&y)
    };
    (3.0 * at(0.0) - 4.0 * at(1.0) + at(2.0)) / (2.0 * step)
}

/// Five-point finite-difference Laplacian in 2-D.
pub fn fd_laplacian(f: &dyn Fn(&[f64]) -> f64, x: &[f64], step: f64) -> f64 {
    let at = |dx: f64, dy: f64| f(&[x[0] + dx, x[1] + dy]);
    (at(step, 0.0) + at(-step, 0.0) + at(0.0, step) + at(0.0, -step) - 4.0 * at(0.0, 0.0)) / (step * step)
}

/// Random parameters with entries uniform in `[-scale, scale]`.
pub fn random_params(rng: &mut ChaCha8Rng, h: usize, n: usize, scale: f64) -> NetworkParams {
    let mut draw = |len: usize| (0..len).map(|_| rng.gen_range(-scale..=scale)).collect::<Vec<_>>();
    let w1 = draw(h * n);
    let b1 = draw(h);
    let w2 = draw(h);
    NetworkParams::from_parts(h, n, w1, b1, w2).unwrap()
}

/// A random point whose coordinates stay `margin` away from the edges.
pub fn interior_point(rng: &mut ChaCha8Rng, n: usize, margin: f64) -> Point {
    let coords: Vec<f64> = (0..n).map(|_| rng.gen_range(margin..=1.0 - margin)).collect();
    Point::new(&coords).unwrap()
}

/// Independent scalar re-implementation of the network output.
///
/// Accepts coordinates outside the unit square so stencils can straddle edges.
pub fn naive_forward(params: &NetworkParams, x: &[f64]) -> f64 {
    let mut out = 0.0;
    for i in 0..params.h_count() {
        let mut h = params.b1()[i];
        for (j, xj) in x.iter().enumerate() {
            h += params.w1()[i * params.input_dim() + j] * xj;
        }
        out += params.w2()[i] / (1.0 + (-h).exp());
    }
    out
}

/// Per-parameter central differences of `f(params)`, in canonical parameter order.
pub fn fd_param_gradient(params: &NetworkParams, f: &dyn Fn(&NetworkParams) -> f64, step: f64) -> Vec<f64> {
    (0..params.len())
        .map(|k| {
            let mut plus = params.clone();
            *plus.value_mut(k) += step;
            let mut minus = params.clone();
            *minus.value_mut(k) -= step;
            (f(&plus) - f(&minus)) / (2.0 * step)
        })
        .collect()
}

/// Index of the first mismatching entry between two gradients, if any.
pub fn gradient_mismatch(got: &[f64], want: &[f64], rel: f64, abs: f64) -> Option<(usize, f64, f64)> {
    assert_eq!(got.len(), want.len());
    got.iter()
        .zip(want)
        .enumerate()
        .find(|(_, (g, w))| !close(**g, **w, rel, abs))
        .map(|(k, (g, w))| (k, *g, *w))
}
