//! Residual minimization by minibatch SGD with an exponentially annealed step size.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evaluation::e_norm;
use crate::mlp::{init_params, NetworkParams, ParamGradient, Point};
use crate::problems::ProblemSpec;
use crate::sampling::{generate, test_grid, GridSpec, PointSet};

/// Optimizer hyperparameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    pub epochs: usize,
    /// Step size at epoch 0.
    pub lr0: f64,
    /// Per-epoch multiplicative decay of the step size, in `(0, 1]`.
    pub anneal: f64,
    /// L2 penalty on weights (biases are not penalized).
    pub l2: f64,
    pub batch_size: usize,
    /// Seeds both initialization and per-epoch shuffling.
    pub seed: u64,
    /// Epochs between convergence snapshots.
    pub eval_every: usize,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            epochs: 20_000,
            lr0: 0.05,
            anneal: 0.9995,
            l2: 1e-6,
            batch_size: 32,
            seed: 0,
            eval_every: 100,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidArgument(msg.into()));
        if !(self.lr0.is_finite() && self.lr0 > 0.0) {
            return bad("lr0 must be positive");
        }
        if !(self.anneal > 0.0 && self.anneal <= 1.0) {
            return bad("anneal must lie in (0, 1]");
        }
        if !(self.l2.is_finite() && self.l2 >= 0.0) {
            return bad("l2 must be non-negative");
        }
        if self.batch_size == 0 {
            return bad("batch_size must be positive");
        }
        if self.eval_every == 0 {
            return bad("eval_every must be positive");
        }
        Ok(())
    }

    /// Step size used throughout epoch `epoch`.
    pub fn learning_rate(&self, epoch: usize) -> f64 {
        self.lr0 * self.anneal.powf(epoch as f64)
    }
}

/// Snapshot of training progress after `epoch` completed epochs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRecord {
    pub epoch: usize,
    /// Mean squared residual over the training set.
    pub pde_error_train: f64,
    pub e_norm_train: f64,
    pub e_norm_test: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainResult {
    pub params: NetworkParams,
    pub history: Vec<ConvergenceRecord>,
    pub config: TrainConfig,
    pub grid: GridSpec,
}

impl TrainResult {
    pub fn last(&self) -> &ConvergenceRecord {
        self.history.last().expect("history is never empty")
    }
}

fn mean_squared_residual<'a>(
    problem: &ProblemSpec,
    params: &NetworkParams,
    points: impl ExactSizeIterator<Item = &'a Point>,
) -> Result<f64> {
    let n = points.len();
    if n == 0 {
        return Err(Error::EmptyPointSet);
    }
    let mut sum = 0.0;
    for x in points {
        let r = problem.residual(params, x)?;
        sum += r * r;
    }
    Ok(sum / n as f64)
}

/// Mean squared residual over `points` plus `l2 · Σ w²`.
pub fn total_cost(problem: &ProblemSpec, params: &NetworkParams, points: &PointSet, l2: f64) -> Result<f64> {
    Ok(mean_squared_residual(problem, params, points.iter())? + l2 * params.weight_norm_sq())
}

/// Gradient of [`total_cost`] restricted to `batch`:
/// `(2/|B|) Σ r(x) ∂r/∂θ + 2·l2·θ` (the penalty term only for weights).
pub fn cost_gradient(problem: &ProblemSpec, params: &NetworkParams, batch: &[Point], l2: f64) -> Result<ParamGradient> {
    if batch.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let mut grad = ParamGradient::zeros_like(params);
    let scale = 2.0 / batch.len() as f64;
    for x in batch {
        problem
            .residual_form(x)?
            .eval_and_accumulate(params, |r| scale * r, &mut grad)?;
    }
    if l2 != 0.0 {
        for (g, w) in grad.w1.iter_mut().zip(params.w1()) {
            *g += 2.0 * l2 * w;
        }
        for (g, w) in grad.w2.iter_mut().zip(params.w2()) {
            *g += 2.0 * l2 * w;
        }
    }
    Ok(grad)
}

fn snapshot(
    problem: &ProblemSpec,
    params: &NetworkParams,
    epoch: usize,
    train: &PointSet,
    test: &PointSet,
) -> Result<ConvergenceRecord> {
    let record = ConvergenceRecord {
        epoch,
        pde_error_train: mean_squared_residual(problem, params, train.iter())?,
        e_norm_train: e_norm(problem, params, train)?,
        e_norm_test: e_norm(problem, params, test)?,
    };
    let finite = [record.pde_error_train, record.e_norm_train, record.e_norm_test]
        .iter()
        .all(|v| v.is_finite());
    if !finite {
        return Err(Error::Divergence { epoch, what: "cost" });
    }
    Ok(record)
}

/// Trains from explicit initial parameters on an explicit training set.
///
/// Snapshots are taken before the first epoch, after every `eval_every`
/// epochs and after the final epoch.
pub fn train_from(
    problem: &ProblemSpec,
    train: &PointSet,
    test: &PointSet,
    mut params: NetworkParams,
    config: &TrainConfig,
) -> Result<(NetworkParams, Vec<ConvergenceRecord>)> {
    config.validate()?;
    if train.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(1);

    let mut history = vec![snapshot(problem, &params, 0, train, test)?];
    let mut order: Vec<usize> = (0..train.len()).collect();
    let mut batch: Vec<Point> = Vec::with_capacity(config.batch_size);

    for epoch in 0..config.epochs {
        let lr = config.learning_rate(epoch);
        order.shuffle(&mut rng);
        for chunk in order.chunks(config.batch_size) {
            batch.clear();
            batch.extend(chunk.iter().map(|&i| train.points()[i].clone()));
            let grad = cost_gradient(problem, &params, &batch, config.l2)?;
            if !grad.is_finite() {
                return Err(Error::Divergence {
                    epoch,
                    what: "gradient",
                });
            }
            params.descend(&grad, lr).map_err(|_| Error::Divergence {
                epoch,
                what: "parameters",
            })?;
        }
        let done = epoch + 1;
        if done % config.eval_every == 0 || done == config.epochs {
            history.push(snapshot(problem, &params, done, train, test)?);
        }
    }
    Ok((params, history))
}

/// Initializes a network with `h_count` hidden units and trains it on `grid`.
///
/// Progress is measured against the fixed 21×21 test grid.
pub fn train(problem: &ProblemSpec, grid: GridSpec, h_count: usize, config: &TrainConfig) -> Result<TrainResult> {
    config.validate()?;
    let points = generate(grid)?;
    let init = init_params(h_count, problem.input_dim(), config.seed)?;
    let (params, history) = train_from(problem, &points, &test_grid(), init, config)?;
    Ok(TrainResult {
        params,
        history,
        config: *config,
        grid,
    })
}
