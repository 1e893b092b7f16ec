//! Error metrics between the trial solution and the analytic reference.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::mlp::{NetworkParams, Point};
use crate::problems::ProblemSpec;
use crate::sampling::{GridSpec, PointSet};

/// Pointwise absolute error over a point set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorField {
    pub samples: Vec<(Point, f64)>,
    pub max_abs: f64,
    /// Recipe of the point set the errors were measured on, if it had one.
    pub at_points: Option<GridSpec>,
}

impl ErrorField {
    /// Root mean square of the pointwise errors.
    pub fn rms(&self) -> f64 {
        let n = self.samples.len() as f64;
        (self.samples.iter().map(|(_, e)| e * e).sum::<f64>() / n).sqrt()
    }
}

/// `|ψ_a(x) − ψ_t(x)|` at every point.
pub fn e_abs_field(problem: &ProblemSpec, params: &NetworkParams, points: &PointSet) -> Result<ErrorField> {
    if points.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let samples = points
        .iter()
        .map(|x| {
            let delta = problem.analytic_solution(x)? - problem.trial_eval(params, x)?;
            Ok((x.clone(), delta.abs()))
        })
        .collect::<Result<Vec<_>>>()?;
    let max_abs = samples.iter().map(|&(_, e)| e).fold(0.0, f64::max);
    Ok(ErrorField {
        samples,
        max_abs,
        at_points: points.spec().copied(),
    })
}

/// Relative L2 error `sqrt(Σ(a − t)²) / sqrt(Σ a²)` of paired values.
///
/// Sums run in slice order so results are bitwise reproducible.
pub fn relative_l2(analytic: &[f64], approx: &[f64]) -> Result<f64> {
    if analytic.len() != approx.len() {
        return Err(Error::DimensionMismatch {
            expected: analytic.len(),
            got: approx.len(),
        });
    }
    if analytic.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let mut num = 0.0;
    let mut den = 0.0;
    for (a, t) in analytic.iter().zip(approx) {
        num += (a - t) * (a - t);
        den += a * a;
    }
    if den == 0.0 {
        return Err(Error::DegenerateReference);
    }
    Ok(num.sqrt() / den.sqrt())
}

/// Relative L2 error of the trial solution over `points`.
pub fn e_norm(problem: &ProblemSpec, params: &NetworkParams, points: &PointSet) -> Result<f64> {
    if points.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let mut analytic = Vec::with_capacity(points.len());
    let mut approx = Vec::with_capacity(points.len());
    for x in points {
        analytic.push(problem.analytic_solution(x)?);
        approx.push(problem.trial_eval(params, x)?);
    }
    relative_l2(&analytic, &approx)
}
