//! The two shipped boundary value problems on the unit square.
//!
//! Each problem pairs a PDE `∇²ψ = f` with a trial solution `ψ_t = ψ̂ + F·N`
//! that satisfies the boundary conditions for every choice of network
//! parameters. Every quantity derived from `ψ_t`, up to its Laplacian, is
//! affine in the network partials, so it is expressed here as a
//! [`LinearForm`]: a constant plus a weighted sum of `∂^λ N` evaluated at the
//! point itself or at its projection onto the top edge `(x1, 1)`. The same
//! form yields both the value and the parameter gradient, which keeps the
//! residual and its gradient consistent by construction.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::mlp::{
    accumulate_combination_gradient, combination_at, HiddenState, MultiIndex, NetworkParams, ParamGradient, Point,
    WeightedPartial,
};

/// Which boundary value problem to solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProblemKind {
    /// `∇²ψ = 0`, `ψ = 0` on three edges and `ψ = sin(πx1)` on `x2 = 1`.
    LaplaceDirichlet,
    /// `∇²ψ = (2 − π²x2²) sin(πx1)`, `ψ = 0` on three edges and
    /// `∂ψ/∂x2 = 2 sin(πx1)` on `x2 = 1`.
    PoissonMixed,
}

impl ProblemKind {
    pub const ALL: [ProblemKind; 2] = [ProblemKind::LaplaceDirichlet, ProblemKind::PoissonMixed];

    pub fn name(self) -> &'static str {
        match self {
            ProblemKind::LaplaceDirichlet => "laplace-dirichlet",
            ProblemKind::PoissonMixed => "poisson-mixed",
        }
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProblemKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown problem {s:?}")))
    }
}

/// A boundary value problem posed on the closed unit square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProblemSpec {
    pub kind: ProblemKind,
}

/// A field value at a point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldSample {
    pub point: Point,
    pub value: f64,
}

/// Where a network partial is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Site {
    Here,
    /// The projection `(x1, 1)` onto the Neumann edge.
    Top,
}

/// `constant + Σ coef · ∂^λ N(site)`.
#[derive(Debug, Clone)]
pub struct LinearForm {
    constant: f64,
    here_terms: SmallVec<[WeightedPartial; 8]>,
    top_terms: SmallVec<[WeightedPartial; 8]>,
    here: Point,
    top: Point,
}

impl LinearForm {
    fn new(x: &Point, constant: f64) -> Self {
        let top = x.with_coord(1, 1.0).expect("projection stays in the unit square");
        Self {
            constant,
            here_terms: SmallVec::new(),
            top_terms: SmallVec::new(),
            here: x.clone(),
            top,
        }
    }

    fn push(&mut self, coef: f64, site: Site, orders: [u32; 2]) {
        if coef == 0.0 {
            return;
        }
        let idx = MultiIndex::new(&orders).expect("shipped forms stay within order 3");
        let terms = match site {
            Site::Here => &mut self.here_terms,
            Site::Top => &mut self.top_terms,
        };
        match terms.iter_mut().find(|t| t.idx == idx) {
            Some(t) => t.coef += coef,
            None => terms.push(WeightedPartial { coef, idx }),
        }
    }

    /// Adds `coef · D[N(x) − N(x1,1) − ∂N/∂x2(x1,1)]` where `D` differentiates in x1 only.
    fn push_neumann_corrected(&mut self, coef: f64, d1: u32) {
        self.push(coef, Site::Here, [d1, 0]);
        self.push(-coef, Site::Top, [d1, 0]);
        self.push(-coef, Site::Top, [d1, 1]);
    }

    /// The constant part (everything not multiplied by the network).
    pub fn constant(&self) -> f64 {
        self.constant
    }

    /// Number of distinct network partials the form combines.
    pub fn term_count(&self) -> usize {
        self.here_terms.len() + self.top_terms.len()
    }

    fn states(&self, params: &NetworkParams) -> Result<(HiddenState, Option<HiddenState>)> {
        let here = HiddenState::new(params, &self.here)?;
        let top = if self.top_terms.is_empty() {
            None
        } else {
            Some(HiddenState::new(params, &self.top)?)
        };
        Ok((here, top))
    }

    fn eval_with(&self, params: &NetworkParams, here: &HiddenState, top: Option<&HiddenState>) -> Result<f64> {
        let mut acc = self.constant + combination_at(params, here, &self.here_terms)?;
        if let Some(top) = top {
            acc += combination_at(params, top, &self.top_terms)?;
        }
        Ok(acc)
    }

    fn accumulate_with(
        &self,
        params: &NetworkParams,
        here: &HiddenState,
        top: Option<&HiddenState>,
        scale: f64,
        grad: &mut ParamGradient,
    ) -> Result<()> {
        accumulate_combination_gradient(params, here, &self.here, &self.here_terms, scale, grad)?;
        if let Some(top) = top {
            accumulate_combination_gradient(params, top, &self.top, &self.top_terms, scale, grad)?;
        }
        Ok(())
    }

    /// Evaluates the form for the given parameters.
    pub fn eval(&self, params: &NetworkParams) -> Result<f64> {
        let (here, top) = self.states(params)?;
        self.eval_with(params, &here, top.as_ref())
    }

    /// Accumulates `scale · ∂form/∂θ` into `grad`.
    pub fn accumulate_gradient(&self, params: &NetworkParams, scale: f64, grad: &mut ParamGradient) -> Result<()> {
        let (here, top) = self.states(params)?;
        self.accumulate_with(params, &here, top.as_ref(), scale, grad)
    }

    /// Evaluates the form to `v`, then accumulates `scale(v) · ∂form/∂θ` into `grad`.
    ///
    /// Shares the hidden-layer evaluation between the two passes.
    pub fn eval_and_accumulate(
        &self,
        params: &NetworkParams,
        scale: impl FnOnce(f64) -> f64,
        grad: &mut ParamGradient,
    ) -> Result<f64> {
        let (here, top) = self.states(params)?;
        let v = self.eval_with(params, &here, top.as_ref())?;
        self.accumulate_with(params, &here, top.as_ref(), scale(v), grad)?;
        Ok(v)
    }

    /// Value and parameter gradient in one pass.
    pub fn eval_with_gradient(&self, params: &NetworkParams) -> Result<(f64, ParamGradient)> {
        let mut grad = ParamGradient::zeros_like(params);
        let v = self.eval_and_accumulate(params, |_| 1.0, &mut grad)?;
        Ok((v, grad))
    }
}

/// Polynomial envelope `x(1 − x)` and its first two derivatives.
fn bubble(x: f64) -> (f64, f64, f64) {
    (x * (1.0 - x), 1.0 - 2.0 * x, -2.0)
}

impl ProblemSpec {
    pub fn new(kind: ProblemKind) -> Self {
        Self { kind }
    }

    pub fn laplace() -> Self {
        Self::new(ProblemKind::LaplaceDirichlet)
    }

    pub fn poisson() -> Self {
        Self::new(ProblemKind::PoissonMixed)
    }

    pub fn input_dim(&self) -> usize {
        2
    }

    fn check_point(&self, x: &Point) -> Result<()> {
        if x.dim() != self.input_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.input_dim(),
                got: x.dim(),
            });
        }
        Ok(())
    }

    fn check_params(&self, params: &NetworkParams) -> Result<()> {
        if params.input_dim() != self.input_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.input_dim(),
                got: params.input_dim(),
            });
        }
        Ok(())
    }

    fn xy(&self, x: &Point) -> Result<(f64, f64)> {
        self.check_point(x)?;
        Ok((x.coords()[0], x.coords()[1]))
    }

    /// Closed-form reference solution.
    pub fn analytic_solution(&self, x: &Point) -> Result<f64> {
        let (x1, x2) = self.xy(x)?;
        Ok(match self.kind {
            ProblemKind::LaplaceDirichlet => {
                (PI * x1).sin() * ((PI * x2).exp() - (-PI * x2).exp()) / (PI.exp() - (-PI).exp())
            }
            ProblemKind::PoissonMixed => x2 * x2 * (PI * x1).sin(),
        })
    }

    /// Right-hand side `f` of `∇²ψ = f`.
    pub fn source_term(&self, x: &Point) -> Result<f64> {
        let (x1, x2) = self.xy(x)?;
        Ok(match self.kind {
            ProblemKind::LaplaceDirichlet => 0.0,
            ProblemKind::PoissonMixed => (2.0 - PI * PI * x2 * x2) * (PI * x1).sin(),
        })
    }

    /// Trial solution value as a linear form in the network partials.
    pub fn trial_form(&self, x: &Point) -> Result<LinearForm> {
        let (x1, x2) = self.xy(x)?;
        let s = (PI * x1).sin();
        let (a, _, _) = bubble(x1);
        Ok(match self.kind {
            ProblemKind::LaplaceDirichlet => {
                let (b, _, _) = bubble(x2);
                let mut f = LinearForm::new(x, x2 * s);
                f.push(a * b, Site::Here, [0, 0]);
                f
            }
            ProblemKind::PoissonMixed => {
                let mut f = LinearForm::new(x, 2.0 * x2 * s);
                f.push_neumann_corrected(a * x2, 0);
                f
            }
        })
    }

    /// `∂ψ_t/∂x_axis` as a linear form.
    pub fn trial_gradient_form(&self, x: &Point, axis: usize) -> Result<LinearForm> {
        let (x1, x2) = self.xy(x)?;
        if axis > 1 {
            return Err(Error::InvalidArgument(format!(
                "axis {axis} out of range for a 2-D problem"
            )));
        }
        let (s, c) = ((PI * x1).sin(), (PI * x1).cos());
        let (a, da, _) = bubble(x1);
        Ok(match (self.kind, axis) {
            (ProblemKind::LaplaceDirichlet, 0) => {
                let (b, _, _) = bubble(x2);
                let mut f = LinearForm::new(x, PI * x2 * c);
                f.push(da * b, Site::Here, [0, 0]);
                f.push(a * b, Site::Here, [1, 0]);
                f
            }
            (ProblemKind::LaplaceDirichlet, _) => {
                let (b, db, _) = bubble(x2);
                let mut f = LinearForm::new(x, s);
                f.push(a * db, Site::Here, [0, 0]);
                f.push(a * b, Site::Here, [0, 1]);
                f
            }
            (ProblemKind::PoissonMixed, 0) => {
                let mut f = LinearForm::new(x, 2.0 * PI * x2 * c);
                f.push_neumann_corrected(da * x2, 0);
                f.push_neumann_corrected(a * x2, 1);
                f
            }
            (ProblemKind::PoissonMixed, _) => {
                let mut f = LinearForm::new(x, 2.0 * s);
                f.push_neumann_corrected(a, 0);
                f.push(a * x2, Site::Here, [0, 1]);
                f
            }
        })
    }

    /// `∇²ψ_t` as a linear form (product rule over the envelope times network terms).
    pub fn trial_laplacian_form(&self, x: &Point) -> Result<LinearForm> {
        let (x1, x2) = self.xy(x)?;
        let s = (PI * x1).sin();
        let (a, da, dda) = bubble(x1);
        Ok(match self.kind {
            ProblemKind::LaplaceDirichlet => {
                let (b, db, ddb) = bubble(x2);
                let mut f = LinearForm::new(x, -PI * PI * x2 * s);
                f.push(dda * b + a * ddb, Site::Here, [0, 0]);
                f.push(2.0 * da * b, Site::Here, [1, 0]);
                f.push(2.0 * a * db, Site::Here, [0, 1]);
                f.push(a * b, Site::Here, [2, 0]);
                f.push(a * b, Site::Here, [0, 2]);
                f
            }
            ProblemKind::PoissonMixed => {
                let mut f = LinearForm::new(x, -2.0 * PI * PI * x2 * s);
                f.push_neumann_corrected(dda * x2, 0);
                f.push_neumann_corrected(2.0 * da * x2, 1);
                f.push_neumann_corrected(a * x2, 2);
                f.push(2.0 * a, Site::Here, [0, 1]);
                f.push(a * x2, Site::Here, [0, 2]);
                f
            }
        })
    }

    /// PDE residual `∇²ψ_t − f` as a linear form.
    pub fn residual_form(&self, x: &Point) -> Result<LinearForm> {
        let mut form = self.trial_laplacian_form(x)?;
        form.constant -= self.source_term(x)?;
        Ok(form)
    }

    /// Trial solution `ψ_t(x)`; satisfies the boundary conditions for any parameters.
    pub fn trial_eval(&self, params: &NetworkParams, x: &Point) -> Result<f64> {
        self.check_params(params)?;
        self.trial_form(x)?.eval(params)
    }

    /// Closed-form `(∇ψ_t, ∇²ψ_t)`.
    pub fn trial_gradient_and_laplacian(&self, params: &NetworkParams, x: &Point) -> Result<([f64; 2], f64)> {
        self.check_params(params)?;
        let g0 = self.trial_gradient_form(x, 0)?.eval(params)?;
        let g1 = self.trial_gradient_form(x, 1)?.eval(params)?;
        let lap = self.trial_laplacian_form(x)?.eval(params)?;
        Ok(([g0, g1], lap))
    }

    /// PDE residual `r(x) = ∇²ψ_t(x) − f(x)`; the pointwise cost is `r²`.
    pub fn residual(&self, params: &NetworkParams, x: &Point) -> Result<f64> {
        self.check_params(params)?;
        self.residual_form(x)?.eval(params)
    }

    /// `∂r(x)/∂θ` for every parameter.
    pub fn residual_param_gradient(&self, params: &NetworkParams, x: &Point) -> Result<ParamGradient> {
        self.check_params(params)?;
        let mut grad = ParamGradient::zeros_like(params);
        self.residual_form(x)?.accumulate_gradient(params, 1.0, &mut grad)?;
        Ok(grad)
    }

    /// Analytic field sampled over `points`.
    pub fn sample_analytic<'a>(&self, points: impl IntoIterator<Item = &'a Point>) -> Result<Vec<FieldSample>> {
        points
            .into_iter()
            .map(|p| {
                Ok(FieldSample {
                    point: p.clone(),
                    value: self.analytic_solution(p)?,
                })
            })
            .collect()
    }
}

impl From<ProblemKind> for ProblemSpec {
    fn from(kind: ProblemKind) -> Self {
        Self::new(kind)
    }
}
