//! Mesh-free neural-network solver for second-order boundary value problems
//! on the unit square.
//!
//! A boundary value problem `∇²ψ = f` is solved by writing the unknown field
//! as a trial solution `ψ_t = ψ̂ + F·N`, where `ψ̂` carries the boundary data,
//! `F` vanishes where the boundary conditions are imposed, and `N` is a
//! one-hidden-layer sigmoid network. The boundary conditions then hold for
//! every parameter value, and solving reduces to driving the PDE residual to
//! zero at a set of (possibly unstructured) collocation points.
//!
//! - [`mlp`]: the network with closed-form input derivatives and parameter gradients
//! - [`problems`]: the Laplace/Dirichlet and Poisson/mixed problems, trial solutions, residuals
//! - [`sampling`]: uniform, boundary-dense, interior-dense and random training grids
//! - [`trainer`]: minibatch SGD with annealed step size and weight decay
//! - [`evaluation`]: pointwise and relative L2 errors against the analytic solutions
//! - [`experiments`]: single solves and parameter sweeps that write CSV/JSON artifacts
//!
//! ```no_run
//! use nnbvp::{train, GridSpec, ProblemSpec, TrainConfig};
//!
//! let result = train(&ProblemSpec::laplace(), GridSpec::uniform(16), 15, &TrainConfig::default())?;
//! println!("test-set relative error: {}", result.last().e_norm_test);
//! # Ok::<(), nnbvp::Error>(())
//! ```

pub mod error;
pub mod evaluation;
pub mod experiments;
pub mod mlp;
pub mod problems;
pub mod sampling;
pub mod trainer;

pub use error::{Error, Result};
pub use evaluation::{e_abs_field, e_norm, ErrorField};
pub use mlp::{
    forward, init_params, param_gradient, partial, sigmoid_k, MultiIndex, NetworkParams, ParamGradient, Point,
};
pub use problems::{FieldSample, ProblemKind, ProblemSpec};
pub use sampling::{generate, test_grid, GridKind, GridSpec, PointSet};
pub use trainer::{cost_gradient, total_cost, train, ConvergenceRecord, TrainConfig, TrainResult};
