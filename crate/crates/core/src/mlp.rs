//! One-hidden-layer sigmoid network with closed-form input derivatives.
//!
//! The network is `N(x) = Σ_i w2_i σ(w1_i · x + b1_i)` with no output bias.
//! Any mixed partial derivative with respect to the inputs has the closed form
//!
//! ```text
//! ∂^λ N / ∂x_1^λ1 … ∂x_n^λn = Σ_i w2_i (Π_j w1_ij^λj) σ^(λ)(h_i),   λ = Σ_j λ_j
//! ```
//!
//! i.e. it is itself a network of the same shape whose activation is the λ-th
//! derivative of the sigmoid and whose output weights are scaled elementwise by
//! powers of the input-weight columns. Gradients of these derivative networks
//! with respect to the parameters are also available in closed form, which is
//! what the trainer uses.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Highest total derivative order that [`partial`] accepts.
pub const MAX_ORDER: u32 = 3;

/// Half-width of the uniform interval used by [`init_params`].
pub const INIT_RANGE: f64 = 0.5;

/// A point in the closed unit hypercube.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Point {
    coords: SmallVec<[f64; 4]>,
}

impl Point {
    /// Builds a point, rejecting coordinates that are non-finite or outside `[0, 1]`.
    pub fn new(coords: &[f64]) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidArgument("a point needs at least one coordinate".into()));
        }
        if coords.iter().any(|c| !c.is_finite() || !(0.0..=1.0).contains(c)) {
            return Err(Error::OutOfDomain(coords.to_vec()));
        }
        Ok(Self {
            coords: SmallVec::from_slice(coords),
        })
    }

    /// Shorthand for a 2-D point.
    pub fn xy(x1: f64, x2: f64) -> Result<Self> {
        Self::new(&[x1, x2])
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Copy of this point with coordinate `axis` replaced.
    pub fn with_coord(&self, axis: usize, value: f64) -> Result<Self> {
        let mut coords = self.coords.clone();
        coords[axis] = value;
        Self::new(&coords)
    }
}

impl TryFrom<Vec<f64>> for Point {
    type Error = Error;

    fn try_from(coords: Vec<f64>) -> Result<Self> {
        Self::new(&coords)
    }
}

impl From<Point> for Vec<f64> {
    fn from(p: Point) -> Self {
        p.coords.into_vec()
    }
}

/// Per-input derivative orders selecting one mixed partial of the network.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    orders: SmallVec<[u8; 4]>,
    total: u32,
}

impl MultiIndex {
    pub fn new(orders: &[u32]) -> Result<Self> {
        let total: u32 = orders.iter().sum();
        if total > MAX_ORDER {
            return Err(Error::DerivativeOrder(total));
        }
        Ok(Self {
            orders: orders.iter().map(|&o| o as u8).collect(),
            total,
        })
    }

    /// The zeroth derivative, i.e. the network output itself.
    pub fn zero(dim: usize) -> Self {
        Self {
            orders: SmallVec::from_elem(0, dim),
            total: 0,
        }
    }

    pub fn orders(&self) -> impl Iterator<Item = u32> + '_ {
        self.orders.iter().map(|&o| u32::from(o))
    }

    pub fn order(&self, axis: usize) -> u32 {
        u32::from(self.orders[axis])
    }

    pub fn total(&self) -> u32 {
        self.total
    }

    pub fn dim(&self) -> usize {
        self.orders.len()
    }

    /// Every multi-index of dimension `dim` with total order at most `max_total`.
    pub fn all_up_to(dim: usize, max_total: u32) -> Vec<Self> {
        fn rec(dim: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
            if prefix.len() == dim {
                out.push(MultiIndex::new(prefix).expect("bounded by construction"));
                return;
            }
            for o in 0..=left {
                prefix.push(o);
                rec(dim, left - o, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(dim, max_total.min(MAX_ORDER), &mut Vec::with_capacity(dim), &mut out);
        out
    }
}

/// Weights and biases of the network.
///
/// `w1` is stored row-major with shape `(h_count, input_dim)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkParams {
    h_count: usize,
    input_dim: usize,
    w1: Vec<f64>,
    b1: Vec<f64>,
    w2: Vec<f64>,
}

/// Gradient of a scalar with respect to every entry of a [`NetworkParams`].
///
/// Laid out exactly like the parameters it differentiates.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamGradient {
    pub h_count: usize,
    pub input_dim: usize,
    pub w1: Vec<f64>,
    pub b1: Vec<f64>,
    pub w2: Vec<f64>,
}

impl NetworkParams {
    /// Assembles a parameter set from raw parts, checking shapes and finiteness.
    pub fn from_parts(h_count: usize, input_dim: usize, w1: Vec<f64>, b1: Vec<f64>, w2: Vec<f64>) -> Result<Self> {
        check_dims(h_count, input_dim)?;
        if w1.len() != h_count * input_dim {
            return Err(Error::DimensionMismatch {
                expected: h_count * input_dim,
                got: w1.len(),
            });
        }
        for v in [&b1, &w2] {
            if v.len() != h_count {
                return Err(Error::DimensionMismatch {
                    expected: h_count,
                    got: v.len(),
                });
            }
        }
        let params = Self {
            h_count,
            input_dim,
            w1,
            b1,
            w2,
        };
        if !params.is_finite() {
            return Err(Error::InvalidArgument("parameters must be finite".into()));
        }
        Ok(params)
    }

    pub fn h_count(&self) -> usize {
        self.h_count
    }

    pub fn input_dim(&self) -> usize {
        self.input_dim
    }

    pub fn w1(&self) -> &[f64] {
        &self.w1
    }

    /// Input weights of hidden unit `i`.
    pub fn w1_row(&self, i: usize) -> &[f64] {
        &self.w1[i * self.input_dim..(i + 1) * self.input_dim]
    }

    pub fn b1(&self) -> &[f64] {
        &self.b1
    }

    pub fn w2(&self) -> &[f64] {
        &self.w2
    }

    /// Replaces the output weights, keeping everything else.
    pub fn with_w2(&self, w2: Vec<f64>) -> Result<Self> {
        Self::from_parts(self.h_count, self.input_dim, self.w1.clone(), self.b1.clone(), w2)
    }

    /// Number of scalar parameters.
    pub fn len(&self) -> usize {
        self.w1.len() + self.b1.len() + self.w2.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All parameters in the canonical order `w1, b1, w2`.
    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.w1.iter().chain(&self.b1).chain(&self.w2).copied()
    }

    /// Mutable access to the parameter at flat index `k` (canonical order).
    ///
    /// Callers are responsible for keeping the value finite.
    pub fn value_mut(&mut self, k: usize) -> &mut f64 {
        let (n1, nb) = (self.w1.len(), self.b1.len());
        if k < n1 {
            &mut self.w1[k]
        } else if k < n1 + nb {
            &mut self.b1[k - n1]
        } else {
            &mut self.w2[k - n1 - nb]
        }
    }

    pub fn is_finite(&self) -> bool {
        self.values().all(f64::is_finite)
    }

    /// Sum of squared weights; biases are not included.
    pub fn weight_norm_sq(&self) -> f64 {
        self.w1.iter().chain(&self.w2).map(|w| w * w).sum()
    }

    /// In-place update `θ ← θ − step·g`.
    ///
    /// Leaves the parameters untouched and fails if the result would not be finite.
    pub fn descend(&mut self, grad: &ParamGradient, step: f64) -> Result<()> {
        self.check_grad_shape(grad)?;
        let ok = self
            .values()
            .zip(grad.values())
            .all(|(p, g)| (p - step * g).is_finite());
        if !ok {
            return Err(Error::InvalidArgument("update produced non-finite parameters".into()));
        }
        for (p, g) in self.w1.iter_mut().zip(&grad.w1) {
            *p -= step * g;
        }
        for (p, g) in self.b1.iter_mut().zip(&grad.b1) {
            *p -= step * g;
        }
        for (p, g) in self.w2.iter_mut().zip(&grad.w2) {
            *p -= step * g;
        }
        Ok(())
    }

    fn check_grad_shape(&self, grad: &ParamGradient) -> Result<()> {
        if grad.h_count != self.h_count || grad.input_dim != self.input_dim {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                got: grad.len(),
            });
        }
        Ok(())
    }

    fn check_point(&self, x: &Point) -> Result<()> {
        if x.dim() != self.input_dim {
            return Err(Error::DimensionMismatch {
                expected: self.input_dim,
                got: x.dim(),
            });
        }
        Ok(())
    }

    fn check_index(&self, idx: &MultiIndex) -> Result<()> {
        if idx.dim() != self.input_dim {
            return Err(Error::DimensionMismatch {
                expected: self.input_dim,
                got: idx.dim(),
            });
        }
        Ok(())
    }
}

impl ParamGradient {
    pub fn zeros_like(params: &NetworkParams) -> Self {
        Self {
            h_count: params.h_count,
            input_dim: params.input_dim,
            w1: vec![0.0; params.w1.len()],
            b1: vec![0.0; params.b1.len()],
            w2: vec![0.0; params.w2.len()],
        }
    }

    pub fn len(&self) -> usize {
        self.w1.len() + self.b1.len() + self.w2.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Entries in the canonical order `w1, b1, w2`.
    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.w1.iter().chain(&self.b1).chain(&self.w2).copied()
    }

    /// `self += scale · other`.
    pub fn add_scaled(&mut self, other: &ParamGradient, scale: f64) {
        for (a, b) in self.w1.iter_mut().zip(&other.w1) {
            *a += scale * b;
        }
        for (a, b) in self.b1.iter_mut().zip(&other.b1) {
            *a += scale * b;
        }
        for (a, b) in self.w2.iter_mut().zip(&other.w2) {
            *a += scale * b;
        }
    }

    pub fn scale(&mut self, factor: f64) {
        self.w1
            .iter_mut()
            .chain(&mut self.b1)
            .chain(&mut self.w2)
            .for_each(|v| *v *= factor);
    }

    pub fn is_finite(&self) -> bool {
        self.values().all(f64::is_finite)
    }
}

fn check_dims(h_count: usize, input_dim: usize) -> Result<()> {
    if h_count == 0 {
        return Err(Error::InvalidArgument("h_count must be at least 1".into()));
    }
    if input_dim == 0 {
        return Err(Error::InvalidArgument("input_dim must be at least 1".into()));
    }
    Ok(())
}

/// Seeded initialization with every entry drawn i.i.d. from `U[-0.5, 0.5]`.
///
/// Entries are drawn in the order `w1` (row-major), `b1`, `w2` from a ChaCha8 stream.
pub fn init_params(h_count: usize, input_dim: usize, seed: u64) -> Result<NetworkParams> {
    check_dims(h_count, input_dim)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = |n: usize| -> Vec<f64> { (0..n).map(|_| rng.gen_range(-INIT_RANGE..=INIT_RANGE)).collect() };
    let w1 = draw(h_count * input_dim);
    let b1 = draw(h_count);
    let w2 = draw(h_count);
    NetworkParams::from_parts(h_count, input_dim, w1, b1, w2)
}

/// The logistic sigmoid `1 / (1 + e^{-z})`, stable for large |z|.
#[inline]
fn logistic(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// Sigmoid derivatives of orders 0 through 4, all expressed through `s = σ(z)`.
#[inline]
fn sigmoid_derivs(z: f64) -> [f64; 5] {
    let s = logistic(z);
    let d1 = s * (1.0 - s);
    [
        s,
        d1,
        d1 * (1.0 - 2.0 * s),
        d1 * (1.0 - 6.0 * s + 6.0 * s * s),
        d1 * (1.0 - 14.0 * s + 36.0 * s * s - 24.0 * s * s * s),
    ]
}

/// `order`-th derivative of the logistic sigmoid at `z`, for `order` in `0..=3`.
pub fn sigmoid_k(order: u32, z: f64) -> Result<f64> {
    if order > MAX_ORDER {
        return Err(Error::DerivativeOrder(order));
    }
    if !z.is_finite() {
        return Err(Error::InvalidArgument(format!("sigmoid argument {z} is not finite")));
    }
    Ok(sigmoid_derivs(z)[order as usize])
}

/// Hidden-layer pre-activations and their sigmoid derivatives at one point.
///
/// Computing this once lets several partials at the same point share the work.
#[derive(Debug, Clone)]
pub struct HiddenState {
    sig: Vec<[f64; 5]>,
}

impl HiddenState {
    pub fn new(params: &NetworkParams, x: &Point) -> Result<Self> {
        params.check_point(x)?;
        let xs = x.coords();
        let mut sig = Vec::with_capacity(params.h_count);
        for i in 0..params.h_count {
            let h = params.w1_row(i).iter().zip(xs).map(|(w, x)| w * x).sum::<f64>() + params.b1[i];
            sig.push(sigmoid_derivs(h));
        }
        Ok(Self { sig })
    }
}

/// `Π_j w_j^λ_j` for one row of input weights.
#[inline]
fn weight_monomial(row: &[f64], idx: &MultiIndex) -> f64 {
    row.iter().zip(idx.orders()).map(|(w, o)| w.powi(o as i32)).product()
}

/// Mixed partial of the network output at a precomputed hidden state.
pub fn partial_at(params: &NetworkParams, state: &HiddenState, idx: &MultiIndex) -> Result<f64> {
    params.check_index(idx)?;
    let lambda = idx.total() as usize;
    Ok((0..params.h_count)
        .map(|i| params.w2[i] * weight_monomial(params.w1_row(i), idx) * state.sig[i][lambda])
        .sum())
}

/// Accumulates `coef · ∂/∂θ [∂^λ N(x)]` into `grad`.
///
/// For hidden unit `i` with `P_i = Π_j w1_ij^λ_j`:
/// - `∂/∂w2_i  = P_i σ^(λ)(h_i)`
/// - `∂/∂b1_i  = w2_i P_i σ^(λ+1)(h_i)`
/// - `∂/∂w1_ik = w2_i (λ_k w1_ik^(λ_k−1) Π_{j≠k} w1_ij^λ_j σ^(λ)(h_i) + P_i x_k σ^(λ+1)(h_i))`
pub fn accumulate_param_gradient(
    params: &NetworkParams,
    state: &HiddenState,
    x: &Point,
    idx: &MultiIndex,
    coef: f64,
    grad: &mut ParamGradient,
) -> Result<()> {
    params.check_point(x)?;
    params.check_index(idx)?;
    params.check_grad_shape(grad)?;
    let n = params.input_dim;
    let lambda = idx.total() as usize;
    let xs = x.coords();
    for i in 0..params.h_count {
        let row = params.w1_row(i);
        let sig_l = state.sig[i][lambda];
        let sig_next = state.sig[i][lambda + 1];
        let mono = weight_monomial(row, idx);
        let w2 = params.w2[i];

        grad.w2[i] += coef * mono * sig_l;
        grad.b1[i] += coef * w2 * mono * sig_next;
        for k in 0..n {
            let ok = idx.order(k);
            let d_mono = if ok == 0 {
                0.0
            } else {
                let others: f64 = row
                    .iter()
                    .zip(idx.orders())
                    .enumerate()
                    .filter(|&(j, _)| j != k)
                    .map(|(_, (w, o))| w.powi(o as i32))
                    .product();
                f64::from(ok) * row[k].powi(ok as i32 - 1) * others
            };
            grad.w1[i * n + k] += coef * w2 * (d_mono * sig_l + mono * xs[k] * sig_next);
        }
    }
    Ok(())
}

/// One term `coef · ∂^λ N` of a linear combination of partials at a common point.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedPartial {
    pub coef: f64,
    pub idx: MultiIndex,
}

/// Powers `w^0..=w^3` of each input weight of one hidden unit.
#[inline]
fn weight_powers(row: &[f64]) -> SmallVec<[[f64; 4]; 4]> {
    row.iter().map(|&w| [1.0, w, w * w, w * w * w]).collect()
}

/// `Σ_t coef_t ∂^λt N(x)` in a single sweep over the hidden units.
pub fn combination_at(params: &NetworkParams, state: &HiddenState, terms: &[WeightedPartial]) -> Result<f64> {
    for t in terms {
        params.check_index(&t.idx)?;
    }
    if params.input_dim == 2 {
        return Ok(combination_at_2d(params, state, terms));
    }
    let mut acc = 0.0;
    for i in 0..params.h_count {
        let pows = weight_powers(params.w1_row(i));
        let sig = &state.sig[i];
        let mut unit = 0.0;
        for t in terms {
            let mono: f64 = idx_product(&pows, &t.idx, None);
            unit += t.coef * mono * sig[t.idx.total() as usize];
        }
        acc += params.w2[i] * unit;
    }
    Ok(acc)
}

/// Orders of a 2-D term, unpacked for the fast path.
#[inline]
fn orders_2d(t: &WeightedPartial) -> (usize, usize, usize) {
    let (a, b) = (t.idx.order(0) as usize, t.idx.order(1) as usize);
    (a, b, a + b)
}

#[inline]
fn powers(w: f64) -> [f64; 4] {
    [1.0, w, w * w, w * w * w]
}

fn combination_at_2d(params: &NetworkParams, state: &HiddenState, terms: &[WeightedPartial]) -> f64 {
    let mut acc = 0.0;
    for i in 0..params.h_count {
        let (pu, pv) = (powers(params.w1[2 * i]), powers(params.w1[2 * i + 1]));
        let sig = &state.sig[i];
        let mut unit = 0.0;
        for t in terms {
            let (a, b, l) = orders_2d(t);
            unit += t.coef * pu[a] * pv[b] * sig[l];
        }
        acc += params.w2[i] * unit;
    }
    acc
}

fn accumulate_combination_gradient_2d(
    params: &NetworkParams,
    state: &HiddenState,
    xs: &[f64],
    terms: &[WeightedPartial],
    scale: f64,
    grad: &mut ParamGradient,
) {
    for i in 0..params.h_count {
        let (pu, pv) = (powers(params.w1[2 * i]), powers(params.w1[2 * i + 1]));
        let sig = &state.sig[i];
        let (mut d_w2, mut d_next, mut d_u, mut d_v) = (0.0, 0.0, 0.0, 0.0);
        for t in terms {
            let (a, b, l) = orders_2d(t);
            let c = t.coef;
            let mono = pu[a] * pv[b];
            d_w2 += c * mono * sig[l];
            d_next += c * mono * sig[l + 1];
            if a > 0 {
                d_u += c * a as f64 * pu[a - 1] * pv[b] * sig[l];
            }
            if b > 0 {
                d_v += c * b as f64 * pu[a] * pv[b - 1] * sig[l];
            }
        }
        let w2 = params.w2[i];
        grad.w2[i] += scale * d_w2;
        grad.b1[i] += scale * w2 * d_next;
        grad.w1[2 * i] += scale * w2 * (d_u + xs[0] * d_next);
        grad.w1[2 * i + 1] += scale * w2 * (d_v + xs[1] * d_next);
    }
}

/// `Π_j w_j^λ_j`, or with `skip = Some(k)` its partial derivative in `w_k`.
#[inline]
fn idx_product(pows: &[[f64; 4]], idx: &MultiIndex, skip: Option<usize>) -> f64 {
    let mut out = 1.0;
    for (j, (p, o)) in pows.iter().zip(idx.orders()).enumerate() {
        if skip == Some(j) {
            if o == 0 {
                return 0.0;
            }
            out *= f64::from(o) * p[o as usize - 1];
        } else {
            out *= p[o as usize];
        }
    }
    out
}

/// Accumulates `scale · ∂/∂θ Σ_t coef_t ∂^λt N(x)` into `grad` in a single sweep.
///
/// Equivalent to calling [`accumulate_param_gradient`] once per term.
pub fn accumulate_combination_gradient(
    params: &NetworkParams,
    state: &HiddenState,
    x: &Point,
    terms: &[WeightedPartial],
    scale: f64,
    grad: &mut ParamGradient,
) -> Result<()> {
    params.check_point(x)?;
    params.check_grad_shape(grad)?;
    for t in terms {
        params.check_index(&t.idx)?;
    }
    let n = params.input_dim;
    let xs = x.coords();
    if n == 2 {
        accumulate_combination_gradient_2d(params, state, xs, terms, scale, grad);
        return Ok(());
    }
    let mut d_w1: SmallVec<[f64; 4]> = SmallVec::from_elem(0.0, n);
    for i in 0..params.h_count {
        let pows = weight_powers(params.w1_row(i));
        let sig = &state.sig[i];
        let mut d_w2 = 0.0;
        let mut d_next = 0.0;
        d_w1.iter_mut().for_each(|v| *v = 0.0);
        for t in terms {
            let lambda = t.idx.total() as usize;
            let mono = idx_product(&pows, &t.idx, None);
            d_w2 += t.coef * mono * sig[lambda];
            d_next += t.coef * mono * sig[lambda + 1];
            for (k, dk) in d_w1.iter_mut().enumerate() {
                *dk += t.coef * idx_product(&pows, &t.idx, Some(k)) * sig[lambda];
            }
        }
        let w2 = params.w2[i];
        grad.w2[i] += scale * d_w2;
        grad.b1[i] += scale * w2 * d_next;
        for k in 0..n {
            grad.w1[i * n + k] += scale * w2 * (d_w1[k] + xs[k] * d_next);
        }
    }
    Ok(())
}

/// Network output `N(x)`.
pub fn forward(params: &NetworkParams, x: &Point) -> Result<f64> {
    let state = HiddenState::new(params, x)?;
    partial_at(params, &state, &MultiIndex::zero(params.input_dim))
}

/// Mixed partial `∂^λ N(x)` selected by `idx`.
pub fn partial(params: &NetworkParams, x: &Point, idx: &MultiIndex) -> Result<f64> {
    params.check_index(idx)?;
    let state = HiddenState::new(params, x)?;
    partial_at(params, &state, idx)
}

/// Gradient of `∂^λ N(x)` with respect to every parameter.
pub fn param_gradient(params: &NetworkParams, x: &Point, idx: &MultiIndex) -> Result<ParamGradient> {
    let state = HiddenState::new(params, x)?;
    let mut grad = ParamGradient::zeros_like(params);
    accumulate_param_gradient(params, &state, x, idx, 1.0, &mut grad)?;
    Ok(grad)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(o: &[u32]) -> MultiIndex {
        MultiIndex::new(o).unwrap()
    }

    #[test]
    fn init_is_deterministic_and_seed_sensitive() {
        let a = init_params(15, 2, 7).unwrap();
        let b = init_params(15, 2, 7).unwrap();
        let c = init_params(15, 2, 8).unwrap();
        assert_eq!(a, b);
        assert!(a.values().zip(c.values()).any(|(x, y)| x != y));
        assert!(a.values().all(|v| (-0.5..=0.5).contains(&v)));
    }

    #[test]
    fn init_shapes() {
        let p = init_params(1, 1, 0).unwrap();
        assert_eq!((p.w1().len(), p.b1().len(), p.w2().len()), (1, 1, 1));
        assert!(init_params(0, 2, 0).is_err());
        assert!(init_params(3, 0, 0).is_err());
    }

    #[test]
    fn sigmoid_orders_at_zero() {
        assert_eq!(sigmoid_k(0, 0.0).unwrap(), 0.5);
        assert_eq!(sigmoid_k(1, 0.0).unwrap(), 0.25);
        assert_eq!(sigmoid_k(2, 0.0).unwrap(), 0.0);
        assert!(sigmoid_k(4, 0.0).is_err());
    }

    #[test]
    fn sigmoid_third_order_matches_finite_difference() {
        let step = 1e-4;
        for z in [0.0, 0.3, -1.7, 2.5] {
            let fd = (sigmoid_k(2, z + step).unwrap() - sigmoid_k(2, z - step).unwrap()) / (2.0 * step);
            let exact = sigmoid_k(3, z).unwrap();
            assert!(
                (fd - exact).abs() <= 1e-6 * exact.abs().max(1e-3),
                "z={z}: {fd} vs {exact}"
            );
        }
    }

    #[test]
    fn internal_fourth_order_matches_finite_difference() {
        let step = 1e-4;
        for z in [0.0, 0.4, -2.0] {
            let fd = (sigmoid_derivs(z + step)[3] - sigmoid_derivs(z - step)[3]) / (2.0 * step);
            assert!((fd - sigmoid_derivs(z)[4]).abs() < 1e-8);
        }
    }

    #[test]
    fn sigmoid_is_stable_for_extreme_inputs() {
        for z in [-800.0, -50.0, 50.0, 800.0] {
            for k in 0..=3 {
                let v = sigmoid_k(k, z).unwrap();
                assert!(v.is_finite() && v.abs() <= 1.0);
            }
        }
    }

    #[test]
    fn forward_simple_cases() {
        let p = NetworkParams::from_parts(1, 1, vec![0.0], vec![0.0], vec![2.0]).unwrap();
        assert_eq!(forward(&p, &Point::new(&[0.7]).unwrap()).unwrap(), 1.0);

        let z = init_params(4, 2, 1).unwrap().with_w2(vec![0.0; 4]).unwrap();
        assert_eq!(forward(&z, &Point::xy(0.2, 0.9).unwrap()).unwrap(), 0.0);
    }

    #[test]
    fn forward_rejects_dimension_mismatch() {
        let p = init_params(3, 2, 1).unwrap();
        assert!(matches!(
            forward(&p, &Point::new(&[0.5]).unwrap()),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(partial(&p, &Point::xy(0.5, 0.5).unwrap(), &mi(&[1])).is_err());
    }

    #[test]
    fn partial_zero_index_is_forward() {
        let p = init_params(6, 2, 3).unwrap();
        let x = Point::xy(0.25, 0.8).unwrap();
        assert_eq!(partial(&p, &x, &mi(&[0, 0])).unwrap(), forward(&p, &x).unwrap());
    }

    #[test]
    fn first_partial_reduces_to_sigmoid_slope() {
        let p = NetworkParams::from_parts(1, 1, vec![1.0], vec![0.0], vec![1.0]).unwrap();
        assert_eq!(partial(&p, &Point::new(&[0.0]).unwrap(), &mi(&[1])).unwrap(), 0.25);
    }

    #[test]
    fn multi_index_bounds() {
        assert!(matches!(MultiIndex::new(&[2, 2]), Err(Error::DerivativeOrder(4))));
        assert_eq!(mi(&[2, 1]).total(), 3);
        // (0..=3 total) in two dims: 1 + 2 + 3 + 4
        assert_eq!(MultiIndex::all_up_to(2, 3).len(), 10);
    }

    #[test]
    fn w2_gradient_is_hidden_activation() {
        let p = init_params(5, 2, 11).unwrap();
        let x = Point::xy(0.6, 0.1).unwrap();
        let g = param_gradient(&p, &x, &mi(&[0, 0])).unwrap();
        for i in 0..5 {
            let h = p.w1_row(i)[0] * 0.6 + p.w1_row(i)[1] * 0.1 + p.b1()[i];
            assert!((g.w2[i] - sigmoid_k(0, h).unwrap()).abs() < 1e-15);
        }
        let scaled = p.with_w2(p.w2().iter().map(|w| 3.0 * w).collect()).unwrap();
        let g2 = param_gradient(&scaled, &x, &mi(&[0, 0])).unwrap();
        assert_eq!(g.w2, g2.w2);
    }

    #[test]
    fn zero_output_weights_kill_hidden_gradients() {
        let p = init_params(5, 2, 4).unwrap().with_w2(vec![0.0; 5]).unwrap();
        let x = Point::xy(0.3, 0.3).unwrap();
        for idx in MultiIndex::all_up_to(2, 3) {
            let g = param_gradient(&p, &x, &idx).unwrap();
            assert!(g.w1.iter().chain(&g.b1).all(|&v| v == 0.0));
        }
    }

    #[test]
    fn descend_refuses_non_finite_result() {
        let mut p = init_params(2, 2, 0).unwrap();
        let before = p.clone();
        let mut g = ParamGradient::zeros_like(&p);
        g.w2[0] = f64::INFINITY;
        assert!(p.descend(&g, 0.1).is_err());
        assert_eq!(p, before);
    }

    #[test]
    fn from_parts_rejects_bad_input() {
        assert!(NetworkParams::from_parts(2, 2, vec![0.0; 3], vec![0.0; 2], vec![0.0; 2]).is_err());
        assert!(NetworkParams::from_parts(1, 1, vec![f64::NAN], vec![0.0], vec![0.0]).is_err());
    }

    #[test]
    fn point_domain_check() {
        assert!(Point::xy(1.0, 0.0).is_ok());
        assert!(matches!(Point::xy(1.1, 0.0), Err(Error::OutOfDomain(_))));
        assert!(Point::xy(f64::NAN, 0.0).is_err());
    }
}
