//! Reverse-mode differentiation over dense computations: a tape of
//! vector-valued nodes, MLP layers, constrained evidential/Gaussian
//! output heads, a differentiable NIG-summation node, loss nodes, and
//! an Adam optimizer.
//!
//! One tape records one training step (single writer); inference paths
//! (`mlp_eval`, head `*_eval`) do no recording and are read-only.

use crate::error::{MonigError, Result};
use crate::loss::{
    evidence_regularizer, evidence_regularizer_grad, gaussian_nll_grad, nig_nll_grad,
    nig_nll_unchecked,
};
use crate::nig::NigParams;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Lower bound added to the positive head outputs.
pub const HEAD_FLOOR: f64 = 1e-6;

/// A trainable tensor with its gradient accumulator.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ParamTensor {
    shape: Vec<usize>,
    pub values: Vec<f64>,
    #[serde(skip)]
    pub grad: Vec<f64>,
}

impl ParamTensor {
    pub fn new(shape: Vec<usize>, values: Vec<f64>) -> Self {
        let n: usize = shape.iter().product();
        assert_eq!(n, values.len(), "shape/value length mismatch");
        let grad = vec![0.0; n];
        ParamTensor {
            shape,
            values,
            grad,
        }
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Owns every trainable tensor of a model.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct ParamStore {
    pub tensors: Vec<ParamTensor>,
}

impl ParamStore {
    pub fn add(&mut self, t: ParamTensor) -> usize {
        self.tensors.push(t);
        self.tensors.len() - 1
    }

    pub fn zero_grad(&mut self) {
        for t in &mut self.tensors {
            if t.grad.len() != t.values.len() {
                t.grad = vec![0.0; t.values.len()];
            } else {
                t.grad.iter_mut().for_each(|g| *g = 0.0);
            }
        }
    }
}

/// Named hidden nonlinearity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Activation {
    Relu,
    Tanh,
}

impl Activation {
    fn apply(self, x: f64) -> f64 {
        match self {
            Activation::Relu => x.max(0.0),
            Activation::Tanh => x.tanh(),
        }
    }

    fn derivative(self, x: f64, y: f64) -> f64 {
        match self {
            Activation::Relu => {
                if x > 0.0 {
                    1.0
                } else {
                    0.0
                }
            }
            Activation::Tanh => 1.0 - y * y,
        }
    }
}

/// Architecture of one branch network.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MlpSpec {
    pub input_dim: usize,
    pub hidden_dims: Vec<usize>,
    pub activation: Activation,
}

impl MlpSpec {
    pub fn new(input_dim: usize, hidden_dims: Vec<usize>) -> Result<Self> {
        if input_dim == 0 || hidden_dims.iter().any(|&d| d == 0) || hidden_dims.is_empty() {
            return Err(MonigError::Config(
                "all MLP dimensions must be at least 1".into(),
            ));
        }
        Ok(MlpSpec {
            input_dim,
            hidden_dims,
            activation: Activation::Relu,
        })
    }

    pub fn output_dim(&self) -> usize {
        *self.hidden_dims.last().unwrap()
    }
}

/// Parameter ids of one MLP: (weight, bias) per layer.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MlpParams {
    pub layers: Vec<(usize, usize)>,
}

/// Parameter ids of one output head: (weight, bias).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HeadParams {
    pub w: usize,
    pub b: usize,
}

fn init_linear(store: &mut ParamStore, fan_in: usize, fan_out: usize, rng: &mut ChaCha8Rng) -> (usize, usize) {
    // He-style scaled normal, Box-Muller on the seeded stream
    let std = (2.0 / fan_in as f64).sqrt();
    let mut w = Vec::with_capacity(fan_in * fan_out);
    for _ in 0..fan_in * fan_out {
        let u1: f64 = rng.random_range(f64::MIN_POSITIVE..1.0);
        let u2: f64 = rng.random_range(0.0..1.0);
        let z = (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos();
        w.push(std * z);
    }
    let wid = store.add(ParamTensor::new(vec![fan_out, fan_in], w));
    // small positive bias keeps ReLU pre-activations off the exact kink
    let bid = store.add(ParamTensor::new(vec![fan_out], vec![0.01; fan_out]));
    (wid, bid)
}

/// Seeded He-style initialization of an MLP.
pub fn init_mlp(store: &mut ParamStore, spec: &MlpSpec, rng: &mut ChaCha8Rng) -> MlpParams {
    let mut layers = Vec::new();
    let mut fan_in = spec.input_dim;
    for &h in &spec.hidden_dims {
        layers.push(init_linear(store, fan_in, h, rng));
        fan_in = h;
    }
    MlpParams { layers }
}

/// Head projecting a hidden vector to 4 raw evidential outputs.
pub fn init_evidential_head(store: &mut ParamStore, hidden_dim: usize, rng: &mut ChaCha8Rng) -> HeadParams {
    let (w, b) = init_linear(store, hidden_dim, 4, rng);
    HeadParams { w, b }
}

/// Head projecting a hidden vector to (mean, variance) raw outputs.
pub fn init_gaussian_head(store: &mut ParamStore, hidden_dim: usize, rng: &mut ChaCha8Rng) -> HeadParams {
    let (w, b) = init_linear(store, hidden_dim, 2, rng);
    HeadParams { w, b }
}

fn softplus(x: f64) -> f64 {
    if x > 0.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

fn sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

/// Constrain 4 raw outputs to valid NIG parameters:
/// δ raw, γ = sp+floor, α = sp+1+floor, β = sp+floor.
pub fn nig_transform(raw: &[f64; 4]) -> NigParams {
    NigParams {
        delta: raw[0],
        gamma: softplus(raw[1]) + HEAD_FLOOR,
        alpha: softplus(raw[2]) + 1.0 + HEAD_FLOOR,
        beta: softplus(raw[3]) + HEAD_FLOOR,
    }
}

#[derive(Debug, Clone, Copy)]
pub struct NodeId(usize);

#[derive(Debug)]
enum Op {
    Input,
    Param(usize),
    Linear { w: usize, b: usize, x: usize },
    Activate { x: usize, act: Activation },
    Concat { xs: Vec<usize> },
    NigHead { x: usize },
    GaussianHead { x: usize },
    NigSum { a: usize, b: usize },
    NigNll { y: f64, x: usize },
    EvidenceReg { y: f64, x: usize, delta_grad: bool },
    GaussianNll { y: f64, x: usize },
    SumScalars { xs: Vec<usize> },
    Scale { x: usize, c: f64 },
    AddScaled { a: usize, b: usize, c: f64 },
    SumElems { x: usize },
}

struct Node {
    op: Op,
    value: Vec<f64>,
    grad: Vec<f64>,
}

/// Append-only recording of one forward computation.
pub struct Tape {
    nodes: Vec<Node>,
    released: bool,
}

impl Default for Tape {
    fn default() -> Self {
        Self::new()
    }
}

impl Tape {
    pub fn new() -> Self {
        Tape {
            nodes: Vec::new(),
            released: false,
        }
    }

    fn push(&mut self, op: Op, value: Vec<f64>) -> NodeId {
        let grad = vec![0.0; value.len()];
        self.nodes.push(Node { op, value, grad });
        NodeId(self.nodes.len() - 1)
    }

    pub fn value(&self, id: NodeId) -> &[f64] {
        &self.nodes[id.0].value
    }

    pub fn scalar(&self, id: NodeId) -> f64 {
        debug_assert_eq!(self.nodes[id.0].value.len(), 1);
        self.nodes[id.0].value[0]
    }

    /// NIG parameters carried by a 4-vector node.
    pub fn nig_value(&self, id: NodeId) -> NigParams {
        let v = self.value(id);
        NigParams {
            delta: v[0],
            gamma: v[1],
            alpha: v[2],
            beta: v[3],
        }
    }

    pub fn input(&mut self, x: Vec<f64>) -> NodeId {
        self.push(Op::Input, x)
    }

    /// Leaf exposing a parameter tensor's flat values.
    pub fn param(&mut self, store: &ParamStore, pid: usize) -> NodeId {
        let value = store.tensors[pid].values.clone();
        self.push(Op::Param(pid), value)
    }

    pub fn linear(&mut self, store: &ParamStore, w: usize, b: usize, x: NodeId) -> Result<NodeId> {
        let wt = &store.tensors[w];
        let bt = &store.tensors[b];
        let (out_dim, in_dim) = (wt.shape[0], wt.shape[1]);
        let xv = &self.nodes[x.0].value;
        if xv.len() != in_dim {
            return Err(MonigError::ShapeMismatch {
                context: "linear input",
                expected: in_dim,
                got: xv.len(),
            });
        }
        let mut y = bt.values.clone();
        for i in 0..out_dim {
            let row = &wt.values[i * in_dim..(i + 1) * in_dim];
            let mut acc = 0.0;
            for (wij, xj) in row.iter().zip(xv.iter()) {
                acc += wij * xj;
            }
            y[i] += acc;
        }
        Ok(self.push(Op::Linear { w, b, x: x.0 }, y))
    }

    pub fn activate(&mut self, x: NodeId, act: Activation) -> NodeId {
        let y: Vec<f64> = self.nodes[x.0].value.iter().map(|&v| act.apply(v)).collect();
        self.push(Op::Activate { x: x.0, act }, y)
    }

    pub fn concat(&mut self, xs: &[NodeId]) -> NodeId {
        let mut v = Vec::new();
        for id in xs {
            v.extend_from_slice(&self.nodes[id.0].value);
        }
        self.push(
            Op::Concat {
                xs: xs.iter().map(|id| id.0).collect(),
            },
            v,
        )
    }

    /// Raw 4-vector to constrained (δ, γ, α, β).
    pub fn nig_head(&mut self, raw: NodeId) -> Result<NodeId> {
        let v = &self.nodes[raw.0].value;
        if v.len() != 4 {
            return Err(MonigError::ShapeMismatch {
                context: "nig_head raw",
                expected: 4,
                got: v.len(),
            });
        }
        let p = nig_transform(&[v[0], v[1], v[2], v[3]]);
        Ok(self.push(
            Op::NigHead { x: raw.0 },
            vec![p.delta, p.gamma, p.alpha, p.beta],
        ))
    }

    /// Raw 2-vector to (mean, variance) with variance = sp+floor.
    pub fn gaussian_head(&mut self, raw: NodeId) -> Result<NodeId> {
        let v = &self.nodes[raw.0].value;
        if v.len() != 2 {
            return Err(MonigError::ShapeMismatch {
                context: "gaussian_head raw",
                expected: 2,
                got: v.len(),
            });
        }
        let out = vec![v[0], softplus(v[1]) + HEAD_FLOOR];
        Ok(self.push(Op::GaussianHead { x: raw.0 }, out))
    }

    /// Differentiable pairwise NIG summation over two 4-vector nodes.
    pub fn nig_sum(&mut self, a: NodeId, b: NodeId) -> NodeId {
        let pa = self.nig_value(a);
        let pb = self.nig_value(b);
        let gamma = pa.gamma + pb.gamma;
        let delta = (pa.gamma * pa.delta + pb.gamma * pb.delta) / gamma;
        let alpha = pa.alpha + pb.alpha + 0.5;
        let beta = pa.beta
            + pb.beta
            + 0.5 * pa.gamma * (pa.delta - delta).powi(2)
            + 0.5 * pb.gamma * (pb.delta - delta).powi(2);
        self.push(Op::NigSum { a: a.0, b: b.0 }, vec![delta, gamma, alpha, beta])
    }

    /// Fold of [`Tape::nig_sum`] in input order.
    pub fn monig_fuse(&mut self, branches: &[NodeId]) -> Result<NodeId> {
        let (&first, rest) = branches
            .split_first()
            .ok_or(MonigError::EmptyInput("monig_fuse needs at least one NIG"))?;
        let mut acc = first;
        for &b in rest {
            acc = self.nig_sum(acc, b);
        }
        Ok(acc)
    }

    pub fn nig_nll(&mut self, y: f64, nig: NodeId) -> NodeId {
        let p = self.nig_value(nig);
        let v = nig_nll_unchecked(y, &p);
        self.push(Op::NigNll { y, x: nig.0 }, vec![v])
    }

    pub fn evidence_reg(&mut self, y: f64, nig: NodeId, delta_grad: bool) -> NodeId {
        let p = self.nig_value(nig);
        let v = evidence_regularizer(y, &p);
        self.push(
            Op::EvidenceReg {
                y,
                x: nig.0,
                delta_grad,
            },
            vec![v],
        )
    }

    pub fn gaussian_nll(&mut self, y: f64, head: NodeId) -> NodeId {
        let v = self.nodes[head.0].value.clone();
        let loss = 0.5 * (2.0 * std::f64::consts::PI * v[1]).ln()
            + (y - v[0]).powi(2) / (2.0 * v[1]);
        self.push(Op::GaussianNll { y, x: head.0 }, vec![loss])
    }

    pub fn sum_scalars(&mut self, xs: &[NodeId]) -> NodeId {
        let v: f64 = xs.iter().map(|id| self.nodes[id.0].value[0]).sum();
        self.push(
            Op::SumScalars {
                xs: xs.iter().map(|id| id.0).collect(),
            },
            vec![v],
        )
    }

    pub fn scale(&mut self, x: NodeId, c: f64) -> NodeId {
        let v = self.nodes[x.0].value[0] * c;
        self.push(Op::Scale { x: x.0, c }, vec![v])
    }

    /// a + c·b on scalars.
    pub fn add_scaled(&mut self, a: NodeId, b: NodeId, c: f64) -> NodeId {
        let v = self.nodes[a.0].value[0] + c * self.nodes[b.0].value[0];
        self.push(Op::AddScaled { a: a.0, b: b.0, c }, vec![v])
    }

    /// Sum of a vector node's elements.
    pub fn sum_elems(&mut self, x: NodeId) -> NodeId {
        let v: f64 = self.nodes[x.0].value.iter().sum();
        self.push(Op::SumElems { x: x.0 }, vec![v])
    }

    pub fn mean_scalars(&mut self, xs: &[NodeId]) -> NodeId {
        let s = self.sum_scalars(xs);
        self.scale(s, 1.0 / xs.len() as f64)
    }

    /// Backpropagate from a scalar node, accumulating ∂loss/∂param into
    /// every reachable [`ParamTensor`]'s grad field. Repeated calls
    /// accumulate further.
    pub fn backward(&mut self, out: NodeId, store: &mut ParamStore) -> Result<()> {
        if self.released {
            return Err(MonigError::GraphConsumed);
        }
        if self.nodes[out.0].value.len() != 1 {
            return Err(MonigError::ShapeMismatch {
                context: "backward output",
                expected: 1,
                got: self.nodes[out.0].value.len(),
            });
        }
        for n in &mut self.nodes {
            n.grad.iter_mut().for_each(|g| *g = 0.0);
        }
        self.nodes[out.0].grad[0] = 1.0;

        for i in (0..self.nodes.len()).rev() {
            // split off the current node to get disjoint borrows
            let (before, rest) = self.nodes.split_at_mut(i);
            let node = &rest[0];
            if node.grad.iter().all(|&g| g == 0.0) {
                continue;
            }
            match &node.op {
                Op::Input => {}
                Op::Param(pid) => {
                    let t = &mut store.tensors[*pid];
                    for (g, d) in t.grad.iter_mut().zip(&node.grad) {
                        *g += d;
                    }
                }
                Op::Linear { w, b, x } => {
                    let wt_shape_in = store.tensors[*w].shape[1];
                    let xv = before[*x].value.clone();
                    {
                        let wt = &mut store.tensors[*w];
                        for (i_out, dy) in node.grad.iter().enumerate() {
                            if *dy == 0.0 {
                                continue;
                            }
                            let row = &mut wt.grad[i_out * wt_shape_in..(i_out + 1) * wt_shape_in];
                            for (gw, xj) in row.iter_mut().zip(&xv) {
                                *gw += dy * xj;
                            }
                        }
                    }
                    {
                        let bt = &mut store.tensors[*b];
                        for (gb, dy) in bt.grad.iter_mut().zip(&node.grad) {
                            *gb += dy;
                        }
                    }
                    let wt_values = &store.tensors[*w].values;
                    let xg = &mut before[*x].grad;
                    for (i_out, dy) in node.grad.iter().enumerate() {
                        if *dy == 0.0 {
                            continue;
                        }
                        let row = &wt_values[i_out * wt_shape_in..(i_out + 1) * wt_shape_in];
                        for (gx, wij) in xg.iter_mut().zip(row) {
                            *gx += dy * wij;
                        }
                    }
                }
                Op::Activate { x, act } => {
                    let act = *act;
                    let xi = *x;
                    for j in 0..node.value.len() {
                        let d = act.derivative(before[xi].value[j], node.value[j]);
                        before[xi].grad[j] += node.grad[j] * d;
                    }
                }
                Op::Concat { xs } => {
                    let mut offset = 0;
                    for &xi in xs {
                        let len = before[xi].value.len();
                        for j in 0..len {
                            before[xi].grad[j] += node.grad[offset + j];
                        }
                        offset += len;
                    }
                }
                Op::NigHead { x } => {
                    let xi = *x;
                    let raw = &before[xi].value;
                    let d = [1.0, sigmoid(raw[1]), sigmoid(raw[2]), sigmoid(raw[3])];
                    for j in 0..4 {
                        before[xi].grad[j] += node.grad[j] * d[j];
                    }
                }
                Op::GaussianHead { x } => {
                    let xi = *x;
                    let raw1 = before[xi].value[1];
                    before[xi].grad[0] += node.grad[0];
                    before[xi].grad[1] += node.grad[1] * sigmoid(raw1);
                }
                Op::NigSum { a, b } => {
                    let (ai, bi) = (*a, *b);
                    let (d, g) = (node.value[0], node.value[1]);
                    let (dd, dg, da, db) =
                        (node.grad[0], node.grad[1], node.grad[2], node.grad[3]);
                    for &i in &[ai, bi] {
                        let (di, gi) = (before[i].value[0], before[i].value[1]);
                        before[i].grad[0] += dd * gi / g + db * gi * (di - d);
                        before[i].grad[1] += dd * (di - d) / g + dg + db * 0.5 * (di - d).powi(2);
                        before[i].grad[2] += da;
                        before[i].grad[3] += db;
                    }
                }
                Op::NigNll { y, x } => {
                    let xi = *x;
                    let v = &before[xi].value;
                    let p = NigParams {
                        delta: v[0],
                        gamma: v[1],
                        alpha: v[2],
                        beta: v[3],
                    };
                    let grad = nig_nll_grad(*y, &p);
                    for j in 0..4 {
                        before[xi].grad[j] += node.grad[0] * grad[j];
                    }
                }
                Op::EvidenceReg { y, x, delta_grad } => {
                    let xi = *x;
                    let v = &before[xi].value;
                    let p = NigParams {
                        delta: v[0],
                        gamma: v[1],
                        alpha: v[2],
                        beta: v[3],
                    };
                    let grad = evidence_regularizer_grad(*y, &p, *delta_grad);
                    for j in 0..4 {
                        before[xi].grad[j] += node.grad[0] * grad[j];
                    }
                }
                Op::GaussianNll { y, x } => {
                    let xi = *x;
                    let v = &before[xi].value;
                    let grad = gaussian_nll_grad(*y, v[0], v[1]);
                    before[xi].grad[0] += node.grad[0] * grad[0];
                    before[xi].grad[1] += node.grad[0] * grad[1];
                }
                Op::SumScalars { xs } => {
                    for &xi in xs {
                        before[xi].grad[0] += node.grad[0];
                    }
                }
                Op::Scale { x, c } => {
                    before[*x].grad[0] += node.grad[0] * c;
                }
                Op::AddScaled { a, b, c } => {
                    before[*a].grad[0] += node.grad[0];
                    before[*b].grad[0] += node.grad[0] * c;
                }
                Op::SumElems { x } => {
                    let xi = *x;
                    for g in before[xi].grad.iter_mut() {
                        *g += node.grad[0];
                    }
                }
            }
        }
        Ok(())
    }

    /// Release the recording; further `backward` calls fail with
    /// [`MonigError::GraphConsumed`].
    pub fn release(&mut self) {
        self.nodes.clear();
        self.released = true;
    }
}

/// Recorded MLP forward pass returning the last hidden representation.
pub fn mlp_forward(
    tape: &mut Tape,
    store: &ParamStore,
    spec: &MlpSpec,
    params: &MlpParams,
    x: NodeId,
) -> Result<NodeId> {
    let mut h = x;
    for (w, b) in &params.layers {
        let z = tape.linear(store, *w, *b, h)?;
        h = tape.activate(z, spec.activation);
    }
    Ok(h)
}

/// Plain (non-recording) MLP forward for inference.
pub fn mlp_eval(store: &ParamStore, spec: &MlpSpec, params: &MlpParams, x: &[f64]) -> Result<Vec<f64>> {
    if x.len() != spec.input_dim {
        return Err(MonigError::ShapeMismatch {
            context: "mlp input",
            expected: spec.input_dim,
            got: x.len(),
        });
    }
    let mut h = x.to_vec();
    for (w, b) in &params.layers {
        let wt = &store.tensors[*w];
        let bt = &store.tensors[*b];
        let (out_dim, in_dim) = (wt.shape[0], wt.shape[1]);
        let mut y = bt.values.clone();
        for i in 0..out_dim {
            let row = &wt.values[i * in_dim..(i + 1) * in_dim];
            let mut acc = 0.0;
            for (wij, xj) in row.iter().zip(&h) {
                acc += wij * xj;
            }
            y[i] += acc;
        }
        for v in &mut y {
            *v = spec.activation.apply(*v);
        }
        h = y;
    }
    Ok(h)
}

fn head_raw(store: &ParamStore, head: &HeadParams, h: &[f64]) -> Vec<f64> {
    let wt = &store.tensors[head.w];
    let bt = &store.tensors[head.b];
    let (out_dim, in_dim) = (wt.shape[0], wt.shape[1]);
    let mut raw = bt.values.clone();
    for i in 0..out_dim {
        let row = &wt.values[i * in_dim..(i + 1) * in_dim];
        for (wij, hj) in row.iter().zip(h) {
            raw[i] += wij * hj;
        }
    }
    raw
}

/// Non-recording evidential head evaluation.
pub fn evidential_head_eval(store: &ParamStore, head: &HeadParams, h: &[f64]) -> NigParams {
    let raw = head_raw(store, head, h);
    nig_transform(&[raw[0], raw[1], raw[2], raw[3]])
}

/// Non-recording Gaussian head evaluation.
pub fn gaussian_head_eval(store: &ParamStore, head: &HeadParams, h: &[f64]) -> (f64, f64) {
    let raw = head_raw(store, head, h);
    (raw[0], softplus(raw[1]) + HEAD_FLOOR)
}

/// Adam optimizer state over a [`ParamStore`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AdamState {
    pub step: u64,
    pub learning_rate: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub epsilon: f64,
    m: Vec<Vec<f64>>,
    v: Vec<Vec<f64>>,
}

impl AdamState {
    pub fn new(learning_rate: f64, store: &ParamStore) -> Self {
        AdamState {
            step: 0,
            learning_rate,
            beta1: 0.9,
            beta2: 0.999,
            epsilon: 1e-8,
            m: store.tensors.iter().map(|t| vec![0.0; t.len()]).collect(),
            v: store.tensors.iter().map(|t| vec![0.0; t.len()]).collect(),
        }
    }

    /// One Adam update with bias correction; zeroes grads afterward.
    pub fn step(&mut self, store: &mut ParamStore) {
        self.step += 1;
        let t = self.step as f64;
        let bc1 = 1.0 - self.beta1.powf(t);
        let bc2 = 1.0 - self.beta2.powf(t);
        for (i, tensor) in store.tensors.iter_mut().enumerate() {
            for j in 0..tensor.values.len() {
                let g = tensor.grad[j];
                self.m[i][j] = self.beta1 * self.m[i][j] + (1.0 - self.beta1) * g;
                self.v[i][j] = self.beta2 * self.v[i][j] + (1.0 - self.beta2) * g * g;
                let m_hat = self.m[i][j] / bc1;
                let v_hat = self.v[i][j] / bc2;
                tensor.values[j] -= self.learning_rate * m_hat / (v_hat.sqrt() + self.epsilon);
            }
        }
        store.zero_grad();
    }
}
