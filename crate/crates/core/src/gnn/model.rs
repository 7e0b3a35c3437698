use ndarray::{Array1, Array2, Axis, Zip};
use rand::Rng;

use super::params::{xavier_init, Head, Parameters};
use super::{GraphInput, Hyper, ModelConfig, RankResult};
use crate::embed::WalkParams;
use crate::error::{Error, Result};
use crate::line::SparseMatrix;
use crate::seed;

const BRANCH_NAMES: [&str; 2] = ["first", "second"];

/// Dropout behavior of one forward pass.
pub enum Dropout<'a> {
    Off,
    /// Fresh masks from the given stream.
    Sample(&'a mut seed::Rng),
    /// Masks recorded by an earlier pass, indexed `branch * layers + layer`.
    Fixed(&'a [Array2<f64>]),
}

#[derive(Debug, Clone)]
struct LayerCache {
    pre: Array2<f64>,
    out: Array2<f64>,
    mask: Option<Array2<f64>>,
    t1: Array2<f64>,
    t2: Array2<f64>,
    score: Array1<f64>,
}

#[derive(Debug, Clone)]
struct BranchCache {
    layers: Vec<LayerCache>,
    total: Array1<f64>,
}

/// Output of [`GnnModel::forward`] with the activations needed for
/// [`GnnModel::backward`].
#[derive(Debug, Clone)]
pub struct ForwardPass {
    pub scores: Array1<f64>,
    edges: usize,
    branches: [BranchCache; 2],
}

impl ForwardPass {
    /// Scores of the real (unpadded) edges.
    pub fn edge_scores(&self) -> Vec<f64> {
        self.scores.iter().take(self.edges).copied().collect()
    }

    pub fn rank(&self) -> RankResult {
        RankResult::from_scores(self.edge_scores())
    }

    /// Summed absolute head outputs of each branch.
    pub fn branch_scores(&self) -> (&Array1<f64>, &Array1<f64>) {
        (&self.branches[0].total, &self.branches[1].total)
    }

    /// Per-layer head outputs of branch `b`.
    pub fn layer_scores(&self, b: usize) -> Vec<&Array1<f64>> {
        self.branches[b].layers.iter().map(|l| &l.score).collect()
    }

    /// Dropout masks used, empty when dropout was off.
    pub fn masks(&self) -> Vec<Array2<f64>> {
        self.branches
            .iter()
            .flat_map(|b| b.layers.iter().filter_map(|l| l.mask.clone()))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GnnModel {
    pub config: ModelConfig,
    pub hyper: Hyper,
    /// Embedding settings used to build features for this model.
    pub walk: WalkParams,
    pub params: Parameters,
}

fn leaky(x: f64, slope: f64) -> f64 {
    if x > 0.0 {
        x
    } else {
        slope * x
    }
}

fn leaky_grad(x: f64, slope: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else {
        slope
    }
}

/// Derivative of |x|, taken as 0 at 0.
fn abs_grad(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

impl GnnModel {
    /// Fresh Xavier-initialized model.
    pub fn new(config: ModelConfig, hyper: Hyper, walk: WalkParams, seed: u64) -> Result<Self> {
        hyper.validate()?;
        if walk.dim != config.input_dim {
            return Err(Error::InvalidConfig(format!(
                "embedding dim {} differs from model input dim {}",
                walk.dim, config.input_dim
            )));
        }
        let params = xavier_init(&config, seed)?;
        Ok(Self {
            config,
            hyper,
            walk,
            params,
        })
    }

    fn check_input(&self, input: &GraphInput) -> Result<()> {
        if input.edges > self.config.capacity {
            return Err(Error::CapacityExceeded {
                edges: input.edges,
                capacity: self.config.capacity,
            });
        }
        if input.features.ncols() != self.config.input_dim {
            return Err(Error::Shape(format!(
                "features have {} columns, model expects {}",
                input.features.ncols(),
                self.config.input_dim
            )));
        }
        if input.first.dim() != input.rows() || input.second.dim() != input.rows() {
            return Err(Error::Shape("adjacency and feature sizes disagree".into()));
        }
        Ok(())
    }

    fn head_forward(head: &Head, h: &Array2<f64>) -> (Array2<f64>, Array2<f64>, Array1<f64>) {
        let mut t1 = h.dot(&head.fc1) + &head.bias1;
        t1.mapv_inplace(f64::tanh);
        let mut t2 = t1.dot(&head.fc2) + &head.bias2;
        t2.mapv_inplace(f64::tanh);
        let score = (t2.dot(&head.fc3) + &head.bias3).column(0).to_owned();
        (t1, t2, score)
    }

    fn branch_forward(
        &self,
        adj: &SparseMatrix,
        x: &Array2<f64>,
        branch: usize,
        dropout: &mut Dropout<'_>,
    ) -> Result<BranchCache> {
        let slope = self.hyper.leaky_slope;
        let keep_scale = 1.0 / (1.0 - self.hyper.dropout);
        let mut layers = Vec::with_capacity(self.config.layers);
        let mut total = Array1::zeros(x.nrows());
        for (k, (w, head)) in self.params.layers.iter().zip(&self.params.heads).enumerate() {
            let prev = layers.last().map_or(x, |l: &LayerCache| &l.out);
            let pre = adj.matmul(prev.dot(w).view());
            let mut out = pre.mapv(|v| leaky(v, slope));
            let mask = match dropout {
                Dropout::Off => None,
                Dropout::Sample(rng) => {
                    let p = self.hyper.dropout;
                    Some(out.mapv(|_| if rng.random::<f64>() < p { 0.0 } else { keep_scale }))
                }
                Dropout::Fixed(masks) => Some(masks[branch * self.config.layers + k].clone()),
            };
            if let Some(m) = &mask {
                out *= m;
            }
            if out.iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFiniteActivation {
                    layer: k,
                    branch: BRANCH_NAMES[branch],
                });
            }
            let (t1, t2, score) = Self::head_forward(head, &out);
            Zip::from(&mut total).and(&score).for_each(|t, &s| *t += s.abs());
            layers.push(LayerCache {
                pre,
                out,
                mask,
                t1,
                t2,
                score,
            });
        }
        Ok(BranchCache { layers, total })
    }

    pub fn forward(&self, input: &GraphInput, mut dropout: Dropout<'_>) -> Result<ForwardPass> {
        self.check_input(input)?;
        if let Dropout::Fixed(masks) = dropout {
            let want = 2 * self.config.layers;
            if masks.len() != want {
                return Err(Error::Shape(format!("expected {want} dropout masks, got {}", masks.len())));
            }
        }
        let a = self.branch_forward(&input.first, &input.features, 0, &mut dropout)?;
        let b = self.branch_forward(&input.second, &input.features, 1, &mut dropout)?;
        let scores = &a.total * &b.total;
        Ok(ForwardPass {
            scores,
            edges: input.edges,
            branches: [a, b],
        })
    }

    /// Eval-mode scores and ranking of the real edges.
    pub fn predict(&self, input: &GraphInput) -> Result<RankResult> {
        Ok(self.forward(input, Dropout::Off)?.rank())
    }

    /// Gradients of a scalar loss with respect to every parameter, given
    /// `d_scores` = dLoss/dScores for the pass.
    pub fn backward(&self, input: &GraphInput, pass: &ForwardPass, d_scores: &Array1<f64>) -> Result<Parameters> {
        if d_scores.len() != pass.scores.len() {
            return Err(Error::LengthMismatch(d_scores.len(), pass.scores.len()));
        }
        let mut grads = self.params.zeros_like();
        let adjs = [&input.first, &input.second];
        for (b, adj) in adjs.into_iter().enumerate() {
            let other = &pass.branches[1 - b].total;
            let d_total = d_scores * other;
            self.branch_backward(adj, &input.features, &pass.branches[b], &d_total, &mut grads);
        }
        Ok(grads)
    }

    fn branch_backward(
        &self,
        adj: &SparseMatrix,
        x: &Array2<f64>,
        cache: &BranchCache,
        d_total: &Array1<f64>,
        grads: &mut Parameters,
    ) {
        let slope = self.hyper.leaky_slope;
        let mut d_out_next: Option<Array2<f64>> = None;
        for k in (0..self.config.layers).rev() {
            let layer = &cache.layers[k];
            let head = &self.params.heads[k];
            let g_head = &mut grads.heads[k];

            let d_score = Zip::from(d_total).and(&layer.score).map_collect(|&d, &s| d * abs_grad(s));
            let d_score = d_score.insert_axis(Axis(1));
            g_head.fc3 += &layer.t2.t().dot(&d_score);
            g_head.bias3 += &d_score.sum_axis(Axis(0));
            let mut d_u2 = d_score.dot(&head.fc3.t());
            Zip::from(&mut d_u2).and(&layer.t2).for_each(|d, &t| *d *= 1.0 - t * t);
            g_head.fc2 += &layer.t1.t().dot(&d_u2);
            g_head.bias2 += &d_u2.sum_axis(Axis(0));
            let mut d_u1 = d_u2.dot(&head.fc2.t());
            Zip::from(&mut d_u1).and(&layer.t1).for_each(|d, &t| *d *= 1.0 - t * t);
            g_head.fc1 += &layer.out.t().dot(&d_u1);
            g_head.bias1 += &d_u1.sum_axis(Axis(0));

            let mut d_out = d_u1.dot(&head.fc1.t());
            if let Some(d) = d_out_next.take() {
                d_out += &d;
            }
            if let Some(m) = &layer.mask {
                d_out *= m;
            }
            Zip::from(&mut d_out).and(&layer.pre).for_each(|d, &z| *d *= leaky_grad(z, slope));
            let d_prod = adj.transpose_matmul(d_out.view());
            let prev = if k == 0 { x } else { &cache.layers[k - 1].out };
            grads.layers[k] += &prev.t().dot(&d_prod);
            if k > 0 {
                d_out_next = Some(d_prod.dot(&self.params.layers[k].t()));
            }
        }
    }
}
