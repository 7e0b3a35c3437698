//! Twin-branch message passing model over edge adjacency matrices.
//!
//! Both branches start from the same edge features and apply the same layer
//! weights and score heads; they differ only in the adjacency they aggregate
//! over. Each branch score is the sum of absolute per-layer head outputs and
//! the final edge score is the product of the two branch scores.

mod adam;
mod checkpoint;
mod loss;
mod model;
mod params;
mod train;

pub use adam::Adam;
pub use checkpoint::{load_checkpoint, read_checkpoint, save_checkpoint, write_checkpoint, CHECKPOINT_VERSION};
pub use loss::{margin_ranking_loss, pair_loss, sample_pairs};
pub use model::{Dropout, ForwardPass, GnnModel};
pub use params::{xavier_init, Head, Parameters};
pub use train::{infer_ranking, mean_correlation, train, EpochRecord, Example, Inference};

use std::str::FromStr;

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use crate::centrality::descending_order;
use crate::embed::EmbeddingMatrix;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, WeightedGraph};
use crate::line::{edge_adjacency, psi_d, psi_w, SparseMatrix};

/// Which adjacency each branch aggregates over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum AdjacencyVariant {
    /// Degree-normalized and weight-normalized.
    #[default]
    Both,
    /// Degree-normalized in both branches.
    DegreeOnly,
    /// Weight-normalized in both branches.
    WeightOnly,
    /// Unnormalized 0/1 adjacency in both branches.
    Plain,
}

impl AdjacencyVariant {
    pub const ALL: [AdjacencyVariant; 4] = [Self::Both, Self::WeightOnly, Self::DegreeOnly, Self::Plain];

    pub fn name(self) -> &'static str {
        match self {
            Self::Both => "both",
            Self::DegreeOnly => "degree-only",
            Self::WeightOnly => "weight-only",
            Self::Plain => "plain",
        }
    }
}

impl FromStr for AdjacencyVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown adjacency variant '{s}'")))
    }
}

/// Model shape.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModelConfig {
    pub input_dim: usize,
    pub hidden_dim: usize,
    pub layers: usize,
    /// Largest edge count the model accepts.
    pub capacity: usize,
    pub variant: AdjacencyVariant,
}

impl Default for ModelConfig {
    fn default() -> Self {
        Self {
            input_dim: 256,
            hidden_dim: 256,
            layers: 5,
            capacity: 1024,
            variant: AdjacencyVariant::Both,
        }
    }
}

impl ModelConfig {
    pub fn desk_scale() -> Self {
        Self {
            input_dim: 64,
            hidden_dim: 64,
            ..Self::default()
        }
    }

    pub fn paper_scale() -> Self {
        Self {
            capacity: 10_000,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.input_dim == 0 || self.layers == 0 || self.capacity == 0 {
            return Err(Error::InvalidConfig(format!("model dimensions must be positive: {self:?}")));
        }
        if self.hidden_dim < 4 {
            return Err(Error::InvalidConfig(format!(
                "hidden_dim {} is too small for the score head (needs >= 4)",
                self.hidden_dim
            )));
        }
        Ok(())
    }

    /// `(h, h/2, h/4)`.
    pub fn head_widths(&self) -> (usize, usize, usize) {
        let h = self.hidden_dim;
        (h, h / 2, h / 4)
    }
}

/// Optimization settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Hyper {
    pub lr: f64,
    pub dropout: f64,
    pub epochs: usize,
    pub margin: f64,
    pub pair_factor: usize,
    pub leaky_slope: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub eps: f64,
}

impl Default for Hyper {
    fn default() -> Self {
        Self {
            lr: 0.0005,
            dropout: 0.3,
            epochs: 50,
            margin: 1.0,
            pair_factor: 20,
            leaky_slope: 0.01,
            beta1: 0.9,
            beta2: 0.999,
            eps: 1e-8,
        }
    }
}

impl Hyper {
    pub fn validate(&self) -> Result<()> {
        let ok = self.lr > 0.0
            && (0.0..1.0).contains(&self.dropout)
            && self.epochs > 0
            && self.margin >= 0.0
            && self.pair_factor > 0
            && self.leaky_slope.is_finite()
            && (0.0..1.0).contains(&self.beta1)
            && (0.0..1.0).contains(&self.beta2)
            && self.eps > 0.0;
        if !ok {
            return Err(Error::InvalidConfig(format!("invalid training hyperparameters: {self:?}")));
        }
        Ok(())
    }
}

/// Per-edge scores and the induced ranking.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankResult {
    pub scores: Vec<f64>,
    /// Edge ids by descending score, ties by ascending id.
    pub ranking: Vec<EdgeId>,
}

impl RankResult {
    pub fn from_scores(scores: Vec<f64>) -> Self {
        let ranking = descending_order(&scores);
        Self { scores, ranking }
    }
}

/// Features and the two branch adjacencies of one graph.
///
/// `edges` is the number of real edges; rows past it are zero padding.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphInput {
    pub features: Array2<f64>,
    pub first: SparseMatrix,
    pub second: SparseMatrix,
    pub edges: usize,
}

impl GraphInput {
    pub fn new(features: Array2<f64>, first: SparseMatrix, second: SparseMatrix) -> Result<Self> {
        let m = features.nrows();
        if first.dim() != m || second.dim() != m {
            return Err(Error::Shape(format!(
                "features have {m} rows, adjacencies are {}x{0} and {}x{1}",
                first.dim(),
                second.dim()
            )));
        }
        Ok(Self {
            features,
            first,
            second,
            edges: m,
        })
    }

    pub fn build(g: &WeightedGraph, features: &EmbeddingMatrix, variant: AdjacencyVariant) -> Result<Self> {
        if features.rows() != g.edge_count() {
            return Err(Error::Shape(format!(
                "embedding has {} rows, graph has {} edges",
                features.rows(),
                g.edge_count()
            )));
        }
        let a = edge_adjacency(g);
        let (first, second) = match variant {
            AdjacencyVariant::Both => (psi_d(g, &a)?.into_matrix(), psi_w(g, &a)?.into_matrix()),
            AdjacencyVariant::DegreeOnly => {
                let d = psi_d(g, &a)?.into_matrix();
                (d.clone(), d)
            }
            AdjacencyVariant::WeightOnly => {
                let w = psi_w(g, &a)?.into_matrix();
                (w.clone(), w)
            }
            AdjacencyVariant::Plain => {
                let m = a.into_matrix();
                (m.clone(), m)
            }
        };
        Self::new(features.values().clone(), first, second)
    }

    /// Rows padded to `capacity` with zero features and no adjacency.
    pub fn zero_padded(&self, capacity: usize) -> Result<Self> {
        let mut features = Array2::zeros((capacity, self.features.ncols()));
        if capacity < self.features.nrows() {
            return Err(Error::CapacityExceeded {
                edges: self.features.nrows(),
                capacity,
            });
        }
        features
            .slice_mut(ndarray::s![..self.features.nrows(), ..])
            .assign(&self.features);
        Ok(Self {
            features,
            first: self.first.zero_padded(capacity)?,
            second: self.second.zero_padded(capacity)?,
            edges: self.edges,
        })
    }

    /// Relabels edges with `order[new] = old`.
    pub fn permuted(&self, order: &[usize]) -> Self {
        let features = self.features.select(ndarray::Axis(0), order);
        Self {
            features,
            first: self.first.permuted(order),
            second: self.second.permuted(order),
            edges: self.edges,
        }
    }

    pub fn rows(&self) -> usize {
        self.features.nrows()
    }
}
