//! Edge features from biased random walks.
//!
//! Pipeline: second-order walks over nodes ([`generate_walks`]), skip-gram
//! with negative sampling over the walk corpus ([`train_skipgram`]), then
//! each edge takes the mean of its endpoint vectors ([`edge_embeddings`]).

mod skipgram;
mod walk;

pub use skipgram::{context_pairs, train_skipgram, SkipGram};
pub use walk::{first_order_prob, generate_walks, second_order_prob, BiasedWalker, WalkCorpus};

use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

/// Walk and skip-gram settings.
///
/// `window` is the length of the sliding window centered on each position;
/// a window of 3 pairs every node with its immediate predecessor and
/// successor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WalkParams {
    pub p: f64,
    pub q: f64,
    pub walk_length: usize,
    pub walks_per_node: usize,
    pub window: usize,
    pub negative_samples: usize,
    pub dim: usize,
    pub sgns_epochs: usize,
    pub sgns_lr: f64,
    pub seed: u64,
}

impl Default for WalkParams {
    fn default() -> Self {
        Self {
            p: 1.0,
            q: 2.0,
            walk_length: 30,
            walks_per_node: 10,
            window: 3,
            negative_samples: 5,
            dim: 256,
            sgns_epochs: 5,
            sgns_lr: 0.025,
            seed: 0,
        }
    }
}

impl WalkParams {
    /// Defaults with a 64-dimensional embedding.
    pub fn desk_scale() -> Self {
        Self {
            dim: 64,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = self.p > 0.0
            && self.q > 0.0
            && self.p.is_finite()
            && self.q.is_finite()
            && self.walk_length > 0
            && self.walks_per_node > 0
            && self.window > 0
            && self.negative_samples > 0
            && self.dim > 0
            && self.sgns_epochs > 0
            && self.sgns_lr > 0.0;
        if !positive {
            return Err(Error::InvalidConfig(format!(
                "walk parameters must all be positive: {self:?}"
            )));
        }
        if self.window >= self.walk_length {
            return Err(Error::InvalidConfig(format!(
                "window {} must be shorter than walk length {}",
                self.window, self.walk_length
            )));
        }
        Ok(())
    }

    /// Context radius on each side of the center.
    pub fn radius(&self) -> usize {
        (self.window / 2).max(1)
    }
}

/// `|E| x d` matrix of initial edge features.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingMatrix {
    values: Array2<f64>,
}

impl EmbeddingMatrix {
    pub fn new(values: Array2<f64>) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Shape("embedding contains non-finite values".into()));
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &Array2<f64> {
        &self.values
    }

    pub fn into_values(self) -> Array2<f64> {
        self.values
    }

    pub fn rows(&self) -> usize {
        self.values.nrows()
    }

    pub fn dim(&self) -> usize {
        self.values.ncols()
    }
}

/// Edge rows are the mean of the two endpoint rows of `node_emb`.
pub fn edge_embeddings(node_emb: &Array2<f64>, g: &WeightedGraph) -> Result<EmbeddingMatrix> {
    if node_emb.nrows() != g.node_count() {
        return Err(Error::Shape(format!(
            "node embedding has {} rows, graph has {} nodes",
            node_emb.nrows(),
            g.node_count()
        )));
    }
    let mut out = Array2::zeros((g.edge_count(), node_emb.ncols()));
    for (mut row, e) in out.rows_mut().into_iter().zip(g.edges()) {
        row.assign(&node_emb.row(e.u));
        row += &node_emb.row(e.v);
        row *= 0.5;
    }
    EmbeddingMatrix::new(out)
}

/// Walks, skip-gram and edge averaging in one call.
pub fn embed_edges(g: &WeightedGraph, params: &WalkParams) -> Result<EmbeddingMatrix> {
    let corpus = generate_walks(g, params)?;
    let model = train_skipgram(&corpus, g.node_count(), params)?;
    edge_embeddings(&model.embeddings, g)
}

/// Text layout: `rows dim` header, then `id v1 ... vd` per row.
pub fn write_embedding(m: &Array2<f64>, path: impl AsRef<Path>) -> Result<()> {
    let mut out = BufWriter::new(fs::File::create(path)?);
    writeln!(out, "{} {}", m.nrows(), m.ncols())?;
    for (i, row) in m.rows().into_iter().enumerate() {
        write!(out, "{i}")?;
        for v in row {
            write!(out, " {v:.16e}")?;
        }
        writeln!(out)?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_embedding(path: impl AsRef<Path>) -> Result<Array2<f64>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)?;
    let perr = |line: usize, message: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| perr(1, "missing header".into()))?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse().map_err(|e| perr(1, format!("{e}"))))
        .collect::<Result<_>>()?;
    if dims.len() != 2 {
        return Err(perr(1, "header must be `rows dim`".into()));
    }
    let (rows, dim) = (dims[0], dims[1]);
    let mut out = Array2::zeros((rows, dim));
    let mut filled = vec![false; rows];
    for (i, line) in lines {
        let t: Vec<&str> = line.split_whitespace().collect();
        if t.is_empty() {
            continue;
        }
        if t.len() != dim + 1 {
            return Err(perr(i + 1, format!("expected {} fields, found {}", dim + 1, t.len())));
        }
        let id: usize = t[0].parse().map_err(|e| perr(i + 1, format!("{e}")))?;
        if id >= rows {
            return Err(perr(i + 1, format!("row id {id} out of range")));
        }
        for (k, tok) in t[1..].iter().enumerate() {
            out[[id, k]] = tok.parse().map_err(|e| perr(i + 1, format!("{e}")))?;
        }
        filled[id] = true;
    }
    if let Some(missing) = filled.iter().position(|f| !f) {
        return Err(perr(0, format!("row {missing} missing")));
    }
    Ok(out)
}
