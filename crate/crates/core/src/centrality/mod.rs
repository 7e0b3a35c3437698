//! Exact edge betweenness centrality.
//!
//! Scores sum over unordered node pairs `{s, t}`, `s != t`, with no
//! normalization: `c(e) = sum sigma(s, t | e) / sigma(s, t)`. Pairs without
//! a connecting path contribute nothing.

mod brandes;
mod brute;
mod io;

pub use brandes::brandes_ebc;
pub use brute::{brute_force_ebc, BRUTE_FORCE_MAX_NODES};
pub use io::{read_scores, write_scores_json, write_scores_text, ScoredEdge};

use crate::graph::EdgeId;

/// Relative tolerance under which two path lengths count as equal.
pub const DISTANCE_RTOL: f64 = 1e-12;

pub(crate) fn same_length(a: f64, b: f64) -> bool {
    a.is_finite() && b.is_finite() && (a - b).abs() <= DISTANCE_RTOL * a.abs().max(b.abs())
}

/// Per-edge betweenness, indexed by [`EdgeId`].
#[derive(Debug, Clone, PartialEq)]
pub struct EbcScores {
    values: Vec<f64>,
}

impl EbcScores {
    pub fn new(values: Vec<f64>) -> Self {
        Self { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, id: EdgeId) -> f64 {
        self.values[id.0]
    }

    /// Edge ids by descending score, ties by ascending id.
    pub fn ranking(&self) -> Vec<EdgeId> {
        descending_order(&self.values)
    }
}

/// Indices sorted by descending value; equal values keep ascending index.
pub fn descending_order(values: &[f64]) -> Vec<EdgeId> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[b].total_cmp(&values[a]).then(a.cmp(&b)));
    idx.into_iter().map(EdgeId).collect()
}
