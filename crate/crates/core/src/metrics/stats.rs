use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

/// Summary statistics of a weighted graph.
///
/// `avg_shortest_path` averages weighted distances over ordered pairs that
/// are connected; `unreachable_pairs` counts the ordered pairs left out.
/// `avg_clustering` is the mean Onnela coefficient with weights scaled by
/// the graph maximum; nodes of degree < 2 contribute 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GraphStats {
    pub avg_shortest_path: f64,
    pub avg_clustering: f64,
    pub avg_degree: f64,
    pub unreachable_pairs: u64,
}

struct Dist(f64);

impl PartialEq for Dist {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other).is_eq()
    }
}

impl Eq for Dist {}

impl PartialOrd for Dist {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dist {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}

fn distances_from(g: &WeightedGraph, s: usize) -> Vec<f64> {
    let mut dist = vec![f64::INFINITY; g.node_count()];
    let mut heap = BinaryHeap::new();
    dist[s] = 0.0;
    heap.push(Reverse((Dist(0.0), s)));
    while let Some(Reverse((Dist(d), v))) = heap.pop() {
        if d > dist[v] {
            continue;
        }
        for (&u, &w) in g.neighbors(v).iter().zip(g.neighbor_weights(v)) {
            let alt = d + w;
            if alt < dist[u] {
                dist[u] = alt;
                heap.push(Reverse((Dist(alt), u)));
            }
        }
    }
    dist
}

pub fn onnela_clustering(g: &WeightedGraph, s: usize) -> f64 {
    let nbrs = g.neighbors(s);
    let k = nbrs.len();
    if k < 2 {
        return 0.0;
    }
    let max_w = g.weights().into_iter().fold(0.0, f64::max);
    let ws = g.neighbor_weights(s);
    let mut sum = 0.0;
    for a in 0..k {
        for b in a + 1..k {
            if let Some(w_tu) = g.weight(nbrs[a], nbrs[b]) {
                sum += (ws[a] / max_w * w_tu / max_w * ws[b] / max_w).cbrt();
            }
        }
    }
    // unordered pairs; the ordered-pair sum is twice this
    2.0 * sum / (k * (k - 1)) as f64
}

pub fn graph_stats(g: &WeightedGraph) -> Result<GraphStats> {
    let n = g.node_count();
    if n == 0 {
        return Err(Error::Empty("graph has no nodes".into()));
    }
    let per_source: Vec<(f64, u64)> = (0..n)
        .into_par_iter()
        .map(|s| {
            let d = distances_from(g, s);
            let mut sum = 0.0;
            let mut reached = 0u64;
            for (t, &x) in d.iter().enumerate() {
                if t != s && x.is_finite() {
                    sum += x;
                    reached += 1;
                }
            }
            (sum, reached)
        })
        .collect();
    let total: f64 = per_source.iter().map(|p| p.0).sum();
    let reached: u64 = per_source.iter().map(|p| p.1).sum();
    let ordered_pairs = (n as u64) * (n as u64 - 1);
    let avg_clustering = (0..n).map(|s| onnela_clustering(g, s)).sum::<f64>() / n as f64;
    Ok(GraphStats {
        avg_shortest_path: if reached > 0 { total / reached as f64 } else { 0.0 },
        avg_clustering,
        avg_degree: 2.0 * g.edge_count() as f64 / n as f64,
        unreachable_pairs: ordered_pairs - reached,
    })
}
