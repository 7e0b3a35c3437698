//! Second-order biased random walks.
//!
//! Transition probabilities are evaluated on the fly from the CSR rows of
//! the current and previous node; nothing is precomputed. Each walk draws
//! from its own RNG stream keyed by `(start node, walk index)`, so the corpus
//! is independent of how walks are spread across threads.

use rand::Rng;
use rayon::prelude::*;

use super::WalkParams;
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::seed;

/// Walks in `(round, start node)` order: walk `r * |V| + v` starts at `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkCorpus {
    pub walks: Vec<Vec<usize>>,
}

impl WalkCorpus {
    pub fn len(&self) -> usize {
        self.walks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walks.is_empty()
    }
}

fn neighbor_index(g: &WeightedGraph, v: usize, u: usize) -> Result<usize> {
    g.neighbors(v)
        .binary_search(&u)
        .map_err(|_| Error::NotNeighbor { u, v })
}

/// `P(u | v) = w(u, v) / sum_x w(x, v)`.
pub fn first_order_prob(g: &WeightedGraph, v: usize, u: usize) -> Result<f64> {
    g.degree(v)?;
    if g.neighbors(v).is_empty() {
        return Err(Error::IsolatedNode(v));
    }
    let i = neighbor_index(g, v, u)?;
    Ok(g.neighbor_weights(v)[i] / g.weighted_degree(v)?)
}

/// `P(u | v, t)` with bias `1/p` for returning to `t`, `1` for nodes adjacent
/// to `t` and `1/q` otherwise, times `w(u, v)`, normalized over `N(v)`.
pub fn second_order_prob(g: &WeightedGraph, t: usize, v: usize, u: usize, p: f64, q: f64) -> Result<f64> {
    g.degree(v)?;
    g.degree(t)?;
    neighbor_index(g, v, t)?;
    let i = neighbor_index(g, v, u)?;
    let mut buf = Vec::with_capacity(g.degree(v)?);
    let total = BiasedWalker::fill_weights(g, Some(t), v, p, q, &mut buf);
    Ok(buf[i] / total)
}

/// Walk sampler holding one scratch row of unnormalized transition weights.
pub struct BiasedWalker<'g> {
    graph: &'g WeightedGraph,
    p: f64,
    q: f64,
    scratch: Vec<f64>,
}

impl<'g> BiasedWalker<'g> {
    pub fn new(graph: &'g WeightedGraph, p: f64, q: f64) -> Self {
        Self {
            graph,
            p,
            q,
            scratch: Vec::with_capacity(graph.max_degree()),
        }
    }

    /// Size of the per-walk auxiliary buffer.
    pub fn scratch_capacity(&self) -> usize {
        self.scratch.capacity()
    }

    /// Writes `alpha(t, x) * w(x, v)` for each neighbor `x` of `v` (CSR
    /// order) and returns the sum. `t = None` gives first-order weights.
    fn fill_weights(g: &WeightedGraph, t: Option<usize>, v: usize, p: f64, q: f64, buf: &mut Vec<f64>) -> f64 {
        buf.clear();
        let mut total = 0.0;
        match t {
            None => {
                for &w in g.neighbor_weights(v) {
                    buf.push(w);
                    total += w;
                }
            }
            Some(t) => {
                let t_row = g.neighbors(t);
                for (&x, &w) in g.neighbors(v).iter().zip(g.neighbor_weights(v)) {
                    let alpha = if x == t {
                        1.0 / p
                    } else if t_row.binary_search(&x).is_ok() {
                        1.0
                    } else {
                        1.0 / q
                    };
                    let b = alpha * w;
                    buf.push(b);
                    total += b;
                }
            }
        }
        total
    }

    /// Next node after `v` (previous node `t`), or `None` if `v` is isolated.
    pub fn step<R: Rng>(&mut self, t: Option<usize>, v: usize, rng: &mut R) -> Option<usize> {
        let total = Self::fill_weights(self.graph, t, v, self.p, self.q, &mut self.scratch);
        if self.scratch.is_empty() {
            return None;
        }
        let mut r = rng.random::<f64>() * total;
        let nbrs = self.graph.neighbors(v);
        for (i, &b) in self.scratch.iter().enumerate() {
            if r < b {
                return Some(nbrs[i]);
            }
            r -= b;
        }
        Some(nbrs[nbrs.len() - 1])
    }

    pub fn walk<R: Rng>(&mut self, start: usize, length: usize, rng: &mut R) -> Vec<usize> {
        let mut out = Vec::with_capacity(length);
        out.push(start);
        let mut prev = None;
        let mut cur = start;
        while out.len() < length {
            match self.step(prev, cur, rng) {
                Some(next) => {
                    out.push(next);
                    prev = Some(cur);
                    cur = next;
                }
                None => break,
            }
        }
        out
    }
}

/// `walks_per_node` walks from every node, in parallel.
pub fn generate_walks(g: &WeightedGraph, params: &WalkParams) -> Result<WalkCorpus> {
    params.validate()?;
    let n = g.node_count();
    let total = n * params.walks_per_node;
    let walks = (0..total)
        .into_par_iter()
        .map_init(
            || BiasedWalker::new(g, params.p, params.q),
            |walker, k| {
                let (round, start) = (k / n, k % n);
                let key = (start * params.walks_per_node + round) as u64;
                let mut rng = seed::rng(params.seed, "walk", key);
                walker.walk(start, params.walk_length, &mut rng)
            },
        )
        .collect();
    Ok(WalkCorpus { walks })
}
