use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rayon::prelude::*;

use super::{same_length, EbcScores};
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

#[derive(Clone, Copy, PartialEq)]
struct Entry {
    dist: f64,
    node: usize,
}

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        // Min-heap on distance.
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Scratch buffers for one single-source pass, reset lazily.
struct Workspace {
    dist: Vec<f64>,
    sigma: Vec<f64>,
    delta: Vec<f64>,
    settled: Vec<bool>,
    preds: Vec<Vec<(usize, usize)>>,
    order: Vec<usize>,
    touched: Vec<usize>,
    heap: BinaryHeap<Entry>,
}

impl Workspace {
    fn new(n: usize) -> Self {
        Self {
            dist: vec![f64::INFINITY; n],
            sigma: vec![0.0; n],
            delta: vec![0.0; n],
            settled: vec![false; n],
            preds: vec![Vec::new(); n],
            order: Vec::with_capacity(n),
            touched: Vec::with_capacity(n),
            heap: BinaryHeap::new(),
        }
    }

    fn reset(&mut self) {
        for &v in &self.touched {
            self.dist[v] = f64::INFINITY;
            self.sigma[v] = 0.0;
            self.delta[v] = 0.0;
            self.settled[v] = false;
            self.preds[v].clear();
        }
        self.touched.clear();
        self.order.clear();
        self.heap.clear();
    }

    /// Dijkstra from `s` with shortest-path counting, then dependency
    /// accumulation onto edges (ordered pairs with source `s`).
    fn accumulate(&mut self, g: &WeightedGraph, s: usize, ebc: &mut [f64]) {
        self.reset();
        self.dist[s] = 0.0;
        self.sigma[s] = 1.0;
        self.touched.push(s);
        self.heap.push(Entry { dist: 0.0, node: s });

        while let Some(Entry { node: v, .. }) = self.heap.pop() {
            if self.settled[v] {
                continue;
            }
            self.settled[v] = true;
            self.order.push(v);
            let dv = self.dist[v];
            let sv = self.sigma[v];
            let nbrs = g.neighbors(v);
            let ws = g.neighbor_weights(v);
            let eids = g.neighbor_edges(v);
            for i in 0..nbrs.len() {
                let w = nbrs[i];
                if self.settled[w] {
                    continue;
                }
                let alt = dv + ws[i];
                let dw = self.dist[w];
                if dw.is_infinite() {
                    self.touched.push(w);
                }
                if same_length(alt, dw) {
                    self.sigma[w] += sv;
                    self.preds[w].push((v, eids[i]));
                } else if alt < dw {
                    self.dist[w] = alt;
                    self.sigma[w] = sv;
                    self.preds[w].clear();
                    self.preds[w].push((v, eids[i]));
                    self.heap.push(Entry { dist: alt, node: w });
                }
            }
        }

        while let Some(w) = self.order.pop() {
            let coeff = (1.0 + self.delta[w]) / self.sigma[w];
            for k in 0..self.preds[w].len() {
                let (v, eid) = self.preds[w][k];
                let c = self.sigma[v] * coeff;
                ebc[eid] += c;
                self.delta[v] += c;
            }
        }
    }
}

/// Sources are processed in fixed-size blocks whose partial sums are added in
/// block order, so the result does not depend on the thread count.
fn block_size(n: usize) -> usize {
    32usize.max(n.div_ceil(256))
}

/// Weighted Brandes edge betweenness.
pub fn brandes_ebc(g: &WeightedGraph) -> Result<EbcScores> {
    for e in g.edges() {
        if !(e.weight > 0.0 && e.weight.is_finite()) {
            return Err(Error::InvalidWeight {
                u: e.u,
                v: e.v,
                weight: e.weight,
            });
        }
    }
    let n = g.node_count();
    let m = g.edge_count();
    if m == 0 {
        return Ok(EbcScores::new(Vec::new()));
    }
    let bs = block_size(n);
    let blocks: Vec<usize> = (0..n).step_by(bs).collect();
    let partials: Vec<Vec<f64>> = blocks
        .par_iter()
        .map(|&start| {
            let mut ws = Workspace::new(n);
            let mut local = vec![0.0; m];
            for s in start..(start + bs).min(n) {
                ws.accumulate(g, s, &mut local);
            }
            local
        })
        .collect();
    let mut total = vec![0.0; m];
    for part in &partials {
        for (t, p) in total.iter_mut().zip(part) {
            *t += p;
        }
    }
    // Every unordered pair was counted from both endpoints.
    for t in &mut total {
        *t *= 0.5;
    }
    Ok(EbcScores::new(total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EdgeId;

    fn unit(n: usize, edges: &[(usize, usize)]) -> WeightedGraph {
        WeightedGraph::new(n, edges.iter().map(|&(u, v)| (u, v, 1.0))).unwrap()
    }

    #[test]
    fn single_edge() {
        let s = brandes_ebc(&unit(2, &[(0, 1)])).unwrap();
        assert_eq!(s.values(), [1.0]);
    }

    #[test]
    fn triangle_is_symmetric() {
        let s = brandes_ebc(&unit(3, &[(0, 1), (1, 2), (0, 2)])).unwrap();
        assert_eq!(s.values(), [1.0, 1.0, 1.0]);
    }

    #[test]
    fn path_edges_tie() {
        // Pairs {0,1}, {1,2}, {0,2}: each edge carries two of them.
        let s = brandes_ebc(&unit(3, &[(0, 1), (1, 2)])).unwrap();
        assert_eq!(s.values(), [2.0, 2.0]);
    }

    #[test]
    fn four_cycle_splits_opposite_pairs() {
        // Adjacent pair: 1 path. Opposite pairs: 2 paths, half through each
        // edge. Per edge: 1 (own pair) + 2 * 1/2 = 2.
        let s = brandes_ebc(&unit(4, &[(0, 1), (1, 2), (2, 3), (0, 3)])).unwrap();
        for v in s.values() {
            assert!((v - 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn weights_change_routes() {
        // Triangle with one heavy edge: 0-2 traffic goes via node 1.
        let g = WeightedGraph::new(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 5.0)]).unwrap();
        let s = brandes_ebc(&g).unwrap();
        assert_eq!(s.get(g.edge_id(0, 2).unwrap()), 0.0);
        assert_eq!(s.get(g.edge_id(0, 1).unwrap()), 2.0);
    }

    #[test]
    fn disconnected_components_do_not_interact() {
        let s = brandes_ebc(&unit(5, &[(0, 1), (2, 3), (3, 4)])).unwrap();
        assert_eq!(s.values(), [1.0, 2.0, 2.0]);
    }

    #[test]
    fn bridge_dominates_barbell() {
        let mut edges = Vec::new();
        for base in [0, 5] {
            for i in 0..5 {
                for j in i + 1..5 {
                    edges.push((base + i, base + j));
                }
            }
        }
        edges.push((4, 5));
        let g = unit(10, &edges);
        let s = brandes_ebc(&g).unwrap();
        let bridge = g.edge_id(4, 5).unwrap();
        assert_eq!(s.ranking()[0], bridge);
        let top = s.get(bridge);
        for (i, &v) in s.values().iter().enumerate() {
            if EdgeId(i) != bridge {
                assert!(v < top);
            }
        }
    }

    #[test]
    fn empty_graph() {
        let s = brandes_ebc(&WeightedGraph::new(1, []).unwrap()).unwrap();
        assert!(s.is_empty());
    }
}
