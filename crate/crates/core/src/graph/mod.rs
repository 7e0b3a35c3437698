//! Undirected weighted simple graphs with a CSR neighbor index.

mod generate;
mod io;
mod perturb;

pub use generate::{generate, Family, GeneratorConfig};
pub use io::{load_edge_list, parse_edge_list, save_edge_list, write_edge_list};
pub use perturb::{perturb_topology, perturb_weights};

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

/// Stable index of an edge in `[0, |E|)`.
///
/// Edges are stored sorted by their canonical `(u, v)` pair with `u < v`, so
/// the index and the endpoint pair determine each other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub usize);

impl EdgeId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
}

impl Edge {
    /// The endpoint shared with `other`, if any.
    pub fn shared_endpoint(&self, other: &Edge) -> Option<usize> {
        if self.u == other.u || self.u == other.v {
            Some(self.u)
        } else if self.v == other.u || self.v == other.v {
            Some(self.v)
        } else {
            None
        }
    }
}

/// Undirected, simple, positively weighted graph.
///
/// Immutable after construction. The CSR index lists the neighbors of every
/// node in ascending order together with the weight and id of the connecting
/// edge.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    node_count: usize,
    edges: Vec<Edge>,
    offsets: Vec<usize>,
    neighbors: Vec<usize>,
    neighbor_weights: Vec<f64>,
    neighbor_edges: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl WeightedGraph {
    /// Builds a graph from `(u, v, w)` triples. Endpoint order is irrelevant.
    pub fn new<I>(node_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let mut list = Vec::new();
        let mut seen = HashSet::new();
        for (a, b, w) in edges {
            for node in [a, b] {
                if node >= node_count {
                    return Err(Error::InvalidNode { node, node_count });
                }
            }
            if a == b {
                return Err(Error::SelfLoop(a.to_string()));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if !(w > 0.0 && w.is_finite()) {
                return Err(Error::InvalidWeight { u, v, weight: w });
            }
            if !seen.insert((u, v)) {
                return Err(Error::DuplicateEdge(u.to_string(), v.to_string()));
            }
            list.push(Edge { u, v, weight: w });
        }
        list.sort_by_key(|e| (e.u, e.v));
        Ok(Self::from_sorted(node_count, list))
    }

    fn from_sorted(node_count: usize, edges: Vec<Edge>) -> Self {
        let mut counts = vec![0usize; node_count + 1];
        for e in &edges {
            counts[e.u + 1] += 1;
            counts[e.v + 1] += 1;
        }
        for i in 0..node_count {
            counts[i + 1] += counts[i];
        }
        let offsets = counts;
        let mut cursor = offsets.clone();
        let total = 2 * edges.len();
        let mut neighbors = vec![0usize; total];
        let mut neighbor_weights = vec![0.0; total];
        let mut neighbor_edges = vec![0usize; total];
        for (id, e) in edges.iter().enumerate() {
            for (a, b) in [(e.u, e.v), (e.v, e.u)] {
                let slot = cursor[a];
                neighbors[slot] = b;
                neighbor_weights[slot] = e.weight;
                neighbor_edges[slot] = id;
                cursor[a] += 1;
            }
        }
        // Sort each row by neighbor id so adjacency tests can binary search.
        for v in 0..node_count {
            let range = offsets[v]..offsets[v + 1];
            let mut row: Vec<(usize, f64, usize)> = range
                .clone()
                .map(|i| (neighbors[i], neighbor_weights[i], neighbor_edges[i]))
                .collect();
            row.sort_by_key(|r| r.0);
            for (slot, (n, w, id)) in range.zip(row) {
                neighbors[slot] = n;
                neighbor_weights[slot] = w;
                neighbor_edges[slot] = id;
            }
        }
        Self {
            node_count,
            edges,
            offsets,
            neighbors,
            neighbor_weights,
            neighbor_edges,
            labels: None,
        }
    }

    /// Attaches original node labels (one per node) for reporting.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.node_count {
            return Err(Error::LengthMismatch(labels.len(), self.node_count));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Label for `v`: the original label when one was loaded, else the id.
    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> Edge {
        self.edges[id.0]
    }

    pub fn weights(&self) -> Vec<f64> {
        self.edges.iter().map(|e| e.weight).collect()
    }

    /// Neighbor ids of `v`, ascending.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Weights of the edges to `neighbors(v)`, in the same order.
    pub fn neighbor_weights(&self, v: usize) -> &[f64] {
        &self.neighbor_weights[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Edge ids of the edges to `neighbors(v)`, in the same order.
    pub fn neighbor_edges(&self, v: usize) -> &[usize] {
        &self.neighbor_edges[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.node_count && self.neighbors(u).binary_search(&v).is_ok()
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<EdgeId> {
        if u >= self.node_count {
            return None;
        }
        let row = self.neighbors(u);
        row.binary_search(&v)
            .ok()
            .map(|i| EdgeId(self.neighbor_edges(u)[i]))
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<f64> {
        if u >= self.node_count {
            return None;
        }
        let row = self.neighbors(u);
        row.binary_search(&v)
            .ok()
            .map(|i| self.neighbor_weights(u)[i])
    }

    fn check_node(&self, v: usize) -> Result<()> {
        if v < self.node_count {
            Ok(())
        } else {
            Err(Error::InvalidNode {
                node: v,
                node_count: self.node_count,
            })
        }
    }

    /// Number of neighbors of `v`.
    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check_node(v)?;
        Ok(self.offsets[v + 1] - self.offsets[v])
    }

    /// Sum of the weights of the edges incident to `v`.
    pub fn weighted_degree(&self, v: usize) -> Result<f64> {
        self.check_node(v)?;
        Ok(self.neighbor_weights(v).iter().sum())
    }

    pub fn max_degree(&self) -> usize {
        (0..self.node_count)
            .map(|v| self.offsets[v + 1] - self.offsets[v])
            .max()
            .unwrap_or(0)
    }

    /// Same topology with new weights, given in `EdgeId` order.
    pub fn with_weights(&self, weights: &[f64]) -> Result<Self> {
        if weights.len() != self.edges.len() {
            return Err(Error::LengthMismatch(weights.len(), self.edges.len()));
        }
        let edges = self
            .edges
            .iter()
            .zip(weights)
            .map(|(e, &w)| (e.u, e.v, w));
        let mut g = Self::new(self.node_count, edges)?;
        g.labels = self.labels.clone();
        Ok(g)
    }

    /// Rebuilds the canonical edge list from the CSR index alone.
    pub fn edges_from_csr(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.edges.len());
        for u in 0..self.node_count {
            for (&v, &w) in self.neighbors(u).iter().zip(self.neighbor_weights(u)) {
                if u < v {
                    out.push(Edge { u, v, weight: w });
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star3() -> WeightedGraph {
        WeightedGraph::new(4, [(0, 1, 1.0), (0, 2, 2.0), (0, 3, 3.0)]).unwrap()
    }

    #[test]
    fn lookups_are_symmetric() {
        let g = WeightedGraph::new(3, [(2, 0, 4.5), (1, 2, 1.0)]).unwrap();
        assert_eq!(g.weight(0, 2), Some(4.5));
        assert_eq!(g.weight(2, 0), Some(4.5));
        assert_eq!(g.edge_id(2, 0), g.edge_id(0, 2));
        assert_eq!(g.edge(EdgeId(0)), Edge { u: 0, v: 2, weight: 4.5 });
        assert_eq!(g.weight(0, 1), None);
    }

    #[test]
    fn rejects_self_loops_duplicates_and_bad_weights() {
        assert!(matches!(
            WeightedGraph::new(3, [(1, 1, 1.0)]),
            Err(Error::SelfLoop(_))
        ));
        assert!(matches!(
            WeightedGraph::new(3, [(0, 1, 1.0), (1, 0, 2.0)]),
            Err(Error::DuplicateEdge(..))
        ));
        assert!(matches!(
            WeightedGraph::new(3, [(0, 1, 0.0)]),
            Err(Error::InvalidWeight { .. })
        ));
        assert!(matches!(
            WeightedGraph::new(3, [(0, 1, f64::NAN)]),
            Err(Error::InvalidWeight { .. })
        ));
        assert!(matches!(
            WeightedGraph::new(2, [(0, 2, 1.0)]),
            Err(Error::InvalidNode { .. })
        ));
    }

    #[test]
    fn degrees() {
        let g = star3();
        assert_eq!(g.degree(0).unwrap(), 3);
        assert_eq!(g.weighted_degree(0).unwrap(), 6.0);
        assert_eq!(g.degree(1).unwrap(), 1);
        assert!(g.degree(4).is_err());

        let isolated = WeightedGraph::new(2, []).unwrap();
        assert_eq!(isolated.degree(1).unwrap(), 0);
        assert_eq!(isolated.weighted_degree(1).unwrap(), 0.0);
    }

    #[test]
    fn csr_round_trips_edge_list() {
        let g = WeightedGraph::new(5, [(4, 0, 1.0), (1, 3, 2.0), (0, 1, 3.0), (2, 4, 0.5)])
            .unwrap();
        assert_eq!(g.edges_from_csr(), g.edges());
        for v in 0..5 {
            assert!(g.neighbors(v).windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn shared_endpoint() {
        let a = Edge { u: 0, v: 1, weight: 1.0 };
        let b = Edge { u: 1, v: 2, weight: 1.0 };
        let c = Edge { u: 2, v: 3, weight: 1.0 };
        assert_eq!(a.shared_endpoint(&b), Some(1));
        assert_eq!(a.shared_endpoint(&c), None);
    }
}
