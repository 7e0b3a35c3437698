//! Edge adjacency (line graph) matrices and their degree- and
//! weight-normalized variants.
//!
//! All three are stored as symmetric CSR matrices over edge ids. Because the
//! graph is simple, two distinct edges share at most one endpoint, so every
//! nonzero has a unique "connecting node".

use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use ndarray::{Array2, ArrayView2};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

/// Lower clamp on the mean edge weight used as a denominator.
pub const WEIGHT_EPS: f64 = 1e-12;

/// Square CSR matrix with sorted column indices per row.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    dim: usize,
    offsets: Vec<usize>,
    cols: Vec<usize>,
    values: Vec<f64>,
}

impl SparseMatrix {
    /// Builds from `(row, col, value)` triplets; duplicates are not merged.
    pub fn from_triplets(dim: usize, mut triplets: Vec<(usize, usize, f64)>) -> Result<Self> {
        triplets.sort_by_key(|t| (t.0, t.1));
        let mut offsets = vec![0usize; dim + 1];
        for &(r, c, _) in &triplets {
            if r >= dim || c >= dim {
                return Err(Error::Shape(format!("entry ({r}, {c}) outside {dim}x{dim}")));
            }
            offsets[r + 1] += 1;
        }
        for i in 0..dim {
            offsets[i + 1] += offsets[i];
        }
        Ok(Self {
            dim,
            offsets,
            cols: triplets.iter().map(|t| t.1).collect(),
            values: triplets.iter().map(|t| t.2).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    /// `(col, value)` pairs of row `i`.
    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let r = self.offsets[i]..self.offsets[i + 1];
        self.cols[r.clone()].iter().copied().zip(self.values[r].iter().copied())
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let r = self.offsets[i]..self.offsets[i + 1];
        match self.cols[r.clone()].binary_search(&j) {
            Ok(k) => self.values[r.start + k],
            Err(_) => 0.0,
        }
    }

    /// All nonzeros as `(row, col, value)` in row-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.dim).flat_map(move |i| self.row(i).map(move |(j, v)| (i, j, v)))
    }

    pub fn is_symmetric(&self) -> bool {
        self.triplets().all(|(i, j, v)| self.get(j, i) == v)
    }

    pub fn same_pattern(&self, other: &SparseMatrix) -> bool {
        self.dim == other.dim && self.offsets == other.offsets && self.cols == other.cols
    }

    pub fn to_dense(&self) -> Array2<f64> {
        let mut out = Array2::zeros((self.dim, self.dim));
        for (i, j, v) in self.triplets() {
            out[[i, j]] = v;
        }
        out
    }

    /// `self * x` for a dense `x` with `dim` rows.
    pub fn matmul(&self, x: ArrayView2<'_, f64>) -> Array2<f64> {
        assert_eq!(x.nrows(), self.dim, "sparse matmul row mismatch");
        let mut out = Array2::zeros((self.dim, x.ncols()));
        for (i, mut out_row) in out.rows_mut().into_iter().enumerate() {
            for (j, v) in self.row(i) {
                out_row.scaled_add(v, &x.row(j));
            }
        }
        out
    }

    /// `self^T * x`.
    pub fn transpose_matmul(&self, x: ArrayView2<'_, f64>) -> Array2<f64> {
        assert_eq!(x.nrows(), self.dim, "sparse matmul row mismatch");
        let mut out = Array2::zeros((self.dim, x.ncols()));
        for i in 0..self.dim {
            for (j, v) in self.row(i) {
                out.row_mut(j).scaled_add(v, &x.row(i));
            }
        }
        out
    }

    /// Same values with `order[new] = old` relabeling of rows and columns.
    pub fn permuted(&self, order: &[usize]) -> Self {
        let mut inverse = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            inverse[old] = new;
        }
        let t = self
            .triplets()
            .map(|(i, j, v)| (inverse[i], inverse[j], v))
            .collect();
        Self::from_triplets(self.dim, t).expect("permutation keeps indices in range")
    }

    /// Embeds the matrix in the upper-left block of a `capacity` square.
    pub fn zero_padded(&self, capacity: usize) -> Result<Self> {
        if capacity < self.dim {
            return Err(Error::CapacityExceeded {
                edges: self.dim,
                capacity,
            });
        }
        let mut offsets = self.offsets.clone();
        offsets.resize(capacity + 1, self.nnz());
        Ok(Self {
            dim: capacity,
            offsets,
            cols: self.cols.clone(),
            values: self.values.clone(),
        })
    }

    fn map_values(&self, values: Vec<f64>) -> Self {
        Self {
            dim: self.dim,
            offsets: self.offsets.clone(),
            cols: self.cols.clone(),
            values,
        }
    }

    /// Coordinate text dump, one `i j value` line per nonzero.
    pub fn write_coordinate(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut out = BufWriter::new(fs::File::create(path)?);
        writeln!(out, "# {} {} {}", self.dim, self.dim, self.nnz())?;
        for (i, j, v) in self.triplets() {
            writeln!(out, "{i} {j} {v:.16e}")?;
        }
        out.flush()?;
        Ok(())
    }
}

/// 0/1 matrix marking edge pairs that share an endpoint.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeAdjacency {
    matrix: SparseMatrix,
}

impl EdgeAdjacency {
    pub fn matrix(&self) -> &SparseMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> SparseMatrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    /// Divide by the unweighted degree of the connecting node.
    Degree,
    /// Divide by the mean weight of the two edges.
    Weight,
}

/// Reweighted edge adjacency with the same sparsity pattern as its source.
#[derive(Debug, Clone, PartialEq)]
pub struct ModifiedEdgeAdjacency {
    matrix: SparseMatrix,
    normalization: Normalization,
}

impl ModifiedEdgeAdjacency {
    pub fn matrix(&self) -> &SparseMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> SparseMatrix {
        self.matrix
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }
}

pub fn edge_adjacency(g: &WeightedGraph) -> EdgeAdjacency {
    let mut t = Vec::new();
    for v in 0..g.node_count() {
        let inc = g.neighbor_edges(v);
        for (a, &i) in inc.iter().enumerate() {
            for &j in &inc[a + 1..] {
                t.push((i, j, 1.0));
                t.push((j, i, 1.0));
            }
        }
    }
    EdgeAdjacency {
        matrix: SparseMatrix::from_triplets(g.edge_count(), t).expect("edge ids are in range"),
    }
}

fn check_consistent(g: &WeightedGraph, a: &EdgeAdjacency) -> Result<()> {
    if a.dim() != g.edge_count() {
        return Err(Error::Shape(format!(
            "edge adjacency is {}x{}, graph has {} edges",
            a.dim(),
            a.dim(),
            g.edge_count()
        )));
    }
    Ok(())
}

fn connecting_node(g: &WeightedGraph, i: usize, j: usize) -> Result<usize> {
    let (ei, ej) = (g.edges()[i], g.edges()[j]);
    ei.shared_endpoint(&ej).ok_or_else(|| {
        Error::Shape(format!("edges {i} and {j} are marked adjacent but share no node"))
    })
}

/// Degree-normalized adjacency: `a_ij / deg(connecting node)`.
pub fn psi_d(g: &WeightedGraph, a: &EdgeAdjacency) -> Result<ModifiedEdgeAdjacency> {
    check_consistent(g, a)?;
    let mut values = Vec::with_capacity(a.matrix.nnz());
    for (i, j, v) in a.matrix.triplets() {
        let node = connecting_node(g, i, j)?;
        values.push(v / g.degree(node)? as f64);
    }
    Ok(ModifiedEdgeAdjacency {
        matrix: a.matrix.map_values(values),
        normalization: Normalization::Degree,
    })
}

/// Weight-normalized adjacency: `a_ij / max((w_i + w_j) / 2, eps)`.
pub fn psi_w(g: &WeightedGraph, a: &EdgeAdjacency) -> Result<ModifiedEdgeAdjacency> {
    check_consistent(g, a)?;
    let edges = g.edges();
    let mut values = Vec::with_capacity(a.matrix.nnz());
    for (i, j, v) in a.matrix.triplets() {
        connecting_node(g, i, j)?;
        let mean = (edges[i].weight + edges[j].weight) / 2.0;
        values.push(v / mean.max(WEIGHT_EPS));
    }
    Ok(ModifiedEdgeAdjacency {
        matrix: a.matrix.map_values(values),
        normalization: Normalization::Weight,
    })
}
