use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{load_edge_list, perturb_topology, perturb_weights, save_edge_list, WeightedGraph};
use crate::seed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PerturbMode {
    /// Rescale every weight, keep the topology.
    Weights,
    /// Delete or add edges, then rescale weights.
    Topology,
}

/// How to derive snapshots from a base network.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerturbSpec {
    pub mode: PerturbMode,
    pub r_range: (f64, f64),
    /// Target edge counts for topology mode; defaults to deleting up to 1%.
    pub edge_range: Option<(usize, usize)>,
    pub count: usize,
    pub seed: u64,
}

impl PerturbSpec {
    /// Weight rescaling by `U[0.8, 1.2]`.
    pub fn weights(count: usize, seed: u64) -> Self {
        Self {
            mode: PerturbMode::Weights,
            r_range: (0.8, 1.2),
            edge_range: None,
            count,
            seed,
        }
    }

    /// Up to 1% of edges deleted, then weight rescaling by `U[0.8, 1.2]`.
    pub fn topology(count: usize, seed: u64) -> Self {
        Self {
            mode: PerturbMode::Topology,
            ..Self::weights(count, seed)
        }
    }

    pub fn edge_range_for(&self, g: &WeightedGraph) -> (usize, usize) {
        let m = g.edge_count();
        self.edge_range.unwrap_or((m - m / 100, m))
    }

    /// Snapshot `index` of `g`.
    pub fn apply(&self, g: &WeightedGraph, index: usize) -> Result<WeightedGraph> {
        let s = seed::derive(self.seed, "snapshot", index as u64);
        match self.mode {
            PerturbMode::Weights => perturb_weights(g, self.r_range, s),
            PerturbMode::Topology => perturb_topology(g, self.edge_range_for(g), self.r_range, s),
        }
    }
}

/// Writes `count` snapshots of the graph in `base` as `snapshot-<i>.edges`.
pub fn cmd_perturb(base: impl AsRef<Path>, spec: &PerturbSpec, out_dir: impl AsRef<Path>) -> Result<Vec<PathBuf>> {
    if spec.count == 0 {
        return Err(Error::InvalidConfig("snapshot count must be positive".into()));
    }
    let g = load_edge_list(base)?;
    let out_dir = out_dir.as_ref();
    fs::create_dir_all(out_dir)?;
    (0..spec.count)
        .map(|i| {
            let path = out_dir.join(format!("snapshot-{i:04}.edges"));
            save_edge_list(&spec.apply(&g, i)?, &path)?;
            Ok(path)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GeneratorConfig};

    #[test]
    fn snapshots_stay_in_range() {
        let g = generate(&GeneratorConfig::gnm((300, 300), (1.5, 1.5)).with_seed(2)).unwrap();
        let spec = PerturbSpec::topology(5, 1);
        assert_eq!(spec.edge_range_for(&g), (450 - 4, 450));
        for i in 0..5 {
            let s = spec.apply(&g, i).unwrap();
            assert_eq!(s.node_count(), 300);
            assert!((446..=450).contains(&s.edge_count()));
        }
        let w = PerturbSpec::weights(1, 1).apply(&g, 0).unwrap();
        for (a, b) in g.edges().iter().zip(w.edges()) {
            assert!(b.weight >= 0.8 * a.weight - 1e-12 && b.weight <= 1.2 * a.weight + 1e-12);
        }
    }

    #[test]
    fn files_are_written() {
        let dir = tempfile::tempdir().unwrap();
        let g = generate(&GeneratorConfig::gnm((30, 30), (1.5, 1.5)).with_seed(2)).unwrap();
        let base = dir.path().join("base.edges");
        save_edge_list(&g, &base).unwrap();
        let files = cmd_perturb(&base, &PerturbSpec::weights(3, 4), dir.path().join("snaps")).unwrap();
        assert_eq!(files.len(), 3);
        assert_eq!(load_edge_list(&files[2]).unwrap().edge_count(), g.edge_count());
    }
}
