use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ExperimentSpec;
use crate::centrality::{brandes_ebc, read_scores, write_scores_text};
use crate::error::{Error, Result};
use crate::graph::{generate, load_edge_list, save_edge_list, GeneratorConfig, WeightedGraph};

pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Val,
    Test,
}

impl Split {
    pub const ALL: [Split; 3] = [Split::Train, Split::Val, Split::Test];

    pub fn name(self) -> &'static str {
        match self {
            Split::Train => "train",
            Split::Val => "val",
            Split::Test => "test",
        }
    }
}

/// Generated graphs held in memory.
#[derive(Debug, Clone)]
pub struct Dataset {
    pub train: Vec<WeightedGraph>,
    pub val: Vec<WeightedGraph>,
    pub test: Vec<WeightedGraph>,
}

impl Dataset {
    pub fn split(&self, split: Split) -> &[WeightedGraph] {
        match split {
            Split::Train => &self.train,
            Split::Val => &self.val,
            Split::Test => &self.test,
        }
    }
}

fn split_count(spec: &ExperimentSpec, split: Split) -> usize {
    match split {
        Split::Train => spec.counts.train,
        Split::Val => spec.counts.val,
        Split::Test => spec.counts.test,
    }
}

/// Generates every split in memory. Graph `i` of a split depends only on the
/// spec seed, the split and `i`.
pub fn generate_dataset(spec: &ExperimentSpec) -> Result<Dataset> {
    spec.generator.validate()?;
    let make = |split: Split| -> Result<Vec<WeightedGraph>> {
        (0..split_count(spec, split))
            .into_par_iter()
            .map(|i| generate(&spec.graph_config(split, i)))
            .collect()
    };
    Ok(Dataset {
        train: make(Split::Train)?,
        val: make(Split::Val)?,
        test: make(Split::Test)?,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub split: Split,
    pub index: usize,
    /// Edge-list file name relative to the dataset directory.
    pub file: String,
    /// Generator seed that reproduces this graph.
    pub seed: u64,
    pub nodes: usize,
    pub edges: usize,
}

impl ManifestEntry {
    pub fn stem(&self) -> &str {
        self.file.strip_suffix(".edges").unwrap_or(&self.file)
    }
}

/// Index of a generated dataset directory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub seed: u64,
    pub generator: GeneratorConfig,
    pub entries: Vec<ManifestEntry>,
}

impl Manifest {
    /// Rebuilds the graph of `entry` from its recorded seed.
    pub fn regenerate(&self, entry: &ManifestEntry) -> Result<WeightedGraph> {
        generate(&self.generator.clone().with_seed(entry.seed))
    }

    pub fn entries(&self, split: Split) -> impl Iterator<Item = &ManifestEntry> {
        self.entries.iter().filter(move |e| e.split == split)
    }
}

/// Writes every graph as `<split>-<index>.edges` plus `manifest.json`.
pub fn cmd_gen(spec: &ExperimentSpec, dir: impl AsRef<Path>) -> Result<Manifest> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir)?;
    let data = generate_dataset(spec)?;
    let mut entries = Vec::new();
    for split in Split::ALL {
        for (i, g) in data.split(split).iter().enumerate() {
            let file = format!("{}-{i:04}.edges", split.name());
            save_edge_list(g, dir.join(&file))?;
            entries.push(ManifestEntry {
                split,
                index: i,
                file,
                seed: spec.graph_config(split, i).seed,
                nodes: g.node_count(),
                edges: g.edge_count(),
            });
        }
    }
    let manifest = Manifest {
        seed: spec.seed,
        generator: spec.generator.clone(),
        entries,
    };
    fs::write(dir.join(MANIFEST_FILE), serde_json::to_string_pretty(&manifest)?)?;
    Ok(manifest)
}

pub fn load_manifest(dir: impl AsRef<Path>) -> Result<Manifest> {
    let text = fs::read_to_string(dir.as_ref().join(MANIFEST_FILE))?;
    Ok(serde_json::from_str(&text)?)
}

/// Label file of a manifest entry: `<stem>.ebc` next to the edge list.
pub fn label_path(dir: impl AsRef<Path>, entry: &ManifestEntry) -> PathBuf {
    dir.as_ref().join(format!("{}.ebc", entry.stem()))
}

/// Reads a `u v score` file and aligns it with the edges of `g`.
pub fn load_labels(g: &WeightedGraph, path: impl AsRef<Path>) -> Result<Vec<f64>> {
    let records = read_scores(&path)?;
    if records.len() != g.edge_count() {
        return Err(Error::LengthMismatch(records.len(), g.edge_count()));
    }
    let mut out = vec![f64::NAN; g.edge_count()];
    for r in records {
        let id = g.edge_id(r.u, r.v).ok_or_else(|| {
            Error::InvalidConfig(format!(
                "{}: edge ({}, {}) is not in the graph",
                path.as_ref().display(),
                r.u,
                r.v
            ))
        })?;
        out[id.0] = r.score;
    }
    if out.iter().any(|v| v.is_nan()) {
        return Err(Error::InvalidConfig(format!("{}: duplicate edges", path.as_ref().display())));
    }
    Ok(out)
}

/// Computes Brandes labels for every graph in the dataset. Returns the label
/// files in manifest order.
pub fn cmd_exact(dir: impl AsRef<Path>) -> Result<Vec<PathBuf>> {
    let dir = dir.as_ref();
    let manifest = load_manifest(dir)?;
    manifest
        .entries
        .par_iter()
        .map(|entry| {
            let g = load_edge_list(dir.join(&entry.file))?;
            let scores = brandes_ebc(&g)?;
            let out = label_path(dir, entry);
            write_scores_text(&g, scores.values(), &out)?;
            Ok(out)
        })
        .collect()
}

/// A loaded graph with its labels when a label file exists.
#[derive(Debug, Clone)]
pub struct LabeledGraph {
    pub name: String,
    pub graph: WeightedGraph,
    pub labels: Option<Vec<f64>>,
}

pub fn load_split(dir: impl AsRef<Path>, split: Split) -> Result<Vec<LabeledGraph>> {
    let dir = dir.as_ref();
    let manifest = load_manifest(dir)?;
    manifest
        .entries(split)
        .map(|entry| {
            let graph = load_edge_list(dir.join(&entry.file))?;
            let lp = label_path(dir, entry);
            let labels = if lp.exists() { Some(load_labels(&graph, &lp)?) } else { None };
            Ok(LabeledGraph {
                name: entry.stem().to_string(),
                graph,
                labels,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiment::Counts;

    fn tiny_spec() -> ExperimentSpec {
        ExperimentSpec {
            counts: Counts {
                train: 4,
                val: 2,
                test: 2,
            },
            generator: GeneratorConfig::gnm((20, 30), (1.4, 1.6)),
            seed: 3,
            ..ExperimentSpec::desk_scale()
        }
    }

    #[test]
    fn gen_writes_files_and_manifest() {
        let dir = tempfile::tempdir().unwrap();
        let manifest = cmd_gen(&tiny_spec(), dir.path()).unwrap();
        assert_eq!(manifest.entries.len(), 8);
        for e in &manifest.entries {
            let g = load_edge_list(dir.path().join(&e.file)).unwrap();
            assert_eq!(g.edge_count(), e.edges);
            assert_eq!(manifest.regenerate(e).unwrap().edges(), g.edges());
            let ratio = e.edges as f64 / e.nodes as f64;
            assert!((1.4 - 0.05..=1.6 + 0.05).contains(&ratio), "{ratio}");
        }
        assert_eq!(load_manifest(dir.path()).unwrap(), manifest);
    }

    #[test]
    fn exact_labels_are_idempotent_and_loadable() {
        let dir = tempfile::tempdir().unwrap();
        cmd_gen(&tiny_spec(), dir.path()).unwrap();
        let files = cmd_exact(dir.path()).unwrap();
        let first: Vec<String> = files.iter().map(|f| fs::read_to_string(f).unwrap()).collect();
        cmd_exact(dir.path()).unwrap();
        let second: Vec<String> = files.iter().map(|f| fs::read_to_string(f).unwrap()).collect();
        assert_eq!(first, second);

        let train = load_split(dir.path(), Split::Train).unwrap();
        assert_eq!(train.len(), 4);
        for lg in &train {
            let labels = lg.labels.as_ref().unwrap();
            assert_eq!(labels.len(), lg.graph.edge_count());
            assert_eq!(labels, brandes_ebc(&lg.graph).unwrap().values());
        }
    }

    #[test]
    fn in_memory_dataset_matches_files() {
        let spec = tiny_spec();
        let data = generate_dataset(&spec).unwrap();
        let dir = tempfile::tempdir().unwrap();
        cmd_gen(&spec, dir.path()).unwrap();
        let test = load_split(dir.path(), Split::Test).unwrap();
        for (a, b) in data.test.iter().zip(&test) {
            assert_eq!(a.edges().len(), b.graph.edges().len());
            for (x, y) in a.edges().iter().zip(b.graph.edges()) {
                assert_eq!((x.u, x.v), (y.u, y.v));
                assert_eq!(x.weight, y.weight);
            }
        }
    }
}
