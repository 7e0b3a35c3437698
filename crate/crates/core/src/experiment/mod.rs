//! End-to-end experiment steps: dataset generation, exact labels, training,
//! ranking, evaluation, latency sweeps, ablations and perturbed snapshots.
//!
//! Every step is a plain function; the `edgerank` binary is a thin wrapper.

mod ablate;
mod bench;
mod dataset;
mod perturb;
mod pipeline;
mod report;

pub use ablate::{run_ablation, write_ablation_csv, AblationAxis, AblationRow};
pub use bench::{run_bench, write_bench_csv, BenchRow};
pub use dataset::{
    cmd_exact, cmd_gen, generate_dataset, label_path, load_labels, load_manifest, load_split, Dataset, LabeledGraph,
    Manifest, ManifestEntry, Split,
};
pub use perturb::{cmd_perturb, PerturbMode, PerturbSpec};
pub use pipeline::{build_examples, cmd_embed, cmd_rank, cmd_train, prepare, train_model, Prepared, TrainOutputs};
pub use report::{cmd_eval, evaluate, evaluate_examples, GraphMetrics, MetricsReport, Summary, Timing};

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::embed::WalkParams;
use crate::error::{Error, Result};
use crate::gnn::{Hyper, ModelConfig};
use crate::graph::{Family, GeneratorConfig};
use crate::seed;

/// Number of graphs per split.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Counts {
    pub train: usize,
    pub val: usize,
    pub test: usize,
}

impl Default for Counts {
    fn default() -> Self {
        Self {
            train: 200,
            val: 30,
            test: 30,
        }
    }
}

/// Full description of one experiment, loadable from TOML.
///
/// A single `seed` drives everything: graph seeds, walk seed, model
/// initialization and training streams are derived from it by component
/// name (see [`crate::seed::derive`]). The `seed` fields inside `generator`
/// and `walk` are overwritten when the spec is resolved.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentSpec {
    pub seed: u64,
    pub generator: GeneratorConfig,
    /// Existing dataset to use instead of generating one.
    pub dataset_dir: Option<PathBuf>,
    pub output_dir: PathBuf,
    pub counts: Counts,
    pub walk: WalkParams,
    pub model: ModelConfig,
    pub hyper: Hyper,
}

impl Default for ExperimentSpec {
    fn default() -> Self {
        Self::desk_scale()
    }
}

impl ExperimentSpec {
    /// GNP graphs with 100 to 300 nodes, 200/30/30 graphs, 64-dim features.
    pub fn desk_scale() -> Self {
        Self {
            seed: 0,
            generator: GeneratorConfig::gnp((100, 300)),
            dataset_dir: None,
            output_dir: PathBuf::from("runs/default"),
            counts: Counts::default(),
            walk: WalkParams::desk_scale(),
            model: ModelConfig::desk_scale(),
            hyper: Hyper::default(),
        }
    }

    /// Full-size graphs, 1000/100/100 graphs, 256-dim features and a
    /// 10000-edge model.
    pub fn paper_scale(family: Family) -> Self {
        Self {
            generator: GeneratorConfig::paper_scale(family),
            counts: Counts {
                train: 1000,
                val: 100,
                test: 100,
            },
            walk: WalkParams::default(),
            model: ModelConfig::paper_scale(),
            ..Self::desk_scale()
        }
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        Ok(toml::from_str(text)?)
    }

    pub fn from_toml_file(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_toml_str(&fs::read_to_string(path)?)
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string_pretty(self).map_err(|e| Error::InvalidConfig(e.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        let c = self.counts;
        if c.train == 0 || c.val == 0 || c.test == 0 {
            return Err(Error::InvalidConfig(format!("split counts must be positive: {c:?}")));
        }
        if let Some(dir) = &self.dataset_dir {
            if !dir.is_dir() {
                return Err(Error::InvalidConfig(format!("dataset directory {} does not exist", dir.display())));
            }
        }
        if self.walk.dim != self.model.input_dim {
            return Err(Error::InvalidConfig(format!(
                "walk.dim {} must equal model.input_dim {}",
                self.walk.dim, self.model.input_dim
            )));
        }
        self.generator.validate()?;
        self.walk.validate()?;
        self.model.validate()?;
        self.hyper.validate()
    }

    /// Walk settings with the seed derived from the experiment seed.
    pub fn resolved_walk(&self) -> WalkParams {
        WalkParams {
            seed: seed::derive(self.seed, "walk", 0),
            ..self.walk.clone()
        }
    }

    /// Generator settings for graph `index` of `split`.
    pub fn graph_config(&self, split: Split, index: usize) -> GeneratorConfig {
        let component = format!("graph-{}", split.name());
        self.generator.clone().with_seed(seed::derive(self.seed, &component, index as u64))
    }

    pub fn init_seed(&self) -> u64 {
        seed::derive(self.seed, "init", 0)
    }

    pub fn train_seed(&self) -> u64 {
        seed::derive(self.seed, "train", 0)
    }
}
