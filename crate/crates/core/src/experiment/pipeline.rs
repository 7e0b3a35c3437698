use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use super::dataset::{cmd_exact, cmd_gen, load_split, LabeledGraph, Split};
use super::ExperimentSpec;
use crate::centrality::{brandes_ebc, write_scores_text};
use crate::embed::{embed_edges, write_embedding, EmbeddingMatrix, WalkParams};
use crate::error::{Error, Result};
use crate::gnn::{
    infer_ranking, load_checkpoint, save_checkpoint, train, AdjacencyVariant, EpochRecord, Example, GnnModel,
    GraphInput, Inference,
};
use crate::graph::{load_edge_list, WeightedGraph};

/// A graph with labels and edge features, independent of the adjacency
/// variant so it can feed several models.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub name: String,
    pub graph: WeightedGraph,
    pub labels: Vec<f64>,
    pub features: EmbeddingMatrix,
}

impl LabeledGraph {
    /// Unlabeled entries named `<prefix>-<index>`.
    pub fn from_graphs(graphs: &[WeightedGraph], prefix: &str) -> Vec<LabeledGraph> {
        graphs
            .iter()
            .enumerate()
            .map(|(i, g)| LabeledGraph {
                name: format!("{prefix}-{i:04}"),
                graph: g.clone(),
                labels: None,
            })
            .collect()
    }
}

/// Embeds every graph and fills in missing labels with Brandes. Output order
/// follows the input.
pub fn prepare(graphs: Vec<LabeledGraph>, walk: &WalkParams) -> Result<Vec<Prepared>> {
    graphs
        .into_par_iter()
        .map(|lg| {
            let labels = match lg.labels {
                Some(l) => l,
                None => brandes_ebc(&lg.graph)?.into_values(),
            };
            let features = embed_edges(&lg.graph, walk)?;
            Ok(Prepared {
                name: lg.name,
                graph: lg.graph,
                labels,
                features,
            })
        })
        .collect()
}

pub fn build_examples(prepared: &[Prepared], variant: AdjacencyVariant) -> Result<Vec<Example>> {
    prepared
        .iter()
        .map(|p| Example::new(GraphInput::build(&p.graph, &p.features, variant)?, p.labels.clone()))
        .collect()
}

/// Initializes a model from the spec and trains it on prepared examples.
pub fn train_model(
    spec: &ExperimentSpec,
    train_set: &[Example],
    val_set: &[Example],
    on_epoch: impl FnMut(&EpochRecord) -> Result<()>,
) -> Result<(GnnModel, Vec<EpochRecord>)> {
    let mut model = GnnModel::new(spec.model.clone(), spec.hyper.clone(), spec.resolved_walk(), spec.init_seed())?;
    let log = train(&mut model, train_set, val_set, spec.train_seed(), on_epoch)?;
    Ok((model, log))
}

/// Paths written by [`cmd_train`].
#[derive(Debug, Clone)]
pub struct TrainOutputs {
    pub checkpoint: PathBuf,
    pub log: PathBuf,
    pub dataset: PathBuf,
}

/// Trains on the spec's dataset directory, or on a freshly generated one
/// under `<output_dir>/data`. Writes `model.ckpt` and `train_log.jsonl` to
/// the output directory.
pub fn cmd_train(spec: &ExperimentSpec) -> Result<(GnnModel, Vec<EpochRecord>, TrainOutputs)> {
    spec.validate()?;
    fs::create_dir_all(&spec.output_dir)?;
    let dataset = match &spec.dataset_dir {
        Some(d) => d.clone(),
        None => {
            let d = spec.output_dir.join("data");
            cmd_gen(spec, &d)?;
            cmd_exact(&d)?;
            d
        }
    };
    let walk = spec.resolved_walk();
    let train_set = build_examples(&prepare(load_split(&dataset, Split::Train)?, &walk)?, spec.model.variant)?;
    let val_set = build_examples(&prepare(load_split(&dataset, Split::Val)?, &walk)?, spec.model.variant)?;

    let log_path = spec.output_dir.join("train_log.jsonl");
    let mut log_file = BufWriter::new(fs::File::create(&log_path)?);
    let (model, log) = train_model(spec, &train_set, &val_set, |record| {
        serde_json::to_writer(&mut log_file, record)?;
        writeln!(log_file)?;
        log_file.flush()?;
        Ok(())
    })?;
    let checkpoint = spec.output_dir.join("model.ckpt");
    save_checkpoint(&model, &checkpoint)?;
    Ok((
        model,
        log,
        TrainOutputs {
            checkpoint,
            log: log_path,
            dataset,
        },
    ))
}

/// Ranks the edges of an edge-list file with a saved model and writes
/// `u v score` lines.
pub fn cmd_rank(checkpoint: impl AsRef<Path>, graph: impl AsRef<Path>, out: impl AsRef<Path>) -> Result<Inference> {
    let model = load_checkpoint(checkpoint)?;
    let g = load_edge_list(graph)?;
    let inference = infer_ranking(&model, &g)?;
    write_scores_text(&g, &inference.result.scores, out)?;
    Ok(inference)
}

/// Edge features of an edge-list file in the `rows dim` text layout.
pub fn cmd_embed(graph: impl AsRef<Path>, walk: &WalkParams, out: impl AsRef<Path>) -> Result<EmbeddingMatrix> {
    let g = load_edge_list(graph)?;
    if g.edge_count() == 0 {
        return Err(Error::Empty("graph has no edges".into()));
    }
    let emb = embed_edges(&g, walk)?;
    write_embedding(emb.values(), out)?;
    Ok(emb)
}
