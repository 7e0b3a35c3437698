use std::time::Instant;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use super::loss::{pair_loss, sample_pairs};
use super::{Adam, Dropout, GnnModel, GraphInput, RankResult};
use crate::centrality::brandes_ebc;
use crate::embed::embed_edges;
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::metrics::score_agreement;
use crate::seed;

/// Model input of one graph with its exact betweenness labels.
#[derive(Debug, Clone)]
pub struct Example {
    pub input: GraphInput,
    pub labels: Vec<f64>,
}

impl Example {
    pub fn new(input: GraphInput, labels: Vec<f64>) -> Result<Self> {
        if labels.len() != input.edges {
            return Err(Error::LengthMismatch(labels.len(), input.edges));
        }
        Ok(Self { input, labels })
    }

    /// Embeds `g` with the model's walk settings and labels it with Brandes.
    pub fn prepare(g: &WeightedGraph, model: &GnnModel) -> Result<Self> {
        let features = embed_edges(g, &model.walk)?;
        let input = GraphInput::build(g, &features, model.config.variant)?;
        Self::new(input, brandes_ebc(g)?.into_values())
    }

    /// Whether the labels carry any ranking signal.
    pub fn is_informative(&self) -> bool {
        self.labels.len() >= 2 && self.labels.iter().any(|&v| v != self.labels[0])
    }
}

/// One line of the training log.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpochRecord {
    pub epoch: usize,
    pub loss: f64,
    pub train_tau: f64,
    pub train_rho: f64,
    pub val_tau: f64,
    pub val_rho: f64,
    pub seconds: f64,
}

/// Mean Kendall tau and Spearman rho of eval-mode predictions over the
/// examples whose labels are not constant.
pub fn mean_correlation(model: &GnnModel, examples: &[Example]) -> Result<(f64, f64)> {
    let (mut tau, mut rho, mut count) = (0.0, 0.0, 0usize);
    for ex in examples.iter().filter(|e| e.is_informative()) {
        let pred = model.predict(&ex.input)?;
        if let Some(c) = score_agreement(&pred.scores, &ex.labels)? {
            tau += c.tau;
            rho += c.rho;
            count += 1;
        }
    }
    if count == 0 {
        return Ok((0.0, 0.0));
    }
    Ok((tau / count as f64, rho / count as f64))
}

/// Trains for `model.hyper.epochs` epochs with one Adam step per graph.
///
/// Each epoch visits the training graphs in a seeded random order; every
/// visit draws fresh pairs and dropout masks. `val` is only monitored.
/// `on_epoch` sees each record as it is produced.
pub fn train(
    model: &mut GnnModel,
    train: &[Example],
    val: &[Example],
    seed: u64,
    mut on_epoch: impl FnMut(&EpochRecord) -> Result<()>,
) -> Result<Vec<EpochRecord>> {
    model.hyper.validate()?;
    let usable: Vec<usize> = (0..train.len()).filter(|&i| train[i].input.edges >= 2).collect();
    if usable.is_empty() {
        return Err(Error::Empty("no training graph has two or more edges".into()));
    }
    let mut adam = Adam::new(&model.params, &model.hyper);
    let mut log = Vec::with_capacity(model.hyper.epochs);
    let mut order = usable.clone();

    for epoch in 0..model.hyper.epochs {
        let start = Instant::now();
        order.shuffle(&mut seed::rng(seed, "graph-order", epoch as u64));
        let mut loss_sum = 0.0;
        for &gi in &order {
            let ex = &train[gi];
            let key = (epoch * train.len() + gi) as u64;
            let pairs = sample_pairs(ex.input.edges, model.hyper.pair_factor, seed::derive(seed, "pairs", key))?;
            let mut rng = seed::rng(seed, "dropout", key);
            let pass = model.forward(&ex.input, Dropout::Sample(&mut rng))?;
            let scores = pass.scores.as_slice().expect("contiguous scores");
            let (loss, d_real) = pair_loss(&scores[..ex.input.edges], &ex.labels, &pairs, model.hyper.margin);
            if !loss.is_finite() {
                return Err(Error::NonFiniteLoss { epoch, graph: gi, loss });
            }
            let mut d_scores = ndarray::Array1::zeros(pass.scores.len());
            d_scores.slice_mut(ndarray::s![..ex.input.edges]).assign(&d_real);
            let grads = model.backward(&ex.input, &pass, &d_scores)?;
            adam.update(&mut model.params, &grads);
            loss_sum += loss;
        }
        let (train_tau, train_rho) = mean_correlation(model, train)?;
        let (val_tau, val_rho) = mean_correlation(model, val)?;
        let record = EpochRecord {
            epoch: epoch + 1,
            loss: loss_sum / order.len() as f64,
            train_tau,
            train_rho,
            val_tau,
            val_rho,
            seconds: start.elapsed().as_secs_f64(),
        };
        on_epoch(&record)?;
        log.push(record);
    }
    Ok(log)
}

/// Ranking of one graph with a wall-clock split between feature
/// construction and the model (adjacency transforms plus forward pass).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Inference {
    pub result: RankResult,
    pub embed_seconds: f64,
    pub gnn_seconds: f64,
}

pub fn infer_ranking(model: &GnnModel, g: &WeightedGraph) -> Result<Inference> {
    if g.edge_count() > model.config.capacity {
        return Err(Error::CapacityExceeded {
            edges: g.edge_count(),
            capacity: model.config.capacity,
        });
    }
    let t0 = Instant::now();
    let features = embed_edges(g, &model.walk)?;
    let embed_seconds = t0.elapsed().as_secs_f64();
    let t1 = Instant::now();
    let input = GraphInput::build(g, &features, model.config.variant)?;
    let result = model.predict(&input)?;
    let gnn_seconds = t1.elapsed().as_secs_f64();
    Ok(Inference {
        result,
        embed_seconds,
        gnn_seconds,
    })
}
