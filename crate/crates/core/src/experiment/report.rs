use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::centrality::{brandes_ebc, read_scores};
use crate::error::{Error, Result};
use crate::gnn::{infer_ranking, Example, GnnModel};
use crate::graph::WeightedGraph;
use crate::metrics::score_agreement;

/// Mean and population standard deviation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub mean: f64,
    pub std: f64,
}

impl Summary {
    pub fn of(values: &[f64]) -> Self {
        if values.is_empty() {
            return Self { mean: 0.0, std: 0.0 };
        }
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
        Self { mean, std: var.sqrt() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphMetrics {
    pub name: String,
    pub edges: usize,
    pub tau: f64,
    pub rho: f64,
}

/// Summed wall-clock seconds over the evaluated graphs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
pub struct Timing {
    pub brandes_seconds: f64,
    pub embed_seconds: f64,
    pub gnn_seconds: f64,
}

/// Per-graph and aggregate ranking agreement. Graphs whose labels are
/// constant are listed in `skipped` rather than scored.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub graphs: Vec<GraphMetrics>,
    pub tau: Summary,
    pub rho: Summary,
    pub skipped: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timing: Option<Timing>,
}

impl MetricsReport {
    fn from_pairs<'a>(items: impl Iterator<Item = (String, &'a [f64], &'a [f64])>) -> Result<Self> {
        let mut graphs = Vec::new();
        let mut skipped = Vec::new();
        for (name, pred, labels) in items {
            match score_agreement(pred, labels)? {
                Some(c) => graphs.push(GraphMetrics {
                    name,
                    edges: labels.len(),
                    tau: c.tau,
                    rho: c.rho,
                }),
                None => skipped.push(name),
            }
        }
        let taus: Vec<f64> = graphs.iter().map(|g| g.tau).collect();
        let rhos: Vec<f64> = graphs.iter().map(|g| g.rho).collect();
        Ok(Self {
            tau: Summary::of(&taus),
            rho: Summary::of(&rhos),
            graphs,
            skipped,
            timing: None,
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Scores prepared examples in eval mode.
pub fn evaluate_examples(model: &GnnModel, examples: &[Example], names: &[String]) -> Result<MetricsReport> {
    if names.len() != examples.len() {
        return Err(Error::LengthMismatch(names.len(), examples.len()));
    }
    let preds: Vec<Vec<f64>> = examples
        .iter()
        .map(|ex| Ok(model.predict(&ex.input)?.scores))
        .collect::<Result<_>>()?;
    MetricsReport::from_pairs(
        names
            .iter()
            .zip(&preds)
            .zip(examples)
            .map(|((n, p), ex)| (n.clone(), p.as_slice(), ex.labels.as_slice())),
    )
}

/// Full inference (features, transforms, forward) and exact Brandes on each
/// graph, with timings.
pub fn evaluate(model: &GnnModel, graphs: &[(String, WeightedGraph)]) -> Result<MetricsReport> {
    let mut timing = Timing::default();
    let mut preds = Vec::with_capacity(graphs.len());
    let mut labels = Vec::with_capacity(graphs.len());
    for (_, g) in graphs {
        let t = Instant::now();
        labels.push(brandes_ebc(g)?.into_values());
        timing.brandes_seconds += t.elapsed().as_secs_f64();
        let inf = infer_ranking(model, g)?;
        timing.embed_seconds += inf.embed_seconds;
        timing.gnn_seconds += inf.gnn_seconds;
        preds.push(inf.result.scores);
    }
    let mut report = MetricsReport::from_pairs(
        graphs
            .iter()
            .zip(&preds)
            .zip(&labels)
            .map(|(((n, _), p), l)| (n.clone(), p.as_slice(), l.as_slice())),
    )?;
    report.timing = Some(timing);
    Ok(report)
}

fn aligned(pred: &Path, label: &Path) -> Result<(Vec<f64>, Vec<f64>)> {
    let p = read_scores(pred)?;
    let mut l = read_scores(label)?;
    if p.len() != l.len() {
        return Err(Error::LengthMismatch(p.len(), l.len()));
    }
    let key = |u: usize, v: usize| (u.min(v), u.max(v));
    l.sort_by_key(|r| key(r.u, r.v));
    let mut out_p = Vec::with_capacity(p.len());
    let mut out_l = Vec::with_capacity(p.len());
    for r in &p {
        let k = key(r.u, r.v);
        let i = l
            .binary_search_by_key(&k, |x| key(x.u, x.v))
            .map_err(|_| Error::InvalidConfig(format!("{}: edge {k:?} has no label", pred.display())))?;
        out_p.push(r.score);
        out_l.push(l[i].score);
    }
    Ok((out_p, out_l))
}

/// Compares prediction files with label files, paired by position; edges
/// are matched by endpoints.
pub fn cmd_eval<P: AsRef<Path>, L: AsRef<Path>>(predictions: &[P], labels: &[L]) -> Result<MetricsReport> {
    if predictions.len() != labels.len() {
        return Err(Error::LengthMismatch(predictions.len(), labels.len()));
    }
    let pairs: Vec<(String, Vec<f64>, Vec<f64>)> = predictions
        .iter()
        .zip(labels)
        .map(|(p, l)| {
            let (a, b) = aligned(p.as_ref(), l.as_ref())?;
            Ok((p.as_ref().display().to_string(), a, b))
        })
        .collect::<Result<_>>()?;
    MetricsReport::from_pairs(pairs.iter().map(|(n, a, b)| (n.clone(), a.as_slice(), b.as_slice())))
}
