use std::collections::BTreeMap;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::dataset::{generate_dataset, LabeledGraph};
use super::pipeline::{build_examples, prepare, train_model, Prepared};
use super::report::evaluate_examples;
use super::ExperimentSpec;
use crate::error::{Error, Result};
use crate::gnn::AdjacencyVariant;

/// Hyperparameter swept by [`run_ablation`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AblationAxis {
    /// Number of message passing layers.
    Layers,
    /// Embedding width, used for both the features and the hidden layers.
    Dims,
    /// Which adjacency each branch uses.
    AdjacencyVariant,
}

impl FromStr for AblationAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "layers" => Ok(Self::Layers),
            "dims" => Ok(Self::Dims),
            "adjacency-variant" | "adjacency" => Ok(Self::AdjacencyVariant),
            _ => Err(Error::InvalidConfig(format!("unknown ablation axis '{s}'"))),
        }
    }
}

impl AblationAxis {
    pub fn default_settings(self) -> Vec<String> {
        let v: Vec<String> = match self {
            Self::Layers => (1..=5).map(|k| k.to_string()).collect(),
            Self::Dims => [16, 32, 64, 128].iter().map(|d| d.to_string()).collect(),
            Self::AdjacencyVariant => AdjacencyVariant::ALL.iter().map(|v| v.name().to_string()).collect(),
        };
        v
    }

    fn apply(self, spec: &ExperimentSpec, setting: &str) -> Result<ExperimentSpec> {
        let mut s = spec.clone();
        let bad = |e: std::num::ParseIntError| Error::InvalidConfig(format!("bad {self:?} setting '{setting}': {e}"));
        match self {
            Self::Layers => s.model.layers = setting.parse().map_err(bad)?,
            Self::Dims => {
                let d: usize = setting.parse().map_err(bad)?;
                s.walk.dim = d;
                s.model.input_dim = d;
                s.model.hidden_dim = d;
            }
            Self::AdjacencyVariant => s.model.variant = setting.parse()?,
        }
        s.validate()?;
        Ok(s)
    }
}

/// Test-set scores of one trained setting.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AblationRow {
    pub setting: String,
    pub tau: f64,
    pub rho: f64,
    pub first_loss: f64,
    pub final_loss: f64,
}

/// Trains one model per setting on a shared generated dataset and scores
/// each on the test split. Labels are computed once; features once per
/// embedding width.
pub fn run_ablation(
    spec: &ExperimentSpec,
    axis: AblationAxis,
    settings: &[String],
    mut progress: impl FnMut(&AblationRow),
) -> Result<Vec<AblationRow>> {
    if settings.is_empty() {
        return Err(Error::InvalidConfig("no ablation settings given".into()));
    }
    let specs: Vec<ExperimentSpec> = settings.iter().map(|s| axis.apply(spec, s)).collect::<Result<_>>()?;
    let data = generate_dataset(spec)?;
    let mut cache: BTreeMap<usize, [Vec<Prepared>; 3]> = BTreeMap::new();
    let mut labels: Option<[Vec<Vec<f64>>; 3]> = None;

    let mut rows = Vec::with_capacity(settings.len());
    for (setting, s) in settings.iter().zip(&specs) {
        if let std::collections::btree_map::Entry::Vacant(slot) = cache.entry(s.walk.dim) {
            let walk = s.resolved_walk();
            let split = |graphs: &[crate::graph::WeightedGraph], prefix: &str, known: Option<&Vec<Vec<f64>>>| {
                let mut items = LabeledGraph::from_graphs(graphs, prefix);
                if let Some(known) = known {
                    for (item, l) in items.iter_mut().zip(known) {
                        item.labels = Some(l.clone());
                    }
                }
                prepare(items, &walk)
            };
            let train = split(&data.train, "train", labels.as_ref().map(|l| &l[0]))?;
            let val = split(&data.val, "val", labels.as_ref().map(|l| &l[1]))?;
            let test = split(&data.test, "test", labels.as_ref().map(|l| &l[2]))?;
            if labels.is_none() {
                let grab = |p: &[Prepared]| p.iter().map(|x| x.labels.clone()).collect::<Vec<_>>();
                labels = Some([grab(&train), grab(&val), grab(&test)]);
            }
            slot.insert([train, val, test]);
        }
        let [train, val, test] = &cache[&s.walk.dim];
        let train_ex = build_examples(train, s.model.variant)?;
        let val_ex = build_examples(val, s.model.variant)?;
        let test_ex = build_examples(test, s.model.variant)?;
        let (model, log) = train_model(s, &train_ex, &val_ex, |_| Ok(()))?;
        let names: Vec<String> = test.iter().map(|p| p.name.clone()).collect();
        let report = evaluate_examples(&model, &test_ex, &names)?;
        let row = AblationRow {
            setting: setting.clone(),
            tau: report.tau.mean,
            rho: report.rho.mean,
            first_loss: log.first().map_or(f64::NAN, |r| r.loss),
            final_loss: log.last().map_or(f64::NAN, |r| r.loss),
        };
        progress(&row);
        rows.push(row);
    }
    Ok(rows)
}

pub fn write_ablation_csv(rows: &[AblationRow], path: impl AsRef<Path>) -> Result<()> {
    let mut out = BufWriter::new(fs::File::create(path)?);
    writeln!(out, "setting,tau,rho,first_loss,final_loss")?;
    for r in rows {
        writeln!(out, "{},{:.6},{:.6},{:.6},{:.6}", r.setting, r.tau, r.rho, r.first_loss, r.final_loss)?;
    }
    out.flush()?;
    Ok(())
}
