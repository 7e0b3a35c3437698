//! The on-disk workflow: generate a dataset, label it, train, rank a test
//! graph and evaluate the ranking against its labels.
//!
//! cargo run --release --example file_pipeline -- [output dir]

use std::path::PathBuf;

use edgerank::experiment::{cmd_eval, cmd_exact, cmd_gen, cmd_rank, cmd_train, label_path, ExperimentSpec, Split};
use edgerank::graph::GeneratorConfig;

fn main() -> edgerank::Result<()> {
    let root = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("edgerank-pipeline"));
    let mut spec = ExperimentSpec::desk_scale();
    spec.generator = GeneratorConfig::gnp((50, 80));
    spec.counts.train = 20;
    spec.counts.val = 3;
    spec.counts.test = 3;
    spec.hyper.epochs = 5;
    spec.output_dir = root.join("run");
    spec.dataset_dir = Some(root.join("data"));

    let manifest = cmd_gen(&spec, root.join("data"))?;
    cmd_exact(root.join("data"))?;
    std::fs::write(root.join("spec.toml"), spec.to_toml()?)?;
    let (_, log, outputs) = cmd_train(&spec)?;
    println!("trained {} epochs, final loss {:.4}", log.len(), log.last().map_or(f64::NAN, |r| r.loss));

    let mut predictions = Vec::new();
    let mut labels = Vec::new();
    for entry in manifest.entries(Split::Test) {
        let pred = root.join(format!("{}.pred", entry.stem()));
        cmd_rank(&outputs.checkpoint, root.join("data").join(&entry.file), &pred)?;
        predictions.push(pred);
        labels.push(label_path(root.join("data"), entry));
    }
    let report = cmd_eval(&predictions, &labels)?;
    println!("{}", report.to_json()?);
    println!("files under {}", root.display());
    Ok(())
}
