//! Train a small ranking model on generated graphs, score held-out graphs,
//! then round-trip the checkpoint and rank one graph.
//!
//! cargo run --release --example train_and_rank -- [train graphs] [epochs]

use edgerank::experiment::{build_examples, evaluate_examples, generate_dataset, prepare, train_model};
use edgerank::experiment::{ExperimentSpec, LabeledGraph};
use edgerank::gnn::{infer_ranking, load_checkpoint, save_checkpoint};
use edgerank::graph::GeneratorConfig;

fn main() -> edgerank::Result<()> {
    let mut args = std::env::args().skip(1);
    let mut spec = ExperimentSpec::desk_scale();
    spec.counts.train = args.next().map_or(40, |s| s.parse().expect("train graphs"));
    spec.counts.val = 5;
    spec.counts.test = 10;
    spec.hyper.epochs = args.next().map_or(10, |s| s.parse().expect("epochs"));
    spec.generator = GeneratorConfig::gnp((60, 120));

    let data = generate_dataset(&spec)?;
    let walk = spec.resolved_walk();
    let train = prepare(LabeledGraph::from_graphs(&data.train, "train"), &walk)?;
    let val = prepare(LabeledGraph::from_graphs(&data.val, "val"), &walk)?;
    let test = prepare(LabeledGraph::from_graphs(&data.test, "test"), &walk)?;

    let variant = spec.model.variant;
    let (model, _) = train_model(
        &spec,
        &build_examples(&train, variant)?,
        &build_examples(&val, variant)?,
        |r| {
            println!(
                "epoch {:>2}  loss {:.4}  train rho {:.3}  val rho {:.3}",
                r.epoch, r.loss, r.train_rho, r.val_rho
            );
            Ok(())
        },
    )?;

    let names: Vec<String> = test.iter().map(|p| p.name.clone()).collect();
    let report = evaluate_examples(&model, &build_examples(&test, variant)?, &names)?;
    println!(
        "test: tau {:.3} ± {:.3}, rho {:.3} ± {:.3}",
        report.tau.mean, report.tau.std, report.rho.mean, report.rho.std
    );

    let path = std::env::temp_dir().join("train_and_rank.ckpt");
    save_checkpoint(&model, &path)?;
    let restored = load_checkpoint(&path)?;
    let inf = infer_ranking(&restored, &data.test[0])?;
    let top: Vec<_> = inf.result.ranking.iter().take(5).map(|&id| data.test[0].edge(id)).collect();
    println!("top edges of test-0000 by the restored model:");
    for e in top {
        println!("  ({}, {})", e.u, e.v);
    }
    Ok(())
}
