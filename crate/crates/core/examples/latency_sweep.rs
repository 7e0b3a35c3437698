//! Exact computation time against model inference time as graphs grow.
//!
//! cargo run --release --example latency_sweep -- [sizes, comma separated]

use edgerank::embed::WalkParams;
use edgerank::experiment::run_bench;
use edgerank::gnn::{GnnModel, Hyper, ModelConfig};
use edgerank::graph::GeneratorConfig;

fn main() -> edgerank::Result<()> {
    let sizes: Vec<usize> = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "200,500,1000,2000".into())
        .split(',')
        .map(|s| s.trim().parse().expect("size"))
        .collect();
    let generator = GeneratorConfig::gnm((0, 0), (1.5, 1.5));
    let config = ModelConfig {
        capacity: sizes.iter().max().copied().unwrap_or(0) * 2,
        ..ModelConfig::desk_scale()
    };
    // timing does not depend on the trained values
    let model = GnnModel::new(config, Hyper::default(), WalkParams::desk_scale(), 0)?;
    let rows = run_bench(&sizes, 3, &generator, &model, 0)?;
    println!("{:>6} {:>7} {:>10} {:>10} {:>10} {:>8}", "n", "m", "brandes", "features", "model", "ratio");
    for r in rows {
        println!(
            "{:>6} {:>7} {:>10.4} {:>10.4} {:>10.4} {:>8.3}",
            r.n,
            r.m,
            r.brandes_s,
            r.embed_s,
            r.gnn_s,
            r.ratio()
        );
    }
    Ok(())
}
