//! Train one model per adjacency variant (or layer count) and compare test
//! scores.
//!
//! cargo run --release --example ablation -- [adjacency-variant|layers|dims] [train graphs] [epochs]

use edgerank::experiment::{run_ablation, AblationAxis, ExperimentSpec};
use edgerank::graph::GeneratorConfig;

fn main() -> edgerank::Result<()> {
    let mut args = std::env::args().skip(1);
    let axis: AblationAxis = args.next().unwrap_or_else(|| "adjacency-variant".into()).parse()?;
    let mut spec = ExperimentSpec::desk_scale();
    spec.generator = GeneratorConfig::gnm((60, 120), (1.4, 1.6));
    spec.counts.train = args.next().map_or(30, |s| s.parse().expect("train graphs"));
    spec.counts.val = 5;
    spec.counts.test = 10;
    spec.hyper.epochs = args.next().map_or(10, |s| s.parse().expect("epochs"));

    let rows = run_ablation(&spec, axis, &axis.default_settings(), |r| {
        println!("{:>12}  tau {:.3}  rho {:.3}  loss {:.3} -> {:.3}", r.setting, r.tau, r.rho, r.first_loss, r.final_loss);
    })?;
    let best = rows.iter().max_by(|a, b| a.rho.total_cmp(&b.rho)).expect("at least one setting");
    println!("best: {}", best.setting);
    Ok(())
}
