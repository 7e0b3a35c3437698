//! Rank agreement between score vectors and structural statistics of a
//! graph.
//!
//! cargo run --example rank_metrics

use edgerank::graph::{generate, GeneratorConfig};
use edgerank::metrics::{average_ranks, graph_stats, kendall_tau, rank_correlation, spearman_rho};

fn main() -> edgerank::Result<()> {
    let truth = [9.0, 7.5, 7.5, 4.0, 3.0, 1.0];
    let guess = [8.0, 8.5, 6.0, 2.0, 3.5, 0.5];
    println!("ranks of truth: {:?}", average_ranks(&truth));
    println!("kendall tau  {:.4}", kendall_tau(&guess, &truth)?);
    println!("spearman rho {:.4}", spearman_rho(&guess, &truth)?);

    let reversed: Vec<f64> = truth.iter().map(|v| -v).collect();
    let r = rank_correlation(&reversed, &truth)?;
    println!("reversed: tau {:.4}, rho {:.4}", r.tau, r.rho);

    for (name, config) in [
        ("gnp", GeneratorConfig::gnp((300, 300))),
        ("gnm", GeneratorConfig::gnm((300, 300), (1.4, 1.6))),
        ("ws", GeneratorConfig::watts_strogatz((300, 300), 4, 0.5)),
    ] {
        let g = generate(&config.with_seed(1))?;
        let s = graph_stats(&g)?;
        println!(
            "{name}: degree {:.2}, weighted path {:.2}, clustering {:.4}",
            s.avg_degree, s.avg_shortest_path, s.avg_clustering
        );
    }
    Ok(())
}
