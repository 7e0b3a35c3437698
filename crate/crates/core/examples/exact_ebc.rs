//! Exact edge betweenness on a random weighted graph, checked against path
//! enumeration on a small one.
//!
//! cargo run --release --example exact_ebc -- [nodes] [seed]

use std::time::Instant;

use edgerank::centrality::{brandes_ebc, brute_force_ebc, write_scores_text};
use edgerank::graph::{generate, GeneratorConfig};

fn main() -> edgerank::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(500, |s| s.parse().expect("nodes"));
    let seed: u64 = args.next().map_or(7, |s| s.parse().expect("seed"));

    let tiny = generate(&GeneratorConfig::gnm((10, 10), (1.5, 1.5)).with_seed(seed))?;
    let fast = brandes_ebc(&tiny)?;
    let slow = brute_force_ebc(&tiny)?;
    let worst = fast
        .values()
        .iter()
        .zip(slow.values())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    println!("10-node graph: largest gap to path enumeration {worst:.2e}");

    let g = generate(&GeneratorConfig::gnp((n, n)).with_seed(seed))?;
    let t = Instant::now();
    let ebc = brandes_ebc(&g)?;
    println!(
        "{} nodes, {} edges: Brandes in {:.3}s",
        g.node_count(),
        g.edge_count(),
        t.elapsed().as_secs_f64()
    );
    println!("top edges:");
    for id in ebc.ranking().into_iter().take(5) {
        let e = g.edge(id);
        println!("  ({:>4}, {:>4})  w={:>7.3}  ebc={:.1}", e.u, e.v, e.weight, ebc.get(id));
    }

    let out = std::env::temp_dir().join("exact_ebc.txt");
    write_scores_text(&g, ebc.values(), &out)?;
    println!("scores written to {}", out.display());
    Ok(())
}
