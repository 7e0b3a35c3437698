//! Snapshots of a network under weight noise and edge deletion, with the
//! drift of the exact ranking relative to the base.
//!
//! cargo run --release --example perturbation -- [edge list]

use edgerank::centrality::brandes_ebc;
use edgerank::experiment::PerturbSpec;
use edgerank::graph::{generate, load_edge_list, GeneratorConfig, WeightedGraph};
use edgerank::metrics::rank_correlation;

fn main() -> edgerank::Result<()> {
    let base: WeightedGraph = match std::env::args().nth(1) {
        Some(path) => load_edge_list(path)?,
        None => generate(&GeneratorConfig::gnm((400, 400), (1.25, 1.25)).with_seed(5))?,
    };
    println!("base: {} nodes, {} edges", base.node_count(), base.edge_count());
    let base_ebc = brandes_ebc(&base)?;

    let weights = PerturbSpec::weights(3, 1);
    for i in 0..weights.count {
        let g = weights.apply(&base, i)?;
        let r = rank_correlation(brandes_ebc(&g)?.values(), base_ebc.values())?;
        println!("weights snapshot {i}: tau vs base {:.3}, rho {:.3}", r.tau, r.rho);
    }

    let topology = PerturbSpec::topology(3, 2);
    for i in 0..topology.count {
        let g = topology.apply(&base, i)?;
        println!("topology snapshot {i}: {} edges", g.edge_count());
    }
    Ok(())
}
