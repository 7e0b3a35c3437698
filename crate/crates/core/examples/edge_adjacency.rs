//! The star and the triangle share one edge adjacency matrix; the degree
//! scaled version tells them apart.
//!
//! cargo run --example edge_adjacency

use edgerank::graph::WeightedGraph;
use edgerank::line::{edge_adjacency, psi_d, psi_w};

fn show(name: &str, m: &ndarray::Array2<f64>) {
    println!("{name}:");
    for row in m.rows() {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:6.3}")).collect();
        println!("  [{}]", cells.join(" "));
    }
}

fn main() -> edgerank::Result<()> {
    let star = WeightedGraph::new(4, [(0, 1, 1.0), (0, 2, 2.0), (0, 3, 4.0)])?;
    let triangle = WeightedGraph::new(3, [(0, 1, 1.0), (1, 2, 2.0), (0, 2, 4.0)])?;

    for (name, g) in [("star", &star), ("triangle", &triangle)] {
        println!("== {name}");
        let a = edge_adjacency(g);
        show("edge adjacency", &a.matrix().to_dense());
        show("degree scaled", &psi_d(g, &a)?.matrix().to_dense());
        show("weight scaled", &psi_w(g, &a)?.matrix().to_dense());
    }
    let same = edge_adjacency(&star).matrix().to_dense() == edge_adjacency(&triangle).matrix().to_dense();
    println!("identical edge adjacency: {same}");
    Ok(())
}
