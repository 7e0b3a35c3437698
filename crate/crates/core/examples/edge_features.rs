//! Biased random walks, skip-gram node vectors and averaged edge features.
//!
//! cargo run --release --example edge_features -- [p] [q]

use edgerank::embed::{embed_edges, generate_walks, WalkParams};
use edgerank::graph::{generate, EdgeId, GeneratorConfig};

fn cosine(a: ndarray::ArrayView1<f64>, b: ndarray::ArrayView1<f64>) -> f64 {
    a.dot(&b) / (a.dot(&a).sqrt() * b.dot(&b).sqrt())
}

fn main() -> edgerank::Result<()> {
    let mut args = std::env::args().skip(1);
    let p: f64 = args.next().map_or(1.0, |s| s.parse().expect("p"));
    let q: f64 = args.next().map_or(2.0, |s| s.parse().expect("q"));

    let g = generate(&GeneratorConfig::watts_strogatz((200, 200), 4, 0.1).with_seed(3))?;
    let params = WalkParams {
        p,
        q,
        dim: 32,
        seed: 11,
        ..WalkParams::desk_scale()
    };
    let corpus = generate_walks(&g, &params)?;
    println!("{} walks, first: {:?}", corpus.len(), &corpus.walks[0][..10]);

    let emb = embed_edges(&g, &params)?;
    println!("edge features: {} x {}", emb.rows(), emb.dim());

    // edges sharing an endpoint should look more alike than random pairs
    let x = emb.values();
    let (mut near, mut far, mut n_near, mut n_far) = (0.0, 0.0, 0, 0);
    for i in 0..g.edge_count() {
        for j in (i + 1)..g.edge_count() {
            let c = cosine(x.row(i), x.row(j));
            if g.edge(EdgeId(i)).shared_endpoint(&g.edge(EdgeId(j))).is_some() {
                near += c;
                n_near += 1;
            } else {
                far += c;
                n_far += 1;
            }
        }
    }
    println!(
        "mean cosine: adjacent edges {:.3}, other edges {:.3}",
        near / n_near as f64,
        far / n_far as f64
    );
    Ok(())
}
