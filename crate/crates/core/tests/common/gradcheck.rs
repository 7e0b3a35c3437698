//! Central-difference check of the hand-written backward pass.

use edgerank::embed::{EmbeddingMatrix, WalkParams};
use edgerank::gnn::{pair_loss, sample_pairs, AdjacencyVariant, Dropout, GnnModel, GraphInput, Hyper, ModelConfig};
use edgerank::graph::WeightedGraph;
use edgerank::seed;
use ndarray::Array2;
use rand::Rng;

pub const STEP: f64 = 1e-4;

pub fn six_edge_graph() -> WeightedGraph {
    WeightedGraph::new(
        5,
        [(0, 1, 3.0), (1, 2, 1.5), (2, 0, 7.0), (2, 3, 2.0), (3, 4, 5.0), (1, 4, 4.0)],
    )
    .unwrap()
}

pub fn setup(variant: AdjacencyVariant) -> (GnnModel, GraphInput, Vec<f64>) {
    let (d, h) = (6, 8);
    let config = ModelConfig {
        input_dim: d,
        hidden_dim: h,
        layers: 5,
        capacity: 16,
        variant,
    };
    let walk = WalkParams {
        dim: d,
        ..WalkParams::default()
    };
    let mut model = GnnModel::new(config, Hyper::default(), walk, 21).unwrap();
    // Nonzero biases so every bias gradient path is exercised.
    let mut rng = seed::rng(4, "bias", 0);
    for (name, mut t) in model.params.tensors_mut() {
        if name.contains("bias") {
            t.mapv_inplace(|_| rng.random_range(-0.3..0.3));
        }
    }
    let g = six_edge_graph();
    let feats = Array2::from_shape_simple_fn((6, d), || rng.random_range(-1.0..1.0));
    let input = GraphInput::build(&g, &EmbeddingMatrix::new(feats).unwrap(), variant).unwrap();
    let labels = vec![5.0, 1.0, 3.5, 2.0, 4.0, 0.5];
    (model, input, labels)
}

pub fn loss(model: &GnnModel, input: &GraphInput, labels: &[f64], pairs: &[(usize, usize)], masks: &[Array2<f64>]) -> f64 {
    let dropout = if masks.is_empty() { Dropout::Off } else { Dropout::Fixed(masks) };
    let pass = model.forward(input, dropout).unwrap();
    pair_loss(pass.scores.as_slice().unwrap(), labels, pairs, 1.0).0
}

/// Largest relative error between analytic and central-difference gradients
/// over each tensor, with the denominator floored at 1e-6.
pub fn check(model: &GnnModel, input: &GraphInput, labels: &[f64], masks: &[Array2<f64>]) -> Vec<(String, f64)> {
    let pairs = sample_pairs(6, 20, 99).unwrap();
    let dropout = if masks.is_empty() { Dropout::Off } else { Dropout::Fixed(masks) };
    let pass = model.forward(input, dropout).unwrap();
    let (_, d_scores) = pair_loss(pass.scores.as_slice().unwrap(), labels, &pairs, 1.0);
    let grads = model.backward(input, &pass, &d_scores).unwrap();

    let mut report = Vec::new();
    let analytic = grads.tensors();
    for (ti, (name, g)) in analytic.iter().enumerate() {
        let mut worst = 0.0f64;
        for (flat, &a) in g.iter().enumerate() {
            let mut plus = model.clone();
            let mut minus = model.clone();
            bump(&mut plus, ti, flat, STEP);
            bump(&mut minus, ti, flat, -STEP);
            let numeric = (loss(&plus, input, labels, &pairs, masks) - loss(&minus, input, labels, &pairs, masks))
                / (2.0 * STEP);
            let denom = a.abs().max(numeric.abs()).max(1e-6);
            worst = worst.max((a - numeric).abs() / denom);
        }
        report.push((name.clone(), worst));
    }
    report
}

pub fn bump(model: &mut GnnModel, tensor: usize, flat: usize, delta: f64) {
    let mut ts = model.params.tensors_mut();
    let t = &mut ts[tensor].1;
    *t.iter_mut().nth(flat).unwrap() += delta;
}
