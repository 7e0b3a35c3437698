mod common;

use edgerank::embed::{EmbeddingMatrix, WalkParams};
use edgerank::gnn::{
    margin_ranking_loss, pair_loss, sample_pairs, AdjacencyVariant, Dropout, GnnModel, GraphInput, Head, Hyper,
    ModelConfig,
};
use edgerank::graph::{Family, WeightedGraph};
use edgerank::seed;
use ndarray::{Array1, Array2};
use rand::seq::SliceRandom;
use rand::Rng;

fn model(d: usize, h: usize, layers: usize, capacity: usize, variant: AdjacencyVariant, init: u64) -> GnnModel {
    let config = ModelConfig {
        input_dim: d,
        hidden_dim: h,
        layers,
        capacity,
        variant,
    };
    let walk = WalkParams {
        dim: d,
        ..WalkParams::default()
    };
    let mut m = GnnModel::new(config, Hyper::default(), walk, init).unwrap();
    let mut rng = seed::rng(init, "bias", 0);
    for (name, mut t) in m.params.tensors_mut() {
        if name.contains("bias") {
            t.mapv_inplace(|_| rng.random_range(-0.5..0.5));
        }
    }
    m
}

fn random_input(g: &WeightedGraph, d: usize, variant: AdjacencyVariant, s: u64) -> GraphInput {
    let mut rng = seed::rng(s, "features", 0);
    let x = Array2::from_shape_simple_fn((g.edge_count(), d), || rng.random_range(-1.0..1.0));
    GraphInput::build(g, &EmbeddingMatrix::new(x).unwrap(), variant).unwrap()
}

fn naive_matmul(a: &Array2<f64>, b: &Array2<f64>) -> Array2<f64> {
    let mut out = Array2::zeros((a.nrows(), b.ncols()));
    for i in 0..a.nrows() {
        for j in 0..b.ncols() {
            let mut s = 0.0;
            for k in 0..a.ncols() {
                s += a[[i, k]] * b[[k, j]];
            }
            out[[i, j]] = s;
        }
    }
    out
}

fn affine_tanh(x: &Array2<f64>, w: &Array2<f64>, b: &Array1<f64>) -> Array2<f64> {
    let mut z = naive_matmul(x, w);
    for mut row in z.rows_mut() {
        for (v, bias) in row.iter_mut().zip(b) {
            *v = (*v + bias).tanh();
        }
    }
    z
}

fn head_score(head: &Head, h: &Array2<f64>) -> Vec<f64> {
    let t1 = affine_tanh(h, &head.fc1, &head.bias1);
    let t2 = affine_tanh(&t1, &head.fc2, &head.bias2);
    let s = naive_matmul(&t2, &head.fc3);
    (0..h.nrows()).map(|i| s[[i, 0]] + head.bias3[0]).collect()
}

/// One branch with dense matrices and explicit loops.
fn dense_branch(m: &GnnModel, adj: &Array2<f64>, x: &Array2<f64>, masks: Option<&[Array2<f64>]>) -> Vec<f64> {
    let slope = m.hyper.leaky_slope;
    let mut h = x.clone();
    let mut total = vec![0.0; x.nrows()];
    for (k, (w, head)) in m.params.layers.iter().zip(&m.params.heads).enumerate() {
        h = naive_matmul(adj, &naive_matmul(&h, w)).mapv(|v| if v > 0.0 { v } else { slope * v });
        if let Some(masks) = masks {
            h = &h * &masks[k];
        }
        for (t, s) in total.iter_mut().zip(head_score(head, &h)) {
            *t += s.abs();
        }
    }
    total
}

fn dense_scores(m: &GnnModel, input: &GraphInput, masks: Option<&[Array2<f64>]>) -> Vec<f64> {
    let k = m.config.layers;
    let a = dense_branch(m, &input.first.to_dense(), &input.features, masks.map(|ms| &ms[..k]));
    let b = dense_branch(m, &input.second.to_dense(), &input.features, masks.map(|ms| &ms[k..]));
    a.iter().zip(&b).map(|(x, y)| x * y).collect()
}

#[test]
fn forward_matches_dense_reference() {
    for (i, variant) in AdjacencyVariant::ALL.into_iter().enumerate() {
        let g = common::random_graph(Family::Gnm, 40, i as u64);
        let m = model(8, 12, 4, 256, variant, 10 + i as u64);
        let input = random_input(&g, 8, variant, i as u64);
        let pass = m.forward(&input, Dropout::Off).unwrap();
        let reference = dense_scores(&m, &input, None);
        for (a, b) in pass.edge_scores().iter().zip(&reference) {
            assert!((a - b).abs() <= 1e-10 * b.abs().max(1.0), "{variant:?}: {a} vs {b}");
        }

        let mut rng = seed::rng(i as u64, "dropout", 0);
        let sampled = m.forward(&input, Dropout::Sample(&mut rng)).unwrap();
        let masks = sampled.masks();
        let reference = dense_scores(&m, &input, Some(&masks));
        for (a, b) in sampled.edge_scores().iter().zip(&reference) {
            assert!((a - b).abs() <= 1e-10 * b.abs().max(1.0), "{variant:?} with dropout: {a} vs {b}");
        }
    }
}

#[test]
fn dropout_masks_are_zero_or_rescaled() {
    let g = common::random_graph(Family::Gnm, 100, 3);
    let m = model(8, 16, 3, 512, AdjacencyVariant::Both, 1);
    let input = random_input(&g, 8, AdjacencyVariant::Both, 1);
    let mut rng = seed::rng(1, "dropout", 0);
    let masks = m.forward(&input, Dropout::Sample(&mut rng)).unwrap().masks();
    let keep = 1.0 / (1.0 - m.hyper.dropout);
    let (mut zeros, mut total) = (0usize, 0usize);
    for mask in &masks {
        for &v in mask {
            assert!(v == 0.0 || v == keep);
            zeros += usize::from(v == 0.0);
            total += 1;
        }
    }
    let rate = zeros as f64 / total as f64;
    assert!((rate - m.hyper.dropout).abs() < 0.02, "drop rate {rate}");
}

#[test]
fn relabeling_edges_permutes_scores() {
    let g = common::random_graph(Family::WattsStrogatz, 60, 4);
    for variant in AdjacencyVariant::ALL {
        let m = model(8, 8, 5, 512, variant, 2);
        let input = random_input(&g, 8, variant, 5);
        let base = m.forward(&input, Dropout::Off).unwrap().edge_scores();
        let mut rng = seed::rng(3, "perm", 0);
        for _ in 0..5 {
            let mut order: Vec<usize> = (0..g.edge_count()).collect();
            order.shuffle(&mut rng);
            let permuted = m.forward(&input.permuted(&order), Dropout::Off).unwrap().edge_scores();
            // equal up to the summation order inside each adjacency row
            for (new, &old) in order.iter().enumerate() {
                let (a, b) = (permuted[new], base[old]);
                assert!((a - b).abs() <= 1e-12 * b.abs().max(1.0), "{variant:?}: {a} vs {b}");
            }
        }
    }
}

/// Renaming nodes changes the canonical edge order but not what any edge
/// sees, so each edge keeps its score.
#[test]
fn relabeling_nodes_keeps_edge_scores() {
    let g = common::random_graph(Family::Gnm, 50, 9);
    let n = g.node_count();
    let mut rng = seed::rng(9, "nodes", 0);
    let mut rename: Vec<usize> = (0..n).collect();
    rename.shuffle(&mut rng);
    let h = WeightedGraph::new(n, g.edges().iter().map(|e| (rename[e.u], rename[e.v], e.weight))).unwrap();

    let d = 6;
    let x = Array2::from_shape_simple_fn((g.edge_count(), d), || rng.random_range(-1.0..1.0));
    let mut y = Array2::zeros(x.raw_dim());
    let mut image = vec![0; g.edge_count()];
    for (i, e) in g.edges().iter().enumerate() {
        let j = h.edge_id(rename[e.u], rename[e.v]).unwrap().index();
        y.row_mut(j).assign(&x.row(i));
        image[i] = j;
    }
    for variant in AdjacencyVariant::ALL {
        let m = model(d, 8, 3, 512, variant, 4);
        let a = m
            .predict(&GraphInput::build(&g, &EmbeddingMatrix::new(x.clone()).unwrap(), variant).unwrap())
            .unwrap();
        let b = m
            .predict(&GraphInput::build(&h, &EmbeddingMatrix::new(y.clone()).unwrap(), variant).unwrap())
            .unwrap();
        for (i, &j) in image.iter().enumerate() {
            let (s, t) = (a.scores[i], b.scores[j]);
            assert!((s - t).abs() <= 1e-12 * s.abs().max(1.0), "{variant:?}: {s} vs {t}");
        }
    }
}

#[test]
fn padding_does_not_change_real_scores() {
    let g = common::random_graph(Family::Gnp, 200, 2);
    let m = model(8, 8, 5, 1024, AdjacencyVariant::Both, 6);
    let input = random_input(&g, 8, AdjacencyVariant::Both, 6);
    let plain = m.forward(&input, Dropout::Off).unwrap().edge_scores();
    let padded = m.forward(&input.zero_padded(1024).unwrap(), Dropout::Off).unwrap();
    assert_eq!(padded.edge_scores(), plain);
    let small = model(8, 8, 5, g.edge_count() - 1, AdjacencyVariant::Both, 6);
    assert!(small.forward(&input, Dropout::Off).is_err());
}

#[test]
fn xavier_weights_have_expected_spread() {
    let m = model(256, 256, 5, 16, AdjacencyVariant::Both, 12);
    for (name, t) in m.params.tensors() {
        if name.contains("bias") {
            continue;
        }
        let (fan_in, fan_out) = (t.shape()[0], t.shape()[1]);
        let bound = (6.0 / (fan_in + fan_out) as f64).sqrt();
        let n = t.len() as f64;
        let mean = t.iter().sum::<f64>() / n;
        let var = t.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
        let want = 2.0 / (fan_in + fan_out) as f64;
        assert!(t.iter().all(|v| v.abs() <= bound), "{name}");
        if t.len() >= 4096 {
            assert!((var / want - 1.0).abs() < 0.06, "{name}: variance {var} vs {want}");
            assert!(mean.abs() < 4.0 * (want / n).sqrt(), "{name}: mean {mean}");
        }
    }
}

#[test]
fn pair_draws_are_uniform_over_ordered_pairs() {
    let m = 10;
    let pairs = sample_pairs(m, 2000, 31).unwrap();
    assert_eq!(pairs.len(), 20_000);
    let mut counts = vec![0usize; m * m];
    for &(i, j) in &pairs {
        assert_ne!(i, j);
        counts[i * m + j] += 1;
    }
    let cells = m * (m - 1);
    let expect = pairs.len() as f64 / cells as f64;
    let chi2: f64 = (0..m)
        .flat_map(|i| (0..m).filter(move |&j| j != i).map(move |j| i * m + j))
        .map(|c| (counts[c] as f64 - expect).powi(2) / expect)
        .sum();
    // 89 degrees of freedom, 0.999 quantile is about 135
    assert!(chi2 < 135.0, "chi-square {chi2}");
}

#[test]
fn loss_and_gradient_match_pairwise_definition() {
    let mut rng = seed::rng(44, "loss", 0);
    let scores: Vec<f64> = (0..12).map(|_| rng.random_range(-2.0..2.0)).collect();
    let labels: Vec<f64> = (0..12).map(|_| f64::from(rng.random_range(0..4u8))).collect();
    let pairs = sample_pairs(12, 20, 5).unwrap();
    let (loss, grad) = pair_loss(&scores, &labels, &pairs, 1.0);
    let want: f64 = pairs
        .iter()
        .map(|&(i, j)| {
            let y = (labels[i] - labels[j]).signum();
            if labels[i] == labels[j] {
                0.0
            } else {
                (1.0 - y * (scores[i] - scores[j])).max(0.0)
            }
        })
        .sum::<f64>()
        / pairs.len() as f64;
    assert!((loss - want).abs() < 1e-14);
    for k in 0..12 {
        let mut up = scores.clone();
        let mut down = scores.clone();
        up[k] += 1e-6;
        down[k] -= 1e-6;
        let num = (pair_loss(&up, &labels, &pairs, 1.0).0 - pair_loss(&down, &labels, &pairs, 1.0).0) / 2e-6;
        assert!((num - grad[k]).abs() < 1e-6, "edge {k}: {num} vs {}", grad[k]);
    }
    assert_eq!(margin_ranking_loss(3.0, 0.0, 1.0, 0.0, 1.0), 0.0);
    assert_eq!(margin_ranking_loss(0.0, 3.0, 1.0, 0.0, 1.0), 4.0);
}
