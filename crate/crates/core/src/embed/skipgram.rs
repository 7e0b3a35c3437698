//! Skip-gram with negative sampling over a walk corpus.

use ndarray::Array2;
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;

use super::{WalkCorpus, WalkParams};
use crate::error::{Error, Result};
use crate::seed;

/// Trained node vectors and the mean loss of every epoch.
#[derive(Debug, Clone)]
pub struct SkipGram {
    pub embeddings: Array2<f64>,
    pub epoch_losses: Vec<f64>,
}

/// `(center, context)` pairs of one walk for a context radius.
pub fn context_pairs(walk: &[usize], radius: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, &center) in walk.iter().enumerate() {
        let lo = i.saturating_sub(radius);
        let hi = (i + radius).min(walk.len() - 1);
        for (j, &ctx) in walk.iter().enumerate().take(hi + 1).skip(lo) {
            if j != i {
                out.push((center, ctx));
            }
        }
    }
    out
}

fn sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

/// -ln(sigmoid(x)), stable for large |x|.
fn neg_log_sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        (-x).exp().ln_1p()
    } else {
        -x + x.exp().ln_1p()
    }
}

/// Plain single-threaded SGD over the corpus in order, with the learning
/// rate decaying linearly to 1e-4 of its start value. Negatives are drawn
/// from the corpus unigram distribution raised to 3/4.
pub fn train_skipgram(corpus: &WalkCorpus, node_count: usize, params: &WalkParams) -> Result<SkipGram> {
    params.validate()?;
    let radius = params.radius();
    let dim = params.dim;

    let mut counts = vec![0.0f64; node_count];
    let mut positions = 0usize;
    for w in &corpus.walks {
        for &v in w {
            if v >= node_count {
                return Err(Error::InvalidNode { node: v, node_count });
            }
            counts[v] += 1.0;
        }
        if w.len() > 1 {
            positions += w.len();
        }
    }
    if positions == 0 {
        return Err(Error::Empty("walk corpus has no context pairs".into()));
    }
    let noise = WeightedIndex::new(counts.iter().map(|c| c.powf(0.75)))
        .map_err(|e| Error::Empty(format!("negative sampling table: {e}")))?;

    let mut rng = seed::rng(params.seed, "skipgram", 0);
    let scale = 0.5 / dim as f64;
    let mut input: Vec<f64> = (0..node_count * dim)
        .map(|_| rng.random_range(-scale..scale))
        .collect();
    let mut output = vec![0.0f64; node_count * dim];
    let mut grad = vec![0.0f64; dim];

    let total_steps = (positions * params.sgns_epochs) as f64;
    let mut step = 0usize;
    let mut epoch_losses = Vec::with_capacity(params.sgns_epochs);

    for _ in 0..params.sgns_epochs {
        let mut loss = 0.0;
        let mut pairs = 0usize;
        for walk in &corpus.walks {
            if walk.len() < 2 {
                continue;
            }
            for (i, &center) in walk.iter().enumerate() {
                let lr = params.sgns_lr * (1.0 - step as f64 / total_steps).max(1e-4);
                step += 1;
                let lo = i.saturating_sub(radius);
                let hi = (i + radius).min(walk.len() - 1);
                for (j, &ctx) in walk.iter().enumerate().take(hi + 1).skip(lo) {
                    if j == i {
                        continue;
                    }
                    pairs += 1;
                    grad.iter_mut().for_each(|g| *g = 0.0);
                    let c = &mut input[center * dim..(center + 1) * dim];
                    for k in 0..=params.negative_samples {
                        let (target, label) = if k == 0 {
                            (ctx, 1.0)
                        } else {
                            let t = noise.sample(&mut rng);
                            if t == ctx {
                                continue;
                            }
                            (t, 0.0)
                        };
                        let o = &mut output[target * dim..(target + 1) * dim];
                        let f: f64 = c.iter().zip(o.iter()).map(|(a, b)| a * b).sum();
                        loss += if label > 0.0 { neg_log_sigmoid(f) } else { neg_log_sigmoid(-f) };
                        let g = (label - sigmoid(f)) * lr;
                        for d in 0..dim {
                            grad[d] += g * o[d];
                            o[d] += g * c[d];
                        }
                    }
                    for d in 0..dim {
                        c[d] += grad[d];
                    }
                }
            }
        }
        epoch_losses.push(loss / pairs.max(1) as f64);
    }

    let embeddings = Array2::from_shape_vec((node_count, dim), input)
        .map_err(|e| Error::Shape(e.to_string()))?;
    Ok(SkipGram {
        embeddings,
        epoch_losses,
    })
}
