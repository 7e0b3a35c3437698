use ndarray::Array1;
use rand::Rng;

use crate::error::{Error, Result};
use crate::seed;

/// `max(0, -y (s_i - s_j) + margin)` with `y` the sign of the true order.
/// Pairs tied in the target contribute 0.
pub fn margin_ranking_loss(s_i: f64, s_j: f64, true_i: f64, true_j: f64, margin: f64) -> f64 {
    let y = if true_i > true_j {
        1.0
    } else if true_i < true_j {
        -1.0
    } else {
        return 0.0;
    };
    (-y * (s_i - s_j) + margin).max(0.0)
}

/// `pair_factor * edges` ordered pairs `(i, j)`, `i != j`, drawn uniformly
/// with replacement. Each unordered pair is equally likely.
pub fn sample_pairs(edges: usize, pair_factor: usize, seed: u64) -> Result<Vec<(usize, usize)>> {
    if edges < 2 {
        return Err(Error::Empty(format!("pair sampling needs at least 2 edges, got {edges}")));
    }
    let mut rng = seed::rng_from(seed);
    Ok((0..pair_factor * edges)
        .map(|_| {
            let i = rng.random_range(0..edges);
            let mut j = rng.random_range(0..edges - 1);
            if j >= i {
                j += 1;
            }
            (i, j)
        })
        .collect())
}

/// Mean margin loss over `pairs` and its gradient with respect to `scores`.
/// The mean is over all pairs, tied ones included.
pub fn pair_loss(scores: &[f64], labels: &[f64], pairs: &[(usize, usize)], margin: f64) -> (f64, Array1<f64>) {
    let mut grad = Array1::zeros(scores.len());
    if pairs.is_empty() {
        return (0.0, grad);
    }
    let n = pairs.len() as f64;
    let mut total = 0.0;
    for &(i, j) in pairs {
        let l = margin_ranking_loss(scores[i], scores[j], labels[i], labels[j], margin);
        if l > 0.0 {
            total += l;
            let y = if labels[i] > labels[j] { 1.0 } else { -1.0 };
            grad[i] -= y / n;
            grad[j] += y / n;
        }
    }
    (total / n, grad)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_cases() {
        assert!((margin_ranking_loss(1.2, 1.0, 5.0, 1.0, 1.0) - 0.8).abs() < 1e-15);
        assert_eq!(margin_ranking_loss(6.0, 1.0, 5.0, 1.0, 1.0), 0.0);
        assert_eq!(margin_ranking_loss(1.5, 1.0, 1.0, 5.0, 1.0), 1.5);
        assert_eq!(margin_ranking_loss(1.5, 1.0, 2.0, 2.0, 1.0), 0.0);
    }

    #[test]
    fn pair_count_and_distinctness() {
        let pairs = sample_pairs(100, 20, 7).unwrap();
        assert_eq!(pairs.len(), 2000);
        assert!(pairs.iter().all(|&(i, j)| i != j && i < 100 && j < 100));
        assert_eq!(pairs, sample_pairs(100, 20, 7).unwrap());
        assert!(sample_pairs(1, 20, 7).is_err());
    }

    #[test]
    fn gradient_of_mean_loss() {
        let scores = [0.0, 0.5, 3.0];
        let labels = [2.0, 1.0, 1.0];
        let pairs = [(0, 1), (1, 2), (2, 0)];
        let (loss, grad) = pair_loss(&scores, &labels, &pairs, 1.0);
        // (0,1): 1 - (0 - 0.5) = 1.5; (1,2): tied; (2,0): y = -1, 1 + 3 = 4.
        assert!((loss - 5.5 / 3.0).abs() < 1e-15);
        assert_eq!(grad.to_vec(), vec![-2.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0]);
    }
}
