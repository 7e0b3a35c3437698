use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Kendall tau-a and Spearman rho of one prediction against its target.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RankCorrelation {
    pub tau: f64,
    pub rho: f64,
    pub n: usize,
}

fn check(x: &[f64], y: &[f64]) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    if x.len() < 2 {
        return Err(Error::Empty(format!("rank correlation needs n >= 2, got {}", x.len())));
    }
    if x.iter().chain(y).any(|v| !v.is_finite()) {
        return Err(Error::InvalidConfig("rank correlation input is not finite".into()));
    }
    Ok(())
}

/// Sum of t(t-1)/2 over runs of equal values in a sorted sequence.
fn tied_pairs<T: PartialEq>(sorted: impl Iterator<Item = T>) -> u64 {
    let mut total = 0u64;
    let mut run = 0u64;
    let mut prev: Option<T> = None;
    for v in sorted {
        if prev.as_ref() == Some(&v) {
            run += 1;
        } else {
            total += run * (run + 1) / 2;
            run = 0;
        }
        prev = Some(v);
    }
    total + run * (run + 1) / 2
}

/// Counts pairs `i < j` with `v[i] > v[j]` while merge-sorting `v`.
fn count_inversions(v: &mut [f64], buf: &mut [f64]) -> u64 {
    let n = v.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut swaps = {
        let (a, b) = v.split_at_mut(mid);
        let (ba, bb) = buf.split_at_mut(mid);
        count_inversions(a, ba) + count_inversions(b, bb)
    };
    let (mut i, mut j, mut k) = (0, mid, 0);
    while i < mid && j < n {
        if v[j] < v[i] {
            buf[k] = v[j];
            swaps += (mid - i) as u64;
            j += 1;
        } else {
            buf[k] = v[i];
            i += 1;
        }
        k += 1;
    }
    buf[k..k + mid - i].copy_from_slice(&v[i..mid]);
    k += mid - i;
    buf[k..k + n - j].copy_from_slice(&v[j..n]);
    v.copy_from_slice(&buf[..n]);
    swaps
}

/// Kendall tau-a: `(Nc - Nd) / (n(n-1)/2)`, where pairs tied in either input
/// count as neither concordant nor discordant. O(n log n).
pub fn kendall_tau(x: &[f64], y: &[f64]) -> Result<f64> {
    check(x, y)?;
    let n = x.len();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| x[a].total_cmp(&x[b]).then(y[a].total_cmp(&y[b])));

    let x_ties = tied_pairs(idx.iter().map(|&i| x[i].to_bits()));
    let joint_ties = tied_pairs(idx.iter().map(|&i| (x[i].to_bits(), y[i].to_bits())));

    let mut ys: Vec<f64> = idx.iter().map(|&i| y[i]).collect();
    let mut buf = vec![0.0; n];
    let discordant = count_inversions(&mut ys, &mut buf);
    // `ys` is now sorted.
    let y_ties = tied_pairs(ys.iter().map(|v| v.to_bits()));

    let total = (n as u64) * (n as u64 - 1) / 2;
    let net = total as i128 - x_ties as i128 - y_ties as i128 + joint_ties as i128
        - 2 * discordant as i128;
    Ok(net as f64 / total as f64)
}

/// 1-based ranks with ties sharing their average rank.
pub fn average_ranks(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| x[a].total_cmp(&x[b]));
    let mut ranks = vec![0.0; n];
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && x[idx[end]] == x[idx[start]] {
            end += 1;
        }
        let avg = (start + end + 1) as f64 / 2.0;
        for &i in &idx[start..end] {
            ranks[i] = avg;
        }
        start = end;
    }
    ranks
}

/// Spearman rho: Pearson correlation of average ranks.
pub fn spearman_rho(x: &[f64], y: &[f64]) -> Result<f64> {
    check(x, y)?;
    let rx = average_ranks(x);
    let ry = average_ranks(y);
    let n = x.len() as f64;
    // Mean rank is (n + 1) / 2 regardless of ties.
    let mean = (n + 1.0) / 2.0;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in rx.iter().zip(&ry) {
        let (da, db) = (a - mean, b - mean);
        sxy += da * db;
        sxx += da * da;
        syy += db * db;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::ZeroVariance);
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

pub fn rank_correlation(x: &[f64], y: &[f64]) -> Result<RankCorrelation> {
    Ok(RankCorrelation {
        tau: kendall_tau(x, y)?,
        rho: spearman_rho(x, y)?,
        n: x.len(),
    })
}

/// Correlation of predicted scores with target values for evaluation.
///
/// Returns `None` when the target has fewer than two values or no spread,
/// since no ranking can be scored against it. Constant predictions carry no
/// ordering and get `rho = 0`.
pub fn score_agreement(predicted: &[f64], target: &[f64]) -> Result<Option<RankCorrelation>> {
    if predicted.len() != target.len() {
        return Err(Error::LengthMismatch(predicted.len(), target.len()));
    }
    if target.len() < 2 || target.iter().all(|&v| v == target[0]) {
        return Ok(None);
    }
    let tau = kendall_tau(predicted, target)?;
    let rho = match spearman_rho(predicted, target) {
        Ok(r) => r,
        Err(Error::ZeroVariance) => 0.0,
        Err(e) => return Err(e),
    };
    Ok(Some(RankCorrelation {
        tau,
        rho,
        n: target.len(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_reversal() {
        let x = [3.0, 1.0, 4.0, 1.5, 9.0, 2.6];
        assert_eq!(kendall_tau(&x, &x).unwrap(), 1.0);
        assert_eq!(spearman_rho(&x, &x).unwrap(), 1.0);
        let neg: Vec<f64> = x.iter().map(|v| -v).collect();
        assert_eq!(kendall_tau(&x, &neg).unwrap(), -1.0);
        assert_eq!(spearman_rho(&x, &neg).unwrap(), -1.0);
    }

    #[test]
    fn one_swap() {
        // Pairs: 6 total, only (2,3) discordant.
        let x = [1.0, 2.0, 3.0, 4.0];
        let y = [1.0, 3.0, 2.0, 4.0];
        assert_eq!(kendall_tau(&x, &y).unwrap(), 4.0 / 6.0);
        // d = (0, 1, -1, 0): 1 - 6*2/(4*15) = 0.8
        assert!((spearman_rho(&x, &y).unwrap() - 0.8).abs() < 1e-15);
    }

    #[test]
    fn ties_count_as_neither() {
        let x = [1.0, 1.0, 2.0];
        let y = [1.0, 2.0, 3.0];
        // (0,1) tied in x; (0,2), (1,2) concordant.
        assert_eq!(kendall_tau(&x, &y).unwrap(), 2.0 / 3.0);
        assert_eq!(average_ranks(&x), [1.5, 1.5, 3.0]);
    }

    #[test]
    fn errors() {
        assert!(matches!(kendall_tau(&[1.0], &[1.0]), Err(Error::Empty(_))));
        assert!(matches!(kendall_tau(&[1.0, 2.0], &[1.0]), Err(Error::LengthMismatch(2, 1))));
        assert!(matches!(spearman_rho(&[1.0, 1.0], &[1.0, 2.0]), Err(Error::ZeroVariance)));
        assert!(kendall_tau(&[1.0, f64::NAN], &[1.0, 2.0]).is_err());
    }

    #[test]
    fn agreement_handles_degenerate_inputs() {
        assert_eq!(score_agreement(&[1.0, 2.0], &[3.0, 3.0]).unwrap(), None);
        let r = score_agreement(&[1.0, 1.0, 1.0], &[1.0, 2.0, 3.0]).unwrap().unwrap();
        assert_eq!((r.tau, r.rho, r.n), (0.0, 0.0, 3));
        let r = score_agreement(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]).unwrap().unwrap();
        assert_eq!((r.tau, r.rho), (1.0, 1.0));
    }
}
