//! Snapshot perturbations of a base network: random weight rescaling, and
//! edge deletion or addition followed by rescaling.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;

use super::WeightedGraph;
use crate::error::{Error, Result};
use crate::seed;

fn check_ratio_range((lo, hi): (f64, f64)) -> Result<()> {
    if !(lo > 0.0 && hi >= lo && hi.is_finite()) {
        return Err(Error::InvalidConfig(format!(
            "scaling range [{lo}, {hi}] must be positive and non-empty"
        )));
    }
    Ok(())
}

fn scale_weights<R: Rng>(g: &WeightedGraph, (lo, hi): (f64, f64), rng: &mut R) -> Result<WeightedGraph> {
    let weights: Vec<f64> = g
        .edges()
        .iter()
        .map(|e| {
            let r = if lo == hi { lo } else { rng.random_range(lo..=hi) };
            r * e.weight
        })
        .collect();
    g.with_weights(&weights)
}

/// Multiplies every weight by an independent `r ~ U[r_range]`.
pub fn perturb_weights(g: &WeightedGraph, r_range: (f64, f64), seed: u64) -> Result<WeightedGraph> {
    check_ratio_range(r_range)?;
    let mut rng = seed::rng(seed, "perturb-weights", 0);
    scale_weights(g, r_range, &mut rng)
}

/// Moves the edge count to a target drawn from `U{edge_count_range}`, then
/// rescales weights as [`perturb_weights`] does.
///
/// Deleted edges are chosen uniformly. Added edges join uniformly chosen
/// unconnected node pairs and take a weight drawn from the surviving edges.
pub fn perturb_topology(
    g: &WeightedGraph,
    edge_count_range: (usize, usize),
    r_range: (f64, f64),
    seed: u64,
) -> Result<WeightedGraph> {
    check_ratio_range(r_range)?;
    let (lo, hi) = edge_count_range;
    let n = g.node_count();
    let max_edges = n * n.saturating_sub(1) / 2;
    if lo > hi || lo == 0 || hi > max_edges {
        return Err(Error::InvalidConfig(format!(
            "edge count range {lo}..={hi} invalid for {n} nodes (at most {max_edges} edges, at least 1)"
        )));
    }
    let mut rng = seed::rng(seed, "perturb-topology", 0);
    let target = rng.random_range(lo..=hi);
    let m = g.edge_count();

    let mut kept: Vec<(usize, usize, f64)> = g.edges().iter().map(|e| (e.u, e.v, e.weight)).collect();
    if target < m {
        kept.partial_shuffle(&mut rng, target);
        kept.truncate(target);
    } else if target > m {
        if m == 0 {
            return Err(Error::InvalidConfig(
                "cannot draw weights for added edges from an edgeless graph".into(),
            ));
        }
        let pool: Vec<f64> = kept.iter().map(|e| e.2).collect();
        let mut present: HashSet<(usize, usize)> = kept.iter().map(|e| (e.0, e.1)).collect();
        while kept.len() < target {
            let a = rng.random_range(0..n);
            let b = rng.random_range(0..n);
            if a == b {
                continue;
            }
            let key = (a.min(b), a.max(b));
            if present.insert(key) {
                let w = pool[rng.random_range(0..pool.len())];
                kept.push((key.0, key.1, w));
            }
        }
    }
    let mut out = WeightedGraph::new(n, kept)?;
    if let Some(labels) = g.labels() {
        out = out.with_labels(labels.to_vec())?;
    }
    scale_weights(&out, r_range, &mut rng)
}
