//! Random graph families: G(n, p), G(n, m) and Watts–Strogatz.

use std::collections::{BTreeSet, HashSet};

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::WeightedGraph;
use crate::error::{Error, Result};
use crate::seed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Gnp,
    Gnm,
    WattsStrogatz,
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gnp" => Ok(Family::Gnp),
            "gnm" => Ok(Family::Gnm),
            "ws" | "watts-strogatz" | "wattsstrogatz" => Ok(Family::WattsStrogatz),
            other => Err(Error::InvalidConfig(format!("unknown graph family `{other}`"))),
        }
    }
}

/// Parameters of a random graph family.
///
/// `node_range` is inclusive and sampled uniformly. For G(n, p) the edge
/// probability is `p_edge` when set, otherwise `mean_degree / (n - 1)`. For
/// G(n, m) the edge count is `round(f * n)` with `f ~ U[edge_factor_range]`.
/// Watts–Strogatz uses `mean_degree` as the (even) lattice degree. Edge
/// weights are i.i.d. uniform over `weight_range`, excluding zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GeneratorConfig {
    pub family: Family,
    pub node_range: (usize, usize),
    pub edge_factor_range: (f64, f64),
    pub p_edge: Option<f64>,
    pub mean_degree: Option<f64>,
    pub p_rewire: f64,
    pub weight_range: (f64, f64),
    pub seed: u64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        Self {
            family: Family::Gnp,
            node_range: (100, 300),
            edge_factor_range: (1.4, 1.6),
            p_edge: None,
            mean_degree: None,
            p_rewire: 0.5,
            weight_range: (0.0, 100.0),
            seed: 0,
        }
    }
}

impl GeneratorConfig {
    pub fn gnp(node_range: (usize, usize)) -> Self {
        Self {
            family: Family::Gnp,
            node_range,
            ..Self::default()
        }
    }

    pub fn gnm(node_range: (usize, usize), edge_factor_range: (f64, f64)) -> Self {
        Self {
            family: Family::Gnm,
            node_range,
            edge_factor_range,
            ..Self::default()
        }
    }

    pub fn watts_strogatz(node_range: (usize, usize), mean_degree: usize, p_rewire: f64) -> Self {
        Self {
            family: Family::WattsStrogatz,
            node_range,
            mean_degree: Some(mean_degree as f64),
            p_rewire,
            ..Self::default()
        }
    }

    /// Full-size generation parameters used for the published experiments.
    pub fn paper_scale(family: Family) -> Self {
        match family {
            Family::Gnp => Self::gnp((1000, 5000)),
            Family::Gnm => Self::gnm((1000, 5000), (1.4, 1.6)),
            Family::WattsStrogatz => Self::watts_strogatz((2000, 4000), 4, 0.5),
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_weight_range(mut self, lo: f64, hi: f64) -> Self {
        self.weight_range = (lo, hi);
        self
    }

    fn ws_degree(&self) -> Result<usize> {
        let k = self.mean_degree.unwrap_or(4.0);
        if k < 0.0 || k.fract() != 0.0 || !(k as usize).is_multiple_of(2) {
            return Err(Error::InvalidConfig(format!(
                "Watts-Strogatz mean degree must be an even integer, got {k}"
            )));
        }
        Ok(k as usize)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        let (nlo, nhi) = self.node_range;
        if nlo > nhi {
            return bad(format!("empty node range {nlo}..={nhi}"));
        }
        if nlo < 2 {
            return bad("graphs need at least 2 nodes".into());
        }
        let (wlo, whi) = self.weight_range;
        if !(wlo >= 0.0 && whi >= wlo && whi > 0.0 && whi.is_finite()) {
            return bad(format!("invalid weight range [{wlo}, {whi}]"));
        }
        if !(0.0..=1.0).contains(&self.p_rewire) {
            return bad(format!("rewiring probability {} outside [0, 1]", self.p_rewire));
        }
        if let Some(p) = self.p_edge {
            if !(0.0..=1.0).contains(&p) {
                return bad(format!("edge probability {p} outside [0, 1]"));
            }
        }
        match self.family {
            Family::Gnp => {
                if self.p_edge.is_none() {
                    let c = self.mean_degree.unwrap_or(1.2);
                    if !(c >= 0.0 && c <= (nlo - 1) as f64) {
                        return bad(format!("mean degree {c} infeasible for {nlo} nodes"));
                    }
                }
            }
            Family::Gnm => {
                let (flo, fhi) = self.edge_factor_range;
                if !(flo >= 0.0 && fhi >= flo) {
                    return bad(format!("invalid edge factor range [{flo}, {fhi}]"));
                }
            }
            Family::WattsStrogatz => {
                let k = self.ws_degree()?;
                if k >= nlo {
                    return bad(format!("lattice degree {k} needs more than {nlo} nodes"));
                }
            }
        }
        Ok(())
    }
}

/// Generates one graph. Deterministic in `config` (including its seed).
pub fn generate(config: &GeneratorConfig) -> Result<WeightedGraph> {
    config.validate()?;
    let mut rng = seed::rng(config.seed, "generate", 0);
    let (nlo, nhi) = config.node_range;
    let n = rng.random_range(nlo..=nhi);

    let mut pairs = match config.family {
        Family::Gnp => {
            let p = config
                .p_edge
                .unwrap_or_else(|| config.mean_degree.unwrap_or(1.2) / (n as f64 - 1.0));
            gnp_pairs(n, p, &mut rng)
        }
        Family::Gnm => {
            let (flo, fhi) = config.edge_factor_range;
            let factor = if flo == fhi {
                flo
            } else {
                rng.random_range(flo..=fhi)
            };
            let lo = (flo * n as f64).ceil() as usize;
            let hi = (fhi * n as f64).floor() as usize;
            let m = ((factor * n as f64).round() as usize).clamp(lo.min(hi), hi.max(lo));
            let max = n * (n - 1) / 2;
            if m > max {
                return Err(Error::InvalidConfig(format!(
                    "{m} edges exceed the {max} possible on {n} nodes"
                )));
            }
            gnm_pairs(n, m, &mut rng)
        }
        Family::WattsStrogatz => {
            let k = config.ws_degree()?;
            watts_strogatz_pairs(n, k, config.p_rewire, &mut rng)
        }
    };
    pairs.sort_unstable();

    let (wlo, whi) = config.weight_range;
    let edges: Vec<(usize, usize, f64)> = pairs
        .into_iter()
        .map(|(u, v)| (u, v, sample_weight(wlo, whi, &mut rng)))
        .collect();
    WeightedGraph::new(n, edges)
}

pub(crate) fn sample_weight<R: Rng>(lo: f64, hi: f64, rng: &mut R) -> f64 {
    if lo == hi {
        return lo;
    }
    loop {
        let w = rng.random_range(lo..hi);
        if w > 0.0 {
            return w;
        }
    }
}

/// Geometric skipping over the lower triangle (Batagelj & Brandes).
fn gnp_pairs<R: Rng>(n: usize, p: f64, rng: &mut R) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    if p <= 0.0 {
        return out;
    }
    if p >= 1.0 {
        for u in 0..n {
            for v in u + 1..n {
                out.push((u, v));
            }
        }
        return out;
    }
    let log_q = (1.0 - p).ln();
    let mut v: usize = 1;
    let mut w: i64 = -1;
    while v < n {
        let r: f64 = rng.random();
        w += 1 + ((1.0 - r).ln() / log_q).floor() as i64;
        while w >= v as i64 && v < n {
            w -= v as i64;
            v += 1;
        }
        if v < n {
            out.push((w as usize, v));
        }
    }
    out
}

fn gnm_pairs<R: Rng>(n: usize, m: usize, rng: &mut R) -> Vec<(usize, usize)> {
    let max = n * (n - 1) / 2;
    if 2 * m > max {
        let mut all: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        all.partial_shuffle(rng, m);
        all.truncate(m);
        return all;
    }
    let mut seen = HashSet::with_capacity(m);
    let mut out = Vec::with_capacity(m);
    while out.len() < m {
        let a = rng.random_range(0..n);
        let b = rng.random_range(0..n);
        if a == b {
            continue;
        }
        let key = (a.min(b), a.max(b));
        if seen.insert(key) {
            out.push(key);
        }
    }
    out
}

/// Ring lattice of degree `k`, then each lattice edge `(u, u + j)` is rewired
/// to `(u, w)` with probability `p`, `w` uniform among non-neighbors.
fn watts_strogatz_pairs<R: Rng>(n: usize, k: usize, p: f64, rng: &mut R) -> Vec<(usize, usize)> {
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for j in 1..=k / 2 {
        for u in 0..n {
            let v = (u + j) % n;
            adj[u].insert(v);
            adj[v].insert(u);
        }
    }
    if p > 0.0 {
        for j in 1..=k / 2 {
            for u in 0..n {
                let v = (u + j) % n;
                if !adj[u].contains(&v) || rng.random::<f64>() >= p {
                    continue;
                }
                if adj[u].len() >= n - 1 {
                    continue;
                }
                let w = loop {
                    let w = rng.random_range(0..n);
                    if w != u && !adj[u].contains(&w) {
                        break w;
                    }
                };
                adj[u].remove(&v);
                adj[v].remove(&u);
                adj[u].insert(w);
                adj[w].insert(u);
            }
        }
    }
    let mut out = Vec::new();
    for (u, row) in adj.iter().enumerate() {
        for &v in row.range(u + 1..) {
            out.push((u, v));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gnp_expected_edge_count() {
        let n = 200;
        let runs = 200;
        let total: usize = (0..runs)
            .map(|s| {
                let cfg = GeneratorConfig::gnp((n, n)).with_seed(s);
                generate(&cfg).unwrap().edge_count()
            })
            .sum();
        let mean = total as f64 / runs as f64;
        // E[m] = C(n,2) * 1.2/(n-1) = 0.6 n; sd of the mean is ~0.8.
        assert!((mean - 0.6 * n as f64).abs() < 3.0, "mean edge count {mean}");
    }

    #[test]
    fn gnm_exact_edge_count() {
        let cfg = GeneratorConfig::gnm((100, 100), (1.5, 1.5)).with_seed(3);
        assert_eq!(generate(&cfg).unwrap().edge_count(), 150);
    }

    #[test]
    fn gnm_dense_branch_and_overflow() {
        let cfg = GeneratorConfig::gnm((10, 10), (4.0, 4.0));
        assert_eq!(generate(&cfg).unwrap().edge_count(), 40);
        let cfg = GeneratorConfig::gnm((10, 10), (5.0, 5.0));
        assert!(generate(&cfg).is_err());
    }

    #[test]
    fn watts_strogatz_unrewired_is_regular() {
        let cfg = GeneratorConfig::watts_strogatz((30, 30), 4, 0.0);
        let g = generate(&cfg).unwrap();
        assert_eq!(g.edge_count(), 60);
        for v in 0..g.node_count() {
            assert_eq!(g.degree(v).unwrap(), 4);
        }
    }

    #[test]
    fn watts_strogatz_rewiring_keeps_edge_count() {
        let cfg = GeneratorConfig::watts_strogatz((50, 50), 4, 0.5).with_seed(9);
        let g = generate(&cfg).unwrap();
        assert_eq!(g.edge_count(), 100);
        let cfg = GeneratorConfig::watts_strogatz((50, 50), 3, 0.5);
        assert!(generate(&cfg).is_err());
    }

    #[test]
    fn same_seed_same_graph() {
        for family in [Family::Gnp, Family::Gnm, Family::WattsStrogatz] {
            let cfg = GeneratorConfig {
                family,
                node_range: (40, 60),
                mean_degree: (family == Family::WattsStrogatz).then_some(4.0),
                seed: 11,
                ..GeneratorConfig::default()
            };
            assert_eq!(generate(&cfg).unwrap(), generate(&cfg).unwrap());
        }
    }

    #[test]
    fn weights_stay_in_range() {
        let cfg = GeneratorConfig::gnm((50, 80), (1.4, 1.6))
            .with_weight_range(2.0, 3.0)
            .with_seed(5);
        let g = generate(&cfg).unwrap();
        assert!(g.weights().iter().all(|&w| (2.0..3.0).contains(&w)));
    }

    #[test]
    fn rejects_invalid_configs() {
        let mut cfg = GeneratorConfig::gnp((10, 5));
        assert!(cfg.validate().is_err());
        cfg = GeneratorConfig::gnp((10, 20));
        cfg.p_edge = Some(1.5);
        assert!(cfg.validate().is_err());
        cfg = GeneratorConfig::gnp((10, 20)).with_weight_range(-1.0, 5.0);
        assert!(cfg.validate().is_err());
    }
}
