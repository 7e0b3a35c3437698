//! Slow, direct reference implementations used as oracles.
#![allow(dead_code)]

pub mod gradcheck;

use edgerank::graph::{generate, Family, GeneratorConfig, WeightedGraph};

pub fn close(a: f64, b: f64) -> bool {
    a == b || (a - b).abs() <= 1e-12 * a.abs().max(b.abs())
}

/// All-pairs distances by Floyd-Warshall.
pub fn floyd(g: &WeightedGraph) -> Vec<Vec<f64>> {
    let n = g.node_count();
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0.0;
    }
    for e in g.edges() {
        d[e.u][e.v] = d[e.u][e.v].min(e.weight);
        d[e.v][e.u] = d[e.v][e.u].min(e.weight);
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let alt = d[i][k] + d[k][j];
                if alt < d[i][j] {
                    d[i][j] = alt;
                }
            }
        }
    }
    d
}

/// Shortest path counts from `s`, by processing nodes in distance order.
fn path_counts(g: &WeightedGraph, d: &[f64]) -> Vec<f64> {
    let n = g.node_count();
    let mut order: Vec<usize> = (0..n).filter(|&v| d[v].is_finite()).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let mut sigma = vec![0.0; n];
    sigma[order[0]] = 1.0;
    for &x in &order[1..] {
        for e in g.edges() {
            for (y, z) in [(e.u, e.v), (e.v, e.u)] {
                if z == x && d[y].is_finite() && d[y] < d[x] && close(d[y] + e.weight, d[x]) {
                    sigma[x] += sigma[y];
                }
            }
        }
    }
    sigma
}

/// Edge betweenness over unordered node pairs from distances and path
/// counts: an edge (u, v) carries sigma(s,u) sigma(v,t) / sigma(s,t) of the
/// s-t paths when it lies on a shortest one.
pub fn oracle_ebc(g: &WeightedGraph) -> Vec<f64> {
    let n = g.node_count();
    let d = floyd(g);
    let sigma: Vec<Vec<f64>> = (0..n).map(|s| path_counts(g, &d[s])).collect();
    let mut out = vec![0.0; g.edge_count()];
    for (i, e) in g.edges().iter().enumerate() {
        for s in 0..n {
            for t in 0..n {
                if s == t || !d[s][t].is_finite() {
                    continue;
                }
                for (a, b) in [(e.u, e.v), (e.v, e.u)] {
                    if close(d[s][a] + e.weight + d[b][t], d[s][t]) {
                        out[i] += sigma[s][a] * sigma[b][t] / sigma[s][t];
                    }
                }
            }
        }
        out[i] *= 0.5;
    }
    out
}

pub fn family_config(family: Family, n: usize) -> GeneratorConfig {
    match family {
        Family::Gnp => GeneratorConfig::gnp((n, n)),
        Family::Gnm => GeneratorConfig::gnm((n, n), (1.4, 1.6)),
        Family::WattsStrogatz => GeneratorConfig::watts_strogatz((n, n), 4, 0.5),
    }
}

pub fn random_graph(family: Family, n: usize, seed: u64) -> WeightedGraph {
    generate(&family_config(family, n).with_seed(seed)).unwrap()
}

/// Tau-a by enumerating every pair.
pub fn oracle_kendall(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len();
    let mut net = 0i64;
    for i in 0..n {
        for j in (i + 1)..n {
            let s = (x[i] - x[j]).signum() * (y[i] - y[j]).signum();
            if x[i] != x[j] && y[i] != y[j] {
                net += s as i64;
            }
        }
    }
    net as f64 / (n * (n - 1) / 2) as f64
}

/// Average rank by counting: 1 + #smaller + (#equal - 1) / 2.
pub fn oracle_ranks(x: &[f64]) -> Vec<f64> {
    x.iter()
        .map(|&v| {
            let less = x.iter().filter(|&&u| u < v).count() as f64;
            let equal = x.iter().filter(|&&u| u == v).count() as f64;
            1.0 + less + (equal - 1.0) / 2.0
        })
        .collect()
}

pub fn pearson(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    sxy / (sxx * syy).sqrt()
}

pub fn oracle_spearman(x: &[f64], y: &[f64]) -> f64 {
    pearson(&oracle_ranks(x), &oracle_ranks(y))
}
