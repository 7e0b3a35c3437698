use super::EbcScores;
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

pub const BRUTE_FORCE_MAX_NODES: usize = 14;

const PATH_RTOL: f64 = 1e-10;

/// Edge betweenness by explicit path enumeration.
///
/// All-pairs distances come from Floyd–Warshall. For each unordered pair
/// every minimum-weight path is enumerated by depth-first search and each
/// edge on it receives `1 / #paths`. Exponential in the worst case, so the
/// node count is capped at [`BRUTE_FORCE_MAX_NODES`].
pub fn brute_force_ebc(g: &WeightedGraph) -> Result<EbcScores> {
    let n = g.node_count();
    if n > BRUTE_FORCE_MAX_NODES {
        return Err(Error::GraphTooLarge {
            nodes: n,
            limit: BRUTE_FORCE_MAX_NODES,
        });
    }
    for e in g.edges() {
        if !(e.weight > 0.0 && e.weight.is_finite()) {
            return Err(Error::InvalidWeight {
                u: e.u,
                v: e.v,
                weight: e.weight,
            });
        }
    }

    let mut d = vec![vec![f64::INFINITY; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0.0;
    }
    for e in g.edges() {
        d[e.u][e.v] = e.weight;
        d[e.v][e.u] = e.weight;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }

    let m = g.edge_count();
    let mut ebc = vec![0.0; m];
    let mut per_edge = vec![0u64; m];
    let mut path = Vec::new();
    for s in 0..n {
        for t in s + 1..n {
            if d[s][t].is_infinite() {
                continue;
            }
            per_edge.iter_mut().for_each(|c| *c = 0);
            path.clear();
            let total = enumerate(g, &d, s, t, s, &mut path, &mut per_edge);
            for (acc, &c) in ebc.iter_mut().zip(&per_edge) {
                *acc += c as f64 / total as f64;
            }
        }
    }
    Ok(EbcScores::new(ebc))
}

/// Counts shortest `s -> t` paths through `at`, adding each complete path's
/// edges to `per_edge`. Returns the number of complete paths found.
fn enumerate(
    g: &WeightedGraph,
    d: &[Vec<f64>],
    s: usize,
    t: usize,
    at: usize,
    path: &mut Vec<usize>,
    per_edge: &mut [u64],
) -> u64 {
    if at == t {
        for &e in path.iter() {
            per_edge[e] += 1;
        }
        return 1;
    }
    let target = d[s][t];
    let mut found = 0;
    for ((&next, &w), &eid) in g
        .neighbors(at)
        .iter()
        .zip(g.neighbor_weights(at))
        .zip(g.neighbor_edges(at))
    {
        let through = d[s][at] + w + d[next][t];
        if (through - target).abs() <= PATH_RTOL * target {
            path.push(eid);
            found += enumerate(g, d, s, t, next, path, per_edge);
            path.pop();
        }
    }
    found
}
