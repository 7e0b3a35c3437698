use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::centrality::brandes_ebc;
use crate::error::{Error, Result};
use crate::gnn::{infer_ranking, GnnModel};
use crate::graph::{generate, GeneratorConfig};
use crate::seed;

/// Median timings for one graph size.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub n: usize,
    pub m: usize,
    pub brandes_s: f64,
    pub embed_s: f64,
    pub gnn_s: f64,
}

impl BenchRow {
    /// Inference time (features plus model) over Brandes time.
    pub fn ratio(&self) -> f64 {
        (self.embed_s + self.gnn_s) / self.brandes_s
    }
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let k = v.len();
    if k % 2 == 1 {
        v[k / 2]
    } else {
        0.5 * (v[k / 2 - 1] + v[k / 2])
    }
}

/// Times Brandes and model inference on one generated graph per size.
/// `generator` supplies the family and weights; its node range is replaced
/// by each size.
pub fn run_bench(
    sizes: &[usize],
    repeats: usize,
    generator: &GeneratorConfig,
    model: &GnnModel,
    base_seed: u64,
) -> Result<Vec<BenchRow>> {
    if repeats == 0 || sizes.is_empty() {
        return Err(Error::InvalidConfig("bench needs at least one size and one repeat".into()));
    }
    if sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidConfig(format!("bench sizes must be strictly ascending: {sizes:?}")));
    }
    let mut rows = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let config = GeneratorConfig {
            node_range: (n, n),
            ..generator.clone()
        }
        .with_seed(seed::derive(base_seed, "bench", n as u64));
        let g = generate(&config)?;
        let (mut brandes, mut embed, mut gnn) = (Vec::new(), Vec::new(), Vec::new());
        for _ in 0..repeats {
            let t = Instant::now();
            brandes_ebc(&g)?;
            brandes.push(t.elapsed().as_secs_f64());
            let inf = infer_ranking(model, &g)?;
            embed.push(inf.embed_seconds);
            gnn.push(inf.gnn_seconds);
        }
        rows.push(BenchRow {
            n,
            m: g.edge_count(),
            brandes_s: median(brandes),
            embed_s: median(embed),
            gnn_s: median(gnn),
        });
    }
    Ok(rows)
}

pub fn write_bench_csv(rows: &[BenchRow], path: impl AsRef<Path>) -> Result<()> {
    let mut out = BufWriter::new(fs::File::create(path)?);
    writeln!(out, "n,m,brandes_s,embed_s,gnn_s")?;
    for r in rows {
        writeln!(out, "{},{},{:.9},{:.9},{:.9}", r.n, r.m, r.brandes_s, r.embed_s, r.gnn_s)?;
    }
    out.flush()?;
    Ok(())
}
