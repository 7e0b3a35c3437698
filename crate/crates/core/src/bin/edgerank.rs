use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use edgerank::experiment::{
    cmd_embed, cmd_eval, cmd_exact, cmd_gen, cmd_perturb, cmd_rank, cmd_train, run_ablation, run_bench, write_ablation_csv,
    write_bench_csv, AblationAxis, ExperimentSpec, PerturbMode, PerturbSpec,
};
use edgerank::gnn::{load_checkpoint, AdjacencyVariant, GnnModel, ModelConfig};
use edgerank::graph::Family;
use edgerank::{Error, Result};

/// Exact edge betweenness centrality and learned edge ranking.
#[derive(Parser)]
#[command(name = "edgerank", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

/// Experiment settings. `--config` is read first, `--paper-scale` then
/// swaps in full-size graphs and model, and the remaining flags win last.
#[derive(Args)]
struct Global {
    /// TOML experiment spec.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Full-size graphs, 1000/100/100 split, 256-dim features, 10000-edge model.
    #[arg(long, global = true)]
    paper_scale: bool,
    /// Graph family: gnp, gnm or ws.
    #[arg(long, global = true)]
    family: Option<Family>,
    #[arg(long, global = true)]
    output_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    dataset_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    train_graphs: Option<usize>,
    #[arg(long, global = true)]
    val_graphs: Option<usize>,
    #[arg(long, global = true)]
    test_graphs: Option<usize>,
    #[arg(long, global = true)]
    epochs: Option<usize>,
    #[arg(long, global = true)]
    lr: Option<f64>,
    #[arg(long, global = true)]
    layers: Option<usize>,
    /// Embedding and hidden width.
    #[arg(long, global = true)]
    dim: Option<usize>,
    #[arg(long, global = true)]
    capacity: Option<usize>,
    /// both, degree-only, weight-only or plain.
    #[arg(long, global = true)]
    variant: Option<AdjacencyVariant>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate train/val/test edge lists and a manifest.
    Gen {
        #[arg(long)]
        out: PathBuf,
    },
    /// Compute exact labels for every graph of a dataset.
    Exact {
        #[arg(long)]
        dataset: PathBuf,
    },
    /// Write edge features of one graph.
    Embed {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Train a model; writes model.ckpt and train_log.jsonl.
    Train,
    /// Score the edges of a graph with a trained model.
    Rank {
        #[arg(long)]
        checkpoint: PathBuf,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare prediction files with label files, pairwise in order.
    Eval {
        #[arg(long, num_args = 1.., required = true)]
        predictions: Vec<PathBuf>,
        #[arg(long, num_args = 1.., required = true)]
        labels: Vec<PathBuf>,
        /// JSON report path; printed to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time exact computation against model inference over graph sizes.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "200,500,1000,2000,4000")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        repeats: usize,
        /// Trained model; an untrained one sized to the sweep is used otherwise.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Train one model per setting of an axis and score each.
    Ablate {
        /// layers, dims or adjacency-variant.
        #[arg(long)]
        axis: AblationAxis,
        #[arg(long, value_delimiter = ',')]
        settings: Option<Vec<String>>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write perturbed snapshots of a base network.
    Perturb {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value = "weights")]
        mode: String,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
        r_range: Option<Vec<f64>>,
        /// Edge count range after topology changes.
        #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
        edge_range: Option<Vec<usize>>,
        #[arg(long)]
        out: PathBuf,
    },
}

impl Global {
    fn spec(&self) -> Result<ExperimentSpec> {
        let mut spec = match &self.config {
            Some(path) => ExperimentSpec::from_toml_file(path)?,
            None => ExperimentSpec::desk_scale(),
        };
        let family = self.family.unwrap_or(spec.generator.family);
        if self.paper_scale {
            let full = ExperimentSpec::paper_scale(family);
            spec.generator = full.generator;
            spec.counts = full.counts;
            spec.walk = full.walk;
            spec.model = ModelConfig {
                variant: spec.model.variant,
                ..full.model
            };
        } else if family != spec.generator.family {
            spec.generator.family = family;
        }
        if let Some(s) = self.seed {
            spec.seed = s;
        }
        if let Some(d) = &self.output_dir {
            spec.output_dir = d.clone();
        }
        if let Some(d) = &self.dataset_dir {
            spec.dataset_dir = Some(d.clone());
        }
        if let Some(n) = self.train_graphs {
            spec.counts.train = n;
        }
        if let Some(n) = self.val_graphs {
            spec.counts.val = n;
        }
        if let Some(n) = self.test_graphs {
            spec.counts.test = n;
        }
        if let Some(e) = self.epochs {
            spec.hyper.epochs = e;
        }
        if let Some(lr) = self.lr {
            spec.hyper.lr = lr;
        }
        if let Some(k) = self.layers {
            spec.model.layers = k;
        }
        if let Some(d) = self.dim {
            spec.walk.dim = d;
            spec.model.input_dim = d;
            spec.model.hidden_dim = d;
        }
        if let Some(c) = self.capacity {
            spec.model.capacity = c;
        }
        if let Some(v) = self.variant {
            spec.model.variant = v;
        }
        spec.validate()?;
        Ok(spec)
    }
}

fn pair(values: &Option<Vec<f64>>, default: (f64, f64)) -> (f64, f64) {
    values.as_ref().map_or(default, |v| (v[0], v[1]))
}

fn untrained_for_sweep(spec: &ExperimentSpec, sizes: &[usize]) -> Result<GnnModel> {
    let largest = sizes.iter().copied().max().unwrap_or(0);
    let factor = spec.generator.edge_factor_range.1.max(spec.generator.mean_degree.unwrap_or(4.0));
    let mut config = spec.model.clone();
    config.capacity = config.capacity.max((largest as f64 * factor).ceil() as usize * 2);
    GnnModel::new(config, spec.hyper.clone(), spec.resolved_walk(), spec.init_seed())
}

fn print_json(value: &impl serde::Serialize) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let g = &cli.global;
    match cli.command {
        Command::Gen { out } => {
            let manifest = cmd_gen(&g.spec()?, &out)?;
            eprintln!("wrote {} graphs to {}", manifest.entries.len(), out.display());
        }
        Command::Exact { dataset } => {
            let files = cmd_exact(&dataset)?;
            eprintln!("wrote {} label files", files.len());
        }
        Command::Embed { graph, out } => {
            let spec = g.spec()?;
            let emb = cmd_embed(&graph, &spec.resolved_walk(), &out)?;
            eprintln!("wrote {}x{} features to {}", emb.rows(), emb.dim(), out.display());
        }
        Command::Train => {
            let spec = g.spec()?;
            let (_, log, outputs) = cmd_train(&spec)?;
            for r in &log {
                eprintln!(
                    "epoch {:>3} loss {:.4} train {:.3}/{:.3} val {:.3}/{:.3}",
                    r.epoch, r.loss, r.train_tau, r.train_rho, r.val_tau, r.val_rho
                );
            }
            eprintln!("checkpoint {}", outputs.checkpoint.display());
        }
        Command::Rank { checkpoint, graph, out } => {
            let inf = cmd_rank(&checkpoint, &graph, &out)?;
            eprintln!(
                "ranked {} edges in {:.3}s (features {:.3}s)",
                inf.result.scores.len(),
                inf.embed_seconds + inf.gnn_seconds,
                inf.embed_seconds
            );
        }
        Command::Eval { predictions, labels, out } => {
            let report = cmd_eval(&predictions, &labels)?;
            match out {
                Some(path) => std::fs::write(path, report.to_json()?)?,
                None => print_json(&report)?,
            }
            eprintln!(
                "tau {:.4} ± {:.4}  rho {:.4} ± {:.4}",
                report.tau.mean, report.tau.std, report.rho.mean, report.rho.std
            );
        }
        Command::Bench {
            sizes,
            repeats,
            checkpoint,
            out,
        } => {
            let spec = g.spec()?;
            let model = match checkpoint {
                Some(path) => load_checkpoint(path)?,
                None => untrained_for_sweep(&spec, &sizes)?,
            };
            let rows = run_bench(&sizes, repeats, &spec.generator, &model, spec.seed)?;
            write_bench_csv(&rows, &out)?;
            for r in &rows {
                eprintln!("n={:>6} m={:>7} ratio {:.4}", r.n, r.m, r.ratio());
            }
        }
        Command::Ablate { axis, settings, out } => {
            let spec = g.spec()?;
            let settings = settings.unwrap_or_else(|| axis.default_settings());
            let rows = run_ablation(&spec, axis, &settings, |r| {
                eprintln!("{:>12} tau {:.4} rho {:.4}", r.setting, r.tau, r.rho);
            })?;
            write_ablation_csv(&rows, &out)?;
        }
        Command::Perturb {
            graph,
            mode,
            count,
            r_range,
            edge_range,
            out,
        } => {
            let seed = g.seed.unwrap_or(0);
            let mut spec = match mode.as_str() {
                "weights" => PerturbSpec::weights(count, seed),
                "topology" => PerturbSpec::topology(count, seed),
                other => return Err(Error::InvalidConfig(format!("unknown perturbation mode '{other}'"))),
            };
            spec.r_range = pair(&r_range, spec.r_range);
            if let Some(e) = edge_range {
                if spec.mode != PerturbMode::Topology {
                    return Err(Error::InvalidConfig("--edge-range needs --mode topology".into()));
                }
                spec.edge_range = Some((e[0], e[1]));
            }
            let files = cmd_perturb(&graph, &spec, &out)?;
            eprintln!("wrote {} snapshots to {}", files.len(), out.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
