//! Rank correlation and graph statistics.

mod rank;
mod stats;

pub use rank::{average_ranks, kendall_tau, rank_correlation, score_agreement, spearman_rho, RankCorrelation};
pub use stats::{graph_stats, onnela_clustering, GraphStats};
