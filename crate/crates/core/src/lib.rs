//! Exact weighted edge betweenness centrality and a learned approximation of
//! its ranking.
//!
//! The exact side is [`centrality::brandes_ebc`]. The learned side builds edge
//! features from biased random walks ([`embed`]), degree- and weight-scaled
//! edge adjacency matrices ([`line`]) and a twin-branch message passing model
//! trained with a pairwise margin loss ([`gnn`]).

pub mod centrality;
pub mod embed;
pub mod error;
pub mod experiment;
pub mod gnn;
pub mod graph;
pub mod line;
pub mod metrics;
pub mod seed;

pub use error::{Error, Result};
