//! Degree and clustering indices of finite simple graphs.
//!
//! The two quantities at the center of this crate are, for a graph on `n`
//! nodes with degree sequence `d_1, ..., d_n` and local clustering
//! coefficients `C(1), ..., C(n)`,
//!
//! * the degree index `DI_alpha = sum over i < j of |d_i - d_j|^alpha`, and
//! * the clustering index `CI_alpha = sum over i < j of |C(i) - C(j)|^alpha`,
//!
//! both taken over unordered node pairs. The crate provides:
//!
//! * [`graph`] — a compact undirected simple graph with triangle and
//!   clustering queries, plus a plain-text edge-list format;
//! * [`indices`] — the index kernels, with `O(n log n)` fast paths for
//!   `alpha = 1` and `alpha = 2` and a direct pairwise fallback;
//! * [`generators`] — seeded random graph models (Erdős–Rényi,
//!   Watts–Strogatz, Barabási–Albert, random regular, a two-phase
//!   clique/null model) and deterministic extremal families, together with
//!   density-matching helpers;
//! * [`oracles`] — closed-form expectations for the Erdős–Rényi and
//!   two-phase models, plus an exhaustive brute-force evaluator for tiny `n`;
//! * [`montecarlo`] — a deterministic, seed-derived Monte Carlo experiment
//!   runner that aggregates index estimates into CSV summaries.
//!
//! All randomness flows through explicit [`generators::Seed`] values; a
//! given (parameters, seed) pair yields the same graph on every platform
//! and at any thread count.

pub mod generators;
pub mod graph;
pub mod indices;
pub mod montecarlo;
mod numeric;
pub mod oracles;

pub use generators::{ModelSpec, Seed};
pub use graph::{Graph, GraphBuilder, GraphError, NodeId};
pub use indices::{
    clustering_index, clustering_index_telescoped, degree_index, pairwise_power_sum, Alpha,
    IndexError,
};
pub use montecarlo::{ExperimentConfig, IndexKind, IndexSpec, SummaryRow};
