//! Recovery of a hidden Hamiltonian cycle (or path) planted in a complete
//! weighted graph.
//!
//! Every pair of the `n` vertices carries a noisy similarity score: edges on
//! the hidden cycle draw their score from a "signal" distribution `P`, all
//! other edges draw from a "noise" distribution `Q`. After converting raw
//! scores to log-likelihood ratios, the crate offers several estimators for
//! the hidden cycle together with the information-theoretic calculus that
//! predicts when each of them works:
//!
//! - [`lp`]: the fractional 2-factor linear program (degree-2 relaxation of
//!   the maximum-weight Hamiltonian cycle problem) solved by a self-contained
//!   bounded-variable revised simplex, plus dual certificates and small-n
//!   brute-force references.
//! - [`bp`]: max-product message passing on the complete graph.
//! - [`greedy`]: simple thresholding, nearest neighbor, and greedy merging
//!   baselines.
//! - [`spectral`]: a two-eigenvector angular embedding baseline.
//! - [`divergence`]: Renyi-divergence quantities (`alpha`, `beta`), log-MGFs,
//!   Legendre transforms and the large-deviation rate function that locate
//!   the recovery thresholds.
//! - [`reductions`]: turn any cycle estimator into a path estimator and vice
//!   versa by patching one edge at a time.
//! - [`generator`]: seeded instance sampling for Gaussian, Poisson and
//!   Bernoulli score families, with optional edge erasure.
//! - [`contact_map`]: ingestion and ICE balancing of genome contact maps so
//!   the solvers can be used for contig scaffolding.
//! - [`harness`]: Monte Carlo sweeps over a parameter grid producing
//!   deterministic CSV/JSON artifacts.
//! - [`oracle`]: independent numeric routes (quadrature, series, exhaustive
//!   enumeration) used to cross-check the closed forms and the LP geometry.

pub mod bp;
pub mod contact_map;
pub mod divergence;
pub mod generator;
pub mod graph;
pub mod greedy;
pub mod harness;
pub mod lp;
pub mod model;
pub mod oracle;
pub mod reductions;
pub mod rng;
pub mod spectral;

mod error;

pub use error::{Error, Result};
pub use graph::{EdgeIndexer, EdgeSubset, HamiltonianCycle, HamiltonianPath, WeightedGraph};
pub use model::WeightModel;
