//! Synthetic planted instances: a hidden Hamiltonian cycle (or path) whose
//! edges carry draws from the signal distribution while all other edges of
//! the complete graph carry draws from the noise distribution, with optional
//! independent erasure of each observation.
//!
//! The sampling stream is part of the format contract: a [`SplitMix64`]
//! stream seeded with the instance seed first draws the hidden permutation
//! (uniform Fisher-Yates shuffle, only for the random-truth constructors),
//! then visits edges in row-major index order drawing the observation value
//! and, only when the erasure rate is positive, one further uniform deciding
//! erasure. Erased observations are stored as the `NaN` sentinel.

use crate::error::{Error, Result};
use crate::graph::{HamiltonianCycle, HamiltonianPath, WeightedGraph};
use crate::model::{ModelKind, WeightModel};
use crate::rng::SplitMix64;

/// The hidden structure an instance was planted around.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Truth {
    Cycle(HamiltonianCycle),
    Path(HamiltonianPath),
}

impl Truth {
    pub fn n(&self) -> usize {
        match self {
            Truth::Cycle(c) => c.n(),
            Truth::Path(p) => p.n(),
        }
    }

    /// Number of edges carrying signal draws: `n` for a cycle, `n-1` for a path.
    pub fn num_edges(&self) -> usize {
        match self {
            Truth::Cycle(c) => c.n(),
            Truth::Path(p) => p.n() - 1,
        }
    }

    pub fn contains_edge(&self, i: usize, j: usize) -> bool {
        match self {
            Truth::Cycle(c) => c.contains_edge(i, j),
            Truth::Path(p) => p.edges().any(|(a, b)| (a == i && b == j) || (a == j && b == i)),
        }
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        match self {
            Truth::Cycle(c) => c.edges().collect(),
            Truth::Path(p) => p.edges().collect(),
        }
    }
}

/// One sampled instance: raw observations, the hidden truth, and the
/// parameters that produced it.
#[derive(Clone, Debug)]
pub struct PlantedInstance {
    pub graph: WeightedGraph,
    pub truth: Truth,
    pub model: WeightModel,
    pub seed: u64,
}

impl PlantedInstance {
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// The log-likelihood-ratio view of the observations; erased entries
    /// become the neutral weight 0.
    pub fn transformed(&self) -> Result<WeightedGraph> {
        self.model.loglik_transform(&self.graph)
    }
}

/// Plant a uniformly random Hamiltonian cycle on `n >= 3` vertices.
pub fn generate_cycle_instance(n: usize, m: &WeightModel, seed: u64) -> Result<PlantedInstance> {
    if n < 3 {
        return Err(Error::invalid(format!("cycle instances need n >= 3, got {n}")));
    }
    m.validate()?;
    let mut rng = SplitMix64::new(seed);
    let mut order: Vec<usize> = (0..n).collect();
    rng.shuffle(&mut order);
    let truth = Truth::Cycle(HamiltonianCycle::new(order)?);
    fill(truth, m, seed, rng)
}

/// Plant a uniformly random Hamiltonian path on `n >= 2` vertices.
pub fn generate_path_instance(n: usize, m: &WeightModel, seed: u64) -> Result<PlantedInstance> {
    if n < 2 {
        return Err(Error::invalid(format!("path instances need n >= 2, got {n}")));
    }
    m.validate()?;
    let mut rng = SplitMix64::new(seed);
    let mut order: Vec<usize> = (0..n).collect();
    rng.shuffle(&mut order);
    let truth = Truth::Path(HamiltonianPath::new(order)?);
    fill(truth, m, seed, rng)
}

/// Plant around a caller-chosen truth. The edge-weight stream matches the
/// random-truth constructors; only the permutation draw is skipped.
pub fn plant_specific(truth: Truth, m: &WeightModel, seed: u64) -> Result<PlantedInstance> {
    m.validate()?;
    let rng = SplitMix64::new(seed);
    fill(truth, m, seed, rng)
}

fn fill(truth: Truth, m: &WeightModel, seed: u64, mut rng: SplitMix64) -> Result<PlantedInstance> {
    let n = truth.n();
    let ix = crate::graph::EdgeIndexer::new(n);
    let mut w = Vec::with_capacity(ix.num_edges());
    for (i, j) in ix.edges() {
        let on = truth.contains_edge(i, j);
        let value = match m.kind {
            ModelKind::Gaussian { mu } => rng.next_gaussian() + if on { mu } else { 0.0 },
            ModelKind::Poisson { lambda, mu } => {
                rng.next_poisson(if on { lambda } else { mu }) as f64
            }
            ModelKind::Bernoulli { p, q } => f64::from(rng.next_bernoulli(if on { p } else { q })),
        };
        let value = if m.erasure > 0.0 && rng.next_bernoulli(m.erasure) {
            f64::NAN
        } else {
            value
        };
        w.push(value);
    }
    Ok(PlantedInstance { graph: WeightedGraph::new(n, w)?, truth, model: m.clone(), seed })
}
