//! Monte Carlo sweep driver: planted instances across a parameter grid, one
//! or more recovery algorithms per instance, and deterministic aggregation
//! into CSV plus a JSON manifest.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generator::{generate_cycle_instance, Truth};
use crate::graph::EdgeSubset;
use crate::lp::{self, VertexClass};
use crate::model::WeightModel;
use crate::rng::mix_seed;
use crate::{bp, greedy, spectral};

/// Version tag written into both artifacts; bump when the CSV schema changes.
pub const RESULT_SCHEMA_VERSION: u32 = 1;

const CSV_HEADER: &str = "param,algorithm,n,trials,errors,exact_count,exact_rate,\
mean_frac_misclassified,lp_hamiltonian,lp_disjoint_cycles,lp_half_integral,lp_unknown,\
bp_lp_integral_trials,bp_lp_integral_agreements,bp_lp_half_trials,bp_lp_half_agreements";

/// Recovery algorithms the sweep knows how to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    /// Degree-constrained LP relaxation.
    F2f,
    /// Max-product message passing.
    Bp,
    GreedyMerging,
    Thresholding,
    NearestNeighbor,
    /// Angular embedding; runs on the raw observation matrix, so it fails on
    /// erased instances.
    Spectral,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::F2f,
        Algorithm::Bp,
        Algorithm::GreedyMerging,
        Algorithm::Thresholding,
        Algorithm::NearestNeighbor,
        Algorithm::Spectral,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::F2f => "f2f",
            Algorithm::Bp => "bp",
            Algorithm::GreedyMerging => "greedy-merging",
            Algorithm::Thresholding => "thresholding",
            Algorithm::NearestNeighbor => "nearest-neighbor",
            Algorithm::Spectral => "spectral",
        }
    }
}

/// Model family swept over a one-dimensional parameter grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum SweepFamily {
    /// Grid values are the squared mean separation.
    Gaussian,
    /// Grid values are the on-cycle rate; `noise` is the off-cycle rate.
    Poisson { noise: f64 },
    /// Grid values are the on-cycle probability; `q` is the off-cycle one.
    Bernoulli { q: f64 },
}

impl SweepFamily {
    pub fn model(&self, param: f64, erasure: f64) -> Result<WeightModel> {
        let m = match *self {
            SweepFamily::Gaussian => WeightModel::gaussian_mu2(param)?,
            SweepFamily::Poisson { noise } => WeightModel::poisson(param, noise)?,
            SweepFamily::Bernoulli { q } => WeightModel::bernoulli(param, q)?,
        };
        m.with_erasure(erasure)
    }
}

fn default_bp_iters() -> usize {
    1000
}

fn default_bp_window() -> usize {
    50
}

/// Full description of one sweep; serializable so a run can be reproduced
/// from its manifest alone.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    #[serde(flatten)]
    pub family: SweepFamily,
    /// Grid of signal parameters, swept in order.
    pub grid: Vec<f64>,
    pub n: usize,
    /// Trials per grid point.
    pub trials: usize,
    pub algorithms: Vec<Algorithm>,
    /// Message-passing iteration budget.
    #[serde(default = "default_bp_iters")]
    pub bp_iters: usize,
    /// Consecutive unchanged decisions before message passing stops early;
    /// zero disables early stopping.
    #[serde(default = "default_bp_window")]
    pub bp_window: usize,
    /// Per-edge erasure probability.
    #[serde(default)]
    pub erasure: f64,
    pub seed: u64,
    /// Default artifact base path for `emit_results`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.grid.is_empty() {
            return Err(Error::invalid("parameter grid is empty"));
        }
        if self.trials == 0 {
            return Err(Error::invalid("need at least one trial per grid point"));
        }
        if self.n < 3 {
            return Err(Error::invalid("sweeps need n >= 3"));
        }
        if self.bp_iters == 0 && self.algorithms.contains(&Algorithm::Bp) {
            return Err(Error::invalid("bp_iters must be at least 1"));
        }
        for &p in &self.grid {
            self.family.model(p, self.erasure)?;
        }
        Ok(())
    }

    /// Desk-scale Gaussian sweep: n = 200, 20 trials, 11 signal levels
    /// spanning the recovery transition, LP against the two greedy baselines.
    pub fn desk_default() -> Self {
        SweepSpec {
            family: SweepFamily::Gaussian,
            grid: (0..11).map(|i| 16.0 + 4.0 * i as f64).collect(),
            n: 200,
            trials: 20,
            algorithms: vec![Algorithm::F2f, Algorithm::GreedyMerging, Algorithm::Thresholding],
            bp_iters: default_bp_iters(),
            bp_window: default_bp_window(),
            erasure: 0.0,
            seed: 1,
            output: None,
        }
    }

    /// Named presets accepted on the command line.  `paper-fig7` is the
    /// long-running n = 1000, 50-trial configuration.
    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "desk" => Some(Self::desk_default()),
            "paper-fig7" => Some(SweepSpec {
                family: SweepFamily::Gaussian,
                grid: (0..10).map(|i| 20.0 + 5.0 * i as f64).collect(),
                n: 1000,
                trials: 50,
                algorithms: vec![Algorithm::F2f, Algorithm::Bp],
                bp_iters: 10_000,
                bp_window: default_bp_window(),
                erasure: 0.0,
                seed: 7,
                output: None,
            }),
            _ => None,
        }
    }
}

/// Recovery quality of one estimate against the planted edge set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Score {
    pub exact: bool,
    /// Total variation between the edge vectors divided by n; equals
    /// |symmetric difference| / n for integral subsets and lands in [0, 2].
    pub frac_misclassified: f64,
}

/// Compares an estimated edge subset against the truth.
pub fn score(estimate: &EdgeSubset, truth: &EdgeSubset) -> Result<Score> {
    if estimate.n() != truth.n() {
        return Err(Error::invalid("estimate and truth sizes differ"));
    }
    let total: u32 = estimate
        .numerators()
        .iter()
        .zip(truth.numerators())
        .map(|(&a, &b)| u32::from(a.abs_diff(b)))
        .sum();
    Ok(Score {
        exact: total == 0,
        frac_misclassified: f64::from(total) / (2.0 * estimate.n() as f64),
    })
}

/// Message-passing vs LP agreement counts, split by LP vertex class.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct AgreementCounts {
    pub integral_trials: usize,
    pub integral_agreements: usize,
    pub half_trials: usize,
    pub half_agreements: usize,
}

/// Aggregated outcomes of one algorithm at one grid point.
#[derive(Debug, Clone, Serialize)]
pub struct PointRow {
    pub param: f64,
    pub algorithm: Algorithm,
    pub trials: usize,
    /// Trials whose solver returned an error; counted as non-exact.
    pub errors: usize,
    pub exact_count: usize,
    pub exact_rate: f64,
    /// Mean over the trials that produced an estimate.
    pub mean_frac_misclassified: Option<f64>,
    /// Mean wall-clock seconds per solve; never written to the CSV artifact
    /// so that reruns stay byte-identical.
    pub mean_runtime_secs: Option<f64>,
    /// LP rows only: counts per vertex class, in declaration order.
    pub lp_classes: Option<[usize; 4]>,
    /// Message-passing rows only, and only when the LP also ran.
    pub bp_lp_agreement: Option<AgreementCounts>,
    /// First solver error at this point, as a sample of what went wrong;
    /// kept out of the CSV artifact.
    pub first_error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepResult {
    pub spec: SweepSpec,
    /// One row per grid point and algorithm, grid-major in spec order.
    pub rows: Vec<PointRow>,
}

impl SweepResult {
    /// (param, exact rate) curve for one algorithm, in grid order.
    pub fn curve(&self, algo: Algorithm) -> Vec<(f64, f64)> {
        self.rows
            .iter()
            .filter(|r| r.algorithm == algo)
            .map(|r| (r.param, r.exact_rate))
            .collect()
    }

    /// Total trials that returned solver errors, over all rows.
    pub fn total_errors(&self) -> usize {
        self.rows.iter().map(|r| r.errors).sum()
    }
}

/// Interpolated parameter at which a success curve crosses rate 0.5, or
/// `None` if it never does.  The curve must be sorted by parameter.
pub fn crossing_param(curve: &[(f64, f64)]) -> Option<f64> {
    for pair in curve.windows(2) {
        let (x0, r0) = pair[0];
        let (x1, r1) = pair[1];
        if (r0 - 0.5) * (r1 - 0.5) <= 0.0 {
            if r0 == r1 {
                return Some(x0);
            }
            return Some(x0 + (0.5 - r0) / (r1 - r0) * (x1 - x0));
        }
    }
    None
}

enum AlgoOutcome {
    Solved { score: Score, secs: f64, lp_class: Option<VertexClass> },
    Failed(String),
}

struct TrialRecord {
    outcomes: Vec<AlgoOutcome>,
    /// LP vertex class and whether the message-passing decision equalled the
    /// LP vertex, when both algorithms ran.
    agreement: Option<(VertexClass, bool)>,
}

fn run_trial(spec: &SweepSpec, point: usize, trial: usize) -> Result<TrialRecord> {
    let m = spec.family.model(spec.grid[point], spec.erasure)?;
    let child = mix_seed(spec.seed, point as u64, trial as u64);
    let inst = generate_cycle_instance(spec.n, &m, child)?;
    let w = inst.transformed()?;
    let truth = match &inst.truth {
        Truth::Cycle(c) => c.to_edges(),
        Truth::Path(_) => unreachable!("cycle generator produced a path"),
    };

    let mut outcomes = Vec::with_capacity(spec.algorithms.len());
    let mut lp_result: Option<(EdgeSubset, VertexClass)> = None;
    let mut bp_result: Option<EdgeSubset> = None;
    for &algo in &spec.algorithms {
        let start = Instant::now();
        let solved: Result<(EdgeSubset, Option<VertexClass>)> = (|| match algo {
            Algorithm::F2f => {
                let sol = lp::solve_f2f(&lp::F2fProblem::new(w.clone())?)?;
                Ok((sol.x, Some(sol.vertex_class)))
            }
            Algorithm::Bp => {
                Ok((bp::bp_run(&w, spec.bp_iters, spec.bp_window)?, None))
            }
            Algorithm::GreedyMerging => Ok((greedy::greedy_merging(&w)?, None)),
            Algorithm::Thresholding => Ok((greedy::simple_thresholding(&w)?, None)),
            Algorithm::NearestNeighbor => {
                Ok((greedy::nearest_neighbor(&w, 0)?.to_edges(), None))
            }
            Algorithm::Spectral => {
                Ok((spectral::spectral_order(&inst.graph)?.to_edges(), None))
            }
        })();
        let secs = start.elapsed().as_secs_f64();
        match solved {
            Ok((subset, lp_class)) => {
                let score = score(&subset, &truth)?;
                if algo == Algorithm::F2f {
                    lp_result = Some((subset.clone(), lp_class.unwrap_or(VertexClass::Unknown)));
                }
                if algo == Algorithm::Bp {
                    bp_result = Some(subset);
                }
                outcomes.push(AlgoOutcome::Solved { score, secs, lp_class });
            }
            Err(e) => outcomes.push(AlgoOutcome::Failed(e.to_string())),
        }
    }

    let agreement = match (&lp_result, &bp_result) {
        (Some((lp_subset, class)), Some(bp_subset)) => {
            Some((*class, lp_subset.numerators() == bp_subset.numerators()))
        }
        _ => None,
    };
    Ok(TrialRecord { outcomes, agreement })
}

/// Runs every (grid point, trial) pair in parallel and aggregates in task
/// order, so the result is independent of scheduling.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let points = spec.grid.len();
    let tasks: Vec<(usize, usize)> = (0..points)
        .flat_map(|p| (0..spec.trials).map(move |t| (p, t)))
        .collect();
    let records: Vec<TrialRecord> = tasks
        .into_par_iter()
        .map(|(p, t)| run_trial(spec, p, t))
        .collect::<Result<Vec<_>>>()?;

    let mut rows = Vec::with_capacity(points * spec.algorithms.len());
    for p in 0..points {
        let point_records = &records[p * spec.trials..(p + 1) * spec.trials];
        let mut agreement = AgreementCounts::default();
        let mut saw_agreement = false;
        for r in point_records {
            if let Some((class, agree)) = r.agreement {
                saw_agreement = true;
                match class {
                    VertexClass::HamiltonianCycle | VertexClass::DisjointCycles2Factor => {
                        agreement.integral_trials += 1;
                        agreement.integral_agreements += usize::from(agree);
                    }
                    VertexClass::HalfIntegral => {
                        agreement.half_trials += 1;
                        agreement.half_agreements += usize::from(agree);
                    }
                    VertexClass::Unknown => {}
                }
            }
        }
        for (a, &algo) in spec.algorithms.iter().enumerate() {
            let mut errors = 0usize;
            let mut exact_count = 0usize;
            let mut frac_sum = 0.0;
            let mut secs_sum = 0.0;
            let mut solved = 0usize;
            let mut classes = [0usize; 4];
            let mut first_error = None;
            for r in point_records {
                match &r.outcomes[a] {
                    AlgoOutcome::Solved { score, secs, lp_class } => {
                        solved += 1;
                        exact_count += usize::from(score.exact);
                        frac_sum += score.frac_misclassified;
                        secs_sum += secs;
                        if let Some(c) = lp_class {
                            classes[*c as usize] += 1;
                        }
                    }
                    AlgoOutcome::Failed(msg) => {
                        errors += 1;
                        if first_error.is_none() {
                            first_error = Some(msg.clone());
                        }
                    }
                }
            }
            rows.push(PointRow {
                param: spec.grid[p],
                algorithm: algo,
                trials: spec.trials,
                errors,
                exact_count,
                exact_rate: exact_count as f64 / spec.trials as f64,
                mean_frac_misclassified: (solved > 0).then(|| frac_sum / solved as f64),
                mean_runtime_secs: (solved > 0).then(|| secs_sum / solved as f64),
                lp_classes: (algo == Algorithm::F2f).then_some(classes),
                bp_lp_agreement: (algo == Algorithm::Bp && saw_agreement).then_some(agreement),
                first_error,
            });
        }
    }
    Ok(SweepResult { spec: spec.clone(), rows })
}

fn push_opt(line: &mut String, v: Option<impl std::fmt::Display>) {
    match v {
        Some(v) => {
            let _ = write!(line, ",{v}");
        }
        None => line.push_str(",NA"),
    }
}

/// Renders the per-row table as CSV with a fixed column order.  Runtime is
/// deliberately omitted; everything written here is reproducible byte for
/// byte from the spec and seed.
pub fn to_csv(result: &SweepResult) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in &result.rows {
        let mut line = String::new();
        let _ = write!(
            line,
            "{},{},{},{},{},{},{}",
            r.param,
            r.algorithm.name(),
            result.spec.n,
            r.trials,
            r.errors,
            r.exact_count,
            r.exact_rate
        );
        push_opt(&mut line, r.mean_frac_misclassified);
        match r.lp_classes {
            Some(c) => {
                let _ = write!(line, ",{},{},{},{}", c[0], c[1], c[2], c[3]);
            }
            None => line.push_str(",NA,NA,NA,NA"),
        }
        match r.bp_lp_agreement {
            Some(a) => {
                let _ = write!(
                    line,
                    ",{},{},{},{}",
                    a.integral_trials, a.integral_agreements, a.half_trials, a.half_agreements
                );
            }
            None => line.push_str(",NA,NA,NA,NA"),
        }
        out.push_str(&line);
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct Manifest<'a> {
    schema_version: u32,
    tool_version: &'static str,
    child_seed_scheme: &'static str,
    spec: &'a SweepSpec,
    rows: usize,
    total_errors: usize,
}

/// Serializes the run manifest: everything needed to reproduce the CSV.
pub fn to_manifest_json(result: &SweepResult) -> String {
    let manifest = Manifest {
        schema_version: RESULT_SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION"),
        child_seed_scheme: "splitmix64 mix(base_seed, point_index, trial_index)",
        spec: &result.spec,
        rows: result.rows.len(),
        total_errors: result.total_errors(),
    };
    let mut s = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    s.push('\n');
    s
}

/// Writes `<base>.csv` and `<base>.json`; returns the two paths.
pub fn emit_results(result: &SweepResult, base: &Path) -> Result<(PathBuf, PathBuf)> {
    if let Some(parent) = base.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    let csv_path = base.with_extension("csv");
    let json_path = base.with_extension("json");
    std::fs::write(&csv_path, to_csv(result))?;
    std::fs::write(&json_path, to_manifest_json(result))?;
    Ok((csv_path, json_path))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::HamiltonianCycle;

    fn cycle_subset(order: &[usize]) -> EdgeSubset {
        HamiltonianCycle::new(order.to_vec()).unwrap().to_edges()
    }

    #[test]
    fn score_examples() {
        let hex = cycle_subset(&[0, 1, 2, 3, 4, 5]);
        let s = score(&hex, &hex).unwrap();
        assert!(s.exact);
        assert_eq!(s.frac_misclassified, 0.0);

        // Two triangles against the 6-cycle share two edges each.
        let triangles =
            EdgeSubset::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let s = score(&triangles, &hex).unwrap();
        assert!(!s.exact);
        assert!((s.frac_misclassified - 4.0 / 6.0).abs() < 1e-15);

        // Edge-disjoint 5-cycles: symmetric difference 10, fraction 2.
        let a = cycle_subset(&[0, 1, 2, 3, 4]);
        let b = cycle_subset(&[0, 2, 4, 1, 3]);
        let s = score(&a, &b).unwrap();
        assert_eq!(s.frac_misclassified, 2.0);
    }

    #[test]
    fn score_counts_half_edges() {
        let mut est = EdgeSubset::empty(4);
        est.set_numerator_at(0, 1).unwrap();
        let truth = EdgeSubset::empty(4);
        let s = score(&est, &truth).unwrap();
        assert!(!s.exact);
        assert_eq!(s.frac_misclassified, 1.0 / 8.0);
    }

    #[test]
    fn high_snr_sweep_recovers_everywhere() {
        let spec = SweepSpec {
            family: SweepFamily::Gaussian,
            grid: vec![100.0],
            n: 24,
            trials: 5,
            algorithms: vec![
                Algorithm::F2f,
                Algorithm::Bp,
                Algorithm::GreedyMerging,
                Algorithm::Thresholding,
            ],
            bp_iters: 300,
            bp_window: 30,
            erasure: 0.0,
            seed: 11,
            output: None,
        };
        let r = run_sweep(&spec).unwrap();
        assert_eq!(r.rows.len(), 4);
        for row in &r.rows {
            assert_eq!(row.exact_rate, 1.0, "{} failed", row.algorithm.name());
            assert_eq!(row.errors, 0);
            assert_eq!(row.mean_frac_misclassified, Some(0.0));
        }
        let lp_row = &r.rows[0];
        assert_eq!(lp_row.lp_classes, Some([5, 0, 0, 0]));
        let bp_row = &r.rows[1];
        let agg = bp_row.bp_lp_agreement.unwrap();
        assert_eq!(agg.integral_trials, 5);
        assert_eq!(agg.integral_agreements, 5);
    }

    #[test]
    fn no_signal_sweep_recovers_nothing() {
        let spec = SweepSpec {
            family: SweepFamily::Gaussian,
            grid: vec![1e-6],
            n: 20,
            trials: 5,
            algorithms: vec![Algorithm::Thresholding, Algorithm::NearestNeighbor],
            bp_iters: 10,
            bp_window: 0,
            erasure: 0.0,
            seed: 3,
            output: None,
        };
        let r = run_sweep(&spec).unwrap();
        for row in &r.rows {
            assert_eq!(row.exact_rate, 0.0, "{}", row.algorithm.name());
        }
    }

    #[test]
    fn rows_are_grid_major_and_counted() {
        let spec = SweepSpec {
            family: SweepFamily::Gaussian,
            grid: vec![10.0, 20.0, 30.0],
            n: 12,
            trials: 2,
            algorithms: vec![
                Algorithm::Thresholding,
                Algorithm::NearestNeighbor,
                Algorithm::GreedyMerging,
                Algorithm::F2f,
            ],
            bp_iters: 10,
            bp_window: 0,
            erasure: 0.0,
            seed: 5,
            output: None,
        };
        let r = run_sweep(&spec).unwrap();
        assert_eq!(r.rows.len(), 12);
        assert_eq!(r.rows[0].param, 10.0);
        assert_eq!(r.rows[0].algorithm, Algorithm::Thresholding);
        assert_eq!(r.rows[4].param, 20.0);
        assert_eq!(r.rows[11].algorithm, Algorithm::F2f);
    }

    #[test]
    fn csv_is_deterministic_and_shaped() {
        let spec = SweepSpec {
            family: SweepFamily::Poisson { noise: 1.0 },
            grid: vec![6.0, 9.0],
            n: 10,
            trials: 3,
            algorithms: vec![Algorithm::F2f, Algorithm::Thresholding],
            bp_iters: 10,
            bp_window: 0,
            erasure: 0.0,
            seed: 21,
            output: None,
        };
        let a = to_csv(&run_sweep(&spec).unwrap());
        let b = to_csv(&run_sweep(&spec).unwrap());
        assert_eq!(a, b);
        let lines: Vec<&str> = a.lines().collect();
        assert_eq!(lines.len(), 1 + 4);
        assert!(lines[0].starts_with("param,algorithm,"));
        assert!(!a.contains("runtime"));
    }

    #[test]
    fn empty_algorithm_list_yields_header_only_csv() {
        let spec = SweepSpec {
            family: SweepFamily::Gaussian,
            grid: vec![5.0],
            n: 8,
            trials: 1,
            algorithms: vec![],
            bp_iters: 10,
            bp_window: 0,
            erasure: 0.0,
            seed: 2,
            output: None,
        };
        let csv = to_csv(&run_sweep(&spec).unwrap());
        assert_eq!(csv, format!("{CSV_HEADER}\n"));
    }

    #[test]
    fn erased_instances_fail_spectral_but_not_the_sweep() {
        let spec = SweepSpec {
            family: SweepFamily::Gaussian,
            grid: vec![50.0],
            n: 12,
            trials: 3,
            algorithms: vec![Algorithm::Spectral, Algorithm::F2f],
            bp_iters: 10,
            bp_window: 0,
            erasure: 0.3,
            seed: 9,
            output: None,
        };
        let r = run_sweep(&spec).unwrap();
        let spectral_row = &r.rows[0];
        assert_eq!(spectral_row.errors, 3);
        assert_eq!(spectral_row.mean_frac_misclassified, None);
        assert!(r.total_errors() >= 3);
    }

    #[test]
    fn crossing_interpolates() {
        let curve = [(10.0, 0.0), (20.0, 0.25), (30.0, 0.75), (40.0, 1.0)];
        let x = crossing_param(&curve).unwrap();
        assert!((x - 25.0).abs() < 1e-12);
        assert_eq!(crossing_param(&[(1.0, 0.0), (2.0, 0.4)]), None);
        assert_eq!(crossing_param(&[(1.0, 0.5), (2.0, 0.5)]), Some(1.0));
    }

    #[test]
    fn spec_roundtrips_through_json() {
        let spec = SweepSpec::desk_default();
        let s = serde_json::to_string(&spec).unwrap();
        let back: SweepSpec = serde_json::from_str(&s).unwrap();
        assert_eq!(back, spec);
        assert_eq!(spec.grid.len(), 11);
        assert_eq!(spec.grid[0], 16.0);
        assert_eq!(*spec.grid.last().unwrap(), 56.0);
        assert!(SweepSpec::preset("paper-fig7").unwrap().n == 1000);
        assert!(SweepSpec::preset("nope").is_none());
    }

    #[test]
    fn manifest_lists_spec_and_versions() {
        let spec = SweepSpec {
            family: SweepFamily::Gaussian,
            grid: vec![30.0],
            n: 8,
            trials: 1,
            algorithms: vec![Algorithm::Thresholding],
            bp_iters: 10,
            bp_window: 0,
            erasure: 0.0,
            seed: 4,
            output: None,
        };
        let r = run_sweep(&spec).unwrap();
        let m = to_manifest_json(&r);
        assert!(m.contains("\"schema_version\": 1"));
        assert!(m.contains("\"family\": \"gaussian\""));
        assert!(m.contains("\"seed\": 4"));
        assert_eq!(to_manifest_json(&r), m);
    }

    #[test]
    fn emitted_files_are_byte_identical_across_reruns() {
        let spec = SweepSpec {
            family: SweepFamily::Bernoulli { q: 0.2 },
            grid: vec![0.7, 0.9],
            n: 10,
            trials: 2,
            algorithms: vec![Algorithm::F2f, Algorithm::Bp],
            bp_iters: 50,
            bp_window: 10,
            erasure: 0.0,
            seed: 77,
            output: None,
        };
        let dir = std::env::temp_dir().join(format!("sweep-test-{}", std::process::id()));
        let base1 = dir.join("run1");
        let base2 = dir.join("run2");
        let r1 = run_sweep(&spec).unwrap();
        let r2 = run_sweep(&spec).unwrap();
        let (c1, j1) = emit_results(&r1, &base1).unwrap();
        let (c2, j2) = emit_results(&r2, &base2).unwrap();
        assert_eq!(std::fs::read(&c1).unwrap(), std::fs::read(&c2).unwrap());
        assert_eq!(std::fs::read(&j1).unwrap(), std::fs::read(&j2).unwrap());
        std::fs::remove_dir_all(&dir).ok();
    }
}
