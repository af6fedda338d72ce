//! Command-line front end for the hidden-cycle recovery toolkit.
//!
//! Every command is deterministic given its arguments and seeds: reruns
//! produce byte-identical files and stdout, so artifacts can be diffed.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use hamcycle::contact_map::{
    balanced_to_instance, ice_balance, load_contact_map, BalancedMap, DEFAULT_ICE_MAX_ITERS,
    DEFAULT_ICE_TOL,
};
use hamcycle::generator::{generate_cycle_instance, generate_path_instance, Truth};
use hamcycle::graph::{EdgeSubset, HamiltonianCycle};
use hamcycle::harness::{emit_results, run_sweep, SweepSpec};
use hamcycle::reductions::{cycle_to_path, path_to_cycle, CycleEstimator, PathEstimator};
use hamcycle::{bp, divergence, greedy, lp, oracle, spectral};
use hamcycle::{WeightModel, WeightedGraph};

#[derive(Parser)]
#[command(
    name = "hamcycle",
    version,
    about = "Recover a hidden Hamiltonian cycle from noisy pairwise scores",
    long_about = "Planted-instance generation, LP/message-passing/greedy/spectral solvers, \
cycle<->path reductions, contact-map scaffolding, and Monte Carlo sweeps.\n\
Model specs look like `gaussian:mu2=24`, `poisson:lambda=6,mu=1`, or \
`bernoulli:p=0.9,q=0.1`, optionally with `,eta=0.2` for erasures."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print divergence thresholds and per-algorithm margins for a model.
    Thresholds(ThresholdsArgs),
    /// Generate a planted instance as CSV plus a truth sidecar.
    Generate(GenerateArgs),
    /// Run one solver on a weights CSV.
    Solve(SolveArgs),
    /// Check the dual certificate of a claimed truth cycle.
    Certify(CertifyArgs),
    /// Recover a path with a cycle solver, or a cycle with a path solver.
    Reduce(ReduceArgs),
    /// Balance a contact map and order its contigs.
    Scaffold(ScaffoldArgs),
    /// Run a Monte Carlo sweep from a JSON spec or a named preset.
    Sweep(SweepArgs),
    /// Inspect brute-force reference data.
    Oracle(OracleArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum AlgoOpt {
    F2f,
    Bp,
    #[value(alias = "gm")]
    GreedyMerging,
    #[value(alias = "threshold")]
    Thresholding,
    #[value(alias = "nn")]
    NearestNeighbor,
    Spectral,
    /// Exhaustive search; tiny instances only.
    Brute,
}

#[derive(Args)]
struct ThresholdsArgs {
    /// Model spec, e.g. `gaussian:mu2=24`.
    #[arg(long)]
    model: String,
    /// Number of vertices the thresholds refer to.
    #[arg(long)]
    n: usize,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    model: String,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Plant a Hamiltonian path instead of a cycle.
    #[arg(long)]
    path: bool,
    /// Weights CSV destination.
    #[arg(long)]
    out: PathBuf,
    /// Truth sidecar destination; defaults to `<out>.truth.json`.
    #[arg(long)]
    truth_out: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long, value_enum)]
    algo: AlgoOpt,
    /// Weights CSV (raw observations, or log-likelihood ratios if no model
    /// is given).
    #[arg(long)]
    input: PathBuf,
    /// When present, weights are passed through this model's log-likelihood
    /// transform before solving.  The spectral solver wants raw weights.
    #[arg(long)]
    model: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Message-passing iteration budget.
    #[arg(long, default_value_t = 1000)]
    bp_iters: usize,
    /// Early-stop window for message passing; 0 disables.
    #[arg(long, default_value_t = 50)]
    bp_window: usize,
    /// Start vertex for the nearest-neighbor walk.
    #[arg(long, default_value_t = 0)]
    start: usize,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CertifyArgs {
    #[arg(long)]
    input: PathBuf,
    /// Truth sidecar (as written by `generate`).
    #[arg(long)]
    truth: PathBuf,
    /// Transform the weights before certification.
    #[arg(long)]
    model: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Direction {
    /// Cycle solver recovers a hidden path.
    C2p,
    /// Path solver recovers a hidden cycle.
    P2c,
}

#[derive(Args)]
struct ReduceArgs {
    #[arg(long, value_enum)]
    direction: Direction,
    /// Inner solver: any cycle algorithm for c2p; `brute` for p2c.
    #[arg(long, value_enum)]
    inner: AlgoOpt,
    #[arg(long)]
    input: PathBuf,
    /// Model for the patch draw (and the input transform).
    #[arg(long)]
    model: String,
    /// Input is already in log-likelihood units; skip the transform.
    #[arg(long)]
    llr_input: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ScaffoldArgs {
    /// Contact-count matrix (dense rows, or `#n=` header plus triplets).
    #[arg(long)]
    counts: PathBuf,
    #[arg(long, value_enum, default_value_t = AlgoOpt::F2f)]
    algo: AlgoOpt,
    /// Recover a contig path instead of a circular order; needs --model.
    #[arg(long, requires = "model")]
    path: bool,
    /// Poisson model; scores balanced weights as log-likelihood ratios and
    /// seeds the path reduction.
    #[arg(long)]
    model: Option<String>,
    #[arg(long, default_value_t = DEFAULT_ICE_MAX_ITERS)]
    balance_max_iters: usize,
    #[arg(long, default_value_t = DEFAULT_ICE_TOL)]
    balance_tol: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Sweep spec JSON.
    #[arg(long, conflicts_with = "preset", required_unless_present = "preset")]
    spec: Option<PathBuf>,
    /// Named preset: `desk` or `paper-fig7`.
    #[arg(long)]
    preset: Option<String>,
    /// Artifact base path; `<base>.csv` and `<base>.json` are written.
    /// Overrides the spec's own output field; defaults to `sweep_results`.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    #[command(subcommand)]
    what: OracleCmd,
}

#[derive(Subcommand)]
enum OracleCmd {
    /// List every vertex of the degree-2 relaxation polytope for small n.
    Vertices {
        #[arg(long)]
        n: usize,
    },
}

/// Truth sidecar schema shared by `generate` and `certify`.
#[derive(Serialize, Deserialize)]
struct TruthFile {
    kind: String,
    order: Vec<usize>,
    model: String,
    seed: u64,
}

fn main() -> Result<()> {
    match Cli::parse().cmd {
        Cmd::Thresholds(a) => thresholds(a),
        Cmd::Generate(a) => generate(a),
        Cmd::Solve(a) => solve(a),
        Cmd::Certify(a) => certify(a),
        Cmd::Reduce(a) => reduce(a),
        Cmd::Scaffold(a) => scaffold(a),
        Cmd::Sweep(a) => sweep(a),
        Cmd::Oracle(a) => match a.what {
            OracleCmd::Vertices { n } => oracle_vertices(n),
        },
    }
}

fn parse_model(s: &str) -> Result<WeightModel> {
    s.parse::<WeightModel>()
        .map_err(|e| anyhow!("bad --model `{s}`: {e}"))
}

fn read_graph(path: &Path) -> Result<WeightedGraph> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading weights from {}", path.display()))?;
    WeightedGraph::from_csv_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(out: Option<&Path>, value: &serde_json::Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn subset_json(x: &EdgeSubset) -> serde_json::Value {
    let edges: Vec<serde_json::Value> = x
        .support_edges()
        .map(|(i, j)| json!([i, j, x.value(i, j).expect("support edge in range")]))
        .collect();
    json!(edges)
}

fn thresholds(a: ThresholdsArgs) -> Result<()> {
    let m = parse_model(&a.model)?;
    let report = divergence::report(&m, a.n)?;
    let margins = divergence::sufficient_conditions(&m, a.n)?;
    emit(
        None,
        &json!({
            "model": m.to_string(),
            "n": a.n,
            "report": report,
            "margins": margins,
        }),
    )
}

fn generate(a: GenerateArgs) -> Result<()> {
    let m = parse_model(&a.model)?;
    let inst = if a.path {
        generate_path_instance(a.n, &m, a.seed)?
    } else {
        generate_cycle_instance(a.n, &m, a.seed)?
    };
    fs::write(&a.out, inst.graph.to_csv_string())
        .with_context(|| format!("writing {}", a.out.display()))?;
    let (kind, order) = match &inst.truth {
        Truth::Cycle(c) => ("cycle", c.order().to_vec()),
        Truth::Path(p) => ("path", p.order().to_vec()),
    };
    let truth_path = a
        .truth_out
        .unwrap_or_else(|| PathBuf::from(format!("{}.truth.json", a.out.display())));
    let truth = TruthFile { kind: kind.into(), order, model: m.to_string(), seed: a.seed };
    let mut text = serde_json::to_string_pretty(&truth)?;
    text.push('\n');
    fs::write(&truth_path, text)
        .with_context(|| format!("writing {}", truth_path.display()))?;
    println!("wrote {} and {}", a.out.display(), truth_path.display());
    Ok(())
}

fn maybe_transform(g: WeightedGraph, model: Option<&str>) -> Result<(WeightedGraph, Option<WeightModel>)> {
    match model {
        Some(s) => {
            let m = parse_model(s)?;
            let t = m.loglik_transform(&g)?;
            Ok((t, Some(m)))
        }
        None => Ok((g, None)),
    }
}

fn solve(a: SolveArgs) -> Result<()> {
    let raw = read_graph(&a.input)?;
    let (g, _) = maybe_transform(raw, a.model.as_deref())?;
    let result = match a.algo {
        AlgoOpt::F2f => {
            let sol = lp::solve_f2f(&lp::F2fProblem::new(g.clone())?)?;
            json!({
                "algorithm": "f2f",
                "n": g.n(),
                "objective": sol.objective,
                "vertex_class": sol.vertex_class,
                "support": subset_json(&sol.x),
                "cycle": sol.as_hamiltonian_cycle().map(|c| c.order().to_vec()),
            })
        }
        AlgoOpt::Bp => {
            let decision = bp::bp_run(&g, a.bp_iters, a.bp_window)?;
            json!({
                "algorithm": "bp",
                "n": g.n(),
                "iteration_budget": a.bp_iters,
                "support": subset_json(&decision),
            })
        }
        AlgoOpt::GreedyMerging => {
            let x = greedy::greedy_merging(&g)?;
            json!({ "algorithm": "greedy-merging", "n": g.n(), "support": subset_json(&x) })
        }
        AlgoOpt::Thresholding => {
            let x = greedy::simple_thresholding(&g)?;
            json!({ "algorithm": "thresholding", "n": g.n(), "support": subset_json(&x) })
        }
        AlgoOpt::NearestNeighbor => cycle_report("nearest-neighbor", &greedy::nearest_neighbor(&g, a.start)?, &g)?,
        AlgoOpt::Spectral => {
            let emb = spectral::spectral_embed(&g)?;
            let mut v = cycle_report("spectral", &emb.cycle, &g)?;
            v["eigenvalues"] = json!(emb.eigenvalues);
            v
        }
        AlgoOpt::Brute => cycle_report("brute", &lp::brute_force_tsp(&g)?, &g)?,
    };
    emit(a.out.as_deref(), &result)
}

fn cycle_report(name: &str, c: &HamiltonianCycle, g: &WeightedGraph) -> Result<serde_json::Value> {
    Ok(json!({
        "algorithm": name,
        "n": c.n(),
        "order": c.order().to_vec(),
        "weight": c.weight_in(g)?,
    }))
}

fn read_truth_cycle(path: &Path) -> Result<HamiltonianCycle> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading truth from {}", path.display()))?;
    let truth: TruthFile = serde_json::from_str(&text)
        .with_context(|| format!("parsing {}", path.display()))?;
    if truth.kind != "cycle" {
        bail!("certification needs a cycle truth, found `{}`", truth.kind);
    }
    Ok(HamiltonianCycle::new(truth.order)?)
}

fn certify(a: CertifyArgs) -> Result<()> {
    let raw = read_graph(&a.input)?;
    let (g, _) = maybe_transform(raw, a.model.as_deref())?;
    let truth = read_truth_cycle(&a.truth)?;
    let cert = lp::certify(&g, &truth)?;
    emit(
        a.out.as_deref(),
        &json!({
            "valid": cert.valid,
            "violating_edges": cert.violating_edges,
            "vertex_potentials": cert.u,
        }),
    )
}

fn cycle_estimator(inner: AlgoOpt) -> Result<CycleEstimator> {
    Ok(match inner {
        AlgoOpt::Brute => CycleEstimator::brute_force(),
        AlgoOpt::F2f => CycleEstimator::lp(),
        AlgoOpt::NearestNeighbor => CycleEstimator::nearest_neighbor(),
        AlgoOpt::Spectral => CycleEstimator::spectral(),
        other => bail!("{other:?} cannot serve as an inner cycle solver"),
    })
}

fn reduce(a: ReduceArgs) -> Result<()> {
    let raw = read_graph(&a.input)?;
    let m = parse_model(&a.model)?;
    let g = if a.llr_input { raw } else { m.loglik_transform(&raw)? };
    let result = match a.direction {
        Direction::C2p => {
            let est = cycle_estimator(a.inner)?;
            let path = cycle_to_path(&g, &est, &m, a.seed)?;
            json!({
                "direction": "c2p",
                "inner": est.name(),
                "kind": "path",
                "order": path.order().to_vec(),
                "endpoints": [path.endpoints().0, path.endpoints().1],
                "weight": path.weight_in(&g)?,
            })
        }
        Direction::P2c => {
            let est = match a.inner {
                AlgoOpt::Brute => PathEstimator::brute_force(),
                other => bail!("{other:?} cannot serve as an inner path solver"),
            };
            let cycle = path_to_cycle(&g, &est, &m, a.seed)?;
            json!({
                "direction": "p2c",
                "inner": est.name(),
                "kind": "cycle",
                "order": cycle.order().to_vec(),
                "weight": cycle.weight_in(&g)?,
            })
        }
    };
    emit(a.out.as_deref(), &result)
}

fn balance_json(b: &BalancedMap) -> serde_json::Value {
    json!({
        "converged": b.converged,
        "iterations": b.iterations,
        "deviation": b.deviation,
        "kept": b.kept,
        "dropped": b.dropped,
    })
}

fn scaffold(a: ScaffoldArgs) -> Result<()> {
    let map = load_contact_map(&a.counts)?;
    let balanced = ice_balance(&map, a.balance_max_iters, a.balance_tol)?;
    let model = a.model.as_deref().map(parse_model).transpose()?;
    let g = balanced_to_instance(&balanced, model.as_ref())?;
    let to_original = |kept_order: &[usize]| -> Vec<usize> {
        kept_order.iter().map(|&v| balanced.kept[v]).collect()
    };
    let result = if a.path {
        let m = model.ok_or_else(|| anyhow!("--path needs --model for the patch draw"))?;
        let est = cycle_estimator(a.algo)?;
        let path = cycle_to_path(&g, &est, &m, a.seed)?;
        json!({
            "contigs": map.n(),
            "balance": balance_json(&balanced),
            "algorithm": est.name(),
            "kind": "path",
            "order": to_original(path.order()),
        })
    } else {
        let est = cycle_estimator(a.algo)?;
        let cycle = est.run(&g, a.seed)?;
        json!({
            "contigs": map.n(),
            "balance": balance_json(&balanced),
            "algorithm": est.name(),
            "kind": "cycle",
            "order": to_original(cycle.order()),
        })
    };
    emit(a.out.as_deref(), &result)
}

fn sweep(a: SweepArgs) -> Result<()> {
    let spec: SweepSpec = match (&a.spec, &a.preset) {
        (Some(path), None) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading sweep spec {}", path.display()))?;
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?
        }
        (None, Some(name)) => SweepSpec::preset(name)
            .ok_or_else(|| anyhow!("unknown preset `{name}`; try `desk` or `paper-fig7`"))?,
        _ => bail!("give exactly one of --spec or --preset"),
    };
    let result = run_sweep(&spec)?;
    let base = a
        .out
        .or_else(|| result.spec.output.clone())
        .unwrap_or_else(|| PathBuf::from("sweep_results"));
    let (csv_path, json_path) = emit_results(&result, &base)?;
    println!(
        "{} rows, {} solver errors -> {} {}",
        result.rows.len(),
        result.total_errors(),
        csv_path.display(),
        json_path.display()
    );
    Ok(())
}

fn oracle_vertices(n: usize) -> Result<()> {
    let catalog = oracle::enumerate_f2f_vertices(n)?;
    let vertices: Vec<serde_json::Value> = catalog
        .vertices()
        .iter()
        .map(|v| {
            let (class, _) = lp::classify_support(v).expect("catalog vertices are well-formed");
            json!({ "class": class, "edges": subset_json(v) })
        })
        .collect();
    let integral = catalog.vertices().iter().filter(|v| v.is_integral()).count();
    emit(
        None,
        &json!({
            "n": n,
            "count": catalog.len(),
            "integral": integral,
            "half_integral": catalog.len() - integral,
            "vertices": vertices,
        }),
    )
}
