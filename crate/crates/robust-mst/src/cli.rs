//! Command-line interface: generate instances, solve them, re-evaluate
//! stored solutions, and run benchmark suites.
//!
//! Exit codes form the script-facing contract:
//!
//! | code | meaning                                                      |
//! |------|--------------------------------------------------------------|
//! | 0    | success (solve: optimal or rounding success)                 |
//! | 1    | internal error (numerical failure, unwritable output)        |
//! | 2    | invalid parameters, unreadable input, algorithm/instance or  |
//! |      | solution/instance mismatch, negative costs on an LP route    |
//! | 3    | a blowup cap: scenario enumeration or tree enumeration limit |
//! | 4    | unsolved: disconnected instance or rounding restarts exhausted |
//! | 5    | time limit hit; the report carries the incumbent             |
//!
//! Reports go to `--out` or stdout; stderr carries only human-readable
//! progress and error text, never report JSON. Seeds default to a fixed
//! constant so repeated runs are byte-identical; `--random-seed` opts out.
//! `wall_time_ms` stays 0.0 unless `--timings` is given, for the same
//! reason.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::exact::{
    baseline_mean_scenario, branch_and_bound_minmax, brute_force_2stage, brute_force_minmax,
    brute_force_minmax_limited, ExactError,
};
use crate::graph::EdgeSet;
use crate::instances::{
    evaluate_2stage, evaluate_minmax, evaluate_regret, load_instance, save_instance, Instance,
    InstanceError, MinMaxInstance, TwoStageInstance, TwoStageSolution,
};
use crate::lp::{LpError, LpEvent, DEFAULT_TOL_REL};
use crate::reductions::{
    gen_3sat, gen_label_cover_with_cap, gen_random, gen_set_cover, parse_dimacs,
    LabelCoverInstance, ReductionError, SetCoverInstance, DEFAULT_SCENARIO_CAP,
};
use crate::report::{canonical_json_pretty, SolutionReport};
use crate::rng::{splitmix64, DEFAULT_SEED};
use crate::rounding::{
    solve_2stage_approx_traced, solve_minmax_approx_traced, IterationRecord, RoundingError,
    RoundingParams,
};

const EXIT_INTERNAL: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_BLOWUP: u8 = 3;
const EXIT_UNSOLVED: u8 = 4;
const EXIT_TIME_LIMIT: u8 = 5;

/// Tree-enumeration budget for the optional oracle column in `bench`.
/// Deliberately smaller than the library default so benchmark tables stay
/// cheap; larger instances simply leave `opt` empty.
const BENCH_ORACLE_TREE_LIMIT: u64 = 1_000_000;

#[derive(Parser)]
#[command(
    name = "robust-mst",
    version,
    about = "Robust spanning trees under discrete cost scenarios"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write an instance JSON file plus a metadata sidecar.
    Generate(GenerateArgs),
    /// Solve an instance and emit a solution report.
    Solve(RunConfig),
    /// Recompute the value of a stored report under a chosen objective.
    Eval(EvalArgs),
    /// Run a manifest of (instance, algorithm, seeds) rows into a CSV table.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, Eq, PartialEq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum Algo {
    Exact,
    Bnb,
    LpRound,
    Baseline,
    #[value(name = "exact-2stage")]
    #[serde(rename = "exact-2stage")]
    Exact2stage,
    #[value(name = "lp-round-2stage")]
    #[serde(rename = "lp-round-2stage")]
    LpRound2stage,
}

impl Algo {
    fn id(self) -> &'static str {
        match self {
            Algo::Exact => "exact",
            Algo::Bnb => "bnb",
            Algo::LpRound => "lp-round",
            Algo::Baseline => "baseline",
            Algo::Exact2stage => "exact-2stage",
            Algo::LpRound2stage => "lp-round-2stage",
        }
    }
}

#[derive(Clone, Copy, Debug, Eq, PartialEq, ValueEnum)]
enum Objective {
    Minmax,
    Regret,
    #[value(name = "2stage")]
    TwoStage,
}

impl Objective {
    fn id(self) -> &'static str {
        match self {
            Objective::Minmax => "minmax",
            Objective::Regret => "regret",
            Objective::TwoStage => "2stage",
        }
    }
}

#[derive(Clone, Copy, Debug, Eq, PartialEq, ValueEnum)]
enum GenKind {
    Random,
    Setcover,
    Labelcover,
    #[value(name = "3sat")]
    ThreeSat,
}

#[derive(Args)]
struct GenerateArgs {
    /// Instance family to generate.
    #[arg(long)]
    kind: GenKind,
    /// Instance JSON output path.
    #[arg(long)]
    out: PathBuf,
    /// Metadata sidecar path (default: `<out stem>.meta.json`).
    #[arg(long)]
    meta: Option<PathBuf>,
    /// Problem description JSON (setcover, labelcover).
    #[arg(long)]
    spec: Option<PathBuf>,
    /// DIMACS CNF file (3sat).
    #[arg(long)]
    cnf: Option<PathBuf>,
    /// Scenario bundle size (labelcover).
    #[arg(long, default_value_t = 2)]
    g: usize,
    /// Abort labelcover generation past this many scenarios.
    #[arg(long, default_value_t = DEFAULT_SCENARIO_CAP)]
    scenario_cap: u64,
    /// Vertices (random).
    #[arg(long)]
    n: Option<usize>,
    /// Edges (random).
    #[arg(long)]
    m: Option<usize>,
    /// Scenarios (random).
    #[arg(long)]
    k: Option<usize>,
    /// Smallest integer cost (random).
    #[arg(long, default_value_t = 0)]
    cost_lo: i64,
    /// Largest integer cost (random).
    #[arg(long, default_value_t = 9)]
    cost_hi: i64,
    /// Generate a two-stage instance (random).
    #[arg(long)]
    two_stage: bool,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Derive the seed from the clock instead of the fixed default.
    #[arg(long)]
    random_seed: bool,
}

#[derive(Args)]
struct RunConfig {
    /// Instance JSON path.
    instance: PathBuf,
    /// Algorithm: exact | bnb | lp-round | baseline | exact-2stage | lp-round-2stage.
    #[arg(long)]
    algo: Algo,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Derive the seed from the clock instead of the fixed default.
    #[arg(long)]
    random_seed: bool,
    /// Relative tolerance of the LP budget bisection.
    #[arg(long, default_value_t = DEFAULT_TOL_REL)]
    tol: f64,
    /// Rounding restarts after a failed attempt (lp-round*).
    #[arg(long, default_value_t = 3)]
    max_restarts: u32,
    /// Give up after this many seconds (bnb; the report keeps the incumbent).
    #[arg(long)]
    time_limit_s: Option<f64>,
    /// Worker threads for the two-stage separation oracle; reports are
    /// byte-identical for any value.
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Report path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Measure wall time (makes reports non-reproducible).
    #[arg(long)]
    timings: bool,
    /// -v: LP probe log; -vv: also cut rows and rounding iterations (stderr).
    #[arg(short = 'v', long = "verbose", action = ArgAction::Count)]
    verbose: u8,
}

#[derive(Args)]
struct EvalArgs {
    /// Instance JSON path.
    instance: PathBuf,
    /// Solution report JSON (as written by `solve`).
    #[arg(long)]
    solution: PathBuf,
    /// Objective to recompute: minmax | regret | 2stage.
    #[arg(long)]
    objective: Objective,
    /// Report path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Manifest JSON: {"runs": [{"instance": path, "algo": id, "seeds": [..]}]}.
    /// Relative instance paths resolve against the manifest's directory.
    manifest: PathBuf,
    /// CSV path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Measure wall time per row (makes tables non-reproducible).
    #[arg(long)]
    timings: bool,
}

#[derive(Deserialize)]
struct BenchManifest {
    runs: Vec<BenchRunSpec>,
}

#[derive(Deserialize)]
struct BenchRunSpec {
    instance: String,
    algo: Algo,
    seeds: Vec<u64>,
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<InstanceError> for Failure {
    fn from(e: InstanceError) -> Self {
        let code = match e {
            InstanceError::Disconnected => EXIT_UNSOLVED,
            _ => EXIT_INVALID,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<ExactError> for Failure {
    fn from(e: ExactError) -> Self {
        let code = match e {
            ExactError::TooManyTrees { .. } | ExactError::InstanceTooLarge { .. } => EXIT_BLOWUP,
            _ => EXIT_INVALID,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<LpError> for Failure {
    fn from(e: LpError) -> Self {
        let code = match e {
            LpError::NegativeCosts => EXIT_INVALID,
            LpError::NumericalFailure { .. } => EXIT_INTERNAL,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<RoundingError> for Failure {
    fn from(e: RoundingError) -> Self {
        let code = match &e {
            RoundingError::RestartsExhausted { .. } => EXIT_UNSOLVED,
            RoundingError::NegativeCosts | RoundingError::ParamsInadmissible { .. } => {
                EXIT_INVALID
            }
            RoundingError::IncompatibleSolution => EXIT_INTERNAL,
            RoundingError::Lp(inner) => Failure::from(inner.clone()).code,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<ReductionError> for Failure {
    fn from(e: ReductionError) -> Self {
        let code = match e {
            ReductionError::ScenarioBlowup { .. } => EXIT_BLOWUP,
            _ => EXIT_INVALID,
        };
        Failure::new(code, e.to_string())
    }
}

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Generate(args) => cmd_generate(args),
        Command::Solve(cfg) => cmd_solve(cfg),
        Command::Eval(args) => cmd_eval(args),
        Command::Bench(args) => cmd_bench(args),
    }
}

fn read_bytes(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path)
        .map_err(|e| Failure::new(EXIT_INVALID, format!("cannot read {}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text)
        .map_err(|e| Failure::new(EXIT_INTERNAL, format!("cannot write {}: {e}", path.display())))
}

/// Report or table to `--out`, else stdout. The text already ends with a
/// newline, so this never adds one.
fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => write_text(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn entropy_seed() -> u64 {
    let nanos = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_nanos() as u64)
        .unwrap_or(0);
    splitmix64(nanos ^ u64::from(std::process::id()))
}

fn require<T>(value: Option<T>, flag: &str, kind: &str) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::new(EXIT_INVALID, format!("--kind {kind} requires {flag}")))
}

fn cmd_generate(args: GenerateArgs) -> Result<u8, Failure> {
    let seed = if args.random_seed {
        entropy_seed()
    } else {
        args.seed
    };
    let (instance, meta_json) = match args.kind {
        GenKind::Random => {
            let n = require(args.n, "--n", "random")?;
            let m = require(args.m, "--m", "random")?;
            let k = require(args.k, "--k", "random")?;
            let (inst, meta) =
                gen_random(n, m, k, (args.cost_lo, args.cost_hi), args.two_stage, seed)?;
            (inst, canonical_json_pretty(&meta))
        }
        GenKind::Setcover => {
            let path = require(args.spec.as_deref(), "--spec", "setcover")?;
            let sc = SetCoverInstance::from_json(&read_bytes(path)?)?;
            let (inst, meta) = gen_set_cover(&sc);
            (Instance::TwoStage(inst), canonical_json_pretty(&meta))
        }
        GenKind::Labelcover => {
            let path = require(args.spec.as_deref(), "--spec", "labelcover")?;
            let lc = LabelCoverInstance::from_json(&read_bytes(path)?)?;
            let (inst, meta) = gen_label_cover_with_cap(&lc, args.g, args.scenario_cap)?;
            (Instance::MinMax(inst), canonical_json_pretty(&meta))
        }
        GenKind::ThreeSat => {
            let path = require(args.cnf.as_deref(), "--cnf", "3sat")?;
            let text = String::from_utf8(read_bytes(path)?).map_err(|e| {
                Failure::new(EXIT_INVALID, format!("{} is not UTF-8: {e}", path.display()))
            })?;
            let phi = parse_dimacs(&text)?;
            let (inst, meta) = gen_3sat(&phi);
            (Instance::MinMax(inst), canonical_json_pretty(&meta))
        }
    };
    write_text(&args.out, &save_instance(&instance))?;
    let meta_path = args
        .meta
        .clone()
        .unwrap_or_else(|| args.out.with_extension("meta.json"));
    write_text(&meta_path, &meta_json)?;
    let (vertices, edges, scenarios) = match &instance {
        Instance::MinMax(i) => (i.num_vertices(), i.num_edges(), i.num_scenarios()),
        Instance::TwoStage(i) => (i.num_vertices(), i.num_edges(), i.num_scenarios()),
    };
    println!(
        "wrote {}: {vertices} vertices, {edges} edges, {scenarios} scenarios -> {} (meta: {})",
        instance.name(),
        args.out.display(),
        meta_path.display()
    );
    Ok(0)
}

struct ExecOpts {
    seed: u64,
    tol: f64,
    max_restarts: u32,
    time_limit: Option<Duration>,
    threads: usize,
    timings: bool,
}

#[derive(Debug)]
struct RunOutput {
    report: SolutionReport,
    exit: u8,
}

fn want_minmax(inst: &Instance, algo: Algo) -> Result<&MinMaxInstance, Failure> {
    match inst {
        Instance::MinMax(i) => Ok(i),
        Instance::TwoStage(_) => Err(Failure::new(
            EXIT_INVALID,
            format!("{} needs a min-max instance, got a two-stage one", algo.id()),
        )),
    }
}

fn want_2stage(inst: &Instance, algo: Algo) -> Result<&TwoStageInstance, Failure> {
    match inst {
        Instance::TwoStage(i) => Ok(i),
        Instance::MinMax(_) => Err(Failure::new(
            EXIT_INVALID,
            format!("{} needs a two-stage instance, got a min-max one", algo.id()),
        )),
    }
}

fn reject_negative_costs(negative: bool, algo: Algo) -> Result<(), Failure> {
    if negative {
        return Err(Failure::new(
            EXIT_INVALID,
            format!(
                "{}: NegativeCosts — negative-cost instances only route to exact or bnb",
                algo.id()
            ),
        ));
    }
    Ok(())
}

fn blank_report(algorithm: &str, seed: u64) -> SolutionReport {
    SolutionReport {
        algorithm: algorithm.to_string(),
        completions: None,
        first_stage_edges: None,
        iterations: 0,
        lp_bound: None,
        seed,
        tree_edges: None,
        value: 0.0,
        wall_time_ms: 0.0,
    }
}

/// Runs one algorithm on one instance. Shared by `solve` and `bench` so the
/// two agree on compatibility rules, guards, and report contents.
fn execute(inst: &Instance, algo: Algo, opts: &ExecOpts, verbose: u8) -> Result<RunOutput, Failure> {
    let mut lp_trace = |event: &LpEvent| match *event {
        LpEvent::Probe {
            budget,
            feasible,
            pool_size,
            rounds,
        } if verbose >= 1 => {
            eprintln!("lp probe: budget={budget} feasible={feasible} cuts={pool_size} rounds={rounds}");
        }
        LpEvent::Cut {
            budget,
            scenario,
            value,
            ref side,
        } if verbose >= 2 => {
            eprintln!("lp cut: budget={budget} scenario={scenario:?} weight={value} side={side:?}");
        }
        _ => {}
    };
    let mut rounding_trace = |attempt: u32, rec: &IterationRecord| {
        if verbose >= 2 {
            eprintln!(
                "rounding: attempt={attempt} iteration={} components {}->{} connected={}",
                rec.iteration, rec.components_before, rec.components_after, rec.connected
            );
        }
    };

    let start = Instant::now();
    let (mut report, exit) = match algo {
        Algo::Exact => {
            let i = want_minmax(inst, algo)?;
            let res = brute_force_minmax(i)?;
            let mut report = blank_report("exact", opts.seed);
            report.iterations = res.nodes_explored;
            report.tree_edges = Some(res.witness.indices());
            report.value = res.value;
            (report, 0)
        }
        Algo::Bnb => {
            let i = want_minmax(inst, algo)?;
            let out = branch_and_bound_minmax(i, opts.time_limit);
            let mut report = blank_report("bnb", opts.seed);
            report.iterations = out.nodes_explored;
            report.tree_edges = Some(out.tree.indices());
            report.value = out.value;
            let exit = if out.optimal { 0 } else { EXIT_TIME_LIMIT };
            (report, exit)
        }
        Algo::Baseline => {
            let i = want_minmax(inst, algo)?;
            reject_negative_costs(i.has_negative_costs(), algo)?;
            let (tree, value) = baseline_mean_scenario(i)?;
            let mut report = blank_report("baseline", opts.seed);
            report.tree_edges = Some(tree.indices());
            report.value = value;
            (report, 0)
        }
        Algo::LpRound => {
            let i = want_minmax(inst, algo)?;
            reject_negative_costs(i.has_negative_costs(), algo)?;
            let params = RoundingParams {
                seed: opts.seed,
                max_restarts: opts.max_restarts,
                tol_rel: opts.tol,
                threads: opts.threads,
                ..RoundingParams::default()
            };
            let approx = solve_minmax_approx_traced(i, &params, &mut lp_trace, &mut rounding_trace)?;
            let mut report = blank_report("lp-round", approx.seed);
            report.iterations = u64::from(approx.iterations_used);
            report.lp_bound = Some(approx.lp_bound);
            report.tree_edges = Some(approx.tree.indices());
            report.value = approx.value;
            (report, 0)
        }
        Algo::Exact2stage => {
            let i = want_2stage(inst, algo)?;
            let res = brute_force_2stage(i)?;
            let mut report = blank_report("exact-2stage", opts.seed);
            report.iterations = res.nodes_explored;
            report.first_stage_edges = Some(res.witness.first_stage.indices());
            report.completions = Some(completion_map(&res.witness));
            report.value = res.value;
            (report, 0)
        }
        Algo::LpRound2stage => {
            let i = want_2stage(inst, algo)?;
            reject_negative_costs(i.has_negative_costs(), algo)?;
            let params = RoundingParams {
                seed: opts.seed,
                max_restarts: opts.max_restarts,
                tol_rel: opts.tol,
                threads: opts.threads,
                ..RoundingParams::default()
            };
            let approx = solve_2stage_approx_traced(i, &params, &mut lp_trace, &mut rounding_trace)?;
            let mut report = blank_report("lp-round-2stage", approx.seed);
            report.iterations = u64::from(approx.iterations_used);
            report.lp_bound = Some(approx.lp_bound);
            report.first_stage_edges = Some(approx.solution.first_stage.indices());
            report.completions = Some(completion_map(&approx.solution));
            report.value = approx.value;
            (report, 0)
        }
    };
    if opts.timings {
        report.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    }
    Ok(RunOutput { report, exit })
}

fn completion_map(sol: &TwoStageSolution) -> BTreeMap<String, Vec<usize>> {
    sol.completions
        .iter()
        .enumerate()
        .map(|(s, edges)| (s.to_string(), edges.indices()))
        .collect()
}

fn cmd_solve(cfg: RunConfig) -> Result<u8, Failure> {
    if !(cfg.tol.is_finite() && cfg.tol > 0.0) {
        return Err(Failure::new(EXIT_INVALID, "--tol must be positive"));
    }
    if cfg.threads == 0 {
        return Err(Failure::new(EXIT_INVALID, "--threads must be at least 1"));
    }
    let time_limit = match cfg.time_limit_s {
        None => None,
        Some(t) if t.is_finite() && t > 0.0 => Some(Duration::from_secs_f64(t)),
        Some(_) => {
            return Err(Failure::new(EXIT_INVALID, "--time-limit-s must be positive"));
        }
    };
    let inst = load_instance(&read_bytes(&cfg.instance)?)?;
    let seed = if cfg.random_seed {
        entropy_seed()
    } else {
        cfg.seed
    };
    let opts = ExecOpts {
        seed,
        tol: cfg.tol,
        max_restarts: cfg.max_restarts,
        time_limit,
        threads: cfg.threads,
        timings: cfg.timings,
    };
    let out = execute(&inst, cfg.algo, &opts, cfg.verbose)?;
    emit(&out.report.to_canonical_json(), cfg.out.as_deref())?;
    if out.exit == EXIT_TIME_LIMIT {
        eprintln!("time limit reached; report carries the incumbent");
    }
    Ok(out.exit)
}

fn edge_set_from(report_edges: &[usize], num_edges: usize) -> Result<EdgeSet, Failure> {
    if let Some(&bad) = report_edges.iter().find(|&&e| e >= num_edges) {
        return Err(Failure::new(
            EXIT_INVALID,
            format!("solution edge {bad} is out of range for this instance ({num_edges} edges)"),
        ));
    }
    Ok(EdgeSet::from_indices(num_edges, report_edges.iter().copied()))
}

fn cmd_eval(args: EvalArgs) -> Result<u8, Failure> {
    let inst = load_instance(&read_bytes(&args.instance)?)?;
    let stored = SolutionReport::from_json(&read_bytes(&args.solution)?)
        .map_err(|e| Failure::new(EXIT_INVALID, format!("invalid solution file: {e}")))?;
    let mut report = blank_report(&format!("eval-{}", args.objective.id()), stored.seed);
    match (args.objective, &inst) {
        (Objective::Minmax | Objective::Regret, Instance::MinMax(i)) => {
            let edges = stored.tree_edges.as_deref().ok_or_else(|| {
                Failure::new(EXIT_INVALID, "solution report has no tree_edges")
            })?;
            let tree = edge_set_from(edges, i.num_edges())?;
            report.value = match args.objective {
                Objective::Minmax => evaluate_minmax(i, &tree)?,
                _ => evaluate_regret(i, &tree)?,
            };
            report.tree_edges = Some(tree.indices());
        }
        (Objective::TwoStage, Instance::TwoStage(i)) => {
            let first = stored.first_stage_edges.as_deref().ok_or_else(|| {
                Failure::new(EXIT_INVALID, "solution report has no first_stage_edges")
            })?;
            let map = stored.completions.as_ref().ok_or_else(|| {
                Failure::new(EXIT_INVALID, "solution report has no completions")
            })?;
            let first_stage = edge_set_from(first, i.num_edges())?;
            let mut completions = vec![EdgeSet::new(i.num_edges()); i.num_scenarios()];
            for (key, edges) in map {
                let s: usize = key.parse().map_err(|_| {
                    Failure::new(EXIT_INVALID, format!("completion key `{key}` is not a scenario index"))
                })?;
                if s >= i.num_scenarios() {
                    return Err(Failure::new(
                        EXIT_INVALID,
                        format!("completion key {s} exceeds the {} scenarios", i.num_scenarios()),
                    ));
                }
                completions[s] = edge_set_from(edges, i.num_edges())?;
            }
            let sol = TwoStageSolution {
                first_stage,
                completions,
            };
            report.value = evaluate_2stage(i, &sol)?;
            report.first_stage_edges = Some(sol.first_stage.indices());
            report.completions = Some(completion_map(&sol));
        }
        (objective, _) => {
            return Err(Failure::new(
                EXIT_INVALID,
                format!(
                    "objective {} does not match this instance kind",
                    objective.id()
                ),
            ));
        }
    }
    emit(&report.to_canonical_json(), args.out.as_deref())?;
    Ok(0)
}

/// Best-effort exact value for the `opt` column; `None` when the instance
/// is beyond the (deliberately small) oracle budgets.
fn oracle_value(inst: &Instance) -> Option<f64> {
    match inst {
        Instance::MinMax(i) => brute_force_minmax_limited(i, BENCH_ORACLE_TREE_LIMIT)
            .ok()
            .map(|r| r.value),
        Instance::TwoStage(i) => brute_force_2stage(i).ok().map(|r| r.value),
    }
}

fn ratio_cell(value: f64, opt: Option<f64>) -> Option<f64> {
    match opt {
        Some(o) if o > 0.0 => Some(value / o),
        Some(o) if o == 0.0 && value == 0.0 => Some(1.0),
        _ => None,
    }
}

fn csv_number(x: f64) -> String {
    format!("{x}")
}

fn csv_optional(x: Option<f64>) -> String {
    x.map(csv_number).unwrap_or_default()
}

fn cmd_bench(args: BenchArgs) -> Result<u8, Failure> {
    let manifest: BenchManifest = serde_json::from_slice(&read_bytes(&args.manifest)?)
        .map_err(|e| Failure::new(EXIT_INVALID, format!("invalid manifest: {e}")))?;
    let base = args
        .manifest
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));

    let mut instances: HashMap<String, Instance> = HashMap::new();
    let mut rows: Vec<(String, Algo, u64)> = Vec::new();
    for run in &manifest.runs {
        if !instances.contains_key(&run.instance) {
            let path = if Path::new(&run.instance).is_absolute() {
                PathBuf::from(&run.instance)
            } else {
                base.join(&run.instance)
            };
            let inst = load_instance(&read_bytes(&path)?)?;
            instances.insert(run.instance.clone(), inst);
        }
        for &seed in &run.seeds {
            rows.push((run.instance.clone(), run.algo, seed));
        }
    }
    // Schedule-independent output: sort rows by the columns they print.
    rows.sort_by(|a, b| {
        let name = |r: &(String, Algo, u64)| instances[&r.0].name().to_string();
        name(a)
            .cmp(&name(b))
            .then_with(|| a.1.id().cmp(b.1.id()))
            .then(a.2.cmp(&b.2))
    });

    let mut oracle_cache: HashMap<String, Option<f64>> = HashMap::new();
    let mut csv = String::from("instance,algo,seed,value,lp_bound,opt,ratio,time_ms\n");
    for (key, algo, seed) in rows {
        let inst = &instances[&key];
        let opts = ExecOpts {
            seed,
            tol: DEFAULT_TOL_REL,
            max_restarts: 3,
            time_limit: None,
            threads: 1,
            timings: args.timings,
        };
        let out = execute(inst, algo, &opts, 0)?;
        let opt = *oracle_cache
            .entry(key.clone())
            .or_insert_with(|| oracle_value(inst));
        let ratio = ratio_cell(out.report.value, opt);
        csv.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            inst.name(),
            algo.id(),
            seed,
            csv_number(out.report.value),
            csv_optional(out.report.lp_bound),
            csv_optional(opt),
            csv_optional(ratio),
            csv_number(out.report.wall_time_ms),
        ));
    }
    emit(&csv, args.out.as_deref())?;
    Ok(0)
}
