//! Command-line front end: solve, exact, verify, gen and bench.
//!
//! Every command except `gen` writes exactly one JSON report to stdout. The
//! exit code is the success channel:
//!
//! | code | meaning                                  |
//! |------|------------------------------------------|
//! | 0    | success                                  |
//! | 1    | verification failed                      |
//! | 2    | infeasible (no radius, or forced radius too small) |
//! | 3    | invalid input or incompatible algorithm  |
//! | 4    | oracle enumeration budget exceeded       |
//! | 5    | internal solver failure                  |

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use fkso_core::fks::{solve_fks, solve_fks_at_radius};
use fkso_core::fkso::{solve_fkso, solve_fkso_at_radius, FksoRadiusOutcome, Strategy};
use fkso_core::instance::{gen_gap_instance, gen_limit_instance, gen_random_instance, load_instance, save_instance};
use fkso_core::oracle::{exact_opt, OracleError, OracleResult, DEFAULT_MAX_SUBSETS};
use fkso_core::solution::{check_solution, dilation, Solution};
use fkso_core::ufkso::{solve_ufkso, solve_ufkso_at_radius, UfksoRadiusOutcome};
use fkso_core::{Instance, SolveError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_INVALID: i32 = 3;
pub const EXIT_ORACLE_BUDGET: i32 = 4;
pub const EXIT_INTERNAL: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "fkso", version, about = "Fault-tolerant k-supplier with outliers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a solver on an instance file.
    Solve(SolveArgs),
    /// Exhaustive optimum for a small instance.
    Exact(ExactArgs),
    /// Recheck a solution (or a solve report) against an instance.
    Verify(VerifyArgs),
    /// Write a generated instance.
    Gen(GenArgs),
    /// Solve a batch of random instances against the oracle.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    Fks,
    Ufkso,
    Fkso,
}

impl Algorithm {
    fn name(self) -> &'static str {
        match self {
            Algorithm::Fks => "fks",
            Algorithm::Ufkso => "ufkso",
            Algorithm::Fkso => "fkso",
        }
    }
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    /// Largest number of facility subsets the oracle may enumerate.
    #[arg(long, default_value_t = DEFAULT_MAX_SUBSETS)]
    pub max_subsets: u64,
    /// Oracle worker threads.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub instance: PathBuf,
    #[arg(long, value_enum, default_value_t = Algorithm::Fkso)]
    pub algorithm: Algorithm,
    /// Partition strategy for fkso: chain, forest or best.
    #[arg(long, default_value = "best")]
    pub strategy: Strategy,
    /// Solve at this radius only instead of searching.
    #[arg(long)]
    pub radius: Option<f64>,
    /// Attach the exact optimum and report dilation against it.
    #[arg(long)]
    pub oracle: bool,
    /// Print the fkso iteration log to stderr.
    #[arg(long)]
    pub trace: bool,
    /// Include wall time in the report (makes it nondeterministic).
    #[arg(long)]
    pub timing: bool,
    #[command(flatten)]
    pub oracle_args: OracleArgs,
}

#[derive(Debug, Args)]
pub struct ExactArgs {
    pub instance: PathBuf,
    #[arg(long)]
    pub timing: bool,
    #[command(flatten)]
    pub oracle_args: OracleArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub instance: PathBuf,
    /// A solution document, or a report written by `solve`.
    pub solution: PathBuf,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(subcommand)]
    pub kind: GenKind,
    /// Write here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum GenKind {
    /// The integrality-gap family: gadgets far apart.
    Gap {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = fkso_core::instance::DEFAULT_GAP_DISTANCE)]
        far: f64,
    },
    /// The path instance with one client per tolerance level.
    Limit {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1.0)]
        unit: f64,
    },
    /// Random Euclidean instance.
    Random {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        f: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        t: usize,
    },
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 10)]
    pub instances: usize,
    #[arg(long, default_value_t = 8)]
    pub n: usize,
    #[arg(long, default_value_t = 6)]
    pub f: usize,
    #[arg(long, default_value_t = 3)]
    pub k: usize,
    #[arg(long, default_value_t = 5)]
    pub m: usize,
    #[arg(long, default_value_t = 2)]
    pub t: usize,
    #[arg(long, default_value = "best")]
    pub strategy: Strategy,
    #[arg(long)]
    pub timing: bool,
    #[command(flatten)]
    pub oracle_args: OracleArgs,
}

/// Solver output as reported.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverResult {
    pub solver: String,
    pub strategy: Option<String>,
    pub partition: Option<String>,
    pub rho: Option<f64>,
    pub radius_guess: f64,
    pub achieved: f64,
    pub open_count: usize,
    pub served_count: usize,
    /// Achieved over the oracle optimum when attached, else over the guess.
    pub dilation: f64,
    pub open: Vec<usize>,
    pub served: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub radius: f64,
    pub coverage: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleSummary {
    pub opt_radius: f64,
    pub witness_open: Vec<usize>,
    pub witness_served: Vec<usize>,
    pub subsets: u64,
    pub coverage_curve: Vec<CurvePoint>,
}

impl From<OracleResult> for OracleSummary {
    fn from(r: OracleResult) -> Self {
        OracleSummary {
            opt_radius: r.opt_radius,
            witness_open: r.witness_open,
            witness_served: r.witness_served,
            subsets: r.subsets,
            coverage_curve: r
                .coverage_curve
                .into_iter()
                .map(|(radius, coverage)| CurvePoint { radius, coverage })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Counters {
    pub radii_tried: usize,
    pub iterations: usize,
    pub lp_solves: usize,
    pub cuts: usize,
}

/// The single document every command but `gen` prints. Field order is the
/// key order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub instance_digest: Option<String>,
    pub status: String,
    pub error: Option<String>,
    pub results: Vec<SolverResult>,
    pub oracle: Option<OracleSummary>,
    pub counters: Counters,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

impl RunReport {
    fn new(command: &[String]) -> Self {
        RunReport {
            command: command.to_vec(),
            instance_digest: None,
            status: "ok".into(),
            error: None,
            results: Vec::new(),
            oracle: None,
            counters: Counters::default(),
            wall_time_ms: None,
        }
    }

    fn fail(mut self, status: &str, error: impl ToString) -> Self {
        self.status = status.into();
        self.error = Some(error.to_string());
        self
    }
}

/// What a command produced: exit code and the two streams.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: Vec<u8>,
    pub stderr: String,
}

impl Outcome {
    fn report(code: i32, report: &RunReport, stderr: String) -> Self {
        Outcome {
            code,
            stdout: render(report),
            stderr,
        }
    }

    pub fn stdout_str(&self) -> &str {
        std::str::from_utf8(&self.stdout).unwrap_or("")
    }
}

fn render<T: Serialize>(value: &T) -> Vec<u8> {
    let mut bytes = serde_json::to_vec_pretty(value).expect("reports serialize");
    bytes.push(b'\n');
    bytes
}

/// SHA-256 of the canonical serialization.
pub fn instance_digest(inst: &Instance) -> String {
    hex::encode(Sha256::digest(save_instance(inst)))
}

#[derive(Debug, Error)]
enum InputError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Instance {
        path: String,
        source: fkso_core::InstanceError,
    },
    #[error("{path}: not a solution document: {source}")]
    Solution { path: String, source: serde_json::Error },
}

fn read(path: &Path) -> Result<Vec<u8>, InputError> {
    fs::read(path).map_err(|source| InputError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn read_instance(path: &Path) -> Result<Instance, InputError> {
    load_instance(&read(path)?).map_err(|source| InputError::Instance {
        path: path.display().to_string(),
        source,
    })
}

fn solve_error_exit(err: &SolveError) -> (i32, &'static str) {
    match err {
        SolveError::Infeasible => (EXIT_INFEASIBLE, "infeasible"),
        SolveError::NotUniform { .. } => (EXIT_INVALID, "invalid"),
        _ => (EXIT_INTERNAL, "internal_error"),
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let echo: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome {
                    code: EXIT_OK,
                    stdout: e.to_string().into_bytes(),
                    stderr: String::new(),
                };
            }
            let report = RunReport::new(&echo).fail("invalid", e.kind());
            return Outcome::report(EXIT_INVALID, &report, e.to_string());
        }
    };
    match cli.command {
        Command::Solve(a) => cmd_solve(&echo, &a),
        Command::Exact(a) => cmd_exact(&echo, &a),
        Command::Verify(a) => cmd_verify(&echo, &a),
        Command::Gen(a) => cmd_gen(&a),
        Command::Bench(a) => cmd_bench(&echo, &a),
    }
}

fn result_row(
    solution: &Solution,
    solver: &str,
    strategy: Option<Strategy>,
    partition: Option<(&str, f64)>,
) -> SolverResult {
    SolverResult {
        solver: solver.into(),
        strategy: strategy.map(|s| s.name().to_string()),
        partition: partition.map(|p| p.0.to_string()),
        rho: partition.map(|p| p.1),
        radius_guess: solution.radius_guess,
        achieved: solution.achieved,
        open_count: solution.open.len(),
        served_count: solution.served.len(),
        dilation: solution.dilation,
        open: solution.open.clone(),
        served: solution.served.clone(),
    }
}

enum SolveFailure {
    TooSmall(f64),
    Error(SolveError),
}

fn run_solver(
    inst: &Instance,
    args: &SolveArgs,
    counters: &mut Counters,
    trace: &mut String,
) -> Result<SolverResult, SolveFailure> {
    let alg = args.algorithm.name();
    match (args.algorithm, args.radius) {
        (Algorithm::Fks, None) => {
            let sol = solve_fks(inst).map_err(SolveFailure::Error)?;
            Ok(result_row(&sol, alg, None, None))
        }
        (Algorithm::Fks, Some(r)) => {
            counters.radii_tried = 1;
            let run = solve_fks_at_radius(inst, r);
            if !run.feasible {
                return Err(SolveFailure::TooSmall(r));
            }
            let sol = Solution::new(inst, run.open, inst.clients().collect(), r);
            Ok(result_row(&sol, alg, None, None))
        }
        (Algorithm::Ufkso, None) => {
            let (sol, stats) = solve_ufkso(inst).map_err(SolveFailure::Error)?;
            counters.radii_tried = stats.radii_tried;
            counters.lp_solves = stats.lp_solves;
            counters.iterations = stats.lp_solves;
            counters.cuts = stats.cuts;
            Ok(result_row(&sol, alg, None, None))
        }
        (Algorithm::Ufkso, Some(r)) => {
            let run = solve_ufkso_at_radius(inst, r).map_err(SolveFailure::Error)?;
            counters.radii_tried = 1;
            counters.lp_solves = run.lp_solves;
            counters.iterations = run.lp_solves;
            counters.cuts = run.cuts.len();
            match run.outcome {
                UfksoRadiusOutcome::Rounded(sol) => Ok(result_row(&sol, alg, None, None)),
                UfksoRadiusOutcome::RadiusTooSmall => Err(SolveFailure::TooSmall(r)),
            }
        }
        (Algorithm::Fkso, radius) => {
            let runs = match radius {
                Some(r) => vec![solve_fkso_at_radius(inst, r, args.strategy).map_err(SolveFailure::Error)?],
                None => match solve_fkso(inst, args.strategy) {
                    Ok(res) => res.runs,
                    Err(e) => return Err(SolveFailure::Error(e)),
                },
            };
            counters.radii_tried = runs.len();
            counters.lp_solves = runs.iter().map(|r| r.lp_solves).sum();
            counters.iterations = runs.iter().map(|r| r.iterations.len()).sum();
            counters.cuts = runs.iter().map(|r| r.cuts.len()).sum();
            if args.trace {
                for line in runs.iter().flat_map(|r| r.trace_lines()) {
                    trace.push_str(&line);
                    trace.push('\n');
                }
            }
            let last = runs.last().expect("at least one radius");
            match &last.outcome {
                FksoRadiusOutcome::Rounded { solution, kind, rho } => Ok(result_row(
                    solution,
                    alg,
                    Some(args.strategy),
                    Some((kind.name(), *rho)),
                )),
                FksoRadiusOutcome::RadiusTooSmall => Err(SolveFailure::TooSmall(last.r)),
            }
        }
    }
}

fn oracle_summary(inst: &Instance, args: &OracleArgs) -> Result<OracleSummary, OracleError> {
    exact_opt(inst, args.max_subsets, args.jobs).map(OracleSummary::from)
}

fn cmd_solve(echo: &[String], args: &SolveArgs) -> Outcome {
    let start = Instant::now();
    let mut report = RunReport::new(echo);
    let inst = match read_instance(&args.instance) {
        Ok(i) => i,
        Err(e) => return Outcome::report(EXIT_INVALID, &report.fail("invalid", &e), e.to_string()),
    };
    report.instance_digest = Some(instance_digest(&inst));
    let mut trace = String::new();
    let mut code = EXIT_OK;
    match run_solver(&inst, args, &mut report.counters, &mut trace) {
        Ok(row) => {
            if let Err(e) = check_solution(&inst, &row.open, &row.served, Some(row.achieved)) {
                code = EXIT_VERIFY_FAILED;
                report = report.fail("verify_failed", e);
            }
            report.results.push(row);
        }
        Err(SolveFailure::TooSmall(r)) => {
            code = EXIT_INFEASIBLE;
            report = report.fail("radius_too_small", format!("no solution found at radius {r}"));
        }
        Err(SolveFailure::Error(e)) => {
            let (c, status) = solve_error_exit(&e);
            code = c;
            report = report.fail(status, e);
        }
    }
    if args.oracle {
        match oracle_summary(&inst, &args.oracle_args) {
            Ok(summary) => {
                for row in report.results.iter_mut() {
                    row.dilation = dilation(row.achieved, summary.opt_radius);
                }
                report.oracle = Some(summary);
            }
            Err(e) => {
                if code == EXIT_OK {
                    code = EXIT_ORACLE_BUDGET;
                    report = report.fail("oracle_budget_exceeded", &e);
                }
            }
        }
    }
    if args.timing {
        report.wall_time_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    let mut stderr = trace;
    if let Some(e) = &report.error {
        stderr.push_str(e);
        stderr.push('\n');
    }
    Outcome::report(code, &report, stderr)
}

fn cmd_exact(echo: &[String], args: &ExactArgs) -> Outcome {
    let start = Instant::now();
    let mut report = RunReport::new(echo);
    let inst = match read_instance(&args.instance) {
        Ok(i) => i,
        Err(e) => return Outcome::report(EXIT_INVALID, &report.fail("invalid", &e), e.to_string()),
    };
    report.instance_digest = Some(instance_digest(&inst));
    let mut code = EXIT_OK;
    match oracle_summary(&inst, &args.oracle_args) {
        Ok(summary) => report.oracle = Some(summary),
        Err(e) => {
            code = EXIT_ORACLE_BUDGET;
            report = report.fail("oracle_budget_exceeded", e);
        }
    }
    if args.timing {
        report.wall_time_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    let stderr = report.error.clone().map(|e| e + "\n").unwrap_or_default();
    Outcome::report(code, &report, stderr)
}

/// Accepted by `verify`: a bare solution, or a solve report.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum SolutionDocument {
    Report { results: Vec<ClaimedSolution> },
    Bare(ClaimedSolution),
}

#[derive(Debug, Deserialize)]
struct ClaimedSolution {
    open: Vec<usize>,
    served: Vec<usize>,
    #[serde(default)]
    achieved: Option<f64>,
}

fn read_claim(path: &Path) -> Result<ClaimedSolution, InputError> {
    let bytes = read(path)?;
    let doc: SolutionDocument = serde_json::from_slice(&bytes).map_err(|source| InputError::Solution {
        path: path.display().to_string(),
        source,
    })?;
    match doc {
        SolutionDocument::Bare(c) => Ok(c),
        SolutionDocument::Report { results } => results.into_iter().next().ok_or_else(|| InputError::Solution {
            path: path.display().to_string(),
            source: serde::de::Error::custom("report has no results"),
        }),
    }
}

fn cmd_verify(echo: &[String], args: &VerifyArgs) -> Outcome {
    let mut report = RunReport::new(echo);
    let inst = match read_instance(&args.instance) {
        Ok(i) => i,
        Err(e) => return Outcome::report(EXIT_INVALID, &report.fail("invalid", &e), e.to_string()),
    };
    report.instance_digest = Some(instance_digest(&inst));
    let claim = match read_claim(&args.solution) {
        Ok(c) => c,
        Err(e) => return Outcome::report(EXIT_INVALID, &report.fail("invalid", &e), e.to_string()),
    };
    match check_solution(&inst, &claim.open, &claim.served, claim.achieved) {
        Ok(achieved) => {
            let sol = Solution::new(&inst, claim.open, claim.served, achieved);
            report.results.push(result_row(&sol, "verify", None, None));
            Outcome::report(EXIT_OK, &report, String::new())
        }
        Err(e) => {
            let msg = e.to_string();
            Outcome::report(EXIT_VERIFY_FAILED, &report.fail("verify_failed", &msg), msg + "\n")
        }
    }
}

fn cmd_gen(args: &GenArgs) -> Outcome {
    let generated = match args.kind {
        GenKind::Gap { k, far } => gen_gap_instance(k, far),
        GenKind::Limit { t, k, unit } => gen_limit_instance(t, k, unit),
        GenKind::Random { seed, n, f, k, m, t } => gen_random_instance(seed, n, f, k, m, t),
    };
    let inst = match generated {
        Ok(i) => i,
        Err(e) => {
            return Outcome {
                code: EXIT_INVALID,
                stdout: Vec::new(),
                stderr: format!("{e}\n"),
            }
        }
    };
    let bytes = save_instance(&inst);
    match &args.out {
        None => Outcome {
            code: EXIT_OK,
            stdout: bytes,
            stderr: String::new(),
        },
        Some(path) => match fs::write(path, &bytes) {
            Ok(()) => Outcome {
                code: EXIT_OK,
                stdout: Vec::new(),
                stderr: format!("wrote {} ({})\n", path.display(), instance_digest(&inst)),
            },
            Err(e) => Outcome {
                code: EXIT_INVALID,
                stdout: Vec::new(),
                stderr: format!("cannot write {}: {e}\n", path.display()),
            },
        },
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub seed: u64,
    pub instance_digest: String,
    pub opt_radius: f64,
    pub results: Vec<SolverResult>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub command: Vec<String>,
    pub status: String,
    pub rows: Vec<BenchRow>,
    /// Rows where a solver exceeded its guaranteed factor.
    pub violations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

fn cmd_bench(echo: &[String], args: &BenchArgs) -> Outcome {
    let start = Instant::now();
    let mut bench = BenchReport {
        command: echo.to_vec(),
        status: "ok".into(),
        rows: Vec::new(),
        violations: 0,
        wall_time_ms: None,
    };
    let mut code = EXIT_OK;
    let mut stderr = String::new();
    for offset in 0..args.instances as u64 {
        let seed = args.seed + offset;
        let inst = match gen_random_instance(seed, args.n, args.f, args.k, args.m, args.t) {
            Ok(i) => i,
            Err(e) => {
                bench.status = "invalid".into();
                stderr = format!("{e}\n");
                code = EXIT_INVALID;
                break;
            }
        };
        let opt = match exact_opt(&inst, args.oracle_args.max_subsets, args.oracle_args.jobs) {
            Ok(res) => res.opt_radius,
            Err(e) => {
                bench.status = "oracle_budget_exceeded".into();
                stderr = format!("{e}\n");
                code = EXIT_ORACLE_BUDGET;
                break;
            }
        };
        let mut results = Vec::new();
        let t = inst.t();
        // (outcome, solver, strategy, guaranteed factor)
        type Attempt<'a> = (Result<Solution, SolveError>, &'a str, Option<Strategy>, f64);
        let mut attempts: Vec<Attempt> = Vec::new();
        if inst.m() == inst.n() {
            attempts.push((solve_fks(&inst), "fks", None, 3.0));
        }
        if t == 1 {
            attempts.push((solve_ufkso(&inst).map(|(s, _)| s), "ufkso", None, 3.0));
        }
        attempts.push((
            solve_fkso(&inst, args.strategy).map(|r| r.solution),
            "fkso",
            Some(args.strategy),
            args.strategy.factor(t),
        ));
        for (res, name, strategy, factor) in attempts {
            match res {
                Ok(sol) => {
                    let mut row = result_row(&sol, name, strategy, None);
                    row.dilation = dilation(sol.achieved, opt);
                    if sol.achieved > factor * opt + 1e-9 * opt.max(1.0) {
                        bench.violations += 1;
                    }
                    results.push(row);
                }
                Err(e) => {
                    stderr.push_str(&format!("seed {seed}, {name}: {e}\n"));
                    bench.violations += 1;
                }
            }
        }
        bench.rows.push(BenchRow {
            seed,
            instance_digest: instance_digest(&inst),
            opt_radius: opt,
            results,
        });
    }
    if code == EXIT_OK && bench.violations > 0 {
        bench.status = "violations".into();
        code = EXIT_VERIFY_FAILED;
    }
    if args.timing {
        bench.wall_time_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    Outcome {
        code,
        stdout: render(&bench),
        stderr,
    }
}
