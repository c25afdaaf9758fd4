//! The `xqdiag` command line.
//!
//! Exit codes: 0 success, 1 verification failure, ambiguous or infeasible
//! diagnosis, 2 input error, 3 resource bound.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use xqdiag_core::verify::BruteForce;
use xqdiag_core::{
    build_hypercube, build_random_xq, clda, dhl, find_dt_embedding, is_conditional, lda, AdversaryPolicy,
    DtEmbedding, Error, ErrorKind, FaultSet, HLGraph, Network, Node, Status, TestOracle,
};

use crate::format::{self, FormatError};
use crate::suite::{self, DhlOptions, Mode, SuiteReport};

/// Sample size for structural suites on graphs too large to enumerate.
const DEFAULT_STRUCTURE_SAMPLE: usize = 10_000;

#[derive(Debug, Parser)]
#[command(name = "xqdiag", version, about = "Fault diagnosis on hypercube-like networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a hypercube or a seeded random XQ graph.
    Gen {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, conflicts_with = "seed", required_unless_present = "seed")]
        variant: Option<Variant>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Check that a file holds a well-formed XQ graph.
    Validate { file: PathBuf },
    /// Diagnose every node from a simulated test session.
    Diagnose {
        file: PathBuf,
        #[arg(long, value_parser = format::parse_node_list)]
        faults: xqdiag_core::NodeSet,
        #[arg(long, value_parser = format::parse_policy)]
        policy: AdversaryPolicy,
        /// Print the test records and a per-node verdict block.
        #[arg(long)]
        trace: bool,
        #[arg(short = 'o', long = "output")]
        report: Option<PathBuf>,
    },
    /// Diagnose a single node.
    Local {
        file: PathBuf,
        #[arg(long)]
        node: Node,
        #[arg(long, value_enum)]
        algo: Algo,
        /// Diagnosis tree order for `lda`; defaults to the node's degree.
        #[arg(long)]
        t: Option<usize>,
        #[arg(long, value_parser = format::parse_node_list)]
        faults: xqdiag_core::NodeSet,
        #[arg(long, value_parser = format::parse_policy)]
        policy: AdversaryPolicy,
    },
    /// Run a verification suite against the graph.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum)]
        suite: SuiteName,
        #[arg(long, requires = "seed")]
        sample: Option<usize>,
        #[arg(long, requires = "sample")]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Fault set size bound for `lda` and `thm41`; defaults to n.
        #[arg(long)]
        t: Option<usize>,
        #[arg(short = 'o', long = "output")]
        report: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Variant {
    Hypercube,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Algo {
    Lda,
    Clda,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SuiteName {
    Dhl,
    Lda,
    Clda,
    Thm41,
    Lemmas,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    fn failed(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e.kind() {
            ErrorKind::Input => 2,
            ErrorKind::Resource => 3,
            ErrorKind::Contract | ErrorKind::Adversary | ErrorKind::Infeasible => 1,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Self::input(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Self::input(e.to_string())
    }
}

type CliResult = Result<i32, Failure>;

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let mut out = io::stdout().lock();
    match dispatch(cli.command, &mut out) {
        Ok(code) => code,
        Err(f) => {
            let _ = out.flush();
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command, out: &mut impl Write) -> CliResult {
    match command {
        Command::Gen { n, variant, seed, output } => {
            let g = match (variant, seed) {
                (Some(Variant::Hypercube), _) => build_hypercube(n)?,
                (None, Some(seed)) => build_random_xq(n, seed)?,
                (None, None) => return Err(Failure::input("either --variant or --seed is required")),
            };
            fs::write(&output, format::write_xq(&g))?;
            Ok(0)
        }
        Command::Validate { file } => validate(&file, out),
        Command::Diagnose {
            file,
            faults,
            policy,
            trace,
            report,
        } => diagnose(&file, faults.into(), policy, trace, report.as_deref(), out),
        Command::Local {
            file,
            node,
            algo,
            t,
            faults,
            policy,
        } => local(&file, node, algo, t, faults.into(), policy, out),
        Command::Verify {
            file,
            suite,
            sample,
            seed,
            jobs,
            t,
            report,
        } => {
            let mode = match (sample, seed) {
                (Some(count), Some(seed)) => Some(Mode::Sampled { count, seed }),
                _ => None,
            };
            verify(&file, suite, mode, jobs, t, report.as_deref(), out)
        }
    }
}

fn validate(file: &Path, out: &mut impl Write) -> CliResult {
    match format::read_xq(file) {
        Ok(g) => {
            writeln!(out, "ok: XQ_{} with {} nodes", g.dimension(), g.node_count())?;
            Ok(0)
        }
        Err(FormatError::Invalid(v)) => {
            writeln!(out, "violation: {v}")?;
            Ok(1)
        }
        Err(e) => Err(e.into()),
    }
}

/// Reads the graph and the fault-free nodes' random-graph seed, if any.
fn load(file: &Path) -> Result<HLGraph, Failure> {
    Ok(format::read_xq(file)?)
}

fn check_faults(g: &HLGraph, faults: &FaultSet) -> Result<(), Failure> {
    faults.check_within(g)?;
    let n = g.dimension() as usize;
    if faults.len() > n {
        return Err(Failure::input(format!(
            "{} faults exceed the diagnosable bound n = {n}",
            faults.len()
        )));
    }
    Ok(())
}

#[derive(Serialize)]
struct DiagnosisReport {
    faulty: Vec<Node>,
    rounds_used: usize,
    tests_used: usize,
}

fn diagnose(
    file: &Path,
    faults: FaultSet,
    policy: AdversaryPolicy,
    trace: bool,
    report: Option<&Path>,
    out: &mut impl Write,
) -> CliResult {
    let g = load(file)?;
    check_faults(&g, &faults)?;
    let mut oracle = TestOracle::new(&g, faults, policy);
    let (status, syndrome, rounds, tests) = if g.dimension() >= 4 {
        let v = dhl(&mut oracle)?;
        (v.status, v.syndrome, v.rounds_used, v.tests_used)
    } else {
        eprintln!(
            "note: n = {} is below the three-round algorithm's range; every node tests every neighbor and the \
             syndrome is matched against all fault sets of size <= n",
            g.dimension()
        );
        let (result, syndrome) = suite::diagnose_small(&mut oracle)?;
        let found = match result {
            BruteForce::Unique(f) => f,
            BruteForce::Ambiguous(a, b) => {
                return Err(Failure::failed(format!("ambiguous diagnosis: {a} and {b} both fit the syndrome")))
            }
            BruteForce::Inconsistent => return Err(Failure::failed("no fault set of size <= n fits the syndrome")),
        };
        let status = (0..g.node_count() as Node)
            .map(|v| Status::from_faulty(found.contains(v)))
            .collect();
        let rounds = syndrome.round_count();
        let tests = syndrome.len();
        (status, syndrome, rounds, tests)
    };
    let faulty: Vec<Node> = (0..g.node_count() as Node)
        .filter(|&v| status[v as usize].is_faulty())
        .collect();
    if trace {
        out.write_all(format::write_trace(&syndrome).as_bytes())?;
        out.write_all(format::write_verdict_block(&status).as_bytes())?;
    } else {
        let list: Vec<String> = faulty.iter().map(Node::to_string).collect();
        writeln!(out, "faulty: {}", list.join(","))?;
        writeln!(out, "rounds: {rounds}, tests: {tests}")?;
    }
    if let Some(path) = report {
        let report = DiagnosisReport {
            faulty,
            rounds_used: rounds,
            tests_used: tests,
        };
        let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
        text.push('\n');
        fs::write(path, text)?;
    }
    Ok(0)
}

fn local(
    file: &Path,
    u: Node,
    algo: Algo,
    t: Option<usize>,
    faults: FaultSet,
    policy: AdversaryPolicy,
    out: &mut impl Write,
) -> CliResult {
    let g = load(file)?;
    if !g.contains_node(u) {
        return Err(Error::NodeOutOfRange(u).into());
    }
    check_faults(&g, &faults)?;
    let mut oracle = TestOracle::new(&g, faults.clone(), policy);
    let verdict = match algo {
        Algo::Lda => {
            let t = t.unwrap_or(g.degree(u));
            let dt = find_dt_embedding(&g, u, t)
                .ok_or_else(|| Failure::input(format!("no diagnosis tree of order {t} at node {u}")))?;
            let inside = faults.iter().filter(|&v| dt.nodes().contains(v)).count();
            if inside > t {
                return Err(Failure::input(format!(
                    "{inside} faults inside the diagnosis tree exceed t = {t}"
                )));
            }
            lda(&mut oracle, &dt)?
        }
        Algo::Clda => {
            if !is_conditional(&g, &faults) {
                return Err(Failure::input(format!(
                    "fault set {faults} covers the whole neighborhood of a fault-free node"
                )));
            }
            clda(&mut oracle, u)?
        }
    };
    writeln!(out, "node {u}: {}", verdict.status.as_str())?;
    writeln!(out, "rounds: {}, tests: {}", verdict.rounds_used, verdict.tests_used)?;
    Ok(0)
}

fn verify(
    file: &Path,
    name: SuiteName,
    mode: Option<Mode>,
    jobs: usize,
    t: Option<usize>,
    report_path: Option<&Path>,
    out: &mut impl Write,
) -> CliResult {
    let g = load(file)?;
    let n = g.dimension() as usize;
    let exhaustive = mode.unwrap_or(Mode::Exhaustive);
    let report: SuiteReport = match name {
        SuiteName::Dhl => {
            if n < 4 {
                return Err(Error::DimensionTooSmall(g.dimension()).into());
            }
            let opts = DhlOptions {
                mode: exhaustive,
                jobs,
                cross_check: n <= 4,
            };
            suite::verify_dhl(&g, None, opts)?
        }
        SuiteName::Lda => {
            let t = t.unwrap_or(n);
            let trees: Vec<DtEmbedding> = (0..g.node_count() as Node)
                .filter_map(|u| find_dt_embedding(&g, u, t))
                .collect();
            suite::verify_lda_on(&g, None, &trees, t, jobs)?
        }
        SuiteName::Clda => suite::verify_clda(&g, None, jobs)?,
        SuiteName::Thm41 => suite::verify_distinguishability(&g, None, t.unwrap_or(n), exhaustive, jobs)?,
        SuiteName::Lemmas => {
            let mode = mode.unwrap_or(if n <= 4 {
                Mode::Exhaustive
            } else {
                Mode::Sampled {
                    count: DEFAULT_STRUCTURE_SAMPLE,
                    seed: 0,
                }
            });
            suite::verify_structure(&g, None, mode, jobs)?
        }
    };
    let json = report.to_json();
    match report_path {
        Some(path) => fs::write(path, &json)?,
        None => out.write_all(json.as_bytes())?,
    }
    eprintln!(
        "suite {}: {} instances, {} failures, {} ms",
        report.suite,
        report.instances,
        report.failures.len(),
        report.millis
    );
    Ok(if report.passed() { 0 } else { 1 })
}
