//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Runs under `cargo test`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use xqdiag::suite::{
    verify_clda, verify_dhl, verify_distinguishability, verify_lda, verify_structure_only, DhlOptions, Mode,
    Structure, SuiteReport,
};
use xqdiag_core::model::{distinguishable, distinguishable_bf};
use xqdiag_core::{build_hypercube, build_random_xq, FaultSet, HLGraph, Network, Node};

const WORKERS: usize = 8;
const XQ4_SEEDS: [u64; 5] = [0, 1, 4, 5, 6];
const XQ5_SEEDS: [u64; 2] = [1, 2];
const XQ_STRUCTURE_SEEDS: [u64; 3] = [7, 8, 9];
const SCALE_SAMPLES: usize = 100_000;
const SCALE_SAMPLE_SEED: u64 = 20_240_601;
const STRUCTURE_SAMPLES: usize = 10_000;
const STRUCTURE_SAMPLE_SEED: u64 = 17;

const EXHAUSTIVE_LIMIT_PER_GRAPH: Duration = Duration::from_secs(60);
const SCALE_LIMIT: Duration = Duration::from_secs(600);
const LDA_LIMIT: Duration = Duration::from_secs(10);
const CLDA_LIMIT: Duration = Duration::from_secs(60);
const DISTINGUISH_LIMIT: Duration = Duration::from_secs(60);
const SDR_LIMIT: Duration = Duration::from_secs(60);
const BOUND_LIMIT: Duration = Duration::from_secs(30);

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn sets_up_to(nodes: u64, t: u64) -> u64 {
    (0..=t).map(|k| binomial(nodes, k)).sum()
}

/// Conditional fault sets of size `<= t`, counted over raw masks.
fn conditional_sets(g: &HLGraph, t: u32) -> u64 {
    let count = g.node_count();
    let adj: Vec<u64> = (0..count as Node)
        .map(|v| g.neighbors(v).iter().fold(0, |m, &w| m | 1 << w))
        .collect();
    (0u64..1 << count)
        .filter(|m| m.count_ones() <= t)
        .filter(|&m| (0..count).all(|v| m >> v & 1 == 1 || adj[v] & !m != 0))
        .count() as u64
}

fn graphs(n: u32, seeds: &[u64]) -> Vec<(String, Option<u64>, HLGraph)> {
    let mut out = vec![(format!("Q_{n}"), None, build_hypercube(n).unwrap())];
    for &seed in seeds {
        out.push((format!("XQ_{n}#{seed}"), Some(seed), build_random_xq(n, seed).unwrap()));
    }
    out
}

fn failure_note(report: &SuiteReport) -> String {
    match report.failures.first() {
        Some(f) => format!(
            "{} failures, first: faults {:?} script {:?} expected {} got {}",
            report.failures.len(),
            f.faults,
            f.script,
            f.expected,
            f.actual
        ),
        None => "0 failures".to_owned(),
    }
}

struct Gate {
    results: Vec<bool>,
}

impl Gate {
    fn record(&mut self, id: u32, title: &str, ok: bool, elapsed: Duration, limit: Option<Duration>, detail: String) {
        let ok = ok && limit.is_none_or(|l| elapsed < l);
        let limit = limit.map(|l| format!(", limit {}s", l.as_secs())).unwrap_or_default();
        println!(
            "criterion {id} {}: {title}: {detail} ({:.2}s{limit})",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
        self.results.push(ok);
    }
}

fn dhl_options(mode: Mode, jobs: usize, cross_check: bool) -> DhlOptions {
    DhlOptions {
        mode,
        jobs,
        cross_check,
    }
}

fn global_exhaustive(gate: &mut Gate) -> Vec<(String, Option<u64>, HLGraph)> {
    let graphs = graphs(4, &XQ4_SEEDS);
    let expected = sets_up_to(16, 4);
    let mut ok = true;
    let mut slowest = Duration::ZERO;
    let mut notes = Vec::new();
    for (name, seed, g) in &graphs {
        let start = Instant::now();
        let report = verify_dhl(g, *seed, dhl_options(Mode::Exhaustive, WORKERS, false)).unwrap();
        let elapsed = start.elapsed();
        slowest = slowest.max(elapsed);
        ok &= report.passed() && report.instances == expected && elapsed < EXHAUSTIVE_LIMIT_PER_GRAPH;
        notes.push(format!(
            "{name}: {} sets, {} branches, {}",
            report.instances,
            report.counts["branches"],
            failure_note(&report)
        ));
    }
    gate.record(
        1,
        "three-round diagnosis, exhaustive n=4",
        ok,
        slowest,
        Some(EXHAUSTIVE_LIMIT_PER_GRAPH),
        format!("{}; slowest graph shown", notes.join("; ")),
    );
    graphs
}

fn global_sampled(gate: &mut Gate) {
    let start = Instant::now();
    let mut ok = true;
    let mut notes = Vec::new();
    for (name, seed, g) in graphs(5, &XQ5_SEEDS) {
        let mode = Mode::Sampled {
            count: SCALE_SAMPLES,
            seed: SCALE_SAMPLE_SEED,
        };
        let report = verify_dhl(&g, seed, dhl_options(mode, WORKERS, false)).unwrap();
        ok &= report.passed() && report.instances == SCALE_SAMPLES as u64;
        notes.push(format!(
            "{name}: {} sets, {} branches, {}",
            report.instances,
            report.counts["branches"],
            failure_note(&report)
        ));
    }
    gate.record(
        2,
        "three-round diagnosis, sampled n=5",
        ok,
        start.elapsed(),
        Some(SCALE_LIMIT),
        notes.join("; "),
    );
}

fn local_tree(gate: &mut Gate) {
    let start = Instant::now();
    let mut ok = true;
    let mut notes = Vec::new();
    for t in 1..=6u64 {
        let report = verify_lda(t as usize, WORKERS).unwrap();
        // half of the subsets of a (2t+1)-set have at most t members
        ok &= report.passed() && report.instances == 1 << (2 * t);
        notes.push(format!("t={t}: {} sets, {}", report.instances, failure_note(&report)));
    }
    gate.record(3, "two-round local diagnosis, t=1..6", ok, start.elapsed(), Some(LDA_LIMIT), notes.join("; "));
}

fn local_comparison(gate: &mut Gate) {
    let start = Instant::now();
    let mut ok = true;
    let mut notes = Vec::new();
    for n in [3, 4] {
        let g = build_hypercube(n).unwrap();
        let report = verify_clda(&g, None, WORKERS).unwrap();
        let sets = conditional_sets(&g, n);
        ok &= report.passed() && report.instances == sets * g.node_count() as u64;
        ok &= sets < sets_up_to(g.node_count() as u64, n as u64);
        notes.push(format!("Q_{n}: {sets} conditional sets x {} nodes, {}", g.node_count(), failure_note(&report)));
    }
    gate.record(4, "comparison-based local diagnosis", ok, start.elapsed(), Some(CLDA_LIMIT), notes.join("; "));
}

fn distinguishability(gate: &mut Gate) {
    let start = Instant::now();
    let g = build_hypercube(3).unwrap();
    let report = verify_distinguishability(&g, None, 3, Mode::Exhaustive, WORKERS).unwrap();
    let pairs = sets_up_to(8, 3) * (sets_up_to(8, 3) - 1) / 2;
    let all: FaultSet = (0..8).collect();
    let most: FaultSet = (1..8).collect();
    let witness = (distinguishable(&g, &all, &most).unwrap(), distinguishable_bf(&g, &all, &most).unwrap());
    let ok = report.passed() && report.instances == pairs && witness == (false, false);
    gate.record(
        5,
        "edge-condition test matches syndrome enumeration on Q_3",
        ok,
        start.elapsed(),
        Some(DISTINGUISH_LIMIT),
        format!(
            "{} pairs (expected {pairs}), {}; all nodes vs all but 0: {witness:?}",
            report.instances,
            failure_note(&report)
        ),
    );
}

fn sdr_suites(gate: &mut Gate) {
    let start = Instant::now();
    let wanted = [Structure::SmallTargets, Structure::NonStar, Structure::NeighborSets];
    let mut ok = true;
    let mut notes = Vec::new();
    for n in [3, 4] {
        for (name, seed, g) in graphs(n, &XQ_STRUCTURE_SEEDS) {
            let report = verify_structure_only(&g, seed, &wanted, Mode::Exhaustive, WORKERS).unwrap();
            let c = &report.counts;
            ok &= report.passed();
            ok &= c["small target SDR"] == sets_up_to(1 << n, n as u64);
            ok &= c["neighbor set SDR"] == 1 << n;
            if n == 4 {
                ok &= c["non-star SDR"] + c["non-star SDR (stars skipped)"] == binomial(16, 5);
            }
            notes.push(format!("{name}: {:?}, {}", c, failure_note(&report)));
        }
    }
    let mode = Mode::Sampled {
        count: STRUCTURE_SAMPLES,
        seed: STRUCTURE_SAMPLE_SEED,
    };
    for (name, seed, g) in graphs(5, &XQ_STRUCTURE_SEEDS[..1]) {
        let report = verify_structure_only(&g, seed, &[Structure::SmallTargets], mode, WORKERS).unwrap();
        ok &= report.passed() && report.counts["small target SDR"] == STRUCTURE_SAMPLES as u64;
        notes.push(format!("{name} sampled: {:?}, {}", report.counts, failure_note(&report)));
    }
    gate.record(6, "distinct representative suites", ok, start.elapsed(), Some(SDR_LIMIT), notes.join("; "));
}

fn neighbor_bound(gate: &mut Gate) {
    let start = Instant::now();
    let mut ok = true;
    let mut notes = Vec::new();
    for n in [3u32, 4] {
        let expected: u64 = (1..=2 * n as u64 - 2).map(|k| binomial(1 << n, k)).sum();
        for (name, seed, g) in graphs(n, &XQ_STRUCTURE_SEEDS) {
            let report =
                verify_structure_only(&g, seed, &[Structure::NeighborBound], Mode::Exhaustive, WORKERS).unwrap();
            ok &= report.passed() && report.counts["neighbor bound"] == expected;
            notes.push(format!("{name}: {} sets, {}", report.counts["neighbor bound"], failure_note(&report)));
        }
    }
    gate.record(7, "neighborhood size bound", ok, start.elapsed(), Some(BOUND_LIMIT), notes.join("; "));
}

fn cross_oracle(gate: &mut Gate, graphs: &[(String, Option<u64>, HLGraph)]) {
    let start = Instant::now();
    let mut ok = true;
    let mut notes = Vec::new();
    for (name, seed, g) in graphs {
        let report = verify_dhl(g, *seed, dhl_options(Mode::Exhaustive, WORKERS, true)).unwrap();
        ok &= report.passed();
        notes.push(format!("{name}: {} branches, {}", report.counts["branches"], failure_note(&report)));
    }
    gate.record(8, "brute-force diagnosis agrees on every run", ok, start.elapsed(), None, notes.join("; "));
}

fn determinism(gate: &mut Gate, graphs: &[(String, Option<u64>, HLGraph)]) {
    let start = Instant::now();
    let mut ok = true;
    let mut notes = Vec::new();
    for (name, seed, g) in &graphs[..2] {
        let runs: Vec<String> = [1, 4, 8, 8]
            .iter()
            .map(|&jobs| {
                let report = verify_dhl(g, *seed, dhl_options(Mode::Exhaustive, jobs, false)).unwrap();
                report.normalized().to_json()
            })
            .collect();
        let same = runs.iter().all(|r| r == &runs[0]);
        ok &= same;
        notes.push(format!("{name}: {} bytes, identical = {same}", runs[0].len()));
    }
    gate.record(
        9,
        "report JSON identical across runs and worker counts 1/4/8",
        ok,
        start.elapsed(),
        None,
        format!("{} (wall time excluded)", notes.join("; ")),
    );
}

fn main() -> ExitCode {
    // Tolerate the libtest flags `cargo test` forwards to every target.
    if std::env::args().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let mut gate = Gate { results: Vec::new() };
    let exhaustive_graphs = global_exhaustive(&mut gate);
    global_sampled(&mut gate);
    local_tree(&mut gate);
    local_comparison(&mut gate);
    distinguishability(&mut gate);
    sdr_suites(&mut gate);
    neighbor_bound(&mut gate);
    cross_oracle(&mut gate, &exhaustive_graphs);
    determinism(&mut gate, &exhaustive_graphs);
    let passed = gate.results.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed}/{} criteria passed", gate.results.len());
    if passed == gate.results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
