//! Parallel verification suites and their JSON reports.
//!
//! Every suite first builds its full list of work items on one thread, runs
//! them on a rayon pool and merges results in item order, so a report never
//! depends on the worker count.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::ops::RangeInclusive;
use std::time::Instant;

use itertools::Itertools;
use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use xqdiag_core::diagnosis::complete_survey;
use xqdiag_core::graph::sdr_matching;
use xqdiag_core::model::{distinguishable, distinguishable_bf};
use xqdiag_core::verify::{bruteforce_diagnose, enumerate_fault_sets, BranchExplorer, BruteForce, Leaf};
use xqdiag_core::{
    clda, consistent, dhl, induced_star_center, lda, neighborhood, DtEmbedding, Error,
    FaultSet, GlobalVerdict, HLGraph, LocalVerdict, Network, Node, NodeSet, Result, Status,
};

/// One failed check, with enough data to replay it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Failure {
    /// Seed of the random graph under test, `None` for hypercubes.
    pub seed: Option<u64>,
    pub faults: Vec<Node>,
    /// Adversary bits as a `0`/`1` string.
    pub script: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub instances: u64,
    pub failures: Vec<Failure>,
    pub millis: u64,
    /// Named sub-counts, e.g. explored branches or per-suite instances.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub counts: BTreeMap<String, u64>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }

    /// The report with wall time zeroed, for run-to-run comparison.
    pub fn normalized(&self) -> Self {
        Self {
            millis: 0,
            ..self.clone()
        }
    }
}

/// How a suite picks its instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    /// `count` draws split evenly across set sizes, from a ChaCha8 stream.
    Sampled { count: usize, seed: u64 },
}

/// Options for [`verify_dhl`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DhlOptions {
    pub mode: Mode,
    pub jobs: usize,
    /// Replays every syndrome through the brute-force diagnoser.
    pub cross_check: bool,
}

fn script_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

struct Collector<'a> {
    seed: Option<u64>,
    faults: &'a FaultSet,
    failures: Vec<Failure>,
}

impl<'a> Collector<'a> {
    fn new(seed: Option<u64>, faults: &'a FaultSet) -> Self {
        Self {
            seed,
            faults,
            failures: Vec::new(),
        }
    }

    fn fail(&mut self, script: &[bool], expected: impl Display, actual: impl Display) {
        self.failures.push(Failure {
            seed: self.seed,
            faults: self.faults.iter().collect(),
            script: script_string(script),
            expected: expected.to_string(),
            actual: actual.to_string(),
        });
    }

    fn check(&mut self, ok: bool, script: &[bool], expected: impl Display, actual: impl Display) {
        if !ok {
            self.fail(script, expected, actual);
        }
    }

    fn check_free_bits<T>(&mut self, leaf: &Leaf<T>) {
        self.check(
            leaf.free_bits == leaf.script.len(),
            &leaf.script,
            format_args!("{} free cells", leaf.script.len()),
            format_args!("{} free cells", leaf.free_bits),
        );
    }
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::ResourceBound(format!("thread pool: {e}")))
}

/// Runs `check` over `items` on `jobs` workers; results keep item order.
fn run_parallel<I, R, F>(items: &[I], jobs: usize, check: F) -> Result<Vec<R>>
where
    I: Sync,
    R: Send,
    F: Fn(&I) -> Result<R> + Sync,
{
    pool(jobs)?.install(|| items.par_iter().map(&check).collect())
}

struct Outcome {
    failures: Vec<Failure>,
    branches: u64,
}

fn finish(suite: &str, instances: u64, outcomes: Vec<Outcome>, start: Instant) -> SuiteReport {
    let branches = outcomes.iter().map(|o| o.branches).sum();
    let mut failures: Vec<Failure> = outcomes.into_iter().flat_map(|o| o.failures).collect();
    failures.sort();
    SuiteReport {
        suite: suite.to_owned(),
        instances,
        failures,
        millis: start.elapsed().as_millis() as u64,
        counts: BTreeMap::from([("branches".to_owned(), branches)]),
    }
}

/// Draws `count` subsets of `pool` with sizes in `sizes`, equally many per
/// size. Leftover draws go to the largest sizes.
pub fn stratified_sample(pool: &[Node], sizes: RangeInclusive<usize>, count: usize, seed: u64) -> Vec<NodeSet> {
    let (lo, hi) = (*sizes.start(), (*sizes.end()).min(pool.len()));
    if lo > hi {
        return Vec::new();
    }
    let strata = hi - lo + 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for k in lo..=hi {
        let extra = usize::from(k - lo + count % strata >= strata);
        for _ in 0..count / strata + extra {
            out.push(index::sample(&mut rng, pool.len(), k).into_iter().map(|i| pool[i]).collect());
        }
    }
    out
}

fn fault_sets<G: Network + ?Sized>(g: &G, t: usize, conditional: bool, mode: Mode) -> Result<Vec<FaultSet>> {
    match mode {
        Mode::Exhaustive => Ok(enumerate_fault_sets(g, t, conditional)?.collect()),
        Mode::Sampled { count, seed } => {
            let nodes: Vec<Node> = (0..g.node_count() as Node).collect();
            Ok(stratified_sample(&nodes, 0..=t, count, seed)
                .into_iter()
                .map(FaultSet::from)
                .filter(|f| !conditional || xqdiag_core::is_conditional(g, f))
                .collect())
        }
    }
}

/// Checks the three-round global diagnosis on every fault set with at most
/// `n` members (or a sample) and every adversary branch.
pub fn verify_dhl(g: &HLGraph, graph_seed: Option<u64>, opts: DhlOptions) -> Result<SuiteReport> {
    let start = Instant::now();
    let n = g.dimension() as usize;
    let sets = fault_sets(g, n, false, opts.mode)?;
    let outcomes = run_parallel(&sets, opts.jobs, |f| check_dhl(g, graph_seed, f, opts.cross_check))?;
    Ok(finish("dhl", sets.len() as u64, outcomes, start))
}

fn check_dhl(g: &HLGraph, seed: Option<u64>, f: &FaultSet, cross_check: bool) -> Result<Outcome> {
    let mut c = Collector::new(seed, f);
    let mut branches = 0;
    for leaf in BranchExplorer::new(g, f.clone(), |o| dhl(o)) {
        branches += 1;
        c.check_free_bits(&leaf);
        let v = match &leaf.outcome {
            Ok(v) => v,
            Err(e) => {
                c.fail(&leaf.script, f, format_args!("error: {e}"));
                continue;
            }
        };
        check_dhl_verdict(g, f, &leaf.script, v, &mut c);
        if cross_check {
            let script = &leaf.script;
            let found = v.faulty_nodes();
            match bruteforce_diagnose(g, &v.syndrome, g.dimension() as usize)? {
                BruteForce::Unique(b) => c.check(*b == found, script, format_args!("brute force {b}"), &found),
                BruteForce::Ambiguous(a, b) => c.check(
                    consistent(g, &FaultSet::from(found.clone()), &v.syndrome),
                    script,
                    format_args!("a verdict consistent with the syndrome (candidates {a}, {b})"),
                    &found,
                ),
                BruteForce::Inconsistent => c.fail(script, "a consistent brute-force candidate", "none"),
            }
        }
    }
    Ok(Outcome {
        failures: c.failures,
        branches,
    })
}

fn check_dhl_verdict(g: &HLGraph, f: &FaultSet, script: &[bool], v: &GlobalVerdict, c: &mut Collector<'_>) {
    let found = v.faulty_nodes();
    c.check(found == **f, script, f, &found);
    c.check(v.rounds_used <= 3, script, "at most 3 rounds", format_args!("{} rounds", v.rounds_used));
    c.check(
        v.rounds_used == v.ledger.round_count() && v.tests_used == v.ledger.test_count(),
        script,
        "counters match the ledger",
        format_args!("{} rounds, {} tests", v.rounds_used, v.tests_used),
    );
    c.check(v.ledger.is_legal(), script, "legal ledger", "role conflict");
    c.check(consistent(g, f, &v.syndrome), script, "syndrome consistent with the faults", "inconsistent");

    // With n flagged lower-half pairs, every flagged pair holds exactly one fault.
    let flagged: Vec<Node> = v
        .syndrome
        .records()
        .iter()
        .filter(|r| r.round == 1 && r.result)
        .map(|r| r.testee)
        .collect();
    if flagged.len() == g.dimension() as usize {
        let pairs_ok = flagged
            .iter()
            .all(|&a| f.contains(a) != f.contains(g.partner(a)))
            && f.iter().all(|x| flagged.contains(&x) || flagged.contains(&g.partner(x)));
        c.check(pairs_ok, script, "one fault per flagged pair", f);
    }

    // A 0 from a node labeled fault-free must clear its testee.
    let zero_forces = v.syndrome.records().iter().all(|r| {
        r.result || v.status[r.tester as usize].is_faulty() || !v.status[r.testee as usize].is_faulty()
    });
    c.check(zero_forces, script, "0 from a fault-free tester clears the testee", "contradicting labels");
}

fn check_local(
    seed: Option<u64>,
    f: &FaultSet,
    u: Node,
    max_rounds: usize,
    leaves: impl Iterator<Item = Leaf<LocalVerdict>>,
) -> Outcome {
    let mut c = Collector::new(seed, f);
    let mut branches = 0;
    let expected = Status::from_faulty(f.contains(u));
    for leaf in leaves {
        branches += 1;
        c.check_free_bits(&leaf);
        match &leaf.outcome {
            Ok(v) => {
                c.check(
                    v.status == expected,
                    &leaf.script,
                    format_args!("node {u} {}", expected.as_str()),
                    format_args!("node {u} {}", v.status.as_str()),
                );
                c.check(
                    v.rounds_used <= max_rounds,
                    &leaf.script,
                    format_args!("at most {max_rounds} rounds"),
                    format_args!("{} rounds", v.rounds_used),
                );
                c.check(v.ledger.is_legal(), &leaf.script, "legal ledger", "role conflict");
            }
            Err(e) => c.fail(&leaf.script, format_args!("node {u} {}", expected.as_str()), format_args!("error: {e}")),
        }
    }
    Outcome {
        failures: c.failures,
        branches,
    }
}

/// Two-round local diagnosis on the standalone diagnosis tree of order `t`.
pub fn verify_lda(t: usize, jobs: usize) -> Result<SuiteReport> {
    let (g, dt) = DtEmbedding::standalone(t);
    verify_lda_on(&g, None, &[dt], t, jobs)
}

/// Two-round local diagnosis for each embedding in `trees`, over every fault
/// set of at most `t` tree nodes.
pub fn verify_lda_on<G: Network + Sync + ?Sized>(
    g: &G,
    graph_seed: Option<u64>,
    trees: &[DtEmbedding],
    t: usize,
    jobs: usize,
) -> Result<SuiteReport> {
    let start = Instant::now();
    let items: Vec<(&DtEmbedding, FaultSet)> = trees
        .iter()
        .flat_map(|dt| {
            let nodes = dt.nodes().into_vec();
            (0..=t.min(nodes.len()))
                .flat_map(move |k| nodes.clone().into_iter().combinations(k))
                .map(move |f| (dt, FaultSet::from_iter(f)))
        })
        .collect();
    let outcomes = run_parallel(&items, jobs, |(dt, f)| {
        let leaves = BranchExplorer::new(g, f.clone(), |o| lda(o, dt));
        Ok(check_local(graph_seed, f, dt.u, 2, leaves))
    })?;
    Ok(finish("lda", items.len() as u64, outcomes, start))
}

/// Local diagnosis by neighbor comparison, for every conditional fault set of
/// at most `n` nodes and every node.
pub fn verify_clda(g: &HLGraph, graph_seed: Option<u64>, jobs: usize) -> Result<SuiteReport> {
    let start = Instant::now();
    let sets: Vec<FaultSet> = enumerate_fault_sets(g, g.dimension() as usize, true)?.collect();
    let items: Vec<(&FaultSet, Node)> = sets
        .iter()
        .flat_map(|f| (0..g.node_count() as Node).map(move |u| (f, u)))
        .collect();
    let outcomes = run_parallel(&items, jobs, |&(f, u)| {
        let rounds = 2 * g.degree(u);
        let leaves = BranchExplorer::new(g, f.clone(), |o| clda(o, u));
        Ok(check_local(graph_seed, f, u, rounds, leaves))
    })?;
    let mut report = finish("clda", items.len() as u64, outcomes, start);
    report.counts.insert("fault sets".to_owned(), sets.len() as u64);
    Ok(report)
}

/// Compares the edge-condition distinguishability test against the
/// syndrome-enumerating oracle on pairs of distinct fault sets of size `<= t`.
///
/// Also checks the pair (all nodes, all nodes but 0), which neither side may
/// call distinguishable.
pub fn verify_distinguishability(
    g: &HLGraph,
    graph_seed: Option<u64>,
    t: usize,
    mode: Mode,
    jobs: usize,
) -> Result<SuiteReport> {
    let start = Instant::now();
    let pairs: Vec<(FaultSet, FaultSet)> = match mode {
        Mode::Exhaustive => {
            let sets: Vec<FaultSet> = enumerate_fault_sets(g, t, false)?.collect();
            sets.iter().tuple_combinations().map(|(a, b)| (a.clone(), b.clone())).collect()
        }
        Mode::Sampled { count, seed } => {
            let nodes: Vec<Node> = (0..g.node_count() as Node).collect();
            let firsts = stratified_sample(&nodes, 0..=t, count, seed);
            let mut seconds = stratified_sample(&nodes, 0..=t, count, seed.wrapping_add(1));
            seconds.reverse();
            firsts
                .into_iter()
                .zip(seconds)
                .filter(|(a, b)| a != b)
                .map(|(a, b)| (a.into(), b.into()))
                .collect()
        }
    };
    let outcomes = run_parallel(&pairs, jobs, |(a, b)| {
        let mut c = Collector::new(graph_seed, a);
        let by_edges = distinguishable(g, a, b)?;
        let by_syndromes = distinguishable_bf(g, a, b)?;
        c.check(
            by_edges == by_syndromes,
            &[],
            format_args!("edge test = syndrome test for {a} vs {b}"),
            format_args!("edge test {by_edges}, syndrome test {by_syndromes}"),
        );
        Ok(Outcome {
            failures: c.failures,
            branches: 0,
        })
    })?;
    let mut report = finish("thm41", pairs.len() as u64, outcomes, start);
    report.counts.clear();

    let all: FaultSet = (0..g.node_count() as Node).collect();
    let most: FaultSet = all.iter().skip(1).collect();
    let witness = [distinguishable(g, &all, &most)?, distinguishable_bf(g, &all, &most)?];
    if witness != [false, false] {
        report.failures.push(Failure {
            seed: graph_seed,
            faults: all.iter().collect(),
            script: String::new(),
            expected: format!("[false, false] against {most}"),
            actual: format!("{witness:?}"),
        });
    }
    report.counts.insert("full-set witness".to_owned(), 1);
    Ok(report)
}

fn subsets_for(g: &HLGraph, sizes: RangeInclusive<usize>, mode: Mode) -> Result<Vec<NodeSet>> {
    let nodes: Vec<Node> = (0..g.node_count() as Node).collect();
    match mode {
        Mode::Exhaustive => {
            if g.dimension() > 4 {
                return Err(Error::ResourceBound(format!(
                    "exhaustive structural suites need n <= 4, got {}; use sampling",
                    g.dimension()
                )));
            }
            Ok(sizes
                .flat_map(|k| nodes.iter().copied().combinations(k))
                .map(NodeSet::from)
                .collect())
        }
        Mode::Sampled { count, seed } => Ok(stratified_sample(&nodes, sizes, count, seed)),
    }
}

/// The structural property checks run by [`verify_structure`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Structure {
    /// `|N(S)| >= kn - k(k+1)/2 + 1` for `1 <= k = |S| <= 2n - 2`.
    NeighborBound,
    /// Every target set of at most `n` nodes has an SDR.
    SmallTargets,
    /// Every `(n+1)`-set that does not induce a star has an SDR (`n >= 4`).
    NonStar,
    /// The neighbors of each node have an SDR avoiding that node.
    NeighborSets,
}

impl Structure {
    pub const ALL: [Structure; 4] = [
        Structure::NeighborBound,
        Structure::SmallTargets,
        Structure::NonStar,
        Structure::NeighborSets,
    ];
}

/// Runs every structural check.
pub fn verify_structure(g: &HLGraph, graph_seed: Option<u64>, mode: Mode, jobs: usize) -> Result<SuiteReport> {
    verify_structure_only(g, graph_seed, &Structure::ALL, mode, jobs)
}

/// Runs the selected structural checks. Checks outside their dimension range
/// are skipped.
pub fn verify_structure_only(
    g: &HLGraph,
    graph_seed: Option<u64>,
    wanted: &[Structure],
    mode: Mode,
    jobs: usize,
) -> Result<SuiteReport> {
    let start = Instant::now();
    let n = g.dimension() as usize;
    let mut failures = Vec::new();
    let mut counts = BTreeMap::new();
    let sub_seed = |i: u64| match mode {
        Mode::Sampled { count, seed } => Mode::Sampled {
            count,
            seed: seed.wrapping_add(i),
        },
        Mode::Exhaustive => Mode::Exhaustive,
    };

    if n >= 3 && wanted.contains(&Structure::NeighborBound) {
        let sets = subsets_for(g, 1..=2 * n - 2, sub_seed(0))?;
        let bad = run_parallel(&sets, jobs, |s| {
            let k = s.len();
            let got = neighborhood(g, s).len();
            Ok((got + k * (k + 1) / 2 < k * n + 1).then(|| (s.clone(), got)))
        })?;
        for (s, got) in bad.into_iter().flatten() {
            let k = s.len();
            failures.push(structure_failure(
                graph_seed,
                &s,
                format!("neighborhood of at least {}", k * n + 1 - k * (k + 1) / 2),
                format!("neighborhood of {got}"),
            ));
        }
        counts.insert("neighbor bound".to_owned(), sets.len() as u64);
    }

    if wanted.contains(&Structure::SmallTargets) {
        let small = subsets_for(g, 0..=n, sub_seed(1))?;
        let missing = run_parallel(&small, jobs, |s| Ok(sdr_matching(g, s.as_slice(), &NodeSet::new()).is_none()))?;
        for (s, _) in small.iter().zip(missing).filter(|(_, m)| *m) {
            failures.push(structure_failure(graph_seed, s, "an SDR".into(), "none".into()));
        }
        counts.insert("small target SDR".to_owned(), small.len() as u64);
    }

    if n >= 4 && wanted.contains(&Structure::NonStar) {
        let all = NodeSet::from_iter(0..g.node_count() as Node);
        let sets = subsets_for(g, n + 1..=n + 1, sub_seed(2))?;
        let results = run_parallel(&sets, jobs, |s| {
            if induced_star_center(g, s, &all).is_some() {
                return Ok(None);
            }
            Ok(Some(sdr_matching(g, s.as_slice(), &NodeSet::new()).is_some()))
        })?;
        let mut checked = 0;
        for (s, r) in sets.iter().zip(results) {
            match r {
                Some(true) => checked += 1,
                Some(false) => {
                    checked += 1;
                    failures.push(structure_failure(graph_seed, s, "an SDR for a non-star set".into(), "none".into()));
                }
                None => {}
            }
        }
        counts.insert("non-star SDR".to_owned(), checked);
        counts.insert("non-star SDR (stars skipped)".to_owned(), sets.len() as u64 - checked);
    }

    if n >= 3 && wanted.contains(&Structure::NeighborSets) {
        let nodes: Vec<Node> = (0..g.node_count() as Node).collect();
        let missing = run_parallel(&nodes, jobs, |&u| {
            Ok(sdr_matching(g, g.neighbors(u), &NodeSet::from([u])).is_none())
        })?;
        for (&u, _) in nodes.iter().zip(missing).filter(|(_, m)| *m) {
            failures.push(structure_failure(
                graph_seed,
                &NodeSet::from([u]),
                "an SDR for the neighbors avoiding the node".into(),
                "none".into(),
            ));
        }
        counts.insert("neighbor set SDR".to_owned(), nodes.len() as u64);
    }

    failures.sort();
    Ok(SuiteReport {
        suite: "lemmas".to_owned(),
        instances: counts.values().sum(),
        failures,
        millis: start.elapsed().as_millis() as u64,
        counts,
    })
}

fn structure_failure(seed: Option<u64>, s: &NodeSet, expected: String, actual: String) -> Failure {
    Failure {
        seed,
        faults: s.iter().collect(),
        script: String::new(),
        expected,
        actual,
    }
}

/// Global diagnosis for graphs below the three-round algorithm's range:
/// every node tests every neighbor, then the syndrome is matched against all
/// fault sets of size `<= n`.
pub fn diagnose_small(o: &mut xqdiag_core::TestOracle<'_, HLGraph>) -> Result<(BruteForce, xqdiag_core::Syndrome)> {
    let g = o.graph();
    let survey = complete_survey(o)?;
    let result = bruteforce_diagnose(g, &survey.syndrome, g.dimension() as usize)?;
    Ok((result, survey.syndrome))
}

#[cfg(test)]
mod tests {
    use super::*;
    use xqdiag_core::{build_hypercube, build_random_xq, find_dt_embedding};

    #[test]
    fn stratified_sizes() {
        let nodes: Vec<Node> = (0..32).collect();
        let sample = stratified_sample(&nodes, 0..=5, 20, 9);
        assert_eq!(sample.len(), 20);
        let sizes: Vec<usize> = sample.iter().map(NodeSet::len).collect();
        assert_eq!(sizes, [0, 0, 0, 1, 1, 1, 2, 2, 2, 3, 3, 3, 4, 4, 4, 4, 5, 5, 5, 5]);
        assert_eq!(sample, stratified_sample(&nodes, 0..=5, 20, 9));
        let sizes: Vec<usize> = stratified_sample(&nodes, 2..=3, 5, 1).iter().map(NodeSet::len).collect();
        assert_eq!(sizes, [2, 2, 3, 3, 3]);
        assert!(stratified_sample(&nodes[..2], 3..=4, 5, 1).is_empty());
    }

    #[test]
    fn small_suites_pass() {
        let q3 = build_hypercube(3).unwrap();
        let report = verify_lda(2, 2).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.instances, 1 + 5 + 10);
        let report = verify_clda(&q3, None, 2).unwrap();
        assert!(report.passed(), "{report:?}");
        let report = verify_structure(&build_random_xq(3, 4).unwrap(), Some(4), Mode::Exhaustive, 2).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.counts["neighbor set SDR"], 8);
    }

    #[test]
    fn lda_on_embedded_trees() {
        let q3 = build_hypercube(3).unwrap();
        let trees: Vec<DtEmbedding> = (0..8).filter_map(|u| find_dt_embedding(&q3, u, 3)).collect();
        assert_eq!(trees.len(), 8);
        let report = verify_lda_on(&q3, None, &trees, 3, 4).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.instances, 8 * 64);
    }

    #[test]
    fn json_shape() {
        let report = SuiteReport {
            suite: "dhl".into(),
            instances: 1,
            failures: vec![Failure {
                seed: Some(3),
                faults: vec![1, 2],
                script: "01".into(),
                expected: "{1,2}".into(),
                actual: "{1}".into(),
            }],
            millis: 5,
            counts: BTreeMap::new(),
        };
        let json = report.to_json();
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        let mut keys: Vec<&String> = value.as_object().unwrap().keys().collect();
        keys.sort();
        assert_eq!(keys, ["failures", "instances", "millis", "suite"]);
        assert_eq!(serde_json::from_str::<SuiteReport>(&json).unwrap(), report);
        assert!(!report.passed());
    }
}
