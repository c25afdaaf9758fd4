//! BGM comparison-test semantics.
//!
//! | tester     | testee     | result      |
//! |------------|------------|-------------|
//! | fault-free | fault-free | 0           |
//! | fault-free | faulty     | 1           |
//! | faulty     | fault-free | 0 or 1      |
//! | faulty     | faulty     | 1           |
//!
//! A result of `true` means the tester reported the testee as faulty. The
//! "0 or 1" row is a *free cell*; a [`TestOracle`] resolves it through its
//! [`AdversaryPolicy`].

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Deref;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Network, Node, NodeSet};

/// Largest number of free cells `distinguishable_bf` will enumerate per set.
pub const FREE_CELL_BUDGET: usize = 24;

/// Largest number of candidate fault sets the enumerating checks accept.
pub const CANDIDATE_SET_LIMIT: usize = 20_000;

/// The hidden set of faulty processors.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FaultSet(NodeSet);

impl FaultSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn members(&self) -> &NodeSet {
        &self.0
    }

    pub fn into_members(self) -> NodeSet {
        self.0
    }

    /// Checks every member is a node of `g`.
    pub fn check_within<G: Network + ?Sized>(&self, g: &G) -> Result<()> {
        match self.0.iter().find(|&v| !g.contains_node(v)) {
            Some(v) => Err(Error::NodeOutOfRange(v)),
            None => Ok(()),
        }
    }
}

impl Deref for FaultSet {
    type Target = NodeSet;

    fn deref(&self) -> &NodeSet {
        &self.0
    }
}

impl From<NodeSet> for FaultSet {
    fn from(s: NodeSet) -> Self {
        Self(s)
    }
}

impl<const N: usize> From<[Node; N]> for FaultSet {
    fn from(v: [Node; N]) -> Self {
        Self(NodeSet::from(v))
    }
}

impl FromIterator<Node> for FaultSet {
    fn from_iter<I: IntoIterator<Item = Node>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

impl fmt::Display for FaultSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// One performed test `(tester, testee)` and its outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TestRecord {
    pub round: usize,
    pub tester: Node,
    pub testee: Node,
    pub result: bool,
}

/// Ordered list of test records, grouped by nondecreasing round.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Syndrome {
    records: Vec<TestRecord>,
}

impl Syndrome {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends a record, rejecting round regressions and a repeated
    /// `(tester, testee)` pair inside one round.
    pub fn push(&mut self, record: TestRecord) -> Result<()> {
        if let Some(last) = self.records.last() {
            if record.round < last.round {
                return Err(Error::MalformedSyndrome(format!(
                    "round {} after round {}",
                    record.round, last.round
                )));
            }
        }
        let duplicate = self.records.iter().rev()
            .take_while(|r| r.round == record.round)
            .any(|r| r.tester == record.tester && r.testee == record.testee);
        if duplicate {
            return Err(Error::MalformedSyndrome(format!(
                "test ({}, {}) repeated in round {}",
                record.tester, record.testee, record.round
            )));
        }
        self.records.push(record);
        Ok(())
    }

    pub fn from_records(records: impl IntoIterator<Item = TestRecord>) -> Result<Self> {
        let mut s = Self::new();
        for r in records {
            s.push(r)?;
        }
        Ok(s)
    }

    pub fn records(&self) -> &[TestRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Number of distinct rounds present.
    pub fn round_count(&self) -> usize {
        self.records.iter().map(|r| r.round).dedup().count()
    }
}

/// How a faulty tester answers about a fault-free testee.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AdversaryPolicy {
    AllZero,
    AllOne,
    Random(u64),
    /// Bits consumed in query order; running out is an error.
    Scripted(Vec<bool>),
}

/// What the model dictates for one ordered test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cell {
    Fixed(bool),
    Free,
}

/// The BGM outcome table.
pub fn table_outcome(tester_faulty: bool, testee_faulty: bool) -> Cell {
    match (tester_faulty, testee_faulty) {
        (false, testee) => Cell::Fixed(testee),
        (true, true) => Cell::Fixed(true),
        (true, false) => Cell::Free,
    }
}

#[derive(Debug, Clone)]
enum Resolver {
    Constant(bool),
    Random(Box<ChaCha8Rng>),
    Scripted { bits: Vec<bool>, cursor: usize },
}

/// Answers adaptive test queries against a hidden fault set.
#[derive(Debug, Clone)]
pub struct TestOracle<'g, G: ?Sized> {
    graph: &'g G,
    faults: FaultSet,
    resolver: Resolver,
    free_bits: usize,
    log: Vec<(Node, Node, bool)>,
}

impl<'g, G: Network + ?Sized> TestOracle<'g, G> {
    pub fn new(graph: &'g G, faults: FaultSet, policy: AdversaryPolicy) -> Self {
        let resolver = match policy {
            AdversaryPolicy::AllZero => Resolver::Constant(false),
            AdversaryPolicy::AllOne => Resolver::Constant(true),
            AdversaryPolicy::Random(seed) => Resolver::Random(Box::new(ChaCha8Rng::seed_from_u64(seed))),
            AdversaryPolicy::Scripted(bits) => Resolver::Scripted { bits, cursor: 0 },
        };
        Self {
            graph,
            faults,
            resolver,
            free_bits: 0,
            log: Vec::new(),
        }
    }

    pub fn graph(&self) -> &'g G {
        self.graph
    }

    pub fn faults(&self) -> &FaultSet {
        &self.faults
    }

    /// Free cells resolved so far.
    pub fn free_bits(&self) -> usize {
        self.free_bits
    }

    /// Every answered query as `(tester, testee, result)`.
    pub fn log(&self) -> &[(Node, Node, bool)] {
        &self.log
    }

    pub fn answer(&mut self, tester: Node, testee: Node) -> Result<bool> {
        if !self.graph.is_adjacent(tester, testee) {
            return Err(Error::NotAdjacent(tester, testee));
        }
        let cell = table_outcome(self.faults.contains(tester), self.faults.contains(testee));
        let result = match cell {
            Cell::Fixed(bit) => bit,
            Cell::Free => {
                let bit = match &mut self.resolver {
                    Resolver::Constant(bit) => *bit,
                    Resolver::Random(rng) => rng.gen(),
                    Resolver::Scripted { bits, cursor } => {
                        let bit = *bits.get(*cursor).ok_or(Error::ScriptExhausted(*cursor))?;
                        *cursor += 1;
                        bit
                    }
                };
                self.free_bits += 1;
                bit
            }
        };
        self.log.push((tester, testee, result));
        Ok(result)
    }
}

/// Free-function form of [`TestOracle::answer`].
pub fn answer<G: Network + ?Sized>(o: &mut TestOracle<'_, G>, tester: Node, testee: Node) -> Result<bool> {
    o.answer(tester, testee)
}

/// Whether `f` could have produced `s`.
///
/// A fault-free tester must report the testee's true status; a faulty tester
/// must report 1 on a faulty testee and is unconstrained otherwise.
pub fn consistent<G: Network + ?Sized>(g: &G, f: &FaultSet, s: &Syndrome) -> bool {
    s.records().iter().all(|r| {
        debug_assert!(g.is_adjacent(r.tester, r.testee));
        match table_outcome(f.contains(r.tester), f.contains(r.testee)) {
            Cell::Fixed(bit) => r.result == bit,
            Cell::Free => true,
        }
    })
}

/// Distinguishability by the three edge conditions: an edge from a node
/// outside `f1 ∪ f2` into `f1 △ f2`, or an edge inside `f1 - f2`, or an edge
/// inside `f2 - f1`.
pub fn distinguishable<G: Network + ?Sized>(g: &G, f1: &FaultSet, f2: &FaultSet) -> Result<bool> {
    if f1 == f2 {
        return Err(Error::IdenticalFaultSets);
    }
    let only1 = f1.difference(f2);
    let only2 = f2.difference(f1);
    let outside = |w: Node| !f1.contains(w) && !f2.contains(w);
    let watched = only1
        .iter()
        .chain(only2.iter())
        .any(|v| g.neighbors(v).iter().any(|&w| outside(w)));
    let internal_edge = |part: &NodeSet| {
        part.iter()
            .any(|v| g.neighbors(v).iter().any(|&w| part.contains(w)))
    };
    Ok(watched || internal_edge(&only1) || internal_edge(&only2))
}

/// Every syndrome over the complete test assignment that `f` is consistent
/// with, as bit vectors indexed by arc.
fn syndrome_set(arcs: &[(Node, Node)], f: &FaultSet) -> Result<BTreeSet<Vec<u64>>> {
    let words = arcs.len().div_ceil(64);
    let mut base = alloc::vec![0u64; words];
    let mut free = Vec::new();
    for (i, &(u, v)) in arcs.iter().enumerate() {
        match table_outcome(f.contains(u), f.contains(v)) {
            Cell::Fixed(true) => base[i / 64] |= 1 << (i % 64),
            Cell::Fixed(false) => {}
            Cell::Free => free.push(i),
        }
    }
    if free.len() > FREE_CELL_BUDGET {
        return Err(Error::resource(format!(
            "{} free cells for fault set {f} (budget {FREE_CELL_BUDGET})",
            free.len()
        )));
    }
    let mut out = BTreeSet::new();
    for choice in 0u64..(1u64 << free.len()) {
        let mut s = base.clone();
        for (bit, &i) in free.iter().enumerate() {
            if choice >> bit & 1 == 1 {
                s[i / 64] |= 1 << (i % 64);
            }
        }
        out.insert(s);
    }
    Ok(out)
}

/// Distinguishability by enumeration: builds both syndrome sets over all
/// ordered adjacent pairs and checks they are disjoint.
pub fn distinguishable_bf<G: Network + ?Sized>(g: &G, f1: &FaultSet, f2: &FaultSet) -> Result<bool> {
    if f1 == f2 {
        return Err(Error::IdenticalFaultSets);
    }
    let arcs: Vec<(Node, Node)> = (0..g.node_count() as Node)
        .flat_map(|u| g.neighbors(u).iter().map(move |&v| (u, v)))
        .collect();
    let first = syndrome_set(&arcs, f1)?;
    let second = syndrome_set(&arcs, f2)?;
    Ok(first.is_disjoint(&second))
}

/// Every fault-free node keeps at least one fault-free neighbor.
pub fn is_conditional<G: Network + ?Sized>(g: &G, f: &FaultSet) -> bool {
    (0..g.node_count() as Node)
        .filter(|&v| !f.contains(v))
        .all(|v| g.neighbors(v).iter().any(|&w| !f.contains(w)))
}

/// Adjacency as bit masks, for graphs of at most 64 nodes.
pub(crate) fn adjacency_masks<G: Network + ?Sized>(g: &G) -> Result<Vec<u64>> {
    if g.node_count() > 64 {
        return Err(Error::resource(format!(
            "{} nodes exceed the 64-node enumeration limit",
            g.node_count()
        )));
    }
    Ok((0..g.node_count() as Node)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect())
}

fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    core::iter::from_fn(move || {
        (mask != 0).then(|| {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            i
        })
    })
}

pub(crate) fn distinguishable_masks(adj: &[u64], f1: u64, f2: u64) -> bool {
    let all = if adj.len() == 64 { u64::MAX } else { (1u64 << adj.len()) - 1 };
    let outside = all & !(f1 | f2);
    let only1 = f1 & !f2;
    let only2 = f2 & !f1;
    bits(only1 | only2).any(|v| adj[v] & outside != 0)
        || bits(only1).any(|v| adj[v] & only1 != 0)
        || bits(only2).any(|v| adj[v] & only2 != 0)
}

pub(crate) fn is_conditional_mask(adj: &[u64], f: u64) -> bool {
    (0..adj.len()).all(|v| f >> v & 1 == 1 || adj[v] & !f != 0)
}

/// All subsets of `0..nodes` of size `<= t` as masks, size first then
/// lexicographic.
pub(crate) fn small_subsets(nodes: usize, t: usize) -> Result<Vec<u64>> {
    let t = t.min(nodes);
    let mut count = 1usize;
    let mut binom = 1usize;
    for k in 1..=t {
        binom = binom * (nodes - k + 1) / k;
        count = count.saturating_add(binom);
    }
    if count > CANDIDATE_SET_LIMIT {
        return Err(Error::resource(format!(
            "{count} candidate fault sets exceed the limit of {CANDIDATE_SET_LIMIT}"
        )));
    }
    let mut out = Vec::with_capacity(count);
    for k in 0..=t {
        out.extend((0..nodes).combinations(k).map(|c| c.iter().fold(0u64, |m, &v| m | 1 << v)));
    }
    Ok(out)
}

/// Local `t`-diagnosability at `u`: every pair of distinct fault sets of size
/// at most `t` that disagree on `u` is distinguishable.
pub fn locally_t_diagnosable<G: Network + ?Sized>(g: &G, u: Node, t: usize) -> Result<bool> {
    if !g.contains_node(u) {
        return Err(Error::NodeOutOfRange(u));
    }
    let adj = adjacency_masks(g)?;
    let sets = small_subsets(adj.len(), t)?;
    let bit = 1u64 << u;
    let (with_u, without_u): (Vec<u64>, Vec<u64>) = sets.iter().partition(|&&s| s & bit != 0);
    Ok(with_u
        .iter()
        .all(|&a| without_u.iter().all(|&b| distinguishable_masks(&adj, a, b))))
}

/// Conditional `t`-diagnosability: every pair of distinct conditional fault
/// sets of size at most `t` is distinguishable.
pub fn conditionally_t_diagnosable<G: Network + ?Sized>(g: &G, t: usize) -> Result<bool> {
    let adj = adjacency_masks(g)?;
    let sets: Vec<u64> = small_subsets(adj.len(), t)?
        .into_iter()
        .filter(|&s| is_conditional_mask(&adj, s))
        .collect();
    Ok(sets.iter().enumerate().all(|(i, &a)| {
        sets[i + 1..].iter().all(|&b| distinguishable_masks(&adj, a, b))
    }))
}
