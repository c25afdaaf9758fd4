//! Exhaustive building blocks for the verification suites.

use alloc::format;
use alloc::vec::Vec;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::graph::{Network, Node, NodeSet};
use crate::model::{
    adjacency_masks, is_conditional, small_subsets, table_outcome, AdversaryPolicy, Cell,
    FaultSet, Syndrome, TestOracle,
};

/// Node-count limit for the enumerating helpers.
pub const ENUMERATION_NODE_LIMIT: usize = 32;

fn check_enumerable<G: Network + ?Sized>(g: &G) -> Result<()> {
    if g.node_count() > ENUMERATION_NODE_LIMIT {
        return Err(Error::resource(format!(
            "{} nodes exceed the enumeration limit of {ENUMERATION_NODE_LIMIT}",
            g.node_count()
        )));
    }
    Ok(())
}

/// All fault sets of size `<= t`, smallest first and lexicographic within a
/// size, optionally restricted to conditional sets.
pub fn enumerate_fault_sets<'g, G: Network + ?Sized>(
    g: &'g G,
    t: usize,
    conditional: bool,
) -> Result<impl Iterator<Item = FaultSet> + 'g> {
    check_enumerable(g)?;
    let nodes = g.node_count() as Node;
    Ok((0..=t.min(nodes as usize))
        .flat_map(move |k| (0..nodes).combinations(k))
        .map(FaultSet::from_iter)
        .filter(move |f| !conditional || is_conditional(g, f)))
}

/// One complete run of an algorithm under a fixed adversary script.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Leaf<T> {
    pub script: Vec<bool>,
    /// Free cells the oracle resolved during the run.
    pub free_bits: usize,
    pub outcome: Result<T>,
}

/// Walks the full binary tree of free-cell decisions for one hidden fault set.
///
/// Each run uses a scripted adversary. A run that exhausts its script forks
/// into the two one-bit extensions; any other outcome is a leaf. Leaves come
/// out in depth-first order with `0` before `1`.
pub struct BranchExplorer<'g, G: ?Sized, A> {
    graph: &'g G,
    faults: FaultSet,
    algorithm: A,
    stack: Vec<Vec<bool>>,
}

impl<G: ?Sized, A> core::fmt::Debug for BranchExplorer<'_, G, A> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("BranchExplorer")
            .field("faults", &self.faults)
            .field("pending", &self.stack.len())
            .finish()
    }
}

impl<'g, G, A, T> BranchExplorer<'g, G, A>
where
    G: Network + ?Sized,
    A: FnMut(&mut TestOracle<'g, G>) -> Result<T>,
{
    pub fn new(graph: &'g G, faults: FaultSet, algorithm: A) -> Self {
        Self {
            graph,
            faults,
            algorithm,
            stack: alloc::vec![Vec::new()],
        }
    }
}

impl<'g, G, A, T> Iterator for BranchExplorer<'g, G, A>
where
    G: Network + ?Sized,
    A: FnMut(&mut TestOracle<'g, G>) -> Result<T>,
{
    type Item = Leaf<T>;

    fn next(&mut self) -> Option<Leaf<T>> {
        loop {
            let script = self.stack.pop()?;
            let mut oracle = TestOracle::new(
                self.graph,
                self.faults.clone(),
                AdversaryPolicy::Scripted(script.clone()),
            );
            match (self.algorithm)(&mut oracle) {
                Err(Error::ScriptExhausted(_)) => {
                    for bit in [true, false] {
                        let mut next = script.clone();
                        next.push(bit);
                        self.stack.push(next);
                    }
                }
                outcome => {
                    return Some(Leaf {
                        script,
                        free_bits: oracle.free_bits(),
                        outcome,
                    })
                }
            }
        }
    }
}

/// Outcome of [`bruteforce_diagnose`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BruteForce {
    /// Exactly one candidate set is consistent with the syndrome.
    Unique(FaultSet),
    /// Two distinct consistent candidates (the first two found).
    Ambiguous(FaultSet, FaultSet),
    /// No candidate is consistent.
    Inconsistent,
}

/// Diagnoses from a syndrome alone by trying every fault set of size `<= t`.
pub fn bruteforce_diagnose<G: Network + ?Sized>(g: &G, s: &Syndrome, t: usize) -> Result<BruteForce> {
    check_enumerable(g)?;
    let adj = adjacency_masks(g)?;
    let candidates = small_subsets(adj.len(), t)?;
    let records: Vec<(u64, u64, bool)> = s
        .records()
        .iter()
        .map(|r| (1u64 << r.tester, 1u64 << r.testee, r.result))
        .collect();
    let fits = |f: u64| {
        records.iter().all(|&(tester, testee, result)| {
            match table_outcome(f & tester != 0, f & testee != 0) {
                Cell::Fixed(bit) => bit == result,
                Cell::Free => true,
            }
        })
    };
    let mut found = candidates.into_iter().filter(|&f| fits(f));
    let as_set = |m| FaultSet::from(NodeSet::from_mask(m));
    Ok(match (found.next(), found.next()) {
        (None, _) => BruteForce::Inconsistent,
        (Some(f), None) => BruteForce::Unique(as_set(f)),
        (Some(a), Some(b)) => BruteForce::Ambiguous(as_set(a), as_set(b)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagnosis::{lda, DtEmbedding, Status};
    use crate::graph::build_hypercube;
    use crate::model::TestRecord;

    #[test]
    fn fault_set_counts() {
        let q3 = build_hypercube(3).unwrap();
        assert_eq!(enumerate_fault_sets(&q3, 3, false).unwrap().count(), 93);
        let q4 = build_hypercube(4).unwrap();
        assert_eq!(enumerate_fault_sets(&q4, 4, false).unwrap().count(), 2517);
        let q6 = build_hypercube(6).unwrap();
        assert!(enumerate_fault_sets(&q6, 1, false).is_err());
    }

    #[test]
    fn enumeration_order() {
        let q3 = build_hypercube(3).unwrap();
        let sets: Vec<FaultSet> = enumerate_fault_sets(&q3, 2, false).unwrap().take(11).collect();
        assert_eq!(sets[0], FaultSet::empty());
        assert_eq!(sets[1], FaultSet::from([0]));
        assert_eq!(sets[9], FaultSet::from([0, 1]));
        assert_eq!(sets[10], FaultSet::from([0, 2]));
    }

    #[test]
    fn conditional_filter_matches_direct_enumeration() {
        let q3 = build_hypercube(3).unwrap();
        let filtered: Vec<FaultSet> = enumerate_fault_sets(&q3, 3, true).unwrap().collect();
        // Direct count over masks: a set fails when some fault-free node has
        // all three neighbors faulty.
        let direct = (0u32..256)
            .filter(|m| m.count_ones() <= 3)
            .filter(|&m| {
                (0..8).all(|v| m >> v & 1 == 1 || [1, 2, 4].iter().any(|b| m >> (v ^ b) & 1 == 0))
            })
            .count();
        assert_eq!(filtered.len(), direct);
        assert!(filtered.len() < 93);
        assert!(filtered.iter().all(|f| is_conditional(&q3, f)));
    }

    #[test]
    fn explorer_enumerates_all_free_cells() {
        // Faulty leaves y_1, y_2 give two free cells in round 1.
        let (g, dt) = DtEmbedding::standalone(2);
        let leaves: Vec<_> = BranchExplorer::new(&g, FaultSet::from([3, 4]), |o| lda(o, &dt)).collect();
        assert_eq!(leaves.len(), 4);
        assert_eq!(leaves[0].script, [false, false]);
        assert_eq!(leaves[3].script, [true, true]);
        for leaf in &leaves {
            assert_eq!(leaf.free_bits, leaf.script.len());
            assert_eq!(leaf.outcome.as_ref().unwrap().status, Status::FaultFree);
        }
        // No faults: a single leaf with an empty script.
        let leaves: Vec<_> = BranchExplorer::new(&g, FaultSet::empty(), |o| lda(o, &dt)).collect();
        assert_eq!(leaves.len(), 1);
    }

    #[test]
    fn brute_force_examples() {
        let q3 = build_hypercube(3).unwrap();
        let mut full = Syndrome::new();
        for u in 0..8 {
            for &v in q3.neighbors(u) {
                full.push(TestRecord { round: 1, tester: u, testee: v, result: false }).unwrap();
            }
        }
        assert_eq!(bruteforce_diagnose(&q3, &full, 3).unwrap(), BruteForce::Unique(FaultSet::empty()));

        let one = Syndrome::from_records([TestRecord { round: 1, tester: 0, testee: 1, result: false }]).unwrap();
        assert!(matches!(bruteforce_diagnose(&q3, &one, 3).unwrap(), BruteForce::Ambiguous(..)));

        let contradictory = Syndrome::from_records([
            TestRecord { round: 1, tester: 0, testee: 1, result: false },
            TestRecord { round: 2, tester: 1, testee: 0, result: true },
        ])
        .unwrap();
        assert_eq!(bruteforce_diagnose(&q3, &contradictory, 0).unwrap(), BruteForce::Inconsistent);
    }
}
