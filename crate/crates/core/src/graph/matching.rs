//! Systems of distinct representatives via augmenting paths.
//!
//! Targets sit on the left of a bipartite graph, eligible neighbors on the
//! right. Each target first takes a free neighbor if one exists, otherwise an
//! augmenting path is searched depth first. Neighbors are scanned in
//! dimension order, so results are deterministic.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::{Network, Node, NodeSet};

struct Matcher<'a, G: ?Sized, F> {
    g: &'a G,
    targets: &'a [Node],
    sorted_targets: Vec<Node>,
    eligible: F,
    owner: BTreeMap<Node, usize>,
    assigned: Vec<Option<Node>>,
}

impl<G: Network + ?Sized, F: Fn(Node) -> bool> Matcher<'_, G, F> {
    fn candidate(&self, w: Node) -> bool {
        self.sorted_targets.binary_search(&w).is_err() && (self.eligible)(w)
    }

    fn augment(&mut self, i: usize, visited: &mut BTreeSet<Node>) -> bool {
        let g = self.g;
        for &w in g.neighbors(self.targets[i]) {
            if !self.candidate(w) || !visited.insert(w) {
                continue;
            }
            let free = match self.owner.get(&w) {
                None => true,
                Some(&j) => self.augment(j, visited),
            };
            if free {
                self.owner.insert(w, i);
                self.assigned[i] = Some(w);
                return true;
            }
        }
        false
    }

    fn run(mut self) -> Vec<Option<Node>> {
        let g = self.g;
        for i in 0..self.targets.len() {
            let greedy = g.neighbors(self.targets[i])
                .iter()
                .copied()
                .find(|&w| self.candidate(w) && !self.owner.contains_key(&w));
            if let Some(w) = greedy {
                self.owner.insert(w, i);
                self.assigned[i] = Some(w);
            } else {
                self.augment(i, &mut BTreeSet::new());
            }
        }
        self.assigned
    }
}

/// Maximum matching of `targets` into eligible neighbors outside `targets`.
///
/// Entry `i` is the representative of `targets[i]`, or `None` if it is left
/// unmatched. `targets` must not contain duplicates.
pub fn maximum_matching_by<G: Network + ?Sized>(
    g: &G,
    targets: &[Node],
    eligible: impl Fn(Node) -> bool,
) -> Vec<Option<Node>> {
    let mut sorted_targets = targets.to_vec();
    sorted_targets.sort_unstable();
    debug_assert!(sorted_targets.windows(2).all(|w| w[0] != w[1]));
    Matcher {
        g,
        targets,
        sorted_targets,
        eligible,
        owner: BTreeMap::new(),
        assigned: alloc::vec![None; targets.len()],
    }
    .run()
}

/// Distinct representatives `v_i ~ targets[i]` drawn from nodes outside
/// `targets` that satisfy `eligible`, or `None` if no such system exists.
pub fn sdr_matching_by<G: Network + ?Sized>(
    g: &G,
    targets: &[Node],
    eligible: impl Fn(Node) -> bool + Copy,
) -> Option<Vec<Node>> {
    let reps: Option<Vec<Node>> = maximum_matching_by(g, targets, eligible).into_iter().collect();
    if let Some(reps) = &reps {
        debug_assert!(is_valid_sdr(g, targets, reps, eligible));
    }
    reps
}

/// [`sdr_matching_by`] with the eligible nodes given as the complement of
/// `forbidden`.
pub fn sdr_matching<G: Network + ?Sized>(
    g: &G,
    targets: &[Node],
    forbidden: &NodeSet,
) -> Option<Vec<Node>> {
    sdr_matching_by(g, targets, |w| !forbidden.contains(w))
}

/// Adjacency, distinctness, and disjointness from `targets` and from
/// ineligible nodes.
pub fn is_valid_sdr<G: Network + ?Sized>(
    g: &G,
    targets: &[Node],
    reps: &[Node],
    eligible: impl Fn(Node) -> bool,
) -> bool {
    let distinct: BTreeSet<Node> = reps.iter().copied().collect();
    reps.len() == targets.len()
        && distinct.len() == reps.len()
        && targets
            .iter()
            .zip(reps)
            .all(|(&u, &v)| g.is_adjacent(u, v) && !targets.contains(&v) && eligible(v))
}
