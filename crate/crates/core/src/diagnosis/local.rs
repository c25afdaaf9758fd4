use alloc::vec::Vec;

use itertools::Itertools;

use super::{LocalVerdict, Session, Status};
use crate::error::Result;
use crate::graph::{sdr_matching_by, AdjacencyGraph, Network, Node, NodeSet};
use crate::model::TestOracle;

/// A depth-two tree rooted at `u`: edges `{u, x_i}` and `{x_i, y_i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DtEmbedding {
    pub u: Node,
    pub x: Vec<Node>,
    pub y: Vec<Node>,
}

impl DtEmbedding {
    pub fn order(&self) -> usize {
        self.x.len()
    }

    /// The `2t + 1` tree nodes.
    pub fn nodes(&self) -> NodeSet {
        core::iter::once(self.u)
            .chain(self.x.iter().copied())
            .chain(self.y.iter().copied())
            .collect()
    }

    /// Whether the tree is present in `g` with all nodes distinct.
    pub fn is_embedded_in<G: Network + ?Sized>(&self, g: &G) -> bool {
        self.x.len() == self.y.len()
            && self.nodes().len() == 2 * self.order() + 1
            && self
                .x
                .iter()
                .zip(&self.y)
                .all(|(&x, &y)| g.is_adjacent(self.u, x) && g.is_adjacent(x, y))
    }

    /// The tree as a graph of its own: root 0, `x_i = i`, `y_i = t + i`.
    pub fn standalone(t: usize) -> (AdjacencyGraph, DtEmbedding) {
        let t = t as Node;
        let g = AdjacencyGraph::from_edges(
            2 * t as usize + 1,
            (1..=t).flat_map(|i| [(0, i), (i, t + i)]),
        );
        let dt = DtEmbedding {
            u: 0,
            x: (1..=t).collect(),
            y: (t + 1..=2 * t).collect(),
        };
        (g, dt)
    }
}

/// Finds a diagnosis tree of order `t` at `u`.
///
/// Neighbor subsets are tried in lexicographic order of ids; the leaves are
/// distinct representatives of the chosen neighbors avoiding `u`.
pub fn find_dt_embedding<G: Network + ?Sized>(g: &G, u: Node, t: usize) -> Option<DtEmbedding> {
    if !g.contains_node(u) || t > g.degree(u) {
        return None;
    }
    let mut nbrs = g.neighbors(u).to_vec();
    nbrs.sort_unstable();
    nbrs.into_iter().combinations(t).find_map(|x| {
        let y = sdr_matching_by(g, &x, |w| w != u)?;
        Some(DtEmbedding { u, x, y })
    })
}

/// Two-round local diagnosis of the tree root.
///
/// Round 1: every leaf tests its parent. A parent that receives 0 is
/// fault-free; the first such parent tests the root in round 2. If every
/// parent receives 1, each branch holds a fault, which exhausts the budget of
/// `t` faults and leaves the root fault-free.
///
/// Correct whenever at most `t` of the tree's nodes are faulty.
pub fn lda<G: Network + ?Sized>(o: &mut TestOracle<'_, G>, dt: &DtEmbedding) -> Result<LocalVerdict> {
    let mut s = Session::new(o);
    if dt.order() == 0 {
        return Ok(s.finish(Status::FaultFree, None));
    }
    s.begin_round();
    let mut cleared = None;
    for (&x, &y) in dt.x.iter().zip(&dt.y) {
        if !s.test(y, x)? && cleared.is_none() {
            cleared = Some(x);
        }
    }
    let status = match cleared {
        Some(z) => {
            s.begin_round();
            Status::from_faulty(s.test(z, dt.u)?)
        }
        None => Status::FaultFree,
    };
    Ok(s.finish(status, None))
}

/// Conditional local diagnosis: `u` and each neighbor test each other; a
/// `(0, 0)` pair proves `u` fault-free.
///
/// Every test needs `u`, so each one occupies its own round. Correct when the
/// hidden fault set is conditional and no larger than `deg(u)`.
pub fn clda<G: Network + ?Sized>(o: &mut TestOracle<'_, G>, u: Node) -> Result<LocalVerdict> {
    let g = o.graph();
    let mut s = Session::new(o);
    let mut mutual_pass = false;
    for &v in g.neighbors(u) {
        s.begin_round();
        let forward = s.test(u, v)?;
        s.begin_round();
        let backward = s.test(v, u)?;
        mutual_pass |= !forward && !backward;
    }
    Ok(s.finish(Status::from_faulty(!mutual_pass), None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::graph::build_hypercube;
    use crate::model::{AdversaryPolicy, FaultSet};

    #[test]
    fn q3_tree_at_zero() {
        let g = build_hypercube(3).unwrap();
        let dt = find_dt_embedding(&g, 0, 3).unwrap();
        assert_eq!(dt.x, [1, 2, 4]);
        assert_eq!(dt.y, [3, 6, 5]);
        assert!(dt.is_embedded_in(&g));
    }

    #[test]
    fn trivial_and_missing_trees() {
        let g = build_hypercube(3).unwrap();
        let empty = find_dt_embedding(&g, 5, 0).unwrap();
        assert!(empty.x.is_empty() && empty.y.is_empty());
        assert_eq!(find_dt_embedding(&g, 0, 4), None);
        let c4 = build_hypercube(2).unwrap();
        assert_eq!(find_dt_embedding(&c4, 0, 2), None);
    }

    #[test]
    fn standalone_tree_shape() {
        let (g, dt) = DtEmbedding::standalone(3);
        assert_eq!(g.node_count(), 7);
        assert!(dt.is_embedded_in(&g));
        assert_eq!(find_dt_embedding(&g, 0, 3), Some(dt));
    }

    #[test]
    fn lda_without_faults_takes_two_rounds() {
        let (g, dt) = DtEmbedding::standalone(4);
        let mut o = TestOracle::new(&g, FaultSet::empty(), AdversaryPolicy::AllOne);
        let v = lda(&mut o, &dt).unwrap();
        assert_eq!(v.status, Status::FaultFree);
        assert_eq!(v.rounds_used, 2);
        assert_eq!(v.ledger.rounds()[1], [(1, 0)]);
    }

    #[test]
    fn lda_all_parents_faulty() {
        let (g, dt) = DtEmbedding::standalone(3);
        for policy in [AdversaryPolicy::AllZero, AdversaryPolicy::AllOne] {
            let mut o = TestOracle::new(&g, FaultSet::from([1, 2, 3]), policy);
            let v = lda(&mut o, &dt).unwrap();
            assert_eq!(v.status, Status::FaultFree);
            assert_eq!(v.rounds_used, 1);
        }
    }

    #[test]
    fn lda_faulty_root_with_clean_branch() {
        let (g, dt) = DtEmbedding::standalone(3);
        for policy in [AdversaryPolicy::AllZero, AdversaryPolicy::AllOne] {
            let mut o = TestOracle::new(&g, FaultSet::from([0, 1]), policy);
            assert_eq!(lda(&mut o, &dt).unwrap().status, Status::Faulty);
        }
    }

    #[test]
    fn clda_examples() {
        let g = build_hypercube(3).unwrap();
        let mut o = TestOracle::new(&g, FaultSet::empty(), AdversaryPolicy::AllOne);
        let v = clda(&mut o, 0).unwrap();
        assert_eq!(v.status, Status::FaultFree);
        assert_eq!(v.rounds_used, 6);
        assert!(v.ledger.is_legal());
        for policy in [AdversaryPolicy::AllZero, AdversaryPolicy::AllOne] {
            let mut o = TestOracle::new(&g, FaultSet::from([0, 1]), policy.clone());
            assert_eq!(clda(&mut o, 0).unwrap().status, Status::Faulty);
            let mut o = TestOracle::new(&g, FaultSet::from([1, 2]), policy);
            assert_eq!(clda(&mut o, 0).unwrap().status, Status::FaultFree);
        }
    }

    #[test]
    fn scripted_adversary_runs_out() {
        let (g, dt) = DtEmbedding::standalone(2);
        let mut o = TestOracle::new(&g, FaultSet::from([3]), AdversaryPolicy::Scripted(Vec::new()));
        assert_eq!(lda(&mut o, &dt).unwrap_err(), Error::ScriptExhausted(0));
    }
}
