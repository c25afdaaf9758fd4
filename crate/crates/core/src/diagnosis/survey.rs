use super::{Session, Verdict};
use crate::error::Result;
use crate::graph::{HLGraph, Network};
use crate::model::TestOracle;

/// Performs every ordered test of the graph, two rounds per dimension.
///
/// In round `2d - 1` each node with bit `d - 1` clear tests its dimension-`d`
/// neighbor; round `2d` reverses the direction. Each round is a perfect
/// matching, so the one-role-per-node rule holds.
pub fn complete_survey(o: &mut TestOracle<'_, HLGraph>) -> Result<Verdict<()>> {
    let g = o.graph();
    let mut s = Session::new(o);
    for d in 1..=g.dimension() {
        for side in [0, 1] {
            s.begin_round();
            for v in 0..g.node_count() as u32 {
                if v >> (d - 1) & 1 == side {
                    s.test(v, g.neighbor(v, d))?;
                }
            }
        }
    }
    Ok(s.finish((), None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_random_xq;
    use crate::model::{AdversaryPolicy, FaultSet};

    #[test]
    fn covers_every_arc_once() {
        let g = build_random_xq(3, 5).unwrap();
        let mut o = TestOracle::new(&g, FaultSet::from([2]), AdversaryPolicy::AllZero);
        let v = complete_survey(&mut o).unwrap();
        assert_eq!(v.rounds_used, 6);
        assert_eq!(v.tests_used, 24);
        assert!(v.ledger.is_legal());
        let mut arcs: alloc::vec::Vec<_> = v.syndrome.records().iter().map(|r| (r.tester, r.testee)).collect();
        arcs.sort_unstable();
        arcs.dedup();
        assert_eq!(arcs.len(), 24);
    }
}
