//! Three-round diagnosis of every node of an `XQ_n`, `n >= 4`, holding at
//! most `n` faults.
//!
//! Round 1 has every lower-half node test its partner across the top-level
//! matching. The flagged upper nodes `A` each mark a pair holding at least
//! one fault, and every faulty upper node is flagged. The rest depends on
//! `A`:
//!
//! * `|A| < n`: the reverse partner tests flag `B` in the lower half, and
//!   matchings inside each half supply fault-free testers for `A` and `B`
//!   ([`Route::NoUpperFlags`], [`Route::RetestBothHalves`],
//!   [`Route::RetestUpperOnly`]).
//! * `|A| = n`: every flagged pair holds exactly one fault and nothing else is
//!   faulty, so the unflagged upper nodes are fault-free testers for `A`.
//!   When `A` is the closed upper neighborhood of some `x`, `x` has no such
//!   tester and is resolved by one extra probe ([`Route::StarLeafProbe`],
//!   [`Route::StarPartnerProbe`]).

use alloc::format;
use alloc::vec::Vec;

use super::{GlobalVerdict, Session, Status};
use crate::error::{Error, Result};
use crate::graph::{maximum_matching_by, sdr_matching_by, validate_xq, HLGraph, Network, Node, NodeSet};
use crate::model::TestOracle;

/// Branch taken by [`dhl`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    /// Nothing flagged in the upper half; the reverse tests are exact.
    NoUpperFlags,
    /// Both halves retested by matched fault-free testers in round 3.
    RetestBothHalves,
    /// Only the upper flags retested; the lower flags follow from them.
    RetestUpperOnly,
    /// `|A| = n`, tested by one matching in round 2.
    FullMatch,
    /// `|A| = n` without a complete matching: the unmatched flags are tested
    /// in round 3, possibly by flags cleared in round 2.
    SplitMatch,
    /// Star case, the center tested by a cleared leaf.
    StarLeafProbe,
    /// Star case, every leaf faulty; the center's partner is probed instead.
    StarPartnerProbe,
}

type DhlSession<'o, 'g> = Session<'o, 'g, HLGraph>;

struct Labels(Vec<Status>);

impl Labels {
    fn new(g: &HLGraph) -> Self {
        Labels(alloc::vec![Status::FaultFree; g.node_count()])
    }

    fn faulty(&mut self, v: Node) {
        self.0[v as usize] = Status::Faulty;
    }

    /// A reliable test of flagged `v`, whose pair holds exactly one fault.
    fn resolve_pair(&mut self, g: &HLGraph, v: Node, faulty: bool, cleared: &mut NodeSet) {
        if faulty {
            self.faulty(v);
        } else {
            cleared.insert(v);
            self.faulty(g.partner(v));
        }
    }
}

fn infeasible(what: &str, targets: &[Node]) -> Error {
    Error::DiagnosisInfeasible(format!("no distinct testers for {what} {targets:?}"))
}

/// Star center of `a`, read inside the upper half (which contains `a`).
fn upper_star_center(g: &HLGraph, a: &NodeSet) -> Option<Node> {
    a.iter().find(|&x| {
        let inside = g.neighbors(x).iter().filter(|&&w| a.contains(w)).count();
        inside == a.len() - 1
            && a.iter()
                .filter(|&y| y != x)
                .all(|y| g.neighbors(y).iter().all(|&w| w == x || !a.contains(w)))
    })
}

/// Diagnoses every node of `o.graph()` in at most three rounds.
///
/// Correct when the hidden fault set has at most `n` members; with more
/// faults the verdict is unspecified, or an error when the flags alone
/// reveal the excess.
pub fn dhl(o: &mut TestOracle<'_, HLGraph>) -> Result<GlobalVerdict> {
    let g = o.graph();
    validate_xq(g).map_err(Error::InvalidGraph)?;
    let n = g.dimension();
    if n < 4 {
        return Err(Error::DimensionTooSmall(n));
    }
    let n = n as usize;
    let mut s = Session::new(o);

    s.begin_round();
    let mut flagged = NodeSet::new();
    for low in g.lower_half() {
        let up = g.partner(low);
        if s.test(low, up)? {
            flagged.insert(up);
        }
    }

    if flagged.len() > n {
        return Err(Error::DiagnosisInfeasible(format!(
            "{} flagged pairs exceed the fault bound {n}",
            flagged.len()
        )));
    }
    if flagged.len() < n {
        return dhla(s, g, &flagged);
    }
    match upper_star_center(g, &flagged) {
        Some(x) => {
            let leaves: Vec<Node> = flagged.iter().filter(|&v| v != x).collect();
            let testers = sdr_matching_by(g, &leaves, |w| g.is_upper(w) && w != x)
                .ok_or_else(|| infeasible("star leaves", &leaves))?;
            dhlc(s, g, &flagged, x, &testers)
        }
        None => dhlb(s, g, &flagged),
    }
}

/// At most `n - 1` upper flags.
fn dhla(mut s: DhlSession<'_, '_>, g: &HLGraph, flagged: &NodeSet) -> Result<GlobalVerdict> {
    let n = g.dimension() as usize;
    s.begin_round();
    let mut lower_flagged = NodeSet::new();
    for up in g.upper_half() {
        let low = g.partner(up);
        if s.test(up, low)? {
            lower_flagged.insert(low);
        }
    }
    if lower_flagged.len() > n {
        return Err(Error::DiagnosisInfeasible(format!(
            "{} flagged pairs exceed the fault bound {n}",
            lower_flagged.len()
        )));
    }

    let mut labels = Labels::new(g);
    if flagged.is_empty() {
        // No upper fault: every round-2 tester was fault-free.
        lower_flagged.iter().for_each(|v| labels.faulty(v));
        return Ok(s.finish(labels.0, Some(Route::NoUpperFlags)));
    }

    let upper_targets = flagged.as_slice();
    let upper_testers = sdr_matching_by(g, upper_targets, |w| g.is_upper(w))
        .ok_or_else(|| infeasible("upper flags", upper_targets))?;

    if (1..n).contains(&lower_flagged.len()) {
        let lower_targets = lower_flagged.as_slice();
        let lower_testers = sdr_matching_by(g, lower_targets, |w| !g.is_upper(w))
            .ok_or_else(|| infeasible("lower flags", lower_targets))?;
        s.begin_round();
        for (targets, testers) in [(upper_targets, &upper_testers), (lower_targets, &lower_testers)] {
            for (&v, &c) in targets.iter().zip(testers) {
                if s.test(c, v)? {
                    labels.faulty(v);
                }
            }
        }
        return Ok(s.finish(labels.0, Some(Route::RetestBothHalves)));
    }

    // Either nothing or all n lower flags; in the latter case each flagged
    // pair holds exactly one fault.
    s.begin_round();
    let mut confirmed = NodeSet::new();
    for (&v, &c) in upper_targets.iter().zip(&upper_testers) {
        if s.test(c, v)? {
            confirmed.insert(v);
            labels.faulty(v);
        }
    }
    for low in lower_flagged.iter() {
        if !confirmed.contains(g.partner(low)) {
            labels.faulty(low);
        }
    }
    Ok(s.finish(labels.0, Some(Route::RetestUpperOnly)))
}

/// Exactly `n` upper flags that do not form a star.
fn dhlb(mut s: DhlSession<'_, '_>, g: &HLGraph, flagged: &NodeSet) -> Result<GlobalVerdict> {
    let targets = flagged.as_slice();
    let mut labels = Labels::new(g);
    let mut cleared = NodeSet::new();

    let route = match sdr_matching_by(g, targets, |w| g.is_upper(w)) {
        Some(testers) => {
            s.begin_round();
            for (&v, &c) in targets.iter().zip(&testers) {
                let faulty = s.test(c, v)?;
                labels.resolve_pair(g, v, faulty, &mut cleared);
            }
            Route::FullMatch
        }
        None => {
            // Only possible when the upper half is a small twisted cube: test
            // what one matching covers, then the rest with fresh testers,
            // which may include flags cleared in round 2.
            let partial = maximum_matching_by(g, targets, |w| g.is_upper(w));
            s.begin_round();
            let mut rest = Vec::new();
            for (&v, tester) in targets.iter().zip(&partial) {
                match *tester {
                    Some(c) => {
                        let faulty = s.test(c, v)?;
                        labels.resolve_pair(g, v, faulty, &mut cleared);
                    }
                    None => rest.push(v),
                }
            }
            let testers = sdr_matching_by(g, &rest, |w| {
                g.is_upper(w) && (!flagged.contains(w) || cleared.contains(w))
            })
            .ok_or_else(|| infeasible("unmatched flags", &rest))?;
            s.begin_round();
            for (&v, &c) in rest.iter().zip(&testers) {
                let faulty = s.test(c, v)?;
                labels.resolve_pair(g, v, faulty, &mut cleared);
            }
            Route::SplitMatch
        }
    };
    Ok(s.finish(labels.0, Some(route)))
}

/// Exactly `n` upper flags forming the star `x` plus its upper neighbors;
/// `testers[i]` tests the `i`-th leaf.
fn dhlc(
    mut s: DhlSession<'_, '_>,
    g: &HLGraph,
    flagged: &NodeSet,
    x: Node,
    testers: &[Node],
) -> Result<GlobalVerdict> {
    let leaves: Vec<Node> = flagged.iter().filter(|&v| v != x).collect();
    let mut labels = Labels::new(g);
    let mut cleared = NodeSet::new();

    s.begin_round();
    for (&v, &c) in leaves.iter().zip(testers) {
        let faulty = s.test(c, v)?;
        labels.resolve_pair(g, v, faulty, &mut cleared);
    }

    s.begin_round();
    let x_partner = g.partner(x);
    let route = match cleared.first() {
        Some(y) => {
            let x_faulty = s.test(y, x)?;
            labels.faulty(if x_faulty { x } else { x_partner });
            Route::StarLeafProbe
        }
        None => {
            // All faults sit on the leaves and on one of x, x̄; the lower half
            // apart from x̄ is fault-free.
            let z = g
                .neighbors(x_partner)
                .iter()
                .copied()
                .filter(|&w| !g.is_upper(w))
                .min()
                .expect("lower half of XQ_n, n >= 2, is connected");
            let partner_faulty = s.test(z, x_partner)?;
            labels.faulty(if partner_faulty { x_partner } else { x });
            Route::StarPartnerProbe
        }
    };
    Ok(s.finish(labels.0, Some(route)))
}
