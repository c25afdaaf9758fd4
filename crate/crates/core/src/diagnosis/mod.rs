//! Adaptive diagnosis algorithms run against a [`TestOracle`].
//!
//! Every algorithm drives its tests through a session that groups them into
//! rounds. Inside one round a node may take part in at most one test, either
//! as tester or as testee.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{Network, Node, NodeSet};
use crate::model::{Syndrome, TestOracle, TestRecord};

mod dhl;
mod local;
mod survey;

pub use dhl::{dhl, Route};
pub use local::{clda, find_dt_embedding, lda, DtEmbedding};
pub use survey::complete_survey;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    FaultFree,
    Faulty,
}

impl Status {
    pub fn from_faulty(faulty: bool) -> Self {
        if faulty {
            Status::Faulty
        } else {
            Status::FaultFree
        }
    }

    pub fn is_faulty(self) -> bool {
        self == Status::Faulty
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::FaultFree => "fault-free",
            Status::Faulty => "faulty",
        }
    }
}

/// Tests performed per round.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SessionLedger {
    rounds: Vec<Vec<(Node, Node)>>,
}

impl SessionLedger {
    pub fn rounds(&self) -> &[Vec<(Node, Node)>] {
        &self.rounds
    }

    pub fn round_count(&self) -> usize {
        self.rounds.len()
    }

    pub fn test_count(&self) -> usize {
        self.rounds.iter().map(Vec::len).sum()
    }

    /// Every round's tests are node-disjoint.
    pub fn is_legal(&self) -> bool {
        self.rounds.iter().all(|round| {
            let mut seen = NodeSet::new();
            round.iter().all(|&(a, b)| a != b && seen.insert(a) && seen.insert(b))
        })
    }

    fn record(&mut self, tester: Node, testee: Node) -> Result<()> {
        let index = self.rounds.len();
        let round = self.rounds.last_mut().expect("test issued before the first round");
        for node in [tester, testee] {
            if round.iter().any(|&(a, b)| a == node || b == node) {
                return Err(Error::RoleConflict { node, round: index });
            }
        }
        round.push((tester, testee));
        Ok(())
    }
}

/// Result of a diagnosis run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict<S> {
    pub status: S,
    pub rounds_used: usize,
    pub tests_used: usize,
    pub ledger: SessionLedger,
    pub syndrome: Syndrome,
    /// Branch taken by the global algorithm; `None` for local algorithms.
    pub route: Option<Route>,
}

/// Status of a single node.
pub type LocalVerdict = Verdict<Status>;

/// Status of every node, indexed by id.
pub type GlobalVerdict = Verdict<Vec<Status>>;

impl GlobalVerdict {
    pub fn faulty_nodes(&self) -> NodeSet {
        self.status
            .iter()
            .enumerate()
            .filter(|(_, s)| s.is_faulty())
            .map(|(v, _)| v as Node)
            .collect()
    }
}

pub(crate) struct Session<'o, 'g, G: ?Sized> {
    oracle: &'o mut TestOracle<'g, G>,
    ledger: SessionLedger,
    syndrome: Syndrome,
}

impl<'o, 'g, G: Network + ?Sized> Session<'o, 'g, G> {
    pub(crate) fn new(oracle: &'o mut TestOracle<'g, G>) -> Self {
        Self {
            oracle,
            ledger: SessionLedger::default(),
            syndrome: Syndrome::new(),
        }
    }

    pub(crate) fn begin_round(&mut self) {
        self.ledger.rounds.push(Vec::new());
    }

    pub(crate) fn test(&mut self, tester: Node, testee: Node) -> Result<bool> {
        self.ledger.record(tester, testee)?;
        let result = self.oracle.answer(tester, testee)?;
        self.syndrome.push(TestRecord {
            round: self.ledger.round_count(),
            tester,
            testee,
            result,
        })?;
        Ok(result)
    }

    pub(crate) fn finish<S>(self, status: S, route: Option<Route>) -> Verdict<S> {
        Verdict {
            status,
            rounds_used: self.ledger.round_count(),
            tests_used: self.ledger.test_count(),
            ledger: self.ledger,
            syndrome: self.syndrome,
            route,
        }
    }
}
