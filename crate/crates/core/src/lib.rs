//! Adaptive fault diagnosis for hypercube-like interconnection networks under
//! the BGM comparison-test model.
//!
//! The crate is `no_std` (it needs `alloc`). It provides:
//!
//! * [`graph`]: the `XQ_n` family (hypercube and seeded random members), its
//!   validator, and the distinct-representatives matching the diagnosis
//!   algorithms rely on.
//! * [`model`]: BGM test semantics, a fault-hiding [`TestOracle`] with
//!   pluggable adversaries, consistency and distinguishability checks.
//! * [`diagnosis`]: the two-round local algorithm on a diagnosis tree, the
//!   conditional local algorithm, and the three-round global algorithm for
//!   `XQ_n`, all executed through a round ledger that enforces one role per
//!   node per round.
//! * [`verify`]: exhaustive building blocks used by the verification suites:
//!   fault-set enumeration, adversary branch exploration and brute-force
//!   diagnosis from a syndrome.
#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;

pub mod diagnosis;
pub mod error;
pub mod graph;
pub mod model;
pub mod verify;

pub use diagnosis::{
    clda, dhl, find_dt_embedding, lda, DtEmbedding, GlobalVerdict, LocalVerdict, SessionLedger,
    Status, Verdict,
};
pub use error::{Error, ErrorKind, Result};
pub use graph::{
    build_hypercube, build_random_xq, induced_star_center, neighborhood, sdr_matching,
    validate_xq, AdjacencyGraph, HLGraph, Network, Node, NodeSet, Violation,
};
pub use model::{
    answer, consistent, distinguishable, distinguishable_bf, is_conditional, AdversaryPolicy,
    FaultSet, Syndrome, TestOracle, TestRecord,
};
