//! Hypercube-like graphs (`XQ_n`) and the set operations the diagnosis
//! algorithms need.
//!
//! Node ids follow a canonical labeling: the dimension-`d` edges of a node
//! `v` stay inside the block of nodes sharing `v`'s bits at positions `>= d`
//! and cross bit `d - 1`. The top-level halves are therefore ids below and
//! above `2^(n-1)`, and the partner of `v` is its dimension-`n` neighbor.
//! The bijection between the two halves of each block is arbitrary, which is
//! exactly the freedom of the recursive `G_0 ⊕ G_1` construction.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

mod matching;
mod nodeset;

pub use matching::{is_valid_sdr, maximum_matching_by, sdr_matching, sdr_matching_by};
pub use nodeset::NodeSet;

/// Processor id.
pub type Node = u32;

/// Read-only adjacency view shared by every topology the model runs on.
pub trait Network {
    fn node_count(&self) -> usize;

    /// Neighbors of `v`. Panics if `v` is not a node of the graph.
    fn neighbors(&self, v: Node) -> &[Node];

    fn contains_node(&self, v: Node) -> bool {
        (v as usize) < self.node_count()
    }

    fn is_adjacent(&self, u: Node, v: Node) -> bool {
        self.contains_node(u) && self.contains_node(v) && self.neighbors(u).contains(&v)
    }

    fn degree(&self, v: Node) -> usize {
        self.neighbors(v).len()
    }
}

/// A member of `XQ_n` stored as a per-node, per-dimension neighbor table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HLGraph {
    dim: u32,
    table: Vec<Node>,
}

impl HLGraph {
    pub const MAX_DIMENSION: u32 = 20;

    /// Wraps a raw neighbor table (`table[v * n + d - 1] = nbr(v, d)`).
    ///
    /// Only the dimension range and the table length are checked; call
    /// [`validate_xq`] to check the structure.
    pub fn from_table(dim: u32, table: Vec<Node>) -> Result<Self> {
        check_dimension(dim)?;
        let expected = (1usize << dim) * dim as usize;
        if table.len() != expected {
            return Err(Error::InvalidGraph(Violation {
                invariant: Invariant::TableShape,
                level: dim,
                node: 0,
            }));
        }
        Ok(Self { dim, table })
    }

    pub fn dimension(&self) -> u32 {
        self.dim
    }

    pub fn table(&self) -> &[Node] {
        &self.table
    }

    /// Neighbor of `v` along dimension `d` (`1..=n`).
    pub fn neighbor(&self, v: Node, d: u32) -> Node {
        debug_assert!((1..=self.dim).contains(&d));
        self.table[v as usize * self.dim as usize + d as usize - 1]
    }

    /// The dimension-`n` neighbor of `v`, written `v̄` in the literature.
    pub fn partner(&self, v: Node) -> Node {
        self.neighbor(v, self.dim)
    }

    /// First id of the upper top-level half.
    pub fn half(&self) -> Node {
        1 << (self.dim - 1)
    }

    pub fn is_upper(&self, v: Node) -> bool {
        v >= self.half()
    }

    pub fn lower_half(&self) -> core::ops::Range<Node> {
        0..self.half()
    }

    pub fn upper_half(&self) -> core::ops::Range<Node> {
        self.half()..(self.node_count() as Node)
    }

    pub(crate) fn set_neighbor(&mut self, v: Node, d: u32, w: Node) {
        let n = self.dim as usize;
        self.table[v as usize * n + d as usize - 1] = w;
    }
}

impl Network for HLGraph {
    fn node_count(&self) -> usize {
        1 << self.dim
    }

    fn neighbors(&self, v: Node) -> &[Node] {
        let n = self.dim as usize;
        let start = v as usize * n;
        &self.table[start..start + n]
    }
}

/// Plain adjacency-list graph, used for stand-alone diagnosis trees and for
/// brute-force checks on arbitrary small topologies.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AdjacencyGraph {
    adj: Vec<Vec<Node>>,
}

impl AdjacencyGraph {
    pub fn new(node_count: usize) -> Self {
        Self {
            adj: alloc::vec![Vec::new(); node_count],
        }
    }

    pub fn from_edges(node_count: usize, edges: impl IntoIterator<Item = (Node, Node)>) -> Self {
        let mut g = Self::new(node_count);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Adds the undirected edge `{u, v}`; duplicate edges are ignored.
    pub fn add_edge(&mut self, u: Node, v: Node) {
        assert!(u != v, "self loop at {u}");
        if !self.adj[u as usize].contains(&v) {
            self.adj[u as usize].push(v);
            self.adj[v as usize].push(u);
        }
    }
}

impl Network for AdjacencyGraph {
    fn node_count(&self) -> usize {
        self.adj.len()
    }

    fn neighbors(&self, v: Node) -> &[Node] {
        &self.adj[v as usize]
    }
}

/// Which structural rule a graph breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Invariant {
    /// The table does not hold `2^n * n` entries.
    TableShape,
    NeighborOutOfRange,
    SelfLoop,
    /// `nbr(nbr(v, d), d) != v`: dimension `d` is not a perfect matching.
    MatchingInvolution,
    /// A dimension-`d` edge leaves its block or does not cross the block's
    /// two halves.
    HalfSplit,
}

/// First violated invariant found by [`validate_xq`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Violation {
    pub invariant: Invariant,
    /// Dimension (level of the recursive construction) at which it failed.
    pub level: u32,
    pub node: Node,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.invariant {
            Invariant::TableShape => "neighbor table has the wrong shape",
            Invariant::NeighborOutOfRange => "neighbor id out of range",
            Invariant::SelfLoop => "self loop",
            Invariant::MatchingInvolution => "dimension edges are not a perfect matching",
            Invariant::HalfSplit => "edge does not join the two halves of its block",
        };
        write!(f, "{what} at dimension {} node {}", self.level, self.node)
    }
}

fn check_dimension(n: u32) -> Result<()> {
    if (1..=HLGraph::MAX_DIMENSION).contains(&n) {
        Ok(())
    } else {
        Err(Error::DimensionOutOfRange(n))
    }
}

/// The standard `n`-cube: `nbr(v, d) = v ^ (1 << (d - 1))`.
pub fn build_hypercube(n: u32) -> Result<HLGraph> {
    check_dimension(n)?;
    let count = 1usize << n;
    let mut table = Vec::with_capacity(count * n as usize);
    for v in 0..count as Node {
        table.extend((0..n).map(|bit| v ^ (1 << bit)));
    }
    Ok(HLGraph { dim: n, table })
}

/// Draws a member of `XQ_n` by choosing every level's bijection uniformly.
///
/// The generator is ChaCha8 seeded with `seed_from_u64(seed)`. Levels are
/// drawn for `d = 1..=n`, blocks in ascending id order, each bijection as a
/// Fisher-Yates shuffle of the upper half's offsets.
pub fn build_random_xq(n: u32, seed: u64) -> Result<HLGraph> {
    check_dimension(n)?;
    let count = 1usize << n;
    let mut g = HLGraph {
        dim: n,
        table: alloc::vec![0; count * n as usize],
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<Node> = Vec::with_capacity(count / 2);
    for d in 1..=n {
        let half = 1usize << (d - 1);
        for base in (0..count).step_by(2 * half) {
            perm.clear();
            perm.extend(0..half as Node);
            perm.shuffle(&mut rng);
            for (i, &offset) in perm.iter().enumerate() {
                let v = (base + i) as Node;
                let w = (base + half) as Node + offset;
                g.set_neighbor(v, d, w);
                g.set_neighbor(w, d, v);
            }
        }
    }
    Ok(g)
}

/// Checks the recursive `XQ_n` structure, top level first.
///
/// Per level `d` (from `n` down to 1) and per node in ascending order: the
/// neighbor id is in range, is not the node itself, the dimension is an
/// involution, and the edge joins the two halves of the node's level-`d`
/// block. Together these imply `n`-regularity, connectivity and that every
/// block is itself a member of `XQ_d`.
pub fn validate_xq(g: &HLGraph) -> core::result::Result<(), Violation> {
    let n = g.dimension();
    let count = g.node_count() as Node;
    for d in (1..=n).rev() {
        for v in 0..count {
            let fail = |invariant| Violation {
                invariant,
                level: d,
                node: v,
            };
            let w = g.neighbor(v, d);
            if w >= count {
                return Err(fail(Invariant::NeighborOutOfRange));
            }
            if w == v {
                return Err(fail(Invariant::SelfLoop));
            }
            if g.neighbor(w, d) != v {
                return Err(fail(Invariant::MatchingInvolution));
            }
            if (v ^ w) >> (d - 1) != 1 {
                return Err(fail(Invariant::HalfSplit));
            }
        }
    }
    Ok(())
}

/// Open neighborhood of a set: nodes outside `s` adjacent to some member.
pub fn neighborhood<G: Network + ?Sized>(g: &G, s: &NodeSet) -> NodeSet {
    let out: BTreeSet<Node> = s
        .iter()
        .flat_map(|u| g.neighbors(u).iter().copied())
        .filter(|w| !s.contains(*w))
        .collect();
    out.into_iter().collect()
}

/// Center of the star `K_{1,|a|-1}` induced by `a`, if `a` induces one.
///
/// `a` must lie inside `within` (the block the star is read in); otherwise
/// `None` is returned. For `|a| = 2` the smaller id is the center.
pub fn induced_star_center<G: Network + ?Sized>(
    g: &G,
    a: &NodeSet,
    within: &NodeSet,
) -> Option<Node> {
    if a.is_empty() || !a.is_subset(within) {
        return None;
    }
    let degrees: Vec<usize> = a
        .iter()
        .map(|u| g.neighbors(u).iter().filter(|w| a.contains(**w)).count())
        .collect();
    let edges = degrees.iter().sum::<usize>() / 2;
    if edges != a.len() - 1 {
        return None;
    }
    a.iter()
        .zip(&degrees)
        .find(|(_, &deg)| deg == a.len() - 1)
        .map(|(u, _)| u)
}
