use alloc::vec::Vec;
use core::fmt;

use super::Node;

/// Sorted set of distinct node ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeSet(Vec<Node>);

impl NodeSet {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Node) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// Returns `true` if `v` was not already present.
    pub fn insert(&mut self, v: Node) -> bool {
        match self.0.binary_search(&v) {
            Ok(_) => false,
            Err(at) => {
                self.0.insert(at, v);
                true
            }
        }
    }

    pub fn remove(&mut self, v: Node) -> bool {
        match self.0.binary_search(&v) {
            Ok(at) => {
                self.0.remove(at);
                true
            }
            Err(_) => false,
        }
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = Node> + ExactSizeIterator + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[Node] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Node> {
        self.0
    }

    pub fn first(&self) -> Option<Node> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Node> {
        self.0.last().copied()
    }

    pub fn is_subset(&self, other: &NodeSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    pub fn union(&self, other: &NodeSet) -> NodeSet {
        self.iter().chain(other.iter()).collect()
    }

    pub fn intersection(&self, other: &NodeSet) -> NodeSet {
        NodeSet(self.iter().filter(|&v| other.contains(v)).collect())
    }

    pub fn difference(&self, other: &NodeSet) -> NodeSet {
        NodeSet(self.iter().filter(|&v| !other.contains(v)).collect())
    }

    pub fn symmetric_difference(&self, other: &NodeSet) -> NodeSet {
        self.difference(other).union(&other.difference(self))
    }

    /// Bit mask of the members, if every id is below 64.
    pub fn to_mask(&self) -> Option<u64> {
        self.iter()
            .try_fold(0u64, |m, v| (v < 64).then(|| m | (1u64 << v)))
    }

    pub fn from_mask(mut mask: u64) -> Self {
        let mut out = Vec::with_capacity(mask.count_ones() as usize);
        while mask != 0 {
            out.push(mask.trailing_zeros());
            mask &= mask - 1;
        }
        NodeSet(out)
    }
}

impl FromIterator<Node> for NodeSet {
    fn from_iter<I: IntoIterator<Item = Node>>(iter: I) -> Self {
        let mut v: Vec<Node> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        NodeSet(v)
    }
}

impl From<Vec<Node>> for NodeSet {
    fn from(v: Vec<Node>) -> Self {
        v.into_iter().collect()
    }
}

impl<const N: usize> From<[Node; N]> for NodeSet {
    fn from(v: [Node; N]) -> Self {
        v.into_iter().collect()
    }
}

impl<'a> IntoIterator for &'a NodeSet {
    type Item = Node;
    type IntoIter = core::iter::Copied<core::slice::Iter<'a, Node>>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

impl fmt::Display for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}
