//! Spanning trees, spanning forests compatible with vertex partitions, and
//! the edge partitions into trees and 2-forests whose counts carry c₂.

mod counts;
mod enumerate;
mod general;

pub(crate) use counts::{binomial, label, R_DOUBLE, R_SINGLE, S_BIJECTION, S_BIJ_COR, S_SWAPC};
pub use counts::{
    r_case_counts, s_case_counts, split_counts, t_case_counts, CountReport, IdentityCheck,
    SplitCounts,
};
pub use enumerate::{
    count_bipartitions, enumerate_forests, enumerate_spanning_trees, for_each_forest,
    for_each_spanning_tree, forest_components, is_compatible_2forest, is_compatible_forest,
    is_spanning_tree,
};
pub use general::{count_general_partitions, for_each_general_partition, GeneralEdgePartition};

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default cap on enumerated objects (trees, tuples, search nodes).
pub const DEFAULT_ENUM_BUDGET: u64 = 10_000_000;

/// Maximum edge count representable by [`EdgeSet`].
pub const MAX_EDGES: usize = 128;

/// A set of edge ids of one graph, as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeSet(pub u128);

impl EdgeSet {
    pub const EMPTY: EdgeSet = EdgeSet(0);

    /// All edges `0..m`.
    pub fn full(m: usize) -> Self {
        assert!(m <= MAX_EDGES);
        if m == MAX_EDGES {
            EdgeSet(u128::MAX)
        } else {
            EdgeSet((1u128 << m) - 1)
        }
    }

    pub fn singleton(e: usize) -> Self {
        EdgeSet(1u128 << e)
    }

    pub fn contains(self, e: usize) -> bool {
        self.0 >> e & 1 == 1
    }

    pub fn insert(&mut self, e: usize) {
        self.0 |= 1u128 << e;
    }

    pub fn remove(&mut self, e: usize) {
        self.0 &= !(1u128 << e);
    }

    /// `self` with `out` removed and `inc` added.
    pub fn swapped(self, out: usize, inc: usize) -> Self {
        let mut s = self;
        s.remove(out);
        s.insert(inc);
        s
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: EdgeSet) -> EdgeSet {
        EdgeSet(self.0 | other.0)
    }

    pub fn intersection(self, other: EdgeSet) -> EdgeSet {
        EdgeSet(self.0 & other.0)
    }

    pub fn difference(self, other: EdgeSet) -> EdgeSet {
        EdgeSet(self.0 & !other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let e = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(e)
            }
        })
    }
}

impl FromIterator<usize> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = EdgeSet::EMPTY;
        for e in iter {
            s.insert(e);
        }
        s
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for EdgeSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

pub(crate) fn check_edge_capacity(g: &Graph) -> Result<()> {
    if g.num_edges() > MAX_EDGES {
        return Err(Error::precondition(format!(
            "edge enumeration supports at most {MAX_EDGES} edges, graph has {}",
            g.num_edges()
        )));
    }
    Ok(())
}

/// Disjoint nonempty vertex subsets. Parts are sorted internally and by
/// their smallest element, so equal partitions compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct VertexPartition {
    parts: Vec<Vec<usize>>,
}

impl VertexPartition {
    pub fn new(parts: Vec<Vec<usize>>) -> Result<Self> {
        let mut parts: Vec<Vec<usize>> = parts
            .into_iter()
            .map(|mut p| {
                p.sort_unstable();
                p
            })
            .collect();
        let mut all: Vec<usize> = parts.iter().flatten().copied().collect();
        let total = all.len();
        all.sort_unstable();
        all.dedup();
        if all.len() != total {
            return Err(Error::precondition("vertex partition parts overlap"));
        }
        if parts.iter().any(Vec::is_empty) {
            return Err(Error::precondition("vertex partition has an empty part"));
        }
        parts.sort();
        Ok(VertexPartition { parts })
    }

    pub fn two(a: &[usize], b: &[usize]) -> Result<Self> {
        Self::new(vec![a.to_vec(), b.to_vec()])
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    /// Index of the part containing `v`.
    pub fn part_of(&self, v: usize) -> Option<usize> {
        self.parts.iter().position(|p| p.binary_search(&v).is_ok())
    }

    pub fn check_vertices(&self, g: &Graph) -> Result<()> {
        for &v in self.parts.iter().flatten() {
            g.check_vertex(v)?;
        }
        Ok(())
    }
}

impl fmt::Display for VertexPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .parts
            .iter()
            .map(|p| {
                format!(
                    "{{{}}}",
                    p.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
                )
            })
            .collect();
        f.write_str(&parts.join("|"))
    }
}

/// A spanning tree `psi` and its complement `phi`, a spanning 2-forest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct EdgeBipartition {
    pub psi: EdgeSet,
    pub phi: EdgeSet,
}

impl EdgeBipartition {
    pub fn from_tree(g: &Graph, psi: EdgeSet) -> Self {
        EdgeBipartition {
            psi,
            phi: EdgeSet::full(g.num_edges()).difference(psi),
        }
    }

    /// Checks that `psi` is a spanning tree, `phi` its complement and a
    /// spanning 2-forest.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.psi.intersection(self.phi) != EdgeSet::EMPTY
            || self.psi.union(self.phi) != EdgeSet::full(g.num_edges())
        {
            return Err(Error::structure("psi and phi do not partition the edges"));
        }
        if !is_spanning_tree(g, self.psi) {
            return Err(Error::structure(format!(
                "{:?} is not a spanning tree",
                self.psi
            )));
        }
        let (_, count) = forest_components(g, self.phi)
            .ok_or_else(|| Error::structure(format!("{:?} contains a cycle", self.phi)))?;
        if count != 2 {
            return Err(Error::structure(format!(
                "{:?} has {count} components, not 2",
                self.phi
            )));
        }
        Ok(())
    }
}

/// Union-find with union by size and an undo log, for backtracking.
#[derive(Clone, Debug)]
pub(crate) struct RollbackDsu {
    parent: Vec<usize>,
    size: Vec<usize>,
    log: Vec<Option<(usize, usize)>>,
}

impl RollbackDsu {
    pub fn new(n: usize) -> Self {
        RollbackDsu {
            parent: (0..n).collect(),
            size: vec![1; n],
            log: Vec::new(),
        }
    }

    pub fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`; returns false if already merged.
    /// Every call pushes one undo entry.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            self.log.push(None);
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.log.push(Some((ra, rb)));
        true
    }

    pub fn undo(&mut self) {
        if let Some(Some((ra, rb))) = self.log.pop() {
            self.parent[rb] = rb;
            self.size[ra] -= self.size[rb];
        }
    }
}
