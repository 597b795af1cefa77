//! Ordered partitions of p − 1 copies of every edge into p − 1 spanning
//! trees and p − 1 compatible spanning 2-forests.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::enumerate::{
    enumerate_forests, enumerate_spanning_trees, is_compatible_2forest, is_spanning_tree,
};
use super::{EdgeSet, VertexPartition};
use crate::error::{Error, Result};
use crate::field::Prime;
use crate::graph::Graph;

/// `(ψ₁, …, ψ_{p−1}, φ₁, …, φ_{p−1})`. Each part holds at most one copy of
/// an edge, so parts are plain edge sets of the base graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GeneralEdgePartition {
    pub trees: Vec<EdgeSet>,
    pub forests: Vec<EdgeSet>,
    pub prime: u32,
}

impl GeneralEdgePartition {
    /// How many parts contain edge `e`.
    pub fn multiplicity(&self, e: usize) -> usize {
        self.trees
            .iter()
            .chain(&self.forests)
            .filter(|s| s.contains(e))
            .count()
    }

    /// Checks the multiplicities, that every tree part is a spanning tree,
    /// and that forest `i` is a 2-forest compatible with `partitions[i]`.
    pub fn validate(&self, g: &Graph, partitions: &[&VertexPartition]) -> Result<()> {
        let k = self.prime as usize - 1;
        if self.trees.len() != k || self.forests.len() != k || partitions.len() != k {
            return Err(Error::structure("wrong number of parts for the prime"));
        }
        for e in 0..g.num_edges() {
            if self.multiplicity(e) != k {
                return Err(Error::structure(format!(
                    "edge {e} used {} times, expected {k}",
                    self.multiplicity(e)
                )));
            }
        }
        for (j, &t) in self.trees.iter().enumerate() {
            if !is_spanning_tree(g, t) {
                return Err(Error::structure(format!(
                    "tree part {j} {t:?} is not a spanning tree"
                )));
            }
        }
        for (i, (&f, p)) in self.forests.iter().zip(partitions).enumerate() {
            if !is_compatible_2forest(g, f, p) {
                return Err(Error::structure(format!(
                    "forest part {i} {f:?} is not compatible with {p}"
                )));
            }
        }
        Ok(())
    }
}

struct TupleSearch<'a, F> {
    slots: Vec<&'a [EdgeSet]>,
    last: &'a HashSet<EdgeSet>,
    /// `layers[r]` holds the edges with at least `r + 1` copies left.
    layers: Vec<EdgeSet>,
    current: Vec<EdgeSet>,
    visit: F,
    nodes: u64,
    budget: u64,
    over_budget: bool,
}

impl<F: FnMut(&[EdgeSet])> TupleSearch<'_, F> {
    fn take(&mut self, s: EdgeSet) {
        // Removing one copy of each edge of `s` clears its bit from the
        // highest layer where it is set.
        for e in s.iter() {
            let top = self
                .layers
                .iter()
                .rposition(|l| l.contains(e))
                .expect("copy available");
            self.layers[top].remove(e);
        }
    }

    fn give(&mut self, s: EdgeSet) {
        for e in s.iter() {
            let next = self
                .layers
                .iter()
                .position(|l| !l.contains(e))
                .expect("below capacity");
            self.layers[next].insert(e);
        }
    }

    fn run(&mut self, slot: usize) {
        if self.over_budget {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.over_budget = true;
            return;
        }
        let remaining = self.slots.len() + 1 - slot;
        // An edge with more copies left than slots left can never be placed.
        if remaining < self.layers.len() && !self.layers[remaining].is_empty() {
            return;
        }
        if slot == self.slots.len() {
            if self.layers.len() > 1 && !self.layers[1].is_empty() {
                return;
            }
            let rest = self.layers[0];
            if self.last.contains(&rest) {
                self.current.push(rest);
                (self.visit)(&self.current);
                self.current.pop();
            }
            return;
        }
        let available = self.layers[0];
        for &cand in self.slots[slot] {
            if cand.difference(available).is_empty() {
                self.take(cand);
                self.current.push(cand);
                self.run(slot + 1);
                self.current.pop();
                self.give(cand);
            }
        }
    }
}

fn search_general(
    g: &Graph,
    partitions: &[&VertexPartition],
    prime: Prime,
    budget: u64,
    mut visit: impl FnMut(&[EdgeSet]),
) -> Result<()> {
    let k = prime.get() as usize - 1;
    if partitions.len() != k {
        return Err(Error::precondition(format!(
            "need {k} forest partitions for p = {}, got {}",
            prime.get(),
            partitions.len()
        )));
    }
    if partitions.iter().any(|p| p.num_parts() != 2) {
        return Err(Error::precondition("forest partitions must have two parts"));
    }
    let trees = enumerate_spanning_trees(g, budget)?;
    let mut forest_lists: HashMap<&VertexPartition, Vec<EdgeSet>> = HashMap::new();
    for &p in partitions {
        if !forest_lists.contains_key(p) {
            forest_lists.insert(p, enumerate_forests(g, p, budget)?);
        }
    }
    let mut slots: Vec<&[EdgeSet]> = vec![&trees; k];
    slots.extend(
        partitions[..k - 1]
            .iter()
            .map(|p| forest_lists[p].as_slice()),
    );
    let last: HashSet<EdgeSet> = forest_lists[partitions[k - 1]].iter().copied().collect();
    let full = EdgeSet::full(g.num_edges());
    let mut search = TupleSearch {
        slots,
        last: &last,
        layers: vec![full; k],
        current: Vec::with_capacity(2 * k),
        visit: |parts: &[EdgeSet]| visit(parts),
        nodes: 0,
        budget,
        over_budget: false,
    };
    search.run(0);
    if search.over_budget {
        return Err(Error::BudgetExceeded {
            what: "tree/forest tuple enumeration",
            required: budget as u128 + 1,
            budget,
        });
    }
    Ok(())
}

/// Calls `visit` on every element of 𝒯_{P₁,…,P_{p−1}} in a fixed order.
pub fn for_each_general_partition(
    g: &Graph,
    partitions: &[&VertexPartition],
    prime: Prime,
    budget: u64,
    mut visit: impl FnMut(GeneralEdgePartition),
) -> Result<()> {
    let k = prime.get() as usize - 1;
    search_general(g, partitions, prime, budget, |parts| {
        visit(GeneralEdgePartition {
            trees: parts[..k].to_vec(),
            forests: parts[k..].to_vec(),
            prime: prime.get(),
        })
    })
}

/// |𝒯_{P₁,…,P_{p−1}}|: ordered tuples of p − 1 spanning trees and p − 1
/// 2-forests, forest i compatible with `partitions[i]`, using every edge
/// exactly p − 1 times.
pub fn count_general_partitions(
    g: &Graph,
    partitions: &[&VertexPartition],
    prime: Prime,
    budget: u64,
) -> Result<u64> {
    let mut count = 0u64;
    search_general(g, partitions, prime, budget, |_| count += 1)?;
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;
    use crate::partitions::{count_bipartitions, DEFAULT_ENUM_BUDGET as B};

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    // Direct product over all tree and forest choices, no pruning.
    fn naive_count(g: &Graph, parts: &[&VertexPartition], prime: Prime) -> u64 {
        let k = prime.get() as usize - 1;
        let trees = enumerate_spanning_trees(g, B).unwrap();
        let lists: Vec<Vec<EdgeSet>> = (0..k)
            .map(|_| trees.clone())
            .chain(parts.iter().map(|q| enumerate_forests(g, q, B).unwrap()))
            .collect();
        if lists.iter().any(Vec::is_empty) {
            return 0;
        }
        let mut count = 0;
        let mut idx = vec![0usize; 2 * k];
        'outer: loop {
            let ok = (0..g.num_edges())
                .all(|e| (0..2 * k).filter(|&s| lists[s][idx[s]].contains(e)).count() == k);
            count += ok as u64;
            for s in (0..2 * k).rev() {
                idx[s] += 1;
                if idx[s] < lists[s].len() {
                    continue 'outer;
                }
                idx[s] = 0;
            }
            break;
        }
        count
    }

    #[test]
    fn p2_matches_bipartition_count() {
        let g = decomplete_pair(&octahedron(), 0, 2);
        let q = VertexPartition::two(&[0], &[2, 3]).unwrap();
        assert_eq!(
            count_general_partitions(&g, &[&q], p(2), B).unwrap(),
            count_bipartitions(&g, &q, B).unwrap()
        );
    }

    fn decomplete_pair(g: &Graph, v: usize, w: usize) -> Graph {
        g.delete_vertices(&[v, w]).unwrap().graph
    }

    #[test]
    fn p3_matches_naive_product() {
        let g = decomplete_pair(&octahedron(), 0, 2);
        // Octahedron minus {0,2}: marked a=1,b=4,c=5,d=3 become 0,2,3,1.
        let pp = VertexPartition::two(&[0], &[1, 2, 3]).unwrap();
        let q = VertexPartition::two(&[0, 1], &[2, 3]).unwrap();
        // Q has no compatible forest here since 2 and 3 are not adjacent.
        let r = VertexPartition::two(&[0, 2], &[1, 3]).unwrap();
        for parts in [
            [&pp, &pp],
            [&pp, &q],
            [&q, &pp],
            [&q, &q],
            [&pp, &r],
            [&r, &r],
        ] {
            assert_eq!(
                count_general_partitions(&g, &parts, p(3), B).unwrap(),
                naive_count(&g, &parts, p(3))
            );
        }
        let k4 = complete(4);
        let q = VertexPartition::two(&[0], &[1, 2]).unwrap();
        assert_eq!(
            count_general_partitions(&k4, &[&q, &q], p(3), B).unwrap(),
            naive_count(&k4, &[&q, &q], p(3))
        );
    }

    #[test]
    fn enumerated_elements_validate() {
        let g = decomplete_pair(&octahedron(), 0, 2);
        let pp = VertexPartition::two(&[0], &[1, 2, 3]).unwrap();
        let q = VertexPartition::two(&[0, 1], &[2, 3]).unwrap();
        let mut n = 0;
        for_each_general_partition(&g, &[&pp, &q], p(3), B, |gp| {
            gp.validate(&g, &[&pp, &q]).unwrap();
            n += 1;
        })
        .unwrap();
        assert_eq!(
            n,
            count_general_partitions(&g, &[&pp, &q], p(3), B).unwrap()
        );
    }

    #[test]
    fn wrong_partition_count_is_rejected() {
        let q = VertexPartition::two(&[0], &[1, 2]).unwrap();
        assert!(count_general_partitions(&complete(4), &[&q], p(3), B).is_err());
    }
}
