//! Backtracking enumeration of spanning trees and compatible spanning forests.

use std::ops::ControlFlow;

use super::{check_edge_capacity, EdgeBipartition, EdgeSet, RollbackDsu, VertexPartition};
use crate::error::{Error, Result};
use crate::graph::Graph;

fn budget_error(what: &'static str, budget: u64) -> Error {
    Error::BudgetExceeded {
        what,
        required: budget as u128 + 1,
        budget,
    }
}

/// Components of the subgraph `(V, edges)`: a component id per vertex and
/// the number of components, or `None` if `edges` contains a cycle.
pub fn forest_components(g: &Graph, edges: EdgeSet) -> Option<(Vec<usize>, usize)> {
    let mut dsu = RollbackDsu::new(g.n());
    for e in edges.iter() {
        let (u, v) = g.edges()[e];
        if !dsu.union(u, v) {
            return None;
        }
    }
    let mut ids = vec![usize::MAX; g.n()];
    let mut comp = vec![0; g.n()];
    let mut count = 0;
    for (v, c) in comp.iter_mut().enumerate() {
        let r = dsu.find(v);
        if ids[r] == usize::MAX {
            ids[r] = count;
            count += 1;
        }
        *c = ids[r];
    }
    Some((comp, count))
}

pub fn is_spanning_tree(g: &Graph, edges: EdgeSet) -> bool {
    g.n() > 0 && edges.len() == g.n() - 1 && forest_components(g, edges).is_some()
}

/// True iff `edges` is a spanning forest with one tree per part of `p`,
/// each tree containing exactly one part.
pub fn is_compatible_forest(g: &Graph, edges: EdgeSet, p: &VertexPartition) -> bool {
    if p.parts().iter().flatten().any(|&v| v >= g.n()) {
        return false;
    }
    let Some((comp, count)) = forest_components(g, edges) else {
        return false;
    };
    if count != p.num_parts() {
        return false;
    }
    let mut owner = vec![None; count];
    for (i, part) in p.parts().iter().enumerate() {
        for &v in part {
            match owner[comp[v]] {
                None => owner[comp[v]] = Some(i),
                Some(j) if j == i => {}
                Some(_) => return false,
            }
        }
        if part.iter().any(|&v| comp[v] != comp[part[0]]) {
            return false;
        }
    }
    true
}

/// [`is_compatible_forest`] restricted to two-part partitions.
pub fn is_compatible_2forest(g: &Graph, edges: EdgeSet, p: &VertexPartition) -> bool {
    p.num_parts() == 2 && is_compatible_forest(g, edges, p)
}

struct TreeSearch<'a, F> {
    g: &'a Graph,
    dsu: RollbackDsu,
    chosen: EdgeSet,
    visit: F,
    yielded: u64,
    budget: u64,
    over_budget: bool,
    stopped: bool,
}

impl<F: FnMut(EdgeSet) -> ControlFlow<()>> TreeSearch<'_, F> {
    /// Whether the chosen edges plus edges after `i` still connect the graph.
    fn connected_without(&self, i: usize) -> bool {
        let mut dsu = RollbackDsu::new(self.g.n());
        let mut comps = self.g.n();
        let later = self.g.edges()[i + 1..].iter();
        for &(u, v) in self.chosen.iter().map(|e| &self.g.edges()[e]).chain(later) {
            if dsu.union(u, v) {
                comps -= 1;
            }
        }
        comps == 1
    }

    fn run(&mut self, i: usize) {
        if self.stopped {
            return;
        }
        if self.chosen.len() + 1 == self.g.n() {
            if self.yielded == self.budget {
                self.over_budget = true;
                self.stopped = true;
                return;
            }
            self.yielded += 1;
            if (self.visit)(self.chosen).is_break() {
                self.stopped = true;
            }
            return;
        }
        if i == self.g.num_edges() {
            return;
        }
        let (u, v) = self.g.edges()[i];
        let can_include = u != v && self.dsu.find(u) != self.dsu.find(v);
        if can_include {
            self.dsu.union(u, v);
            self.chosen.insert(i);
            self.run(i + 1);
            self.chosen.remove(i);
            self.dsu.undo();
        }
        if !can_include || self.connected_without(i) {
            self.run(i + 1);
        }
    }
}

/// Calls `visit` on every spanning tree in a fixed deterministic order.
/// Returns the number of trees visited.
pub fn for_each_spanning_tree(
    g: &Graph,
    budget: u64,
    visit: impl FnMut(EdgeSet) -> ControlFlow<()>,
) -> Result<u64> {
    check_edge_capacity(g)?;
    if g.n() == 0 {
        return Err(Error::precondition("graph has no vertices"));
    }
    g.require_connected()?;
    let mut search = TreeSearch {
        g,
        dsu: RollbackDsu::new(g.n()),
        chosen: EdgeSet::EMPTY,
        visit,
        yielded: 0,
        budget,
        over_budget: false,
        stopped: false,
    };
    search.run(0);
    if search.over_budget {
        return Err(budget_error("spanning tree enumeration", budget));
    }
    Ok(search.yielded)
}

pub fn enumerate_spanning_trees(g: &Graph, budget: u64) -> Result<Vec<EdgeSet>> {
    let mut out = Vec::new();
    for_each_spanning_tree(g, budget, |t| {
        out.push(t);
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

struct ForestSearch<'a, F> {
    g: &'a Graph,
    parts: &'a [Vec<usize>],
    target: usize,
    dsu: RollbackDsu,
    chosen: EdgeSet,
    visit: F,
    nodes: u64,
    budget: u64,
    over_budget: bool,
    stopped: bool,
}

impl<F: FnMut(EdgeSet) -> ControlFlow<()>> ForestSearch<'_, F> {
    fn part_at_root(&self, root: usize) -> Option<usize> {
        self.parts
            .iter()
            .position(|p| p.iter().any(|&v| self.dsu.find(v) == root))
    }

    /// Necessary condition for completing the current choice using only
    /// edges after `i`: every part stays connected and no component of the
    /// available subgraph is left without a part.
    fn feasible_without(&self, i: usize) -> bool {
        let n = self.g.n();
        let mut dsu = RollbackDsu::new(n);
        let later = self.g.edges()[i + 1..].iter();
        for &(u, v) in self.chosen.iter().map(|e| &self.g.edges()[e]).chain(later) {
            dsu.union(u, v);
        }
        if self
            .parts
            .iter()
            .any(|p| p.iter().any(|&v| dsu.find(v) != dsu.find(p[0])))
        {
            return false;
        }
        let mut has_part = vec![false; n];
        for p in self.parts {
            has_part[dsu.find(p[0])] = true;
        }
        (0..n).all(|v| has_part[dsu.find(v)])
    }

    fn run(&mut self, i: usize) {
        if self.stopped {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.over_budget = true;
            self.stopped = true;
            return;
        }
        if self.chosen.len() == self.target {
            let complete = self
                .parts
                .iter()
                .all(|p| p.iter().all(|&v| self.dsu.find(v) == self.dsu.find(p[0])));
            if complete && (self.visit)(self.chosen).is_break() {
                self.stopped = true;
            }
            return;
        }
        if i == self.g.num_edges() {
            return;
        }
        let (u, v) = self.g.edges()[i];
        let (ru, rv) = (self.dsu.find(u), self.dsu.find(v));
        let can_include = ru != rv
            && match (self.part_at_root(ru), self.part_at_root(rv)) {
                (Some(a), Some(b)) => a == b,
                _ => true,
            };
        if can_include {
            self.dsu.union(u, v);
            self.chosen.insert(i);
            self.run(i + 1);
            self.chosen.remove(i);
            self.dsu.undo();
        }
        if self.feasible_without(i) {
            self.run(i + 1);
        }
    }
}

/// Calls `visit` on every spanning forest compatible with `p`: one tree per
/// part, each tree containing its part and no other marked vertex. The
/// budget bounds the number of search nodes.
pub fn for_each_forest(
    g: &Graph,
    p: &VertexPartition,
    budget: u64,
    visit: impl FnMut(EdgeSet) -> ControlFlow<()>,
) -> Result<u64> {
    check_edge_capacity(g)?;
    p.check_vertices(g)?;
    if p.num_parts() == 0 || p.num_parts() > g.n() {
        return Ok(0);
    }
    let mut count = 0u64;
    let mut visit = visit;
    let mut search = ForestSearch {
        g,
        parts: p.parts(),
        target: g.n() - p.num_parts(),
        dsu: RollbackDsu::new(g.n()),
        chosen: EdgeSet::EMPTY,
        visit: |f| {
            count += 1;
            visit(f)
        },
        nodes: 0,
        budget,
        over_budget: false,
        stopped: false,
    };
    search.run(0);
    if search.over_budget {
        return Err(budget_error("spanning forest enumeration", budget));
    }
    Ok(count)
}

pub fn enumerate_forests(g: &Graph, p: &VertexPartition, budget: u64) -> Result<Vec<EdgeSet>> {
    let mut out = Vec::new();
    for_each_forest(g, p, budget, |f| {
        out.push(f);
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Number of pairs (ψ, φ) with ψ a spanning tree and φ = E ∖ ψ a spanning
/// 2-forest compatible with `p`, found by sweeping spanning trees.
pub fn count_bipartitions(g: &Graph, p: &VertexPartition, budget: u64) -> Result<u64> {
    if p.num_parts() != 2 {
        return Err(Error::precondition(
            "bipartition counts need a two-part vertex partition",
        ));
    }
    p.check_vertices(g)?;
    let mut count = 0;
    for_each_spanning_tree(g, budget, |t| {
        let bp = EdgeBipartition::from_tree(g, t);
        if is_compatible_2forest(g, bp.phi, p) {
            count += 1;
        }
        ControlFlow::Continue(())
    })?;
    Ok(count)
}
