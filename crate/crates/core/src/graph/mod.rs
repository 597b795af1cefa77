//! Undirected multigraphs with stable edge identifiers.

mod cases;
mod edge_list;
pub mod families;
mod graph6;

pub use cases::{case_graph, classify_adjacent_pair, CaseGraph, CaseKind, CaseLabel};
pub use edge_list::{emit_edge_list, parse_edge_list, EdgeListDoc};
pub use graph6::{emit_graph6, parse_graph6};

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// An undirected multigraph on vertices `0..n`. The id of an edge is its
/// index in [`Graph::edges`]. Self-loops and parallel edges are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    incident: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut incident = vec![Vec::new(); n];
        for (id, &(u, v)) in edges.iter().enumerate() {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::InvalidVertex { vertex: x, n });
                }
            }
            incident[u].push(id);
            if v != u {
                incident[v].push(id);
            }
        }
        Ok(Graph { n, edges, incident })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> Result<(usize, usize)> {
        self.edges.get(id).copied().ok_or(Error::InvalidEdge {
            edge: id,
            m: self.edges.len(),
        })
    }

    /// ℓ(G) = |E| − |V| + 1.
    pub fn loop_number(&self) -> i64 {
        self.edges.len() as i64 - self.n as i64 + 1
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::InvalidVertex {
                vertex: v,
                n: self.n,
            })
        }
    }

    /// Ids of the edges incident to `v`; a self-loop is listed once.
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    /// Degree of `v`, counting a self-loop twice.
    pub fn degree(&self, v: usize) -> usize {
        self.incident[v]
            .iter()
            .map(|&e| {
                if self.edges[e].0 == self.edges[e].1 {
                    2
                } else {
                    1
                }
            })
            .sum()
    }

    /// The endpoint of edge `e` opposite to `v`.
    pub fn other_end(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// Neighbours of `v` with multiplicity, in incidence order.
    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        self.incident[v]
            .iter()
            .map(|&e| self.other_end(e, v))
            .collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.incident[u].iter().any(|&e| self.other_end(e, u) == v)
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.edges
            .iter()
            .all(|&(u, v)| u != v && seen.insert((u.min(v), u.max(v))))
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &e in &self.incident[u] {
                let w = self.other_end(e, u);
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.n
    }

    pub fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    pub fn is_four_regular(&self) -> bool {
        (0..self.n).all(|v| self.degree(v) == 4)
    }

    pub fn require_four_regular(&self) -> Result<()> {
        match (0..self.n).find(|&v| self.degree(v) != 4) {
            None => Ok(()),
            Some(v) => Err(Error::NotFourRegular {
                vertex: v,
                degree: self.degree(v),
            }),
        }
    }

    /// Deletes a set of vertices and all incident edges, renumbering the
    /// survivors densely in ascending order.
    pub fn delete_vertices(&self, removed: &[usize]) -> Result<Decompletion> {
        let mut gone = vec![false; self.n];
        for &v in removed {
            self.check_vertex(v)?;
            gone[v] = true;
        }
        let mut vertex_map = vec![None; self.n];
        let mut next = 0;
        for v in 0..self.n {
            if !gone[v] {
                vertex_map[v] = Some(next);
                next += 1;
            }
        }
        let mut edges = Vec::new();
        let mut edge_map = Vec::new();
        for (id, &(u, v)) in self.edges.iter().enumerate() {
            if let (Some(a), Some(b)) = (vertex_map[u], vertex_map[v]) {
                edges.push((a, b));
                edge_map.push(id);
            }
        }
        let mut removed = removed.to_vec();
        removed.sort_unstable();
        removed.dedup();
        Ok(Decompletion {
            graph: Graph::new(next, edges)?,
            removed,
            vertex_map,
            edge_map,
        })
    }

    /// G ∖ e. Edge ids above `e` shift down by one.
    pub fn delete_edge(&self, e: usize) -> Result<Graph> {
        self.edge(e)?;
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(id, _)| id != e)
            .map(|(_, &uv)| uv)
            .collect();
        Graph::new(self.n, edges)
    }

    /// G / e. The endpoints of `e` merge into the smaller one, the larger
    /// vertex index is removed, and edges parallel to `e` become self-loops.
    pub fn contract_edge(&self, e: usize) -> Result<Graph> {
        let (a, b) = self.edge(e)?;
        if a == b {
            return Err(Error::precondition("cannot contract a self-loop"));
        }
        let (keep, drop) = (a.min(b), a.max(b));
        let relabel = |x: usize| {
            let x = if x == drop { keep } else { x };
            if x > drop {
                x - 1
            } else {
                x
            }
        };
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(id, _)| id != e)
            .map(|(_, &(u, v))| (relabel(u), relabel(v)))
            .collect();
        Graph::new(self.n - 1, edges)
    }
}

/// A vertex-deleted subgraph together with the maps back to its parent.
#[derive(Clone, Debug)]
pub struct Decompletion {
    pub graph: Graph,
    /// Deleted vertices of the parent, ascending.
    pub removed: Vec<usize>,
    /// Parent vertex to subgraph vertex.
    pub vertex_map: Vec<Option<usize>>,
    /// Subgraph edge id to parent edge id.
    pub edge_map: Vec<usize>,
}

impl Decompletion {
    /// Parent vertex of a subgraph vertex.
    pub fn original_vertex(&self, local: usize) -> usize {
        self.vertex_map
            .iter()
            .position(|&m| m == Some(local))
            .expect("local vertex exists")
    }
}

/// G − v.
pub fn decomplete(g: &Graph, v: usize) -> Result<Decompletion> {
    g.delete_vertices(&[v])
}

/// Orientation of every edge plus the total order ι on edges and vertices
/// used to lay out the expanded Laplacian. Edges always precede vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientationData {
    tails: Vec<usize>,
    heads: Vec<usize>,
    /// `edge_order[k]` is the edge with ι-rank `k + 1`.
    edge_order: Vec<usize>,
    removed_vertex: usize,
}

impl OrientationData {
    /// Edges oriented as stored, ordered by id, last vertex removed.
    pub fn standard(g: &Graph) -> Result<Self> {
        if g.n() == 0 {
            return Err(Error::precondition("graph has no vertices"));
        }
        Ok(OrientationData {
            tails: g.edges().iter().map(|e| e.0).collect(),
            heads: g.edges().iter().map(|e| e.1).collect(),
            edge_order: (0..g.num_edges()).collect(),
            removed_vertex: g.n() - 1,
        })
    }

    /// A custom layout. `edge_order` must be a permutation of the edge ids
    /// and `flipped[e]` reverses the stored orientation of edge `e`.
    pub fn custom(
        g: &Graph,
        edge_order: Vec<usize>,
        flipped: &[bool],
        removed_vertex: usize,
    ) -> Result<Self> {
        g.check_vertex(removed_vertex)?;
        let m = g.num_edges();
        let mut seen = vec![false; m];
        if edge_order.len() != m || flipped.len() != m {
            return Err(Error::precondition("edge order must list every edge once"));
        }
        for &e in &edge_order {
            if e >= m || std::mem::replace(&mut seen[e], true) {
                return Err(Error::precondition("edge order must list every edge once"));
            }
        }
        let (tails, heads) = g
            .edges()
            .iter()
            .zip(flipped)
            .map(|(&(u, v), &f)| if f { (v, u) } else { (u, v) })
            .unzip();
        Ok(OrientationData {
            tails,
            heads,
            edge_order,
            removed_vertex,
        })
    }

    pub fn tail(&self, e: usize) -> usize {
        self.tails[e]
    }

    pub fn head(&self, e: usize) -> usize {
        self.heads[e]
    }

    pub fn edge_order(&self) -> &[usize] {
        &self.edge_order
    }

    pub fn removed_vertex(&self) -> usize {
        self.removed_vertex
    }

    /// 1-based ι rank of each edge, indexed by edge id.
    pub fn edge_ranks(&self) -> Vec<usize> {
        let mut ranks = vec![0; self.edge_order.len()];
        for (k, &e) in self.edge_order.iter().enumerate() {
            ranks[e] = k + 1;
        }
        ranks
    }

    /// 1-based ι rank of vertex `v`; vertices follow all edges in index order.
    pub fn vertex_rank(&self, v: usize) -> usize {
        self.edge_order.len() + v + 1
    }
}

#[cfg(test)]
mod tests {
    use super::families::*;
    use super::*;

    #[test]
    fn loop_number_and_degrees() {
        let k5 = complete(5);
        assert_eq!(k5.num_edges(), 10);
        assert_eq!(k5.loop_number(), 6);
        assert!(k5.is_four_regular());
        let c3 = cycle(3);
        assert_eq!(c3.loop_number(), 1);
    }

    #[test]
    fn decompletion_examples() {
        let k4 = decomplete(&complete(5), 2).unwrap();
        assert_eq!((k4.graph.n(), k4.graph.num_edges()), (4, 6));
        assert_eq!(k4.vertex_map[2], None);
        assert_eq!(k4.vertex_map[3], Some(2));

        let oct = decomplete(&octahedron(), 0).unwrap().graph;
        assert_eq!((oct.n(), oct.num_edges()), (5, 8));

        let single = decomplete(&cycle(3), 0).unwrap().graph;
        assert_eq!((single.n(), single.num_edges()), (2, 1));

        assert!(matches!(
            decomplete(&cycle(3), 3),
            Err(Error::InvalidVertex { vertex: 3, n: 3 })
        ));
    }

    #[test]
    fn decompletion_of_quartic_graph_has_four_trivalent_vertices() {
        for g in [
            complete(5),
            octahedron(),
            circulant(7, &[1, 2]),
            circulant(8, &[1, 3]),
            hypercube(4),
        ] {
            for v in 0..g.n() {
                let d = decomplete(&g, v).unwrap();
                let h = &d.graph;
                let three = (0..h.n()).filter(|&x| h.degree(x) == 3).count();
                let four = (0..h.n()).filter(|&x| h.degree(x) == 4).count();
                assert_eq!((three, four), (4, h.n() - 4));
                assert_eq!(h.loop_number(), g.loop_number() - 3);
                for (local, &orig) in d.edge_map.iter().enumerate() {
                    let (a, b) = h.edges()[local];
                    let (x, y) = g.edges()[orig];
                    assert_eq!((d.original_vertex(a), d.original_vertex(b)), (x, y));
                }
            }
        }
    }

    #[test]
    fn contraction_keeps_parallel_edges_as_loops() {
        let g = Graph::new(2, vec![(0, 1), (0, 1)]).unwrap();
        let c = g.contract_edge(0).unwrap();
        assert_eq!(c.n(), 1);
        assert_eq!(c.edges(), &[(0, 0)]);
        assert_eq!(c.degree(0), 2);
    }

    #[test]
    fn rejects_out_of_range_endpoints() {
        assert!(Graph::new(2, vec![(0, 5)]).is_err());
    }

    #[test]
    fn orientation_ranks_put_edges_first() {
        let g = cycle(3);
        let o = OrientationData::custom(&g, vec![2, 0, 1], &[false, true, false], 0).unwrap();
        assert_eq!(o.edge_ranks(), vec![2, 3, 1]);
        assert!(o.vertex_rank(0) > 3);
        assert_eq!((o.tail(1), o.head(1)), (2, 0));
        assert!(OrientationData::custom(&g, vec![0, 0, 1], &[false; 3], 0).is_err());
    }
}
