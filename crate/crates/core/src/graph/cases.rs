//! Classification of adjacent vertex pairs of a 4-regular graph by the
//! number of neighbours they share.

use std::fmt;

use serde::Serialize;

use super::Graph;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CaseKind {
    /// Three common neighbours (K5).
    AllShared,
    /// Two common neighbours.
    T,
    /// One common neighbour.
    S,
    /// No common neighbour.
    R,
}

impl CaseKind {
    pub fn label_names(self) -> &'static [&'static str] {
        match self {
            CaseKind::AllShared => &["x", "y", "z"],
            CaseKind::T => &["a", "b", "c", "d"],
            CaseKind::S => &["a", "b", "c", "d", "e"],
            CaseKind::R => &["a", "b", "c", "d", "e", "f"],
        }
    }
}

impl fmt::Display for CaseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CaseKind::AllShared => "all-shared",
            CaseKind::T => "T",
            CaseKind::S => "S",
            CaseKind::R => "R",
        };
        f.write_str(s)
    }
}

/// The case of an adjacent pair `(v, w)` with its marked neighbours.
///
/// `labels` lists vertices of G in label order:
/// T: w ~ a,b,c and v ~ b,c,d; S: w ~ a,b,c and v ~ c,d,e;
/// R: w ~ a,b,c and v ~ d,e,f; all-shared: the three common neighbours.
/// Interchangeable labels are assigned in ascending vertex order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseLabel {
    pub kind: CaseKind,
    pub v: usize,
    pub w: usize,
    pub labels: Vec<usize>,
}

impl CaseLabel {
    /// Vertex carrying the label `name` (`"a"`, `"b"`, ...).
    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.kind
            .label_names()
            .iter()
            .position(|&l| l == name)
            .map(|i| self.labels[i])
    }
}

fn sorted_others(g: &Graph, x: usize, exclude: usize) -> Vec<usize> {
    let mut ns: Vec<usize> = g
        .neighbours(x)
        .into_iter()
        .filter(|&y| y != exclude)
        .collect();
    ns.sort_unstable();
    ns
}

pub fn classify_adjacent_pair(g: &Graph, v: usize, w: usize) -> Result<CaseLabel> {
    g.check_vertex(v)?;
    g.check_vertex(w)?;
    g.require_four_regular()?;
    if !g.is_simple() {
        return Err(Error::precondition(
            "pair classification needs a simple graph",
        ));
    }
    if v == w || !g.has_edge(v, w) {
        return Err(Error::NotAdjacent(v, w));
    }
    let nw = sorted_others(g, w, v);
    let nv = sorted_others(g, v, w);
    let shared: Vec<usize> = nw.iter().copied().filter(|x| nv.contains(x)).collect();
    let w_only: Vec<usize> = nw.iter().copied().filter(|x| !shared.contains(x)).collect();
    let v_only: Vec<usize> = nv.iter().copied().filter(|x| !shared.contains(x)).collect();
    let (kind, labels) = match shared.len() {
        3 => (CaseKind::AllShared, shared),
        2 => (CaseKind::T, [w_only, shared, v_only].concat()),
        1 => (CaseKind::S, [w_only, shared, v_only].concat()),
        0 => (CaseKind::R, [w_only, v_only].concat()),
        _ => unreachable!("a 4-regular simple graph has three other neighbours"),
    };
    Ok(CaseLabel { kind, v, w, labels })
}

/// G − {v, w} for a classified pair, with the labels moved to local ids.
#[derive(Clone, Debug)]
pub struct CaseGraph {
    pub graph: Graph,
    pub label: CaseLabel,
    /// Label vertices as ids of `graph`, in label order.
    pub marked: Vec<usize>,
    /// Local vertex to vertex of the completed graph.
    pub origin: Vec<usize>,
}

impl CaseGraph {
    /// Local id of the vertex labelled `name`.
    pub fn marked_vertex(&self, name: &str) -> Option<usize> {
        self.label
            .kind
            .label_names()
            .iter()
            .position(|&l| l == name)
            .map(|i| self.marked[i])
    }

    /// Local ids for a string of label letters such as `"abd"`.
    pub fn marked_set(&self, names: &str) -> Vec<usize> {
        names
            .chars()
            .map(|ch| {
                self.marked_vertex(&ch.to_string())
                    .unwrap_or_else(|| panic!("no label {ch} in a {} case", self.label.kind))
            })
            .collect()
    }
}

pub fn case_graph(g: &Graph, v: usize, w: usize) -> Result<CaseGraph> {
    let label = classify_adjacent_pair(g, v, w)?;
    let d = g.delete_vertices(&[v, w])?;
    let marked = label
        .labels
        .iter()
        .map(|&x| d.vertex_map[x].expect("labels are not v or w"))
        .collect();
    let origin = (0..d.graph.n()).map(|x| d.original_vertex(x)).collect();
    Ok(CaseGraph {
        graph: d.graph,
        label,
        marked,
        origin,
    })
}
