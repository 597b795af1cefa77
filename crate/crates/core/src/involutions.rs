//! Edge swaps around 2-valent vertices and control vertices, and the
//! fixed-point free involutions and orbits they generate.
//!
//! Every map here validates its output and returns a structural error rather
//! than a malformed partition; the sweep functions run a map over its whole
//! domain and tally every way it could fail to be a fixed-point free
//! involution on the stated union of sets.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::ops::ControlFlow;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Prime;
use crate::graph::{CaseGraph, CaseKind, Graph};
use crate::partitions::{
    binomial, for_each_general_partition, for_each_spanning_tree, forest_components,
    is_spanning_tree, label, EdgeBipartition, EdgeSet, GeneralEdgePartition, VertexPartition,
    R_DOUBLE, R_SINGLE, S_BIJECTION, S_BIJ_COR, S_SWAPC,
};

/// Where the special vertex must land once the control vertex is removed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ControlMode {
    /// x lies in the component holding two marked vertices.
    InTwoPart,
    /// x is the control vertex or lies in a singleton component.
    SelfOrSingleton,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ControlSpec {
    pub special: usize,
    pub mode: ControlMode,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SwapCase {
    /// Swap at the 2-valent vertex only.
    TwoValentSwap,
    SStep1,
    SStep2i,
    SStep2ii,
    RControlIn,
    RControlOut,
    /// Only the smaller control vertex has its ψ-neighbour in t.
    R1i,
    /// Only the larger control vertex has its ψ-neighbour in t.
    R1ii,
    /// Both control vertices have their ψ-neighbours in t.
    R1Both,
    R2,
}

impl fmt::Display for SwapCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SwapCase::TwoValentSwap => "two-valent swap",
            SwapCase::SStep1 => "S-1",
            SwapCase::SStep2i => "S-2i",
            SwapCase::SStep2ii => "S-2ii",
            SwapCase::RControlIn => "R-control-in",
            SwapCase::RControlOut => "R-control-out",
            SwapCase::R1i => "R-1i",
            SwapCase::R1ii => "R-1ii",
            SwapCase::R1Both => "R-1i+1ii",
            SwapCase::R2 => "R-2",
        };
        f.write_str(s)
    }
}

/// What one application of a map did.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SwapTrace {
    pub case: SwapCase,
    /// (edge moved out of ψ, edge moved out of φ), in application order.
    pub swapped: Vec<(usize, usize)>,
    /// Control vertices used, ascending.
    pub control: Vec<usize>,
}

impl SwapTrace {
    /// The edges that changed sides, as a set.
    pub fn moved_edges(&self) -> BTreeSet<usize> {
        let mut moved = BTreeSet::new();
        for &(a, b) in &self.swapped {
            // An edge moved twice is back where it started.
            for e in [a, b] {
                if !moved.insert(e) {
                    moved.remove(&e);
                }
            }
        }
        moved
    }
}

fn phi_components(g: &Graph, phi: EdgeSet) -> Result<Vec<usize>> {
    match forest_components(g, phi) {
        Some((comp, 2)) => Ok(comp),
        Some((_, k)) => Err(Error::structure(format!(
            "{phi:?} has {k} components, not 2"
        ))),
        None => Err(Error::structure(format!("{phi:?} contains a cycle"))),
    }
}

/// The partition of `marked` induced by the components of a forest.
pub fn marked_partition(g: &Graph, phi: EdgeSet, marked: &[usize]) -> Option<VertexPartition> {
    let (comp, _) = forest_components(g, phi)?;
    let mut parts: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &m in marked {
        parts.entry(comp[m]).or_default().push(m);
    }
    VertexPartition::new(parts.into_values().collect()).ok()
}

fn edges_at(g: &Graph, set: EdgeSet, v: usize) -> Vec<usize> {
    g.incident_edges(v)
        .iter()
        .copied()
        .filter(|&e| set.contains(e))
        .collect()
}

/// The only ψ-edge at `v` and its other end.
fn psi_leaf_edge(g: &Graph, psi: EdgeSet, v: usize) -> Result<(usize, usize)> {
    match edges_at(g, psi, v)[..] {
        [e] => Ok((e, g.other_end(e, v))),
        ref es => Err(Error::structure(format!(
            "vertex {v} has ψ-degree {}, not a leaf",
            es.len()
        ))),
    }
}

fn phi_edge_at_leaf(g: &Graph, phi: EdgeSet, v: usize) -> Result<usize> {
    match edges_at(g, phi, v)[..] {
        [e] => Ok(e),
        ref es => Err(Error::structure(format!(
            "vertex {v} has φ-degree {}, not a leaf",
            es.len()
        ))),
    }
}

/// The edge at `from` on the forest path to `to`.
fn first_edge_toward(g: &Graph, forest: EdgeSet, from: usize, to: usize) -> Result<usize> {
    let mut parent: Vec<Option<usize>> = vec![None; g.n()];
    let mut seen = vec![false; g.n()];
    seen[to] = true;
    let mut queue = VecDeque::from([to]);
    while let Some(u) = queue.pop_front() {
        if u == from {
            break;
        }
        for &e in g.incident_edges(u) {
            if forest.contains(e) {
                let x = g.other_end(e, u);
                if !seen[x] {
                    seen[x] = true;
                    parent[x] = Some(e);
                    queue.push_back(x);
                }
            }
        }
    }
    parent[from].ok_or_else(|| Error::structure(format!("no forest path from {from} to {to}")))
}

/// Moves `psi_edge` into φ and `phi_edge` into ψ.
fn exchange(bp: EdgeBipartition, psi_edge: usize, phi_edge: usize) -> Result<EdgeBipartition> {
    if !bp.psi.contains(psi_edge) || !bp.phi.contains(phi_edge) {
        return Err(Error::structure(format!(
            "cannot exchange {psi_edge} (ψ) with {phi_edge} (φ)"
        )));
    }
    Ok(EdgeBipartition {
        psi: bp.psi.swapped(psi_edge, phi_edge),
        phi: bp.phi.swapped(phi_edge, psi_edge),
    })
}

fn apply(bp: EdgeBipartition, swaps: &[(usize, usize)]) -> Result<EdgeBipartition> {
    swaps
        .iter()
        .try_fold(bp, |acc, &(a, b)| exchange(acc, a, b))
}

/// Marked vertices grouped by component of `forest` minus `removed`,
/// restricted to the component `tree`.
fn groups_without(
    g: &Graph,
    forest: EdgeSet,
    removed: &[usize],
    marked: &[usize],
) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.n()];
    for &r in removed {
        seen[r] = true;
    }
    let mut groups = Vec::new();
    for &m in marked {
        if seen[m] {
            continue;
        }
        let mut group = Vec::new();
        seen[m] = true;
        let mut queue = VecDeque::from([m]);
        while let Some(u) = queue.pop_front() {
            if marked.contains(&u) {
                group.push(u);
            }
            for &e in g.incident_edges(u) {
                if forest.contains(e) {
                    let x = g.other_end(e, u);
                    if !seen[x] {
                        seen[x] = true;
                        queue.push_back(x);
                    }
                }
            }
        }
        groups.push(group);
    }
    groups
}

fn tree_of(g: &Graph, phi: EdgeSet, part: &[usize]) -> Result<(Vec<usize>, usize)> {
    let comp = phi_components(g, phi)?;
    let t = comp[part[0]];
    if part.iter().any(|&m| comp[m] != t) {
        return Err(Error::structure(format!(
            "marked vertices {part:?} are not in one tree of φ"
        )));
    }
    Ok((comp, t))
}

fn t_degree(g: &Graph, phi: EdgeSet, v: usize) -> usize {
    edges_at(g, phi, v).len()
}

fn check_control_valency(g: &Graph, phi: EdgeSet, part: &[usize], v: usize) -> Result<()> {
    let d = t_degree(g, phi, v);
    let ok = if part.contains(&v) { d == 2 } else { d == 3 };
    if ok {
        Ok(())
    } else {
        Err(Error::structure(format!(
            "control vertex {v} has degree {d} in t and is {}in the part",
            if part.contains(&v) { "" } else { "not " }
        )))
    }
}

/// The control vertex of a 4-vertex part in a 2-forest, checking uniqueness
/// and the valency postcondition. Does not look at ψ.
pub fn find_control_vertex_in_forest(
    g: &Graph,
    phi: EdgeSet,
    part: &[usize],
    spec: ControlSpec,
) -> Result<usize> {
    if part.len() != 4 || !part.contains(&spec.special) {
        return Err(Error::precondition(
            "control vertex needs a 4-vertex part containing the special vertex",
        ));
    }
    let (comp, t) = tree_of(g, phi, part)?;
    let x = spec.special;
    let mut found = Vec::new();
    for u in (0..g.n()).filter(|&u| comp[u] == t) {
        let groups = groups_without(g, phi, &[u], part);
        let mut sizes: Vec<usize> = groups.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        let shape_ok = if part.contains(&u) {
            sizes == [1, 2]
        } else {
            sizes == [1, 1, 2]
        };
        if !shape_ok {
            continue;
        }
        let x_group = groups.iter().find(|gr| gr.contains(&x)).map(Vec::len);
        let placed = match spec.mode {
            ControlMode::InTwoPart => x_group == Some(2),
            ControlMode::SelfOrSingleton => u == x || x_group == Some(1),
        };
        if placed {
            found.push(u);
        }
    }
    let v = match found[..] {
        [v] => v,
        _ => {
            return Err(Error::structure(format!(
                "expected one control vertex for part {part:?}, found {found:?}"
            )))
        }
    };
    check_control_valency(g, phi, part, v)?;
    Ok(v)
}

/// [`find_control_vertex_in_forest`] plus the check that the control vertex
/// is a leaf of ψ.
pub fn find_control_vertex(
    g: &Graph,
    bp: &EdgeBipartition,
    part: &[usize],
    spec: ControlSpec,
) -> Result<usize> {
    let v = find_control_vertex_in_forest(g, bp.phi, part, spec)?;
    psi_leaf_edge(g, bp.psi, v)?;
    Ok(v)
}

/// The pair of vertices whose removal from the tree holding a 5-vertex part
/// leaves every marked vertex alone, with the valency and non-adjacency
/// postconditions. Does not look at ψ.
pub fn find_two_control_vertices_in_forest(
    g: &Graph,
    phi: EdgeSet,
    part: &[usize],
) -> Result<(usize, usize)> {
    if part.len() != 5 {
        return Err(Error::precondition(
            "two control vertices need a 5-vertex part",
        ));
    }
    let (comp, t) = tree_of(g, phi, part)?;
    let tree: Vec<usize> = (0..g.n()).filter(|&u| comp[u] == t).collect();
    let mut found = Vec::new();
    for (i, &u) in tree.iter().enumerate() {
        for &w in &tree[i + 1..] {
            if groups_without(g, phi, &[u, w], part)
                .iter()
                .all(|gr| gr.len() == 1)
            {
                found.push((u, w));
            }
        }
    }
    let (v, w) = match found[..] {
        [pair] => pair,
        _ => {
            return Err(Error::structure(format!(
                "expected one pair of control vertices for part {part:?}, found {found:?}"
            )))
        }
    };
    if g.has_edge(v, w) {
        return Err(Error::structure(format!(
            "control vertices {v} and {w} are adjacent"
        )));
    }
    check_control_valency(g, phi, part, v)?;
    check_control_valency(g, phi, part, w)?;
    Ok((v, w))
}

pub fn find_two_control_vertices(
    g: &Graph,
    bp: &EdgeBipartition,
    part: &[usize],
) -> Result<(usize, usize)> {
    let (v, w) = find_two_control_vertices_in_forest(g, bp.phi, part)?;
    psi_leaf_edge(g, bp.psi, v)?;
    psi_leaf_edge(g, bp.psi, w)?;
    Ok((v, w))
}

fn two_valent_edges(g: &Graph, c: usize) -> Result<[usize; 2]> {
    g.check_vertex(c)?;
    match g.incident_edges(c)[..] {
        [e, f] if g.degree(c) == 2 => Ok([e, f]),
        _ => Err(Error::precondition(format!("vertex {c} is not 2-valent"))),
    }
}

fn validated(g: &Graph, bp: EdgeBipartition) -> Result<EdgeBipartition> {
    bp.validate(g)
        .map_err(|e| Error::structure(format!("swap produced an invalid pair: {e}")))?;
    Ok(bp)
}

/// Exchanges the two edges at a 2-valent vertex between ψ and φ.
pub fn swap_at_two_valent(g: &Graph, bp: &EdgeBipartition, c: usize) -> Result<EdgeBipartition> {
    two_valent_edges(g, c)?;
    let (eta_c, _) = psi_leaf_edge(g, bp.psi, c)?;
    let phi_c = phi_edge_at_leaf(g, bp.phi, c)?;
    validated(g, exchange(*bp, eta_c, phi_c)?)
}

/// Exchanges the edges at a 2-valent vertex `c` between forest `i` and tree
/// `j` of a general edge partition.
pub fn swap_two_valent(
    g: &Graph,
    pi: &GeneralEdgePartition,
    c: usize,
    i: usize,
    j: usize,
) -> Result<GeneralEdgePartition> {
    let [e, f] = two_valent_edges(g, c)?;
    if i >= pi.forests.len() || j >= pi.trees.len() {
        return Err(Error::precondition("part index out of range"));
    }
    let at_c = |s: EdgeSet| -> Result<usize> {
        match (s.contains(e), s.contains(f)) {
            (true, false) => Ok(e),
            (false, true) => Ok(f),
            _ => Err(Error::precondition(format!(
                "a part does not have exactly one edge at {c}"
            ))),
        }
    };
    for &s in pi.trees.iter().chain(&pi.forests) {
        at_c(s)?;
    }
    let (fe, te) = (at_c(pi.forests[i])?, at_c(pi.trees[j])?);
    if fe == te {
        return Err(Error::precondition(format!(
            "forest {i} and tree {j} carry the same edge at {c}"
        )));
    }
    let mut out = pi.clone();
    out.forests[i] = pi.forests[i].swapped(fe, te);
    out.trees[j] = pi.trees[j].swapped(te, fe);
    if !is_spanning_tree(g, out.trees[j])
        || !matches!(forest_components(g, out.forests[i]), Some((_, 2)))
    {
        return Err(Error::structure("two-valent swap broke a tree or forest"));
    }
    Ok(out)
}

fn require_kind(cg: &CaseGraph, kind: CaseKind) -> Result<()> {
    if cg.label.kind == kind {
        Ok(())
    } else {
        Err(Error::precondition(format!(
            "expected a {kind} pair, got {}",
            cg.label.kind
        )))
    }
}

fn split(g: &Graph, bp: &EdgeBipartition, marked: &[usize]) -> Result<VertexPartition> {
    marked_partition(g, bp.phi, marked)
        .filter(|p| p.num_parts() == 2)
        .ok_or_else(|| Error::precondition("φ does not split the marked vertices in two"))
}

fn part_with(p: &VertexPartition, v: usize) -> &[usize] {
    &p.parts()[p.part_of(v).expect("vertex is marked")]
}

/// The S-case map on the union of the sets S_{{x},{c,*,*,*}}.
pub fn s_case_involution(
    cg: &CaseGraph,
    bp: &EdgeBipartition,
) -> Result<(EdgeBipartition, SwapTrace)> {
    require_kind(cg, CaseKind::S)?;
    let g = &cg.graph;
    let c = cg.marked_vertex("c").expect("S case has c");
    let p = split(g, bp, &cg.marked)?;
    let big = part_with(&p, c).to_vec();
    if big.len() != 4 {
        return Err(Error::precondition(format!(
            "{p} is not of the form {{*}}|{{c,*,*,*}}"
        )));
    }
    let comp = phi_components(g, bp.phi)?;
    let t = comp[c];
    let (eta_c, n_c) = psi_leaf_edge(g, bp.psi, c)?;
    let phi_c = phi_edge_at_leaf(g, bp.phi, c)?;
    if comp[n_c] == t {
        let swaps = vec![(eta_c, phi_c)];
        let out = validated(g, apply(*bp, &swaps)?)?;
        return Ok((
            out,
            SwapTrace {
                case: SwapCase::SStep1,
                swapped: swaps,
                control: vec![],
            },
        ));
    }
    let spec = ControlSpec {
        special: c,
        mode: ControlMode::InTwoPart,
    };
    let v = find_control_vertex(g, bp, &big, spec)?;
    let (eta_v, n_v) = psi_leaf_edge(g, bp.psi, v)?;
    let (case, swaps) = if comp[n_v] == t {
        let eta = first_edge_toward(g, bp.phi, v, n_v)?;
        (SwapCase::SStep2i, vec![(eta_v, eta)])
    } else {
        let eta = first_edge_toward(g, bp.phi, v, c)?;
        let mid = exchange(*bp, eta_v, eta)?;
        let (eta_c2, _) = psi_leaf_edge(g, mid.psi, c)?;
        let phi_c2 = phi_edge_at_leaf(g, mid.phi, c)?;
        (SwapCase::SStep2ii, vec![(eta_v, eta), (eta_c2, phi_c2)])
    };
    let out = validated(g, apply(*bp, &swaps)?)?;
    Ok((
        out,
        SwapTrace {
            case,
            swapped: swaps,
            control: vec![v],
        },
    ))
}

/// The S-case map on the union of the sets S_{{c,*},{*,*,*}}: a swap at c
/// first when c's neighbours lie in different trees, then the control vertex
/// step, with the closing swap at c moved from the outgoing to the staying
/// branch.
pub fn s_case_involution_variant(
    cg: &CaseGraph,
    bp: &EdgeBipartition,
) -> Result<(EdgeBipartition, SwapTrace)> {
    require_kind(cg, CaseKind::S)?;
    let g = &cg.graph;
    let c = cg.marked_vertex("c").expect("S case has c");
    let p = split(g, bp, &cg.marked)?;
    if part_with(&p, c).len() != 2 {
        return Err(Error::precondition(format!(
            "{p} is not of the form {{c,*}}|{{*,*,*}}"
        )));
    }
    let comp = phi_components(g, bp.phi)?;
    let (eta_c, n_c) = psi_leaf_edge(g, bp.psi, c)?;
    let phi_c = phi_edge_at_leaf(g, bp.phi, c)?;
    if comp[n_c] == comp[c] {
        let swaps = vec![(eta_c, phi_c)];
        let out = validated(g, apply(*bp, &swaps)?)?;
        return Ok((
            out,
            SwapTrace {
                case: SwapCase::SStep1,
                swapped: swaps,
                control: vec![],
            },
        ));
    }
    let pre = exchange(*bp, eta_c, phi_c)?;
    let pre_split = split(g, &pre, &cg.marked)?;
    let big = part_with(&pre_split, c).to_vec();
    if big.len() != 4 {
        return Err(Error::structure("swap at c did not produce a 1|4 split"));
    }
    let comp = phi_components(g, pre.phi)?;
    let t = comp[c];
    let spec = ControlSpec {
        special: c,
        mode: ControlMode::InTwoPart,
    };
    let v = find_control_vertex(g, &pre, &big, spec)?;
    let (eta_v, n_v) = psi_leaf_edge(g, pre.psi, v)?;
    let mut swaps = vec![(eta_c, phi_c)];
    let case = if comp[n_v] == t {
        let eta = first_edge_toward(g, pre.phi, v, n_v)?;
        swaps.push((eta_v, eta));
        let mid = exchange(pre, eta_v, eta)?;
        let (eta_c2, _) = psi_leaf_edge(g, mid.psi, c)?;
        swaps.push((eta_c2, phi_edge_at_leaf(g, mid.phi, c)?));
        SwapCase::SStep2i
    } else {
        swaps.push((eta_v, first_edge_toward(g, pre.phi, v, c)?));
        SwapCase::SStep2ii
    };
    let out = validated(g, apply(*bp, &swaps)?)?;
    Ok((
        out,
        SwapTrace {
            case,
            swapped: swaps,
            control: vec![v],
        },
    ))
}

/// The R-case map on the union of the six sets R_{{y,z},{x,*,*,*}} with
/// {x,y,z} one of the triples {a,b,c}, {d,e,f}.
///
/// The special vertex is x and the control vertex is taken with x equal to
/// it or in a singleton. If the ψ-neighbour of the control vertex v lies in
/// t, η_v is exchanged with the edge at v toward it; otherwise with the edge
/// at v toward the two-vertex component of t − v, which moves the pair out
/// of t and turns the partition into one based on the other triple.
pub fn r_case_single_control_involution(
    cg: &CaseGraph,
    bp: &EdgeBipartition,
) -> Result<(EdgeBipartition, SwapTrace)> {
    require_kind(cg, CaseKind::R)?;
    let g = &cg.graph;
    let p = split(g, bp, &cg.marked)?;
    let (small, big) = match p.parts() {
        [a, b] if a.len() == 2 && b.len() == 4 => (a, b),
        [a, b] if a.len() == 4 && b.len() == 2 => (b, a),
        _ => return Err(Error::precondition(format!("{p} is not a 2|4 split"))),
    };
    let triples = [cg.marked_set("abc"), cg.marked_set("def")];
    let triple = triples
        .iter()
        .find(|tr| small.iter().all(|m| tr.contains(m)))
        .ok_or_else(|| Error::precondition(format!("{p} pairs vertices from different triples")))?;
    let x = *triple
        .iter()
        .find(|m| !small.contains(m))
        .expect("triple has three vertices");
    let spec = ControlSpec {
        special: x,
        mode: ControlMode::SelfOrSingleton,
    };
    let v = find_control_vertex(g, bp, big, spec)?;
    let comp = phi_components(g, bp.phi)?;
    let t = comp[x];
    let (eta_v, n_v) = psi_leaf_edge(g, bp.psi, v)?;
    let (case, eta) = if comp[n_v] == t {
        (SwapCase::RControlIn, first_edge_toward(g, bp.phi, v, n_v)?)
    } else {
        let groups = groups_without(g, bp.phi, &[v], big);
        let pair = groups
            .iter()
            .find(|gr| gr.len() == 2)
            .ok_or_else(|| Error::structure("control vertex split has no 2-part"))?;
        (
            SwapCase::RControlOut,
            first_edge_toward(g, bp.phi, v, pair[0])?,
        )
    };
    let swaps = vec![(eta_v, eta)];
    let out = validated(g, apply(*bp, &swaps)?)?;
    Ok((
        out,
        SwapTrace {
            case,
            swapped: swaps,
            control: vec![v],
        },
    ))
}

/// The R-case map on the union of the six sets R_{{x},{*,*,*,*,*}} built on
/// the two control vertices. In the staying case the edges toward the
/// ψ-neighbours are read off the original tree t and exchanged together.
pub fn r_case_involution(
    cg: &CaseGraph,
    bp: &EdgeBipartition,
) -> Result<(EdgeBipartition, SwapTrace)> {
    r_case_involution_with(cg, bp, BothIn::Simultaneous)
}

/// What the two-control-vertex map does when both ψ-neighbours lie in t.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BothIn {
    /// Swap at v and at w together, both edges read off t.
    Simultaneous,
    /// Swap at the smaller-numbered control vertex only.
    SmallerOnly,
}

/// The two-control-vertex map with a choice of staying rule.
///
/// The simultaneous rule breaks when the t-path from v to n_v passes
/// through w's side and the path from w to n_w through v's side: adding
/// η_v and η_w then closes a cycle in φ. Swapping only at the smaller
/// control vertex keeps both ψ-neighbours in t, so the next application
/// picks the same vertex and undoes the swap.
pub fn r_case_involution_with(
    cg: &CaseGraph,
    bp: &EdgeBipartition,
    both_in: BothIn,
) -> Result<(EdgeBipartition, SwapTrace)> {
    require_kind(cg, CaseKind::R)?;
    let g = &cg.graph;
    let p = split(g, bp, &cg.marked)?;
    let big = match p.parts() {
        [a, b] if a.len() == 1 && b.len() == 5 => b,
        [a, b] if a.len() == 5 && b.len() == 1 => a,
        _ => return Err(Error::precondition(format!("{p} is not a 1|5 split"))),
    };
    let (v, w) = find_two_control_vertices(g, bp, big)?;
    let comp = phi_components(g, bp.phi)?;
    let t = comp[big[0]];
    let (eta_v, n_v) = psi_leaf_edge(g, bp.psi, v)?;
    let (eta_w, n_w) = psi_leaf_edge(g, bp.psi, w)?;
    let (v_in, w_in) = (comp[n_v] == t, comp[n_w] == t);
    let mut swaps = Vec::new();
    let case = if v_in || w_in {
        if v_in {
            swaps.push((eta_v, first_edge_toward(g, bp.phi, v, n_v)?));
        }
        if w_in && !(v_in && both_in == BothIn::SmallerOnly) {
            swaps.push((eta_w, first_edge_toward(g, bp.phi, w, n_w)?));
        }
        match (v_in, w_in) {
            (true, true) if both_in == BothIn::SmallerOnly => SwapCase::R1i,
            (true, true) => SwapCase::R1Both,
            (true, false) => SwapCase::R1i,
            _ => SwapCase::R1ii,
        }
    } else {
        swaps.push((eta_v, first_edge_toward(g, bp.phi, v, w)?));
        swaps.push((eta_w, first_edge_toward(g, bp.phi, w, v)?));
        SwapCase::R2
    };
    let moved: BTreeSet<usize> = swaps.iter().flat_map(|&(a, b)| [a, b]).collect();
    if moved.len() != 2 * swaps.len() {
        return Err(Error::structure(format!(
            "swapped edges {swaps:?} are not distinct"
        )));
    }
    let out = validated(g, apply(*bp, &swaps)?)?;
    Ok((
        out,
        SwapTrace {
            case,
            swapped: swaps,
            control: vec![v, w],
        },
    ))
}

/// The S-case pairing of S_{{a,b,c},{d,e}} with S_{{a,b},{c,d,e}} by a swap
/// at c.
pub fn s_case_swap_c(cg: &CaseGraph, bp: &EdgeBipartition) -> Result<(EdgeBipartition, SwapTrace)> {
    require_kind(cg, CaseKind::S)?;
    let g = &cg.graph;
    let c = cg.marked_vertex("c").expect("S case has c");
    let (eta_c, _) = psi_leaf_edge(g, bp.psi, c)?;
    let phi_c = phi_edge_at_leaf(g, bp.phi, c)?;
    let out = swap_at_two_valent(g, bp, c)?;
    Ok((
        out,
        SwapTrace {
            case: SwapCase::TwoValentSwap,
            swapped: vec![(eta_c, phi_c)],
            control: vec![],
        },
    ))
}

/// The involutions that can be swept.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum InvolutionKind {
    SSwapC,
    SBijection,
    SBijectionVariant,
    RSingleControl,
    RTwoControl,
    RTwoControlSmallerOnly,
}

impl InvolutionKind {
    pub const ALL: [InvolutionKind; 6] = [
        InvolutionKind::SSwapC,
        InvolutionKind::SBijection,
        InvolutionKind::SBijectionVariant,
        InvolutionKind::RSingleControl,
        InvolutionKind::RTwoControl,
        InvolutionKind::RTwoControlSmallerOnly,
    ];

    pub fn case(self) -> CaseKind {
        match self {
            InvolutionKind::SSwapC
            | InvolutionKind::SBijection
            | InvolutionKind::SBijectionVariant => CaseKind::S,
            InvolutionKind::RSingleControl
            | InvolutionKind::RTwoControl
            | InvolutionKind::RTwoControlSmallerOnly => CaseKind::R,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            InvolutionKind::SSwapC => "swap around c",
            InvolutionKind::SBijection => "control vertex with c",
            InvolutionKind::SBijectionVariant => "control vertex with c, 2|3 sets",
            InvolutionKind::RSingleControl => "single control vertex",
            InvolutionKind::RTwoControl => "two control vertices",
            InvolutionKind::RTwoControlSmallerOnly => {
                "two control vertices, smaller-only staying rule"
            }
        }
    }

    /// The sets forming the domain, as pairs of label strings.
    pub fn domain(self) -> &'static [(&'static str, &'static str)] {
        match self {
            InvolutionKind::SSwapC => &S_SWAPC,
            InvolutionKind::SBijection => &S_BIJECTION,
            InvolutionKind::SBijectionVariant => &S_BIJ_COR,
            InvolutionKind::RSingleControl => &R_SINGLE,
            InvolutionKind::RTwoControl | InvolutionKind::RTwoControlSmallerOnly => &R_DOUBLE,
        }
    }

    /// Whether control vertices must be preserved by the map.
    fn checks_stability(self) -> bool {
        !matches!(self, InvolutionKind::SSwapC)
    }

    pub fn apply(
        self,
        cg: &CaseGraph,
        bp: &EdgeBipartition,
    ) -> Result<(EdgeBipartition, SwapTrace)> {
        match self {
            InvolutionKind::SSwapC => s_case_swap_c(cg, bp),
            InvolutionKind::SBijection => s_case_involution(cg, bp),
            InvolutionKind::SBijectionVariant => s_case_involution_variant(cg, bp),
            InvolutionKind::RSingleControl => r_case_single_control_involution(cg, bp),
            InvolutionKind::RTwoControl => r_case_involution(cg, bp),
            InvolutionKind::RTwoControlSmallerOnly => {
                r_case_involution_with(cg, bp, BothIn::SmallerOnly)
            }
        }
    }
}

/// Outcome of running one involution over its whole domain.
#[derive(Clone, Debug, Default, Serialize)]
pub struct InvolutionSweep {
    pub name: String,
    /// Size of each set in the union, by label.
    pub set_sizes: BTreeMap<String, u64>,
    pub domain_size: u64,
    pub fixed_points: u64,
    pub not_involutive: u64,
    pub outside_domain: u64,
    pub unstable_control: u64,
    /// f(x) handled by a different case of the map than x.
    pub case_mismatch: u64,
    /// Inputs where the map itself reported an error.
    pub errors: u64,
    pub case_counts: BTreeMap<String, u64>,
    /// First few failures, for reproduction.
    pub examples: Vec<String>,
}

const MAX_EXAMPLES: usize = 5;

impl InvolutionSweep {
    pub fn violations(&self) -> u64 {
        self.fixed_points
            + self.not_involutive
            + self.outside_domain
            + self.unstable_control
            + self.case_mismatch
            + self.errors
    }

    /// The sum of the set sizes is even.
    pub fn parity_holds(&self) -> bool {
        self.domain_size.is_multiple_of(2)
    }

    pub fn is_clean(&self) -> bool {
        self.violations() == 0 && self.parity_holds()
    }

    fn note(&mut self, msg: String) {
        if self.examples.len() < MAX_EXAMPLES {
            self.examples.push(msg);
        }
    }
}

/// Applies `kind` to every element of its domain on `cg` and checks that it
/// is a fixed-point free involution preserving the union of sets and the
/// control vertices.
pub fn sweep_involution(
    cg: &CaseGraph,
    kind: InvolutionKind,
    budget: u64,
) -> Result<InvolutionSweep> {
    require_kind(cg, kind.case())?;
    let g = &cg.graph;
    let domain: HashMap<VertexPartition, String> = kind
        .domain()
        .iter()
        .map(|&(a, b)| {
            Ok((
                VertexPartition::two(&cg.marked_set(a), &cg.marked_set(b))?,
                label(a, b),
            ))
        })
        .collect::<Result<_>>()?;
    let mut sweep = InvolutionSweep {
        name: kind.name().to_string(),
        set_sizes: domain.values().map(|l| (l.clone(), 0)).collect(),
        ..Default::default()
    };
    let in_domain = |bp: &EdgeBipartition| {
        marked_partition(g, bp.phi, &cg.marked).and_then(|p| domain.get(&p).cloned())
    };
    for_each_spanning_tree(g, budget, |t| {
        let x = EdgeBipartition::from_tree(g, t);
        let Some(set) = in_domain(&x) else {
            return ControlFlow::Continue(());
        };
        *sweep.set_sizes.get_mut(&set).expect("known set") += 1;
        sweep.domain_size += 1;
        let (y, trace) = match kind.apply(cg, &x) {
            Ok(r) => r,
            Err(e) => {
                sweep.errors += 1;
                sweep.note(format!("{:?}: {e}", x.psi));
                return ControlFlow::Continue(());
            }
        };
        *sweep.case_counts.entry(trace.case.to_string()).or_default() += 1;
        if y == x {
            sweep.fixed_points += 1;
            sweep.note(format!("{:?}: fixed point", x.psi));
        }
        if in_domain(&y).is_none() {
            sweep.outside_domain += 1;
            sweep.note(format!(
                "{:?} -> {:?}: image outside the domain",
                x.psi, y.psi
            ));
            return ControlFlow::Continue(());
        }
        match kind.apply(cg, &y) {
            Ok((z, back)) => {
                if z != x {
                    sweep.not_involutive += 1;
                    sweep.note(format!(
                        "{:?} -> {:?} -> {:?} ({} then {})",
                        x.psi, y.psi, z.psi, trace.case, back.case
                    ));
                }
                if kind.checks_stability() && back.control != trace.control {
                    sweep.unstable_control += 1;
                    sweep.note(format!(
                        "{:?}: control {:?} became {:?}",
                        x.psi, trace.control, back.control
                    ));
                }
                if back.case != trace.case {
                    sweep.case_mismatch += 1;
                    sweep.note(format!(
                        "{:?}: case {} came back as {}",
                        x.psi, trace.case, back.case
                    ));
                }
            }
            Err(e) => {
                sweep.errors += 1;
                sweep.note(format!(
                    "{:?} -> {:?}: second application failed: {e}",
                    x.psi, y.psi
                ));
            }
        }
        ControlFlow::Continue(())
    })?;
    Ok(sweep)
}

/// `p` with `c` moved to the other part.
pub fn move_vertex(p: &VertexPartition, c: usize) -> Result<VertexPartition> {
    let [a, b] = p.parts() else {
        return Err(Error::precondition("need a bipartition"));
    };
    let (mut a, mut b) = (a.clone(), b.clone());
    if let Some(i) = a.iter().position(|&x| x == c) {
        a.remove(i);
        b.push(c);
    } else if let Some(i) = b.iter().position(|&x| x == c) {
        b.remove(i);
        a.push(c);
    } else {
        return Err(Error::precondition(format!("{c} is not in {p}")));
    }
    VertexPartition::two(&a, &b)
}

/// Closure of `pi` under swaps at `c` between forest `i` and every tree.
pub fn orbit_of(
    g: &Graph,
    pi: &GeneralEdgePartition,
    i: usize,
    c: usize,
) -> Result<BTreeSet<GeneralEdgePartition>> {
    let mut orbit = BTreeSet::from([pi.clone()]);
    let mut queue = VecDeque::from([pi.clone()]);
    while let Some(cur) = queue.pop_front() {
        for j in 0..cur.trees.len() {
            let next = match swap_two_valent(g, &cur, c, i, j) {
                Ok(n) => n,
                // Tree j carries the same edge at c as forest i.
                Err(Error::Precondition(_)) => continue,
                Err(e) => return Err(e),
            };
            if orbit.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    Ok(orbit)
}

/// Number of trees whose edge at `c` differs from that of forest `i`.
fn differing_trees(pi: &GeneralEdgePartition, i: usize, c_edges: [usize; 2]) -> usize {
    let fe = if pi.forests[i].contains(c_edges[0]) {
        c_edges[0]
    } else {
        c_edges[1]
    };
    pi.trees.iter().filter(|t| !t.contains(fe)).count()
}

/// Orbit structure of the swap action at `c` on forest `i`, over the union
/// of the tuples compatible with `parts` and those with `parts[i]` replaced
/// by its c-moved version.
#[derive(Clone, Debug, Default, Serialize)]
pub struct OrbitSweep {
    pub prime: u32,
    pub class_sizes: [u64; 2],
    pub orbits: u64,
    /// Orbit size to number of orbits.
    pub orbit_sizes: BTreeMap<u64, u64>,
    pub size_mismatches: u64,
    pub split_mismatches: u64,
    /// Orbits containing tuples outside both classes.
    pub escapes: u64,
    pub examples: Vec<String>,
}

impl OrbitSweep {
    pub fn total_divisible(&self) -> bool {
        (self.class_sizes[0] + self.class_sizes[1]).is_multiple_of(self.prime as u64)
    }

    pub fn is_clean(&self) -> bool {
        self.size_mismatches + self.split_mismatches + self.escapes == 0 && self.total_divisible()
    }
}

pub fn sweep_orbits(
    g: &Graph,
    parts: &[&VertexPartition],
    i: usize,
    c: usize,
    prime: Prime,
    budget: u64,
) -> Result<OrbitSweep> {
    let c_edges = two_valent_edges(g, c)?;
    if i >= parts.len() {
        return Err(Error::precondition("forest index out of range"));
    }
    let moved = move_vertex(parts[i], c)?;
    let mut other: Vec<&VertexPartition> = parts.to_vec();
    other[i] = &moved;
    let mut class: HashMap<GeneralEdgePartition, usize> = HashMap::new();
    let mut sweep = OrbitSweep {
        prime: prime.get(),
        ..Default::default()
    };
    for (k, ps) in [parts, &other[..]].into_iter().enumerate() {
        for_each_general_partition(g, ps, prime, budget, |pi| {
            sweep.class_sizes[k] += 1;
            class.insert(pi, k);
        })?;
    }
    let q = prime.get() as u64;
    let mut seen: BTreeSet<GeneralEdgePartition> = BTreeSet::new();
    let mut elements: Vec<&GeneralEdgePartition> = class.keys().collect();
    elements.sort();
    for pi in elements {
        if seen.contains(pi) {
            continue;
        }
        let orbit = orbit_of(g, pi, i, c)?;
        sweep.orbits += 1;
        let size = orbit.len() as u64;
        *sweep.orbit_sizes.entry(size).or_default() += 1;
        let mut in_class = [0u64; 2];
        let mut first_class_k = None;
        let mut escaped = false;
        for o in &orbit {
            match class.get(o) {
                Some(&k) => {
                    in_class[k] += 1;
                    if k == 0 {
                        first_class_k = Some(differing_trees(o, i, c_edges) as u64);
                    }
                }
                None => escaped = true,
            }
        }
        seen.extend(orbit.iter().cloned());
        if escaped {
            sweep.escapes += 1;
            continue;
        }
        let k = differing_trees(pi, i, c_edges) as u64;
        if !(1..q).contains(&k) || size != binomial(q, k) {
            sweep.size_mismatches += 1;
            if sweep.examples.len() < MAX_EXAMPLES {
                sweep
                    .examples
                    .push(format!("orbit of size {size} with k = {k}"));
            }
        }
        let swaps_in = in_class[0] == 0 || in_class[1] == 0;
        if !swaps_in {
            let k0 = first_class_k.expect("orbit meets the first class");
            let expected = [binomial(q - 1, q - 1 - k0), binomial(q - 1, q - k0)];
            if in_class != expected {
                sweep.split_mismatches += 1;
                if sweep.examples.len() < MAX_EXAMPLES {
                    sweep.examples.push(format!(
                        "split {in_class:?}, expected {expected:?} for k = {k0}"
                    ));
                }
            }
        } else if neighbours_split(g, &orbit, i, c, c_edges) {
            // Every element of a swap-out orbit should reach the other class.
            sweep.split_mismatches += 1;
        }
    }
    Ok(sweep)
}

/// Whether the two neighbours of `c` lie in different trees of forest `i`
/// once the edge at `c` is dropped (the same for every orbit element).
fn neighbours_split(
    g: &Graph,
    orbit: &BTreeSet<GeneralEdgePartition>,
    i: usize,
    c: usize,
    c_edges: [usize; 2],
) -> bool {
    let pi = orbit.iter().next().expect("orbit is nonempty");
    let mut f = pi.forests[i];
    f.remove(c_edges[0]);
    f.remove(c_edges[1]);
    let (n1, n2) = (g.other_end(c_edges[0], c), g.other_end(c_edges[1], c));
    match forest_components(g, f) {
        Some((comp, _)) => comp[n1] != comp[n2],
        None => true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{case_graph, families::*};
    use crate::partitions::{enumerate_spanning_trees, DEFAULT_ENUM_BUDGET as B};

    fn tree_graph(n: usize, edges: &[(usize, usize)]) -> (Graph, EdgeSet) {
        let g = Graph::new(n, edges.to_vec()).unwrap();
        let all = EdgeSet::full(g.num_edges());
        (g, all)
    }

    // Hand tree: x=0, v=1, q=2, w=3, r=4, s=5, plus an isolated vertex 6 so
    // the edge set is a 2-forest.
    fn hand_tree() -> (Graph, EdgeSet) {
        tree_graph(7, &[(0, 1), (2, 1), (1, 3), (4, 3), (5, 3)])
    }

    #[test]
    fn control_vertex_hand_examples() {
        let (g, phi) = hand_tree();
        let part = [0, 2, 4, 5];
        let two = ControlSpec {
            special: 0,
            mode: ControlMode::InTwoPart,
        };
        let own = ControlSpec {
            special: 0,
            mode: ControlMode::SelfOrSingleton,
        };
        assert_eq!(
            find_control_vertex_in_forest(&g, phi, &part, two).unwrap(),
            3
        );
        assert_eq!(
            find_control_vertex_in_forest(&g, phi, &part, own).unwrap(),
            1
        );

        // The x-v edge contracted: x=0 now carries q=2 and w=3 directly.
        let (g, phi) = tree_graph(6, &[(0, 2), (0, 3), (3, 4), (3, 5)]);
        assert_eq!(
            find_control_vertex_in_forest(&g, phi, &[0, 2, 4, 5], own).unwrap(),
            0
        );
    }

    #[test]
    fn control_vertex_errors() {
        // A star: removing the centre leaves four singletons.
        let (g, phi) = tree_graph(6, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        let spec = ControlSpec {
            special: 1,
            mode: ControlMode::InTwoPart,
        };
        assert!(matches!(
            find_control_vertex_in_forest(&g, phi, &[1, 2, 3, 4], spec),
            Err(Error::Structure(_))
        ));
        assert!(find_control_vertex_in_forest(&g, phi, &[1, 2, 3], spec).is_err());
    }

    #[test]
    fn two_control_vertices_hand_examples() {
        // v=0 with leaves 1,2; m=3 with x'=4; w=5 with leaves 6,7.
        let (g, phi) = tree_graph(9, &[(0, 1), (0, 2), (0, 3), (3, 4), (3, 5), (5, 6), (5, 7)]);
        assert_eq!(
            find_two_control_vertices_in_forest(&g, phi, &[1, 2, 4, 6, 7]).unwrap(),
            (0, 5)
        );

        // A 4-valent centre with a fifth marked vertex two steps away.
        let (g, phi) = tree_graph(8, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (5, 6)]);
        assert!(matches!(
            find_two_control_vertices_in_forest(&g, phi, &[1, 2, 3, 4, 6]),
            Err(Error::Structure(_))
        ));
    }

    fn s_case() -> CaseGraph {
        case_graph(&circulant(7, &[1, 2]), 0, 2).unwrap()
    }

    fn r_case() -> CaseGraph {
        case_graph(&circulant(10, &[1, 3]), 0, 1).unwrap()
    }

    #[test]
    fn swap_at_c_behaviour() {
        let cg = s_case();
        let g = &cg.graph;
        let c = cg.marked_vertex("c").unwrap();
        let mut same = 0;
        let mut moved = 0;
        for t in enumerate_spanning_trees(g, B).unwrap() {
            let bp = EdgeBipartition::from_tree(g, t);
            let Some(p) = marked_partition(g, bp.phi, &cg.marked) else {
                continue;
            };
            if p.num_parts() != 2 || part_with(&p, c).len() == 1 {
                continue;
            }
            let out = swap_at_two_valent(g, &bp, c).unwrap();
            assert_ne!(out, bp);
            assert_eq!(swap_at_two_valent(g, &out, c).unwrap(), bp);
            let q = marked_partition(g, out.phi, &cg.marked).unwrap();
            if q == p {
                same += 1;
            } else {
                assert_eq!(q, move_vertex(&p, c).unwrap());
                moved += 1;
            }
        }
        assert!(same > 0 && moved > 0);
    }

    #[test]
    fn sweeps_are_clean() {
        let s = s_case();
        for kind in [
            InvolutionKind::SSwapC,
            InvolutionKind::SBijection,
            InvolutionKind::SBijectionVariant,
        ] {
            let sw = sweep_involution(&s, kind, B).unwrap();
            assert!(sw.domain_size > 0, "{}", sw.name);
            assert!(sw.is_clean(), "{sw:#?}");
        }
        let r = r_case();
        for kind in [
            InvolutionKind::RSingleControl,
            InvolutionKind::RTwoControlSmallerOnly,
        ] {
            let sw = sweep_involution(&r, kind, B).unwrap();
            assert!(sw.domain_size > 0, "{}", sw.name);
            assert!(sw.is_clean(), "{sw:#?}");
        }
    }

    #[test]
    fn simultaneous_two_control_swap_can_close_a_cycle() {
        let r = r_case();
        let g = &r.graph;
        let sw = sweep_involution(&r, InvolutionKind::RTwoControl, B).unwrap();
        assert!(sw.parity_holds());
        assert!(sw.errors > 0);
        assert_eq!(sw.violations(), sw.errors);

        // Control vertices 4 and 6: n_4 = 3 lies on 6's side of t and
        // n_6 = 5 on 4's side.
        let mut psi = EdgeSet::EMPTY;
        for e in [0, 1, 2, 3, 6, 7, 11] {
            psi.insert(e);
        }
        let bp = EdgeBipartition::from_tree(g, psi);
        assert_eq!(
            find_two_control_vertices(g, &bp, &[1, 2, 5, 6, 7]).unwrap(),
            (4, 6)
        );
        assert!(matches!(
            r_case_involution(&r, &bp),
            Err(Error::Structure(_))
        ));
        let (out, trace) = r_case_involution_with(&r, &bp, BothIn::SmallerOnly).unwrap();
        assert_eq!(trace.control, vec![4, 6]);
        assert_eq!(
            r_case_involution_with(&r, &out, BothIn::SmallerOnly)
                .unwrap()
                .0,
            bp
        );
    }

    #[test]
    fn wrong_case_is_rejected() {
        assert!(sweep_involution(&s_case(), InvolutionKind::RTwoControl, B).is_err());
    }

    #[test]
    fn s_step_2ii_lands_in_a_new_singleton_set() {
        let cg = s_case();
        let g = &cg.graph;
        let c = cg.marked_vertex("c").unwrap();
        let mut seen = 0;
        for t in enumerate_spanning_trees(g, B).unwrap() {
            let bp = EdgeBipartition::from_tree(g, t);
            let Ok((out, trace)) = s_case_involution(&cg, &bp) else {
                continue;
            };
            if trace.case != SwapCase::SStep2ii {
                continue;
            }
            let before = marked_partition(g, bp.phi, &cg.marked).unwrap();
            let after = marked_partition(g, out.phi, &cg.marked).unwrap();
            let single = |p: &VertexPartition| p.parts().iter().find(|q| q.len() == 1).unwrap()[0];
            assert_ne!(single(&before), single(&after));
            assert!(!part_with(&after, c).contains(&single(&after)));
            seen += 1;
        }
        assert!(seen > 0);
    }

    #[test]
    fn general_swap_and_orbits() {
        let cg = case_graph(&octahedron(), 0, 2).unwrap();
        assert_eq!(cg.label.kind, CaseKind::T);
        let g = &cg.graph;
        let part =
            |a: &str, b: &str| VertexPartition::two(&cg.marked_set(a), &cg.marked_set(b)).unwrap();
        let p = part("a", "bcd");
        let q = part("ad", "bc");
        let b = cg.marked_vertex("b").unwrap();
        let prime = Prime::new(3).unwrap();
        let sw = sweep_orbits(g, &[&p, &q], 0, b, prime, B).unwrap();
        assert!(sw.is_clean(), "{sw:#?}");
        assert!(sw.orbit_sizes.keys().all(|&s| s == 3));

        let p2 = Prime::new(2).unwrap();
        let sw = sweep_orbits(g, &[&p], 0, b, p2, B).unwrap();
        assert!(sw.is_clean(), "{sw:#?}");
        assert!(sw.orbit_sizes.keys().all(|&s| s == 2));
    }

    #[test]
    fn swap_two_valent_rejects_bad_input() {
        let cg = case_graph(&octahedron(), 0, 2).unwrap();
        let g = &cg.graph;
        let a = cg.marked_vertex("a").unwrap();
        let b = cg.marked_vertex("b").unwrap();
        let p = VertexPartition::two(&cg.marked_set("a"), &cg.marked_set("bcd")).unwrap();
        let prime = Prime::new(3).unwrap();
        let mut all = Vec::new();
        for_each_general_partition(g, &[&p, &p], prime, B, |pi| all.push(pi)).unwrap();
        let pi = &all[0];
        assert!(swap_two_valent(g, pi, a, 0, 0).is_err());
        let ok = (0..2)
            .filter(|&j| swap_two_valent(g, pi, b, 0, j).is_ok())
            .count();
        assert!(ok >= 1);
        for j in 0..2 {
            if let Ok(next) = swap_two_valent(g, pi, b, 0, j) {
                assert_eq!(&swap_two_valent(g, &next, b, 0, j).unwrap(), pi);
            }
        }
    }

    #[test]
    fn moved_edges_cancel_double_moves() {
        let tr = SwapTrace {
            case: SwapCase::SStep2ii,
            swapped: vec![(1, 2), (2, 3)],
            control: vec![],
        };
        assert_eq!(tr.moved_edges(), BTreeSet::from([1, 3]));
    }
}
