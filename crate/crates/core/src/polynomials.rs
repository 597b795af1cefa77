//! Pointwise evaluation of Kirchhoff, Dodgson and spanning-forest
//! polynomials. Polynomials are named by handles and never expanded.

use std::collections::BTreeMap;
use std::ops::{ControlFlow, Neg};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{det_in_place, Fp, Prime};
use crate::graph::{Graph, OrientationData};
use crate::partitions::{
    for_each_forest, for_each_spanning_tree, EdgeSet, VertexPartition, DEFAULT_ENUM_BUDGET,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyKind {
    Kirchhoff,
    /// Rows `rows` and columns `cols` removed, α_e = 0 for `zeroed`.
    Dodgson {
        rows: Vec<usize>,
        cols: Vec<usize>,
        zeroed: Vec<usize>,
    },
    SpanningForest(VertexPartition),
    Product(Vec<PolynomialHandle>),
}

/// A polynomial in the edge variables α_e of a graph.
///
/// Dodgson values carry the sign (−1)^{|V|−1+Σι_I+Σι_J} relative to the
/// minor of the expanded Laplacian; this matches Ψ_G exactly when I = J = ∅
/// and is otherwise one fixed sign per handle and orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialHandle {
    graph: Arc<Graph>,
    orientation: Arc<OrientationData>,
    kind: PolyKind,
    negated: bool,
}

fn check_edges(g: &Graph, edges: &[usize], what: &str) -> Result<()> {
    for &e in edges {
        g.edge(e)?;
    }
    let mut sorted = edges.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != edges.len() {
        return Err(Error::precondition(format!("{what} lists an edge twice")));
    }
    Ok(())
}

impl PolynomialHandle {
    fn build(g: &Graph, kind: PolyKind) -> Result<Self> {
        Ok(PolynomialHandle {
            orientation: Arc::new(OrientationData::standard(g)?),
            graph: Arc::new(g.clone()),
            kind,
            negated: false,
        })
    }

    pub fn kirchhoff(g: &Graph) -> Result<Self> {
        Self::build(g, PolyKind::Kirchhoff)
    }

    pub fn dodgson(g: &Graph, rows: &[usize], cols: &[usize], zeroed: &[usize]) -> Result<Self> {
        check_edges(g, rows, "I")?;
        check_edges(g, cols, "J")?;
        check_edges(g, zeroed, "K")?;
        Self::build(
            g,
            PolyKind::Dodgson {
                rows: rows.to_vec(),
                cols: cols.to_vec(),
                zeroed: zeroed.to_vec(),
            },
        )
    }

    pub fn forest(g: &Graph, p: &VertexPartition) -> Result<Self> {
        p.check_vertices(g)?;
        Self::build(g, PolyKind::SpanningForest(p.clone()))
    }

    /// Product of handles on the same graph.
    pub fn product(factors: Vec<PolynomialHandle>) -> Result<Self> {
        let first = factors
            .first()
            .ok_or_else(|| Error::precondition("empty product"))?;
        if factors.iter().any(|f| f.graph != first.graph) {
            return Err(Error::precondition(
                "product factors live on different graphs",
            ));
        }
        Ok(PolynomialHandle {
            graph: first.graph.clone(),
            orientation: first.orientation.clone(),
            kind: PolyKind::Product(factors),
            negated: false,
        })
    }

    /// Replaces the orientation and ι used to lay out the expanded Laplacian.
    pub fn with_orientation(mut self, orientation: OrientationData) -> Self {
        let o = Arc::new(orientation);
        if let PolyKind::Product(fs) = &mut self.kind {
            for f in fs.iter_mut() {
                *f = f.clone().with_orientation((*o).clone());
            }
        }
        self.orientation = o;
        self
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn kind(&self) -> &PolyKind {
        &self.kind
    }

    /// Edge ids appearing as variables, ascending.
    pub fn variables(&self) -> Vec<usize> {
        let m = self.graph.num_edges();
        match &self.kind {
            PolyKind::Kirchhoff | PolyKind::SpanningForest(_) => (0..m).collect(),
            PolyKind::Dodgson { rows, cols, zeroed } => (0..m)
                .filter(|e| !rows.contains(e) && !cols.contains(e) && !zeroed.contains(e))
                .collect(),
            PolyKind::Product(fs) => {
                let mut vs: Vec<usize> = fs.iter().flat_map(|f| f.variables()).collect();
                vs.sort_unstable();
                vs.dedup();
                vs
            }
        }
    }

    /// Compiles an evaluator taking values in [`Self::variables`] order.
    pub fn evaluator(&self, prime: Prime) -> Result<Evaluator> {
        let vars = self.variables();
        let mut position = vec![usize::MAX; self.graph.num_edges()];
        for (i, &e) in vars.iter().enumerate() {
            position[e] = i;
        }
        let node = self.compile(prime, &position)?;
        Ok(Evaluator { vars, prime, node })
    }

    fn compile(&self, prime: Prime, position: &[usize]) -> Result<EvalNode> {
        let g = &*self.graph;
        let node = match &self.kind {
            PolyKind::Kirchhoff => {
                g.require_connected()?;
                compile_det(g, &self.orientation, &[], &[], &[], prime, position)
            }
            PolyKind::Dodgson { rows, cols, zeroed } => {
                if rows.len() != cols.len() {
                    EvalNode::Zero
                } else {
                    compile_det(g, &self.orientation, rows, cols, zeroed, prime, position)
                }
            }
            PolyKind::SpanningForest(p) => {
                let mut complements = Vec::new();
                let full = EdgeSet::full(g.num_edges());
                for_each_forest(g, p, DEFAULT_ENUM_BUDGET, |f| {
                    complements.push(full.difference(f).iter().map(|e| position[e]).collect());
                    ControlFlow::Continue(())
                })?;
                EvalNode::Forest { complements }
            }
            PolyKind::Product(fs) => EvalNode::Product(
                fs.iter()
                    .map(|f| f.compile(prime, position))
                    .collect::<Result<_>>()?,
            ),
        };
        Ok(if self.negated {
            EvalNode::Negate(Box::new(node))
        } else {
            node
        })
    }

    pub fn eval(&self, a: &Assignment) -> Result<Fp> {
        let mut ev = self.evaluator(a.prime)?;
        let vars = self.variables();
        let keys: Vec<usize> = a.values.keys().copied().collect();
        if keys != vars {
            return Err(Error::precondition(format!(
                "assignment covers edges {keys:?}, polynomial variables are {vars:?}"
            )));
        }
        let values: Vec<u32> = vars.iter().map(|e| a.values[e]).collect();
        Ok(a.prime.element(ev.eval(&values) as u64))
    }
}

impl Neg for PolynomialHandle {
    type Output = PolynomialHandle;
    fn neg(mut self) -> PolynomialHandle {
        self.negated = !self.negated;
        self
    }
}

fn compile_det(
    g: &Graph,
    o: &OrientationData,
    rows: &[usize],
    cols: &[usize],
    zeroed: &[usize],
    prime: Prime,
    position: &[usize],
) -> EvalNode {
    #[derive(Clone, Copy, PartialEq)]
    enum Index {
        Edge(usize),
        Vertex(usize),
    }
    let vertices = (0..g.n())
        .filter(|&v| v != o.removed_vertex())
        .map(Index::Vertex);
    let all: Vec<Index> = o
        .edge_order()
        .iter()
        .map(|&e| Index::Edge(e))
        .chain(vertices)
        .collect();
    let row_idx: Vec<Index> = all
        .iter()
        .copied()
        .filter(|i| !matches!(i, Index::Edge(e) if rows.contains(e)))
        .collect();
    let col_idx: Vec<Index> = all
        .iter()
        .copied()
        .filter(|i| !matches!(i, Index::Edge(e) if cols.contains(e)))
        .collect();
    debug_assert_eq!(row_idx.len(), col_idx.len());
    let dim = row_idx.len();

    let incidence = |v: usize, e: usize| -> i64 {
        let (t, h) = (o.tail(e), o.head(e));
        (v == t) as i64 - (v == h) as i64
    };
    let mut template = vec![0u32; dim * dim];
    let mut slots = Vec::new();
    for (r, &ri) in row_idx.iter().enumerate() {
        for (c, &ci) in col_idx.iter().enumerate() {
            let k = r * dim + c;
            match (ri, ci) {
                (Index::Edge(e), Index::Edge(f)) if e == f && !zeroed.contains(&e) => {
                    slots.push((k, position[e]));
                }
                (Index::Edge(e), Index::Vertex(v)) | (Index::Vertex(v), Index::Edge(e)) => {
                    template[k] = prime.reduce_signed(incidence(v, e));
                }
                _ => {}
            }
        }
    }

    let ranks = o.edge_ranks();
    let exponent: usize = g.n() - 1 + rows.iter().chain(cols).map(|&e| ranks[e]).sum::<usize>();
    EvalNode::Det {
        dim,
        template,
        slots,
        negate: exponent % 2 == 1,
        scratch: Vec::with_capacity(dim * dim),
        nonzero: Vec::with_capacity(dim),
    }
}

#[derive(Clone)]
enum EvalNode {
    Zero,
    Det {
        dim: usize,
        template: Vec<u32>,
        /// (matrix cell, variable position) pairs for the diagonal α_e.
        slots: Vec<(usize, usize)>,
        negate: bool,
        scratch: Vec<u32>,
        nonzero: Vec<usize>,
    },
    Forest {
        /// Variable positions outside each compatible forest.
        complements: Vec<Vec<usize>>,
    },
    Product(Vec<EvalNode>),
    Negate(Box<EvalNode>),
}

impl EvalNode {
    fn eval(&mut self, prime: Prime, values: &[u32]) -> u32 {
        match self {
            EvalNode::Zero => 0,
            EvalNode::Det {
                dim,
                template,
                slots,
                negate,
                scratch,
                nonzero,
            } => {
                scratch.clear();
                scratch.extend_from_slice(template);
                for &(k, pos) in slots.iter() {
                    scratch[k] = values[pos];
                }
                let d = det_in_place(scratch, *dim, prime, nonzero);
                if *negate {
                    prime.neg(d)
                } else {
                    d
                }
            }
            EvalNode::Forest { complements } => complements.iter().fold(0, |acc, comp| {
                let term = comp
                    .iter()
                    .fold(1 % prime.get(), |t, &pos| prime.mul(t, values[pos]));
                prime.add(acc, term)
            }),
            EvalNode::Product(fs) => {
                let mut acc = 1 % prime.get();
                for f in fs.iter_mut() {
                    if acc == 0 {
                        break;
                    }
                    acc = prime.mul(acc, f.eval(prime, values));
                }
                acc
            }
            EvalNode::Negate(inner) => prime.neg(inner.eval(prime, values)),
        }
    }
}

/// A compiled polynomial. Holds scratch space, so each worker thread needs
/// its own evaluator; clone one compiled evaluator per thread.
#[derive(Clone)]
pub struct Evaluator {
    vars: Vec<usize>,
    prime: Prime,
    node: EvalNode,
}

impl Evaluator {
    pub fn variables(&self) -> &[usize] {
        &self.vars
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    /// Value at the point whose i-th coordinate is the value of variable
    /// `variables()[i]`.
    pub fn eval(&mut self, values: &[u32]) -> u32 {
        debug_assert_eq!(values.len(), self.vars.len());
        self.node.eval(self.prime, values)
    }
}

/// Values of the edge variables α_e over F_p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    prime: Prime,
    values: BTreeMap<usize, u32>,
}

impl Assignment {
    pub fn new(prime: Prime) -> Self {
        Assignment {
            prime,
            values: BTreeMap::new(),
        }
    }

    pub fn from_values(prime: Prime, edges: &[usize], values: &[u32]) -> Self {
        assert_eq!(edges.len(), values.len());
        Assignment {
            prime,
            values: edges
                .iter()
                .zip(values)
                .map(|(&e, &x)| (e, prime.reduce(x as u64)))
                .collect(),
        }
    }

    pub fn uniform(prime: Prime, edges: impl IntoIterator<Item = usize>, value: u64) -> Self {
        let x = prime.reduce(value);
        Assignment {
            prime,
            values: edges.into_iter().map(|e| (e, x)).collect(),
        }
    }

    pub fn set(&mut self, edge: usize, value: Fp) {
        assert_eq!(value.prime(), self.prime, "mixed moduli");
        self.values.insert(edge, value.residue());
    }

    pub fn get(&self, edge: usize) -> Option<Fp> {
        self.values
            .get(&edge)
            .map(|&x| self.prime.element(x as u64))
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn edges(&self) -> impl Iterator<Item = usize> + '_ {
        self.values.keys().copied()
    }

    /// The same values with every key passed through `map`.
    pub fn relabel(&self, map: impl Fn(usize) -> usize) -> Assignment {
        Assignment {
            prime: self.prime,
            values: self.values.iter().map(|(&e, &x)| (map(e), x)).collect(),
        }
    }

    /// Restriction to the given edges.
    pub fn restrict(&self, edges: &[usize]) -> Assignment {
        Assignment {
            prime: self.prime,
            values: edges
                .iter()
                .filter_map(|e| self.values.get(e).map(|&x| (*e, x)))
                .collect(),
        }
    }
}

/// Ψ_G(a) via the expanded Laplacian. Refuses disconnected graphs.
pub fn eval_kirchhoff(g: &Graph, a: &Assignment) -> Result<Fp> {
    PolynomialHandle::kirchhoff(g)?.eval(a)
}

/// Ψ_G(a) as the sum over spanning trees of the product of the variables
/// outside the tree.
pub fn eval_kirchhoff_by_trees(g: &Graph, a: &Assignment) -> Result<Fp> {
    let p = a.prime();
    let all: Vec<usize> = (0..g.num_edges()).collect();
    if a.edges().collect::<Vec<_>>() != all {
        return Err(Error::precondition("assignment must cover every edge"));
    }
    let mut total = 0u32;
    for_each_spanning_tree(g, DEFAULT_ENUM_BUDGET, |t| {
        let term = (0..g.num_edges())
            .filter(|&e| !t.contains(e))
            .fold(1 % p.get(), |acc, e| p.mul(acc, a.values[&e]));
        total = p.add(total, term);
        ControlFlow::Continue(())
    })?;
    Ok(p.element(total as u64))
}

pub fn eval_dodgson(
    g: &Graph,
    rows: &[usize],
    cols: &[usize],
    zeroed: &[usize],
    a: &Assignment,
) -> Result<Fp> {
    PolynomialHandle::dodgson(g, rows, cols, zeroed)?.eval(a)
}

pub fn eval_forest(g: &Graph, p: &VertexPartition, a: &Assignment) -> Result<Fp> {
    PolynomialHandle::forest(g, p)?.eval(a)
}

/// D³_G(1,2,3) = Ψ^{13,23} · Ψ^{1,2}_3, up to sign.
pub fn denominator_d3(g: &Graph, e1: usize, e2: usize, e3: usize) -> Result<PolynomialHandle> {
    check_edges(g, &[e1, e2, e3], "the denominator edge triple")?;
    PolynomialHandle::product(vec![
        PolynomialHandle::dodgson(g, &[e1, e3], &[e2, e3], &[])?,
        PolynomialHandle::dodgson(g, &[e1], &[e2], &[e3])?,
    ])
}

/// Result of reducing a decompletion at a 3-valent vertex u.
#[derive(Clone, Debug)]
pub struct Reduction {
    /// (G − v) − u, renumbered.
    pub graph: Graph,
    /// {u₃} | {u₁, u₂} in local vertex ids.
    pub partition: VertexPartition,
    pub u: usize,
    /// u₁, u₂, u₃ in ids of the input graph; u₃ is the smallest neighbour.
    pub neighbours: [usize; 3],
    /// Edges u–u₁, u–u₂, u–u₃ in ids of the input graph.
    pub edges: [usize; 3],
    /// Local edge id to input edge id.
    pub edge_map: Vec<usize>,
    /// Input vertex to local vertex.
    pub vertex_map: Vec<Option<usize>>,
}

pub fn reduce_at_3valent(gminus: &Graph, u: usize) -> Result<Reduction> {
    gminus.check_vertex(u)?;
    let inc = gminus.incident_edges(u);
    if gminus.degree(u) != 3 || inc.len() != 3 {
        return Err(Error::precondition(format!(
            "vertex {u} has degree {}, reduction needs a 3-valent vertex",
            gminus.degree(u)
        )));
    }
    let mut pairs: Vec<(usize, usize)> = inc.iter().map(|&e| (gminus.other_end(e, u), e)).collect();
    pairs.sort_unstable();
    if pairs[0].0 == pairs[1].0 || pairs[1].0 == pairs[2].0 {
        return Err(Error::precondition(format!(
            "vertex {u} has parallel edges; reduction needs three distinct neighbours"
        )));
    }
    let (u3, e3) = pairs[0];
    let (u1, e1) = pairs[1];
    let (u2, e2) = pairs[2];
    let d = gminus.delete_vertices(&[u])?;
    let local = |x: usize| d.vertex_map[x].expect("neighbour survives");
    Ok(Reduction {
        partition: VertexPartition::two(&[local(u3)], &[local(u1), local(u2)])?,
        graph: d.graph,
        u,
        neighbours: [u1, u2, u3],
        edges: [e1, e2, e3],
        edge_map: d.edge_map,
        vertex_map: d.vertex_map,
    })
}

/// The smallest 3-valent vertex, the default vertex to reduce at.
pub fn first_3valent(g: &Graph) -> Option<usize> {
    (0..g.n()).find(|&v| g.degree(v) == 3 && g.incident_edges(v).len() == 3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::all_assignments;
    use crate::graph::{decomplete, families::*};

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn all_edges(g: &Graph) -> Vec<usize> {
        (0..g.num_edges()).collect()
    }

    #[test]
    fn kirchhoff_examples() {
        let c3 = cycle(3);
        assert_eq!(
            eval_kirchhoff(&c3, &Assignment::uniform(p(5), all_edges(&c3), 1))
                .unwrap()
                .residue(),
            3
        );
        let p3 = path(3);
        for x in 0..5 {
            let a = Assignment::uniform(p(5), all_edges(&p3), x);
            assert_eq!(eval_kirchhoff(&p3, &a).unwrap().residue(), 1);
        }
        let k4 = complete(4);
        assert_eq!(
            eval_kirchhoff(&k4, &Assignment::uniform(p(7), all_edges(&k4), 1))
                .unwrap()
                .residue(),
            2
        );
        let single = path(2);
        assert_eq!(
            eval_kirchhoff(&single, &Assignment::uniform(p(3), [0], 2))
                .unwrap()
                .residue(),
            1
        );

        let split = Graph::new(3, vec![(0, 1)]).unwrap();
        assert!(matches!(
            eval_kirchhoff(&split, &Assignment::uniform(p(3), [0], 1)),
            Err(Error::Disconnected)
        ));
    }

    #[test]
    fn tree_sum_examples() {
        let c3 = cycle(3);
        let a = Assignment::from_values(p(2), &[0, 1, 2], &[1, 1, 0]);
        assert_eq!(eval_kirchhoff_by_trees(&c3, &a).unwrap().residue(), 0);
        let single = path(2);
        assert_eq!(
            eval_kirchhoff_by_trees(&single, &Assignment::uniform(p(5), [0], 3))
                .unwrap()
                .residue(),
            1
        );
    }

    #[test]
    fn matrix_tree_agrees_with_tree_sum_exhaustively() {
        let graphs = [
            cycle(3),
            complete(4),
            decomplete(&complete(5), 0).unwrap().graph,
            wheel(4),
            Graph::new(3, vec![(0, 1), (0, 1), (1, 2), (2, 2)]).unwrap(),
        ];
        for g in &graphs {
            for q in [2, 3] {
                let h = PolynomialHandle::kirchhoff(g).unwrap();
                let mut ev = h.evaluator(p(q)).unwrap();
                let space = all_assignments(g.num_edges(), p(q), u64::MAX).unwrap();
                let mut it = space.iter();
                while let Some(vals) = it.next_ref() {
                    let a = Assignment::from_values(p(q), &all_edges(g), vals);
                    assert_eq!(
                        ev.eval(vals),
                        eval_kirchhoff_by_trees(g, &a).unwrap().residue()
                    );
                }
            }
        }
    }

    #[test]
    fn dodgson_examples() {
        let k4 = complete(4);
        let a = Assignment::from_values(p(5), &all_edges(&k4), &[1, 2, 3, 4, 0, 2]);
        assert_eq!(
            eval_dodgson(&k4, &[], &[], &[], &a).unwrap(),
            eval_kirchhoff(&k4, &a).unwrap()
        );
        let b = a.restrict(&[2, 3, 4, 5]);
        assert!(
            eval_dodgson(&k4, &[0, 1], &[0], &[], &b.restrict(&[2, 3, 4, 5]))
                .unwrap()
                .is_zero()
        );
        assert!(eval_dodgson(&k4, &[9], &[0], &[], &b).is_err());
    }

    #[test]
    fn forest_examples() {
        let c3 = cycle(3);
        let ones = Assignment::uniform(p(5), all_edges(&c3), 1);
        // {0} | {1,2}: the single forest is the edge 1-2 alone.
        let pp = VertexPartition::two(&[0], &[1, 2]).unwrap();
        assert_eq!(eval_forest(&c3, &pp, &ones).unwrap().residue(), 1);
        let whole = VertexPartition::new(vec![vec![0, 1, 2]]).unwrap();
        let a = Assignment::from_values(p(5), &[0, 1, 2], &[2, 3, 4]);
        assert_eq!(
            eval_forest(&c3, &whole, &a).unwrap(),
            eval_kirchhoff(&c3, &a).unwrap()
        );
        let split = Graph::new(4, vec![(0, 1), (2, 3)]).unwrap();
        let across = VertexPartition::new(vec![vec![0, 2]]).unwrap();
        assert!(
            eval_forest(&split, &across, &Assignment::uniform(p(5), [0, 1], 1))
                .unwrap()
                .is_zero()
        );
    }

    #[test]
    fn d3_has_three_fewer_variables() {
        let k4 = complete(4);
        let inc = k4.incident_edges(0).to_vec();
        let d3 = denominator_d3(&k4, inc[0], inc[1], inc[2]).unwrap();
        assert_eq!(d3.variables().len(), 3);
        assert!(denominator_d3(&k4, 0, 0, 1).is_err());
    }

    #[test]
    fn reduction_examples() {
        let k4 = decomplete(&complete(5), 0).unwrap().graph;
        let r = reduce_at_3valent(&k4, 0).unwrap();
        assert_eq!((r.graph.n(), r.graph.num_edges()), (3, 3));
        assert_eq!(r.neighbours, [2, 3, 1]);
        assert_eq!(r.partition, VertexPartition::two(&[0], &[1, 2]).unwrap());

        let oct = decomplete(&octahedron(), 0).unwrap().graph;
        let u = first_3valent(&oct).unwrap();
        let r = reduce_at_3valent(&oct, u).unwrap();
        assert_eq!(r.graph.n(), 4);

        let k5 = complete(5);
        assert!(reduce_at_3valent(&k5, 0).is_err());
    }

    #[test]
    fn negation_flips_values() {
        let k4 = complete(4);
        let h = PolynomialHandle::kirchhoff(&k4).unwrap();
        let a = Assignment::from_values(p(7), &all_edges(&k4), &[1, 2, 3, 4, 5, 6]);
        assert_eq!((-h.clone()).eval(&a).unwrap(), -h.eval(&a).unwrap());
    }
}
