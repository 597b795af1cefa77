//! Zero counting over F_p and the three routes to c₂.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{all_assignments, Prime, DEFAULT_EVAL_BUDGET};
use crate::graph::Graph;
use crate::partitions::{count_bipartitions, count_general_partitions, DEFAULT_ENUM_BUDGET};
use crate::polynomials::{denominator_d3, first_3valent, reduce_at_3valent, PolynomialHandle};

/// Points per parallel work unit in [`count_zeros`].
const CHUNK_LEN: u64 = 1 << 14;

/// Number of zeros of `h` in F_p^vars, by exhaustive evaluation.
///
/// The space is cut into contiguous lexicographic chunks; per-chunk counts
/// are summed in chunk order.
pub fn count_zeros(h: &PolynomialHandle, p: Prime, budget: u64) -> Result<u64> {
    let space = all_assignments(h.variables().len(), p, budget)?;
    let template = h.evaluator(p)?;
    let counts: Vec<u64> = space
        .chunks(CHUNK_LEN)
        .into_par_iter()
        .map_init(
            || template.clone(),
            |ev, range| {
                let mut it = space.iter_range(range);
                let mut zeros = 0u64;
                while let Some(vals) = it.next_ref() {
                    zeros += (ev.eval(vals) == 0) as u64;
                }
                zeros
            },
        )
        .collect();
    Ok(counts.into_iter().sum())
}

fn require_c2_graph(g: &Graph) -> Result<()> {
    if g.n() < 3 {
        return Err(Error::precondition(format!(
            "c2 needs at least 3 vertices, graph has {}",
            g.n()
        )));
    }
    g.require_connected()
}

/// `[Ψ_G]_p`, checked divisible by p².
pub fn kirchhoff_point_count(g: &Graph, p: Prime, budget: u64) -> Result<u64> {
    require_c2_graph(g)?;
    let count = count_zeros(&PolynomialHandle::kirchhoff(g)?, p, budget)?;
    let q2 = (p.get() as u64).pow(2);
    if count % q2 != 0 {
        return Err(Error::Internal(format!(
            "[Psi]_{} = {count} is not divisible by {q2}",
            p.get()
        )));
    }
    Ok(count)
}

/// c₂^{(p)}(G) = [Ψ_G]_p / p² mod p.
pub fn c2_direct(g: &Graph, p: Prime) -> Result<u32> {
    c2_direct_with_budget(g, p, DEFAULT_EVAL_BUDGET).map(|r| r.residue)
}

pub fn c2_direct_with_budget(g: &Graph, p: Prime, budget: u64) -> Result<RouteResult> {
    let count = kirchhoff_point_count(g, p, budget)?;
    let q = p.get() as u64;
    Ok(RouteResult {
        residue: ((count / (q * q)) % q) as u32,
        raw_count: count,
    })
}

/// The edges at the smallest 3-valent vertex, ordered so that the third edge
/// goes to the smallest neighbour.
pub fn default_denominator_edges(g: &Graph) -> Result<[usize; 3]> {
    let u = first_3valent(g).ok_or_else(|| Error::precondition("graph has no 3-valent vertex"))?;
    Ok(reduce_at_3valent(g, u)?.edges)
}

fn require_denom_graph(g: &Graph, edges: [usize; 3]) -> Result<()> {
    g.require_connected()?;
    if g.num_edges() < 3 {
        return Err(Error::precondition(format!(
            "three-edge denominator needs at least 3 edges, graph has {}",
            g.num_edges()
        )));
    }
    if 2 * g.loop_number() > g.num_edges() as i64 {
        return Err(Error::precondition(format!(
            "three-edge denominator needs 2l <= |E|, have l = {}, |E| = {}",
            g.loop_number(),
            g.num_edges()
        )));
    }
    for e in edges {
        g.edge(e)?;
    }
    if edges[0] == edges[1] || edges[1] == edges[2] || edges[0] == edges[2] {
        return Err(Error::precondition("denominator edges must be distinct"));
    }
    Ok(())
}

/// c₂^{(p)}(G) ≡ −[Ψ^{13,23}_G Ψ^{1,2}_{G,3}]_p mod p.
pub fn c2_denom(g: &Graph, edges: [usize; 3], p: Prime) -> Result<u32> {
    c2_denom_with_budget(g, edges, p, DEFAULT_EVAL_BUDGET).map(|r| r.residue)
}

pub fn c2_denom_with_budget(
    g: &Graph,
    edges: [usize; 3],
    p: Prime,
    budget: u64,
) -> Result<RouteResult> {
    require_denom_graph(g, edges)?;
    let [e1, e2, e3] = edges;
    let count = count_zeros(&denominator_d3(g, e1, e2, e3)?, p, budget)?;
    Ok(RouteResult {
        residue: p.neg(p.reduce(count)),
        raw_count: count,
    })
}

/// c₂^{(p)}(G − v) from tree/forest edge partitions of G − {u, v}, where u
/// is the smallest 3-valent vertex of G − v.
///
/// At p = 2 this is the parity of the spanning tree/2-forest bipartitions
/// compatible with {u₃}|{u₁,u₂}; for odd p it is minus the number of ordered
/// tuples of p − 1 trees and p − 1 compatible 2-forests using every edge
/// p − 1 times.
pub fn c2_partition(g: &Graph, v: usize, p: Prime) -> Result<u32> {
    c2_partition_with_budget(g, v, p, DEFAULT_ENUM_BUDGET).map(|r| r.residue)
}

pub fn c2_partition_with_budget(g: &Graph, v: usize, p: Prime, budget: u64) -> Result<RouteResult> {
    g.require_four_regular()?;
    g.require_connected()?;
    g.check_vertex(v)?;
    let gminus = g.delete_vertices(&[v])?.graph;
    if 2 * gminus.loop_number() != gminus.num_edges() as i64 {
        return Err(Error::Internal(
            "decompletion does not satisfy |E| = 2l".into(),
        ));
    }
    let u = first_3valent(&gminus)
        .ok_or_else(|| Error::precondition("decompletion has no 3-valent vertex"))?;
    let red = reduce_at_3valent(&gminus, u)?;
    let count = if p.get() == 2 {
        count_bipartitions(&red.graph, &red.partition, budget)?
    } else {
        let parts = vec![&red.partition; p.get() as usize - 1];
        count_general_partitions(&red.graph, &parts, p, budget)?
    };
    let residue = if p.get() == 2 {
        (count % 2) as u32
    } else {
        p.neg(p.reduce(count))
    };
    Ok(RouteResult {
        residue,
        raw_count: count,
    })
}

/// A residue in [0, p) and the count it was derived from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RouteResult {
    pub residue: u32,
    pub raw_count: u64,
}

/// Why a route produced no residue.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", content = "detail", rename_all = "snake_case")]
pub enum Skip {
    NotRequested,
    Budget(String),
    Precondition(String),
}

/// c₂ of one decompletion by every requested route that applies and fits
/// the budget.
#[derive(Clone, Debug, Serialize)]
pub struct C2Report {
    pub graph: String,
    pub prime: u32,
    pub route_direct: Option<RouteResult>,
    pub route_denom: Option<RouteResult>,
    pub route_partition: Option<RouteResult>,
    /// Why a route is missing.
    pub skipped: BTreeMap<String, Skip>,
    /// All computed routes give the same residue.
    pub agree: bool,
}

impl C2Report {
    /// The common residue, if at least one route ran and all agree.
    pub fn residue(&self) -> Option<u32> {
        if !self.agree {
            return None;
        }
        self.routes().next()
    }

    /// Number of routes that produced a residue.
    pub fn routes_ran(&self) -> usize {
        self.routes().count()
    }

    fn routes(&self) -> impl Iterator<Item = u32> + '_ {
        [self.route_direct, self.route_denom, self.route_partition]
            .into_iter()
            .flatten()
            .map(|r| r.residue)
    }

    /// Requested routes refused for budget.
    pub fn budget_refusals(&self) -> impl Iterator<Item = (&str, &str)> {
        self.skipped.iter().filter_map(|(k, v)| match v {
            Skip::Budget(m) => Some((k.as_str(), m.as_str())),
            _ => None,
        })
    }
}

/// Budgets for [`c2_report`].
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Budgets {
    pub eval: u64,
    pub enumeration: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            eval: DEFAULT_EVAL_BUDGET,
            enumeration: DEFAULT_ENUM_BUDGET,
        }
    }
}

/// Which c₂ routes to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Routes {
    pub direct: bool,
    pub denom: bool,
    pub partition: bool,
}

impl Routes {
    pub const ALL: Routes = Routes {
        direct: true,
        denom: true,
        partition: true,
    };
}

impl Default for Routes {
    fn default() -> Self {
        Routes::ALL
    }
}

fn route(
    name: &str,
    requested: bool,
    skipped: &mut BTreeMap<String, Skip>,
    run: impl FnOnce() -> Result<RouteResult>,
) -> Result<Option<RouteResult>> {
    if !requested {
        skipped.insert(name.to_string(), Skip::NotRequested);
        return Ok(None);
    }
    match run() {
        Ok(r) => Ok(Some(r)),
        Err(e @ Error::BudgetExceeded { .. }) => {
            skipped.insert(name.to_string(), Skip::Budget(e.to_string()));
            Ok(None)
        }
        Err(e @ Error::Precondition(_)) => {
            skipped.insert(name.to_string(), Skip::Precondition(e.to_string()));
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

/// Runs the requested routes on `gminus`. The partition route needs the
/// completion `(g, v)` with `gminus = g − v`. Routes that exceed their
/// budget or whose preconditions fail are recorded in `skipped`.
pub fn c2_report(
    id: &str,
    gminus: &Graph,
    completion: Option<(&Graph, usize)>,
    p: Prime,
    routes: Routes,
    budgets: Budgets,
) -> Result<C2Report> {
    let mut skipped = BTreeMap::new();
    let route_direct = route("direct", routes.direct, &mut skipped, || {
        c2_direct_with_budget(gminus, p, budgets.eval)
    })?;
    let route_denom = route("denom", routes.denom, &mut skipped, || {
        default_denominator_edges(gminus)
            .and_then(|e| c2_denom_with_budget(gminus, e, p, budgets.eval))
    })?;
    let route_partition = route(
        "partition",
        routes.partition,
        &mut skipped,
        || match completion {
            Some((g, v)) => c2_partition_with_budget(g, v, p, budgets.enumeration),
            None => Err(Error::precondition(
                "the partition route needs the completed graph",
            )),
        },
    )?;
    let mut report = C2Report {
        graph: id.to_string(),
        prime: p.get(),
        route_direct,
        route_denom,
        route_partition,
        skipped,
        agree: false,
    };
    let residues: Vec<u32> = report.routes().collect();
    report.agree = !residues.is_empty() && residues.windows(2).all(|w| w[0] == w[1]);
    Ok(report)
}

/// A dense polynomial over F_p in `num_vars` variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DensePoly {
    num_vars: usize,
    prime: Prime,
    /// Exponent vector to nonzero coefficient in [1, p).
    terms: BTreeMap<Vec<u32>, u32>,
}

impl DensePoly {
    pub fn zero(num_vars: usize, prime: Prime) -> Self {
        DensePoly {
            num_vars,
            prime,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(num_vars: usize, prime: Prime, c: i64) -> Self {
        Self::from_terms(num_vars, prime, &[(vec![0; num_vars], c)]).expect("well-formed constant")
    }

    pub fn from_terms(num_vars: usize, prime: Prime, terms: &[(Vec<u32>, i64)]) -> Result<Self> {
        let mut out = Self::zero(num_vars, prime);
        for (exps, c) in terms {
            if exps.len() != num_vars {
                return Err(Error::precondition(format!(
                    "exponent vector {exps:?} has length {}, expected {num_vars}",
                    exps.len()
                )));
            }
            out.add_term(exps.clone(), prime.reduce_signed(*c));
        }
        Ok(out)
    }

    fn add_term(&mut self, exps: Vec<u32>, c: u32) {
        let p = self.prime;
        let entry = self.terms.entry(exps).or_insert(0);
        *entry = p.add(*entry, c);
        if *entry == 0 {
            self.terms.retain(|_, c| *c != 0);
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, u32> {
        &self.terms
    }

    /// Total degree; the zero polynomial has degree 0.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn coefficient(&self, exps: &[u32]) -> u32 {
        self.terms.get(exps).copied().unwrap_or(0)
    }

    pub fn eval(&self, x: &[u32]) -> u32 {
        let p = self.prime;
        self.terms.iter().fold(0, |acc, (exps, &c)| {
            let mono = exps
                .iter()
                .zip(x)
                .fold(c, |m, (&k, &xi)| p.mul(m, p.pow(xi, k as u64)));
            p.add(acc, mono)
        })
    }

    pub fn mul(&self, other: &DensePoly) -> DensePoly {
        assert_eq!(self.num_vars, other.num_vars);
        let p = self.prime;
        let mut out = Self::zero(self.num_vars, p);
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, p.mul(ca, cb));
            }
        }
        out
    }

    /// Formal power; exponents are not reduced by x^p = x.
    pub fn pow(&self, k: u32) -> DensePoly {
        let mut out = Self::constant(self.num_vars, self.prime, 1);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Zeros in F_p^N by exhaustive evaluation.
    pub fn count_zeros(&self, budget: u64) -> Result<u64> {
        let space = all_assignments(self.num_vars, self.prime, budget)?;
        let mut it = space.iter();
        let mut zeros = 0;
        while let Some(x) = it.next_ref() {
            zeros += (self.eval(x) == 0) as u64;
        }
        Ok(zeros)
    }

    /// A polynomial of total degree exactly `num_vars` with uniformly random
    /// coefficients on all monomials of degree at most `num_vars`.
    pub fn random(num_vars: usize, prime: Prime, rng: &mut impl rand::Rng) -> Self {
        let d = num_vars as u32;
        let mut monomials = Vec::new();
        let mut exps = vec![0u32; num_vars];
        loop {
            if exps.iter().sum::<u32>() <= d {
                monomials.push(exps.clone());
            }
            let Some(i) = exps.iter().position(|&k| k < d) else {
                break;
            };
            exps[i] += 1;
            exps[..i].iter_mut().for_each(|k| *k = 0);
        }
        loop {
            let mut out = Self::zero(num_vars, prime);
            for m in &monomials {
                out.add_term(m.clone(), rng.gen_range(0..prime.get()));
            }
            if out.degree() == d {
                return out;
            }
        }
    }
}

/// Both sides of the Chevalley–Warning congruence for one polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CwCheck {
    /// Coefficient of x₁^{p−1}⋯x_N^{p−1} in F^{p−1}.
    pub coefficient: u32,
    /// [F]_p.
    pub zeros: u64,
    /// (−1)^{N−1} [F]_p mod p.
    pub expected: u32,
    pub holds: bool,
}

/// Checks coeff_{x^{p−1}}(F^{p−1}) ≡ (−1)^{N−1}[F]_p mod p by dense
/// expansion on one side and exhaustive counting on the other.
pub fn cw_coefficient_check(f: &DensePoly, p: Prime) -> Result<CwCheck> {
    if f.prime() != p {
        return Err(Error::precondition("polynomial is over a different prime"));
    }
    let n = f.num_vars();
    if f.degree() as usize != n {
        return Err(Error::DegreeMismatch {
            degree: f.degree(),
            vars: n,
        });
    }
    let q = p.get();
    let coefficient = f.pow(q - 1).coefficient(&vec![q - 1; n]);
    let zeros = f.count_zeros(DEFAULT_EVAL_BUDGET)?;
    let z = p.reduce(zeros);
    let expected = if n % 2 == 1 { z } else { p.neg(z) };
    Ok(CwCheck {
        coefficient,
        zeros,
        expected,
        holds: coefficient == expected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{decomplete, families::*};
    use rand::SeedableRng;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn triangle_counts() {
        let c3 = cycle(3);
        let h = PolynomialHandle::kirchhoff(&c3).unwrap();
        assert_eq!(count_zeros(&h, p(2), 1 << 20).unwrap(), 4);
        assert_eq!(count_zeros(&h, p(3), 1 << 20).unwrap(), 9);
        for q in [2, 3, 5] {
            assert_eq!(c2_direct(&c3, p(q)).unwrap(), 1);
        }
    }

    // Oracle: count zeros of Ψ_{K4} = sum over the 16 spanning trees of the
    // complementary monomials, written out from the tree list.
    #[test]
    fn k4_count_matches_tree_sum_oracle() {
        let k4 = complete(4);
        let trees = crate::partitions::enumerate_spanning_trees(&k4, 100).unwrap();
        assert_eq!(trees.len(), 16);
        let mut zeros = 0u64;
        for bits in 0u32..64 {
            let x: Vec<u32> = (0..6).map(|i| bits >> i & 1).collect();
            let val: u32 = trees
                .iter()
                .map(|t| {
                    (0..6)
                        .filter(|&e| !t.contains(e))
                        .map(|e| x[e])
                        .product::<u32>()
                })
                .sum();
            zeros += val.is_multiple_of(2) as u64;
        }
        let count = count_zeros(&PolynomialHandle::kirchhoff(&k4).unwrap(), p(2), 1 << 20).unwrap();
        assert_eq!(count, zeros);
        assert_eq!(count % 4, 0);
        assert_eq!(c2_direct(&k4, p(2)).unwrap() as u64, count / 4 % 2);
    }

    #[test]
    fn routes_agree_on_k5() {
        let k5 = complete(5);
        let k4 = decomplete(&k5, 0).unwrap().graph;
        for q in [2, 3] {
            let direct = c2_direct(&k4, p(q)).unwrap();
            let edges = default_denominator_edges(&k4).unwrap();
            assert_eq!(c2_denom(&k4, edges, p(q)).unwrap(), direct, "p = {q}");
            for v in 0..5 {
                assert_eq!(
                    c2_partition(&k5, v, p(q)).unwrap(),
                    direct,
                    "p = {q}, v = {v}"
                );
            }
        }
    }

    #[test]
    fn denom_is_independent_of_edge_choice() {
        let g = decomplete(&octahedron(), 0).unwrap().graph;
        let m = g.num_edges();
        let reference = c2_direct(&g, p(2)).unwrap();
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    if a != b && b != c && a != c {
                        assert_eq!(
                            c2_denom(&g, [a, b, c], p(2)).unwrap(),
                            reference,
                            "{a} {b} {c}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn octahedron_decompletions_agree() {
        let oct = octahedron();
        let values: Vec<u32> = (0..6)
            .map(|v| c2_partition(&oct, v, p(2)).unwrap())
            .collect();
        assert!(values.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn precondition_errors() {
        assert!(matches!(
            c2_denom(&path(3), [0, 1, 2], p(2)),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            c2_denom(&complete(4), [0, 1, 9], p(2)),
            Err(Error::InvalidEdge { .. })
        ));
        assert!(matches!(
            c2_denom(&complete(4), [0, 1, 0], p(2)),
            Err(Error::Precondition(_))
        ));
        assert!(c2_direct(&path(2), p(2)).is_err());
        assert!(matches!(
            c2_partition(&complete(4), 0, p(2)),
            Err(Error::NotFourRegular { .. })
        ));
        // K5 has 2l = 12 > 10 edges.
        assert!(matches!(
            c2_denom(&complete(5), [0, 1, 2], p(2)),
            Err(Error::Precondition(_))
        ));
        let k4 = complete(4);
        let big = count_zeros(&PolynomialHandle::kirchhoff(&k4).unwrap(), p(3), 10);
        assert!(matches!(big, Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn sign_blindness() {
        let g = decomplete(&octahedron(), 1).unwrap().graph;
        let h = PolynomialHandle::kirchhoff(&g).unwrap();
        assert_eq!(
            count_zeros(&h, p(3), 1 << 20).unwrap(),
            count_zeros(&-h.clone(), p(3), 1 << 20).unwrap()
        );
    }

    #[test]
    fn report_flags_agreement() {
        let k5 = complete(5);
        let k4 = decomplete(&k5, 2).unwrap().graph;
        let r = c2_report(
            "K5-2",
            &k4,
            Some((&k5, 2)),
            p(2),
            Routes::ALL,
            Budgets::default(),
        )
        .unwrap();
        assert!(r.agree && r.skipped.is_empty());
        assert_eq!(r.residue(), Some(c2_direct(&k4, p(2)).unwrap()));
        let tight = Budgets {
            eval: 4,
            enumeration: 10,
        };
        let r = c2_report("K5-2", &k4, None, p(2), Routes::ALL, tight).unwrap();
        assert_eq!(r.skipped.len(), 3);
        assert_eq!(r.budget_refusals().count(), 2);
        assert!(matches!(r.skipped["partition"], Skip::Precondition(_)));
        assert!(!r.agree);

        let only = Routes {
            direct: true,
            denom: false,
            partition: false,
        };
        let r = c2_report("K5-2", &k4, None, p(2), only, Budgets::default()).unwrap();
        assert_eq!(r.skipped["denom"], Skip::NotRequested);
        assert!(r.agree);
    }

    #[test]
    fn chevalley_warning_examples() {
        let x1x2 = DensePoly::from_terms(2, p(2), &[(vec![1, 1], 1)]).unwrap();
        let r = cw_coefficient_check(&x1x2, p(2)).unwrap();
        assert_eq!((r.coefficient, r.zeros, r.holds), (1, 3, true));

        let f = DensePoly::from_terms(
            2,
            p(3),
            &[(vec![1, 1], 1), (vec![1, 0], 1), (vec![0, 1], 1)],
        )
        .unwrap();
        let r = cw_coefficient_check(&f, p(3)).unwrap();
        assert_eq!((r.coefficient, r.zeros, r.holds), (1, 2, true));

        let x1 = DensePoly::from_terms(1, p(2), &[(vec![1], 1)]).unwrap();
        let r = cw_coefficient_check(&x1, p(2)).unwrap();
        assert_eq!((r.coefficient, r.zeros, r.holds), (1, 1, true));

        let low = DensePoly::from_terms(2, p(2), &[(vec![1, 0], 1)]).unwrap();
        assert!(matches!(
            cw_coefficient_check(&low, p(2)),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn random_polys_have_full_degree() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in 1..=3 {
            for q in [2, 3] {
                let f = DensePoly::random(n, p(q), &mut rng);
                assert_eq!(f.degree() as usize, n);
                assert!(cw_coefficient_check(&f, p(q)).unwrap().holds);
            }
        }
    }

    #[test]
    fn dense_arithmetic() {
        let x = DensePoly::from_terms(1, p(3), &[(vec![1], 1), (vec![0], 1)]).unwrap();
        let sq = x.pow(3);
        // (x + 1)^3 = x^3 + 1 over F_3.
        assert_eq!(sq.terms().len(), 2);
        assert_eq!(sq.coefficient(&[3]), 1);
        assert_eq!(sq.eval(&[2]), 0);
    }
}
