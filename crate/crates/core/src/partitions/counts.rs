//! The counted sets of the T, S and R cases and their congruences.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use serde::Serialize;

use super::enumerate::{for_each_spanning_tree, forest_components};
use super::general::count_general_partitions;
use super::{EdgeBipartition, VertexPartition};
use crate::error::{Error, Result};
use crate::field::Prime;
use crate::graph::{CaseGraph, CaseKind, Graph};

/// Tree/2-forest complementary pairs of a graph, grouped by how the 2-forest
/// splits a list of marked vertices.
///
/// A split is a bitmask over positions in `marked` giving the side that
/// contains `marked[0]`. Pairs whose 2-forest keeps every marked vertex on
/// one side are not recorded.
#[derive(Clone, Debug, Default)]
pub struct SplitCounts {
    pub marked: Vec<usize>,
    pub by_split: BTreeMap<u32, u64>,
    pub trees: u64,
}

impl SplitCounts {
    fn mask_of(&self, vertices: &[usize]) -> u32 {
        vertices
            .iter()
            .map(|v| {
                let i = self
                    .marked
                    .iter()
                    .position(|m| m == v)
                    .expect("vertex is marked");
                1u32 << i
            })
            .fold(0, |a, b| a | b)
    }

    /// Number of pairs whose 2-forest separates `a` from `b`; marked
    /// vertices outside `a ∪ b` may fall on either side.
    pub fn count(&self, a: &[usize], b: &[usize]) -> u64 {
        let (ma, mb) = (self.mask_of(a), self.mask_of(b));
        self.by_split
            .iter()
            .filter(|&(&s, _)| (ma & !s == 0 && mb & s == 0) || (mb & !s == 0 && ma & s == 0))
            .map(|(_, &c)| c)
            .sum()
    }
}

/// The split induced on `marked` by the 2-forest complement of a tree, or
/// `None` when the complement is not a 2-forest separating the marked set.
pub(crate) fn split_of(g: &Graph, marked: &[usize], bp: &EdgeBipartition) -> Option<u32> {
    let (comp, count) = forest_components(g, bp.phi)?;
    if count != 2 {
        return None;
    }
    let side = comp[marked[0]];
    let mask = marked
        .iter()
        .enumerate()
        .filter(|&(_, &v)| comp[v] == side)
        .fold(0u32, |m, (i, _)| m | 1 << i);
    (mask != (1u32 << marked.len()) - 1).then_some(mask)
}

/// Sweeps spanning trees once and tallies complementary 2-forests by split.
pub fn split_counts(g: &Graph, marked: &[usize], budget: u64) -> Result<SplitCounts> {
    if marked.is_empty() || marked.len() > 31 {
        return Err(Error::precondition("need between 1 and 31 marked vertices"));
    }
    for &v in marked {
        g.check_vertex(v)?;
    }
    let mut out = SplitCounts {
        marked: marked.to_vec(),
        ..Default::default()
    };
    out.trees = for_each_spanning_tree(g, budget, |t| {
        let bp = EdgeBipartition::from_tree(g, t);
        if let Some(s) = split_of(g, marked, &bp) {
            *out.by_split.entry(s).or_default() += 1;
        }
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// One congruence `Σ coeff · count ≡ 0 (mod modulus)`.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub terms: Vec<(i64, String)>,
    pub residue: u32,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CountReport {
    pub case: CaseKind,
    pub modulus: u32,
    pub counts: BTreeMap<String, u64>,
    /// c₂ of G − v and G − w as predicted by the counts.
    pub c2_v: u32,
    pub c2_w: u32,
    pub identities: Vec<IdentityCheck>,
}

impl CountReport {
    fn new(case: CaseKind, modulus: u32) -> Self {
        CountReport {
            case,
            modulus,
            counts: BTreeMap::new(),
            c2_v: 0,
            c2_w: 0,
            identities: Vec::new(),
        }
    }

    pub fn count(&self, label: &str) -> u64 {
        self.counts[label]
    }

    fn residue(&self, terms: &[(i64, String)]) -> u32 {
        let m = self.modulus as i128;
        let total: i128 = terms
            .iter()
            .map(|(c, l)| *c as i128 * self.counts[l] as i128)
            .sum();
        total.rem_euclid(m) as u32
    }

    fn check(&mut self, name: &str, terms: Vec<(i64, String)>) {
        let residue = self.residue(&terms);
        self.identities.push(IdentityCheck {
            name: name.to_string(),
            terms,
            residue,
            holds: residue == 0,
        });
    }

    pub fn identity(&self, name: &str) -> Option<&IdentityCheck> {
        self.identities.iter().find(|i| i.name == name)
    }

    pub fn all_hold(&self) -> bool {
        self.identities.iter().all(|i| i.holds)
    }
}

/// Label such as `{c}|{a,b}` for the partition given by two letter strings.
pub(crate) fn label(a: &str, b: &str) -> String {
    let join = |s: &str| s.chars().map(String::from).collect::<Vec<_>>().join(",");
    format!("{{{}}}|{{{}}}", join(a), join(b))
}

fn ones(labels: &[(&str, &str)]) -> Vec<(i64, String)> {
    labels.iter().map(|&(a, b)| (1, label(a, b))).collect()
}

fn require_case(cg: &CaseGraph, kind: CaseKind) -> Result<()> {
    if cg.label.kind != kind {
        return Err(Error::precondition(format!(
            "expected a {kind} pair, got a {} pair",
            cg.label.kind
        )));
    }
    Ok(())
}

fn fill(report: &mut CountReport, sc: &SplitCounts, cg: &CaseGraph, labels: &[(&str, &str)]) {
    for &(a, b) in labels {
        let n = sc.count(&cg.marked_set(a), &cg.marked_set(b));
        report.counts.insert(label(a, b), n);
    }
}

const S_PARTIAL: [(&str, &str); 2] = [("c", "ab"), ("c", "de")];
pub(crate) const S_SWAPC: [(&str, &str); 2] = [("abc", "de"), ("ab", "cde")];
pub(crate) const S_BIJECTION: [(&str, &str); 4] =
    [("a", "bcde"), ("b", "acde"), ("d", "abce"), ("e", "abcd")];
pub(crate) const S_BIJ_COR: [(&str, &str); 4] =
    [("ac", "bde"), ("bc", "ade"), ("cd", "abe"), ("ce", "abd")];

/// Counts s_P on S = G − {v, w} for an S-case pair, with the congruences:
/// the six-term difference formula, the swap-around-c pairing, and the two
/// control-vertex involutions.
pub fn s_case_counts(cg: &CaseGraph, budget: u64) -> Result<CountReport> {
    require_case(cg, CaseKind::S)?;
    let sc = split_counts(&cg.graph, &cg.marked, budget)?;
    let mut r = CountReport::new(CaseKind::S, 2);
    for set in [&S_PARTIAL[..], &S_SWAPC, &S_BIJECTION, &S_BIJ_COR] {
        fill(&mut r, &sc, cg, set);
    }
    r.c2_v = (r.count(&label("c", "ab")) % 2) as u32;
    r.c2_w = (r.count(&label("c", "de")) % 2) as u32;

    let six: Vec<(i64, String)> = S_SWAPC
        .iter()
        .chain(&S_BIJ_COR)
        .map(|&(a, b)| (-1, label(a, b)))
        .collect();
    r.check(
        "difference formula",
        [vec![(1, label("c", "ab")), (-1, label("c", "de"))], six].concat(),
    );
    r.check("swap around c", ones(&S_SWAPC));
    r.check("control vertex with c", ones(&S_BIJECTION));
    r.check("control vertex with c, 2|3 sets", ones(&S_BIJ_COR));
    r.check(
        "completion",
        vec![(1, label("c", "ab")), (-1, label("c", "de"))],
    );
    Ok(r)
}

const R_V: [(&str, &str); 3] = [("a", "bc"), ("b", "ac"), ("c", "ab")];
const R_W: [(&str, &str); 3] = [("d", "ef"), ("e", "df"), ("f", "de")];
pub(crate) const R_SINGLE: [(&str, &str); 6] = [
    ("ab", "cdef"),
    ("ac", "bdef"),
    ("bc", "adef"),
    ("de", "abcf"),
    ("df", "abce"),
    ("ef", "abcd"),
];
pub(crate) const R_DOUBLE: [(&str, &str); 6] = [
    ("a", "bcdef"),
    ("b", "acdef"),
    ("c", "abdef"),
    ("d", "abcef"),
    ("e", "abcdf"),
    ("f", "abcde"),
];

/// Counts r_P on R = G − {v, w} for an R-case pair, with the twelve-term
/// difference formula and the two control-vertex involution congruences.
pub fn r_case_counts(cg: &CaseGraph, budget: u64) -> Result<CountReport> {
    require_case(cg, CaseKind::R)?;
    let sc = split_counts(&cg.graph, &cg.marked, budget)?;
    let mut r = CountReport::new(CaseKind::R, 2);
    for set in [&R_V[..], &R_W, &R_SINGLE, &R_DOUBLE] {
        fill(&mut r, &sc, cg, set);
    }
    let sum = |r: &CountReport, set: &[(&str, &str)]| {
        set.iter().map(|&(a, b)| r.count(&label(a, b))).sum::<u64>()
    };
    r.c2_v = (sum(&r, &R_V) % 2) as u32;
    r.c2_w = (sum(&r, &R_W) % 2) as u32;

    let v_terms = ones(&R_V);
    let w_terms: Vec<_> = R_W.iter().map(|&(a, b)| (-1, label(a, b))).collect();
    let twelve: Vec<_> = R_SINGLE
        .iter()
        .chain(&R_DOUBLE)
        .map(|&(a, b)| (-1, label(a, b)))
        .collect();
    r.check(
        "difference formula",
        [v_terms.clone(), w_terms.clone(), twelve].concat(),
    );
    r.check("single control vertex", ones(&R_SINGLE));
    r.check("two control vertices", ones(&R_DOUBLE));
    r.check("completion", [v_terms, w_terms].concat());
    Ok(r)
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Label of t with `l` copies of `p` followed by copies of `Q`.
fn t_label(p: &str, l: usize, total: usize) -> String {
    let parts: Vec<&str> = std::iter::repeat_n(p, l)
        .chain(std::iter::repeat_n("Q", total - l))
        .collect();
    format!("t[{}]", parts.join(","))
}

/// Counts t_{P₁,…,P_{p−1}} on T = G − {v, w} for a T-case pair with
/// P = {a}|{b,c,d}, P′ = {d}|{a,b,c}, Q = {a,d}|{b,c} and
/// Pᵇ = {a,b}|{c,d}. Checks the binomial formulas for c₂ of both
/// decompletions, the swap corollary t_{P^ℓ Q…} ≡ t_{P′^ℓ Q…}, and the
/// alternating chains through Pᵇ.
pub fn t_case_counts(cg: &CaseGraph, prime: Prime, budget: u64) -> Result<CountReport> {
    require_case(cg, CaseKind::T)?;
    let g = &cg.graph;
    let part = |a: &str, b: &str| VertexPartition::two(&cg.marked_set(a), &cg.marked_set(b));
    let p = part("a", "bcd")?;
    let p_prime = part("d", "abc")?;
    let q = part("ad", "bc")?;
    let p_b = part("ab", "cd")?;
    let k = prime.get() as usize - 1;
    let mut r = CountReport::new(CaseKind::T, prime.get());

    for (name, base) in [("P", &p), ("P'", &p_prime), ("Pb", &p_b)] {
        for l in 0..=k {
            let key = t_label(name, l, k);
            if l == 0 && r.counts.contains_key(&key) {
                continue;
            }
            let parts: Vec<&VertexPartition> = std::iter::repeat_n(base, l)
                .chain(std::iter::repeat_n(&q, k - l))
                .collect();
            let n = count_general_partitions(g, &parts, prime, budget)?;
            r.counts.insert(t_label(name, l, k), n);
        }
    }

    let modulus = prime.get() as u64;
    let weighted = |r: &CountReport, name: &str| -> u32 {
        let s: u64 = (0..=k)
            .map(|l| {
                binomial(k as u64, l as u64) % modulus * (r.count(&t_label(name, l, k)) % modulus)
                    % modulus
            })
            .sum();
        ((modulus - s % modulus) % modulus) as u32
    };
    r.c2_v = weighted(&r, "P");
    r.c2_w = weighted(&r, "P'");

    let diff: Vec<(i64, String)> = (1..=k)
        .flat_map(|l| {
            let c = binomial(k as u64, l as u64) as i64;
            [(c, t_label("P", l, k)), (-c, t_label("P'", l, k))]
        })
        .collect();
    r.check("difference formula", diff);
    for l in 1..=k {
        r.check(
            &format!("swap corollary l={l}"),
            vec![(1, t_label("P", l, k)), (-1, t_label("P'", l, k))],
        );
        let sign = if l % 2 == 0 { -1 } else { 1 };
        r.check(
            &format!("chain through b l={l}"),
            vec![(1, t_label("P", l, k)), (sign, t_label("Pb", l, k))],
        );
        r.check(
            &format!("chain through c l={l}"),
            vec![(1, t_label("P'", l, k)), (sign, t_label("Pb", l, k))],
        );
    }
    let completion = (r.c2_v as i64 - r.c2_w as i64).rem_euclid(modulus as i64) as u32;
    r.identities.push(IdentityCheck {
        name: "completion".into(),
        terms: Vec::new(),
        residue: completion,
        holds: completion == 0,
    });
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{case_graph, families::*};
    use crate::partitions::{count_bipartitions, DEFAULT_ENUM_BUDGET as B};

    #[test]
    fn split_counts_agree_with_direct_counts() {
        let cg = case_graph(&circulant(7, &[1, 2]), 0, 2).unwrap();
        let sc = split_counts(&cg.graph, &cg.marked, B).unwrap();
        for (a, b) in [("c", "ab"), ("c", "de"), ("ab", "cde"), ("a", "bcde")] {
            let direct = count_bipartitions(
                &cg.graph,
                &VertexPartition::two(&cg.marked_set(a), &cg.marked_set(b)).unwrap(),
                B,
            )
            .unwrap();
            assert_eq!(
                sc.count(&cg.marked_set(a), &cg.marked_set(b)),
                direct,
                "{a}|{b}"
            );
        }
    }

    #[test]
    fn s_case_identities_hold_on_c7() {
        let cg = case_graph(&circulant(7, &[1, 2]), 0, 2).unwrap();
        let r = s_case_counts(&cg, B).unwrap();
        assert!(r.all_hold(), "{:#?}", r.identities);
    }

    #[test]
    fn wrong_case_is_rejected() {
        let cg = case_graph(&octahedron(), 0, 2).unwrap();
        assert!(s_case_counts(&cg, B).is_err());
        assert!(r_case_counts(&cg, B).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(2, 1), 2);
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(4, 0), 1);
    }

    #[test]
    fn t_labels() {
        assert_eq!(t_label("P", 1, 2), "t[P,Q]");
        assert_eq!(t_label("P'", 0, 2), "t[Q,Q]");
    }
}
