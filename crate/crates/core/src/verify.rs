//! Corpus ingestion and the batch checks behind the command line: c₂ by
//! every route, equality of c₂ across all decompletions, and exhaustive
//! involution and orbit sweeps on the case graphs of adjacent pairs.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Prime;
use crate::graph::{
    case_graph, classify_adjacent_pair, emit_graph6, parse_edge_list, parse_graph6, CaseKind,
    CaseLabel, Graph,
};
use crate::identities::IdentityReport;
use crate::involutions::{
    sweep_involution, sweep_orbits, InvolutionKind, InvolutionSweep, OrbitSweep,
};
use crate::partitions::{
    r_case_counts, s_case_counts, t_case_counts, CountReport, VertexPartition,
};
use crate::point_count::{c2_report, Budgets, C2Report, RouteResult, Routes, Skip};

#[derive(Clone, Debug, Serialize)]
pub struct VerifyConfig {
    pub inputs: Vec<PathBuf>,
    pub primes: Vec<u32>,
    pub routes: Routes,
    pub budgets: Budgets,
    /// Also count the case partitions of every adjacent pair and check
    /// their congruences.
    pub case_counts: bool,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            inputs: Vec::new(),
            primes: vec![2],
            routes: Routes::ALL,
            budgets: Budgets::default(),
            case_counts: true,
            seed: 0,
        }
    }
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<Vec<Prime>> {
        if self.budgets.eval == 0 || self.budgets.enumeration == 0 {
            return Err(Error::precondition("budgets must be positive"));
        }
        if self.primes.is_empty() {
            return Err(Error::precondition("no primes given"));
        }
        self.primes.iter().map(|&p| Prime::new(p as u64)).collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusEntry {
    pub id: String,
    #[serde(skip)]
    pub graph: Graph,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Corpus {
    pub entries: Vec<CorpusEntry>,
    /// Malformed entries that were skipped.
    pub warnings: Vec<String>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

/// Loads a corpus: a directory of JSON edge lists, a single JSON edge list,
/// or a text file with one graph6 string per line (blank lines and lines
/// starting with `#` are ignored). Malformed entries become warnings.
pub fn load_corpus(path: &Path) -> Result<Corpus> {
    let mut corpus = Corpus::default();
    if path.is_dir() {
        let mut files: Vec<PathBuf> = fs::read_dir(path)
            .map_err(|source| Error::Io {
                path: path.display().to_string(),
                source,
            })?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        files.sort();
        for f in files {
            match read(&f).and_then(|text| parse_edge_list(&text)) {
                Ok(graph) => corpus.entries.push(CorpusEntry {
                    id: stem(&f),
                    graph,
                }),
                Err(e) => corpus.warnings.push(format!("{}: {e}", f.display())),
            }
        }
        return Ok(corpus);
    }
    let text = read(path)?;
    if path.extension().is_some_and(|x| x == "json") {
        let graph = parse_edge_list(&text)?;
        corpus.entries.push(CorpusEntry {
            id: stem(path),
            graph,
        });
        return Ok(corpus);
    }
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match parse_graph6(line) {
            Ok(graph) => corpus.entries.push(CorpusEntry {
                id: line.to_string(),
                graph,
            }),
            Err(e) => corpus
                .warnings
                .push(format!("{}:{}: {e}", path.display(), lineno + 1)),
        }
    }
    Ok(corpus)
}

/// Loads exactly one graph from a graph6 or JSON file.
pub fn load_graph(path: &Path) -> Result<CorpusEntry> {
    let text = read(path)?;
    if path.extension().is_some_and(|x| x == "json") {
        return Ok(CorpusEntry {
            id: stem(path),
            graph: parse_edge_list(&text)?,
        });
    }
    let lines: Vec<&str> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect();
    match lines[..] {
        [line] => Ok(CorpusEntry {
            id: line.to_string(),
            graph: parse_graph6(line)?,
        }),
        _ => Err(Error::precondition(format!(
            "{} holds {} graphs, expected one",
            path.display(),
            lines.len()
        ))),
    }
}

/// Residues of one decompletion, one report per prime.
#[derive(Clone, Debug, Serialize)]
pub struct VertexC2 {
    pub vertex: usize,
    pub reports: Vec<C2Report>,
}

/// How strongly a completion verdict is backed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Backing {
    /// Covered by a proven statement for this prime and case structure.
    Theorem,
    Empirical,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub prime: u32,
    /// Per vertex, `None` where no route finished or routes disagree.
    pub residues: Vec<Option<u32>>,
    /// All residues present and equal.
    pub holds: bool,
    pub backing: Backing,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairCounts {
    pub v: usize,
    pub w: usize,
    pub prime: u32,
    pub counts: CountReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphReport {
    pub id: String,
    pub graph6: Option<String>,
    pub pairs: Vec<CaseLabel>,
    pub vertices: Vec<VertexC2>,
    pub verdicts: Vec<Verdict>,
    pub pair_counts: Vec<PairCounts>,
    pub sweeps: Vec<PairSweep>,
    /// Hard failures: route disagreement, false verdicts, sweep violations.
    pub failures: Vec<String>,
    /// Requested work refused for budget.
    pub budget_refusals: Vec<String>,
    /// Input errors for this graph; the rest of the batch still runs.
    pub errors: Vec<String>,
}

impl GraphReport {
    fn new(id: &str, g: &Graph) -> Self {
        GraphReport {
            id: id.to_string(),
            graph6: emit_graph6(g).ok(),
            pairs: Vec::new(),
            vertices: Vec::new(),
            verdicts: Vec::new(),
            pair_counts: Vec::new(),
            sweeps: Vec::new(),
            failures: Vec::new(),
            budget_refusals: Vec::new(),
            errors: Vec::new(),
        }
    }

    fn absorb(&mut self, what: &str, e: Error) {
        match e {
            Error::BudgetExceeded { .. } => self.budget_refusals.push(format!("{what}: {e}")),
            e if e.is_input_error() => self.errors.push(format!("{what}: {e}")),
            e => self.failures.push(format!("{what}: {e}")),
        }
    }
}

/// Sweep results for one adjacent pair.
#[derive(Clone, Debug, Serialize)]
pub struct PairSweep {
    pub v: usize,
    pub w: usize,
    pub case: CaseKind,
    pub involutions: Vec<InvolutionSweep>,
    pub orbits: Vec<NamedOrbitSweep>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NamedOrbitSweep {
    pub name: String,
    pub sweep: OrbitSweep,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub command: String,
    pub config: VerifyConfig,
    pub graphs: Vec<GraphReport>,
    pub identities: Option<IdentityReport>,
    pub warnings: Vec<String>,
}

/// Process exit status for a finished run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitStatus {
    Ok = 0,
    Violation = 1,
    InputError = 2,
    Budget = 3,
}

impl ExitStatus {
    pub fn of_error(e: &Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => ExitStatus::Budget,
            e if e.is_input_error() => ExitStatus::InputError,
            _ => ExitStatus::Violation,
        }
    }
}

impl VerifyReport {
    /// A report with no graphs, for commands that fill in other sections.
    pub fn empty(command: &str, config: &VerifyConfig) -> Self {
        Self::new(command, config)
    }

    fn new(command: &str, config: &VerifyConfig) -> Self {
        VerifyReport {
            command: command.to_string(),
            config: config.clone(),
            graphs: Vec::new(),
            identities: None,
            warnings: Vec::new(),
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &str> {
        self.graphs
            .iter()
            .flat_map(|g| g.failures.iter().map(String::as_str))
    }

    /// Violations first, then budget refusals, then input errors.
    pub fn exit_status(&self) -> ExitStatus {
        let identities_failed = self.identities.as_ref().is_some_and(|r| !r.passed());
        if self.failures().next().is_some() || identities_failed {
            ExitStatus::Violation
        } else if self.graphs.iter().any(|g| !g.budget_refusals.is_empty()) {
            ExitStatus::Budget
        } else if self.graphs.iter().any(|g| !g.errors.is_empty()) {
            ExitStatus::InputError
        } else {
            ExitStatus::Ok
        }
    }
}

/// Every adjacent pair (v, w) with v < w.
fn adjacent_pairs(g: &Graph) -> Vec<(usize, usize)> {
    let mut pairs: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|&(u, v)| (u.min(v), u.max(v)))
        .filter(|(u, v)| u != v)
        .collect();
    pairs.sort_unstable();
    pairs.dedup();
    pairs
}

fn check_c2_report(report: &mut GraphReport, r: &C2Report, what: &str) {
    if !r.agree && r.routes_ran() > 1 {
        report.failures.push(format!(
            "{what}, p = {}: routes disagree (direct {:?}, denom {:?}, partition {:?}); this is an implementation bug",
            r.prime,
            r.route_direct.map(|x| x.residue),
            r.route_denom.map(|x| x.residue),
            r.route_partition.map(|x| x.residue),
        ));
    }
    for (route, msg) in r.budget_refusals() {
        report
            .budget_refusals
            .push(format!("{what}, p = {}, route {route}: {msg}", r.prime));
    }
}

/// c₂ of one graph. With `vertex` set the graph is taken as a completion and
/// decompleted there (all routes available); otherwise the graph itself is
/// the input and only the direct and denominator routes apply.
pub fn cmd_compute_c2(
    entry: &CorpusEntry,
    vertex: Option<usize>,
    config: &VerifyConfig,
) -> Result<VerifyReport> {
    let primes = config.validate()?;
    let g = &entry.graph;
    let mut report = VerifyReport::new("compute", config);
    let mut gr = GraphReport::new(&entry.id, g);
    let (gminus, completion) = match vertex {
        Some(v) => {
            g.require_connected()?;
            g.require_four_regular()?;
            (g.delete_vertices(&[v])?.graph, Some((g, v)))
        }
        None => {
            g.require_connected()?;
            if config.routes.partition {
                return Err(Error::precondition(
                    "the partition route needs a completed graph and a vertex",
                ));
            }
            (g.clone(), None)
        }
    };
    let mut reports = Vec::new();
    for p in primes {
        let r = c2_report(
            &entry.id,
            &gminus,
            completion,
            p,
            config.routes,
            config.budgets,
        )?;
        check_c2_report(&mut gr, &r, &entry.id);
        if let Some((_, Skip::Precondition(m))) = r
            .skipped
            .iter()
            .find(|(_, s)| matches!(s, Skip::Precondition(_)))
        {
            gr.errors.push(m.clone());
        }
        reports.push(r);
    }
    gr.vertices.push(VertexC2 {
        vertex: vertex.unwrap_or(usize::MAX),
        reports,
    });
    report.graphs.push(gr);
    Ok(report)
}

/// Whether the pairs of the given kinds connect all vertices.
fn pairs_connect(g: &Graph, pairs: &[CaseLabel], kinds: &[CaseKind]) -> bool {
    let mut parent: Vec<usize> = (0..g.n()).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for p in pairs.iter().filter(|p| kinds.contains(&p.kind)) {
        let (a, b) = (find(&mut parent, p.v), find(&mut parent, p.w));
        parent[a] = b;
    }
    let root = find(&mut parent, 0);
    (0..g.n()).all(|x| find(&mut parent, x) == root)
}

fn verify_graph(entry: &CorpusEntry, primes: &[Prime], config: &VerifyConfig) -> GraphReport {
    let g = &entry.graph;
    let mut gr = GraphReport::new(&entry.id, g);
    if let Err(e) = g.require_connected().and_then(|_| g.require_four_regular()) {
        gr.absorb("input", e);
        return gr;
    }
    for (v, w) in adjacent_pairs(g) {
        match classify_adjacent_pair(g, v, w) {
            Ok(label) => gr.pairs.push(label),
            Err(e) => gr.absorb(&format!("pair ({v},{w})"), e),
        }
    }
    for v in 0..g.n() {
        let gminus = match g.delete_vertices(&[v]) {
            Ok(d) => d.graph,
            Err(e) => {
                gr.absorb(&format!("G-{v}"), e);
                continue;
            }
        };
        let mut reports = Vec::new();
        for &p in primes {
            match c2_report(
                &format!("{}-{v}", entry.id),
                &gminus,
                Some((g, v)),
                p,
                config.routes,
                config.budgets,
            ) {
                Ok(r) => {
                    check_c2_report(&mut gr, &r, &format!("G-{v}"));
                    reports.push(r);
                }
                Err(e) => gr.absorb(&format!("G-{v}, p = {}", p.get()), e),
            }
        }
        gr.vertices.push(VertexC2 { vertex: v, reports });
    }
    for &p in primes {
        let residues: Vec<Option<u32>> = gr
            .vertices
            .iter()
            .map(|vc| {
                vc.reports
                    .iter()
                    .find(|r| r.prime == p.get())
                    .and_then(C2Report::residue)
            })
            .collect();
        let complete = residues.len() == g.n() && residues.iter().all(Option::is_some);
        let holds = complete && residues.windows(2).all(|w| w[0] == w[1]);
        let backing =
            if p.get() == 2 || pairs_connect(g, &gr.pairs, &[CaseKind::T, CaseKind::AllShared]) {
                Backing::Theorem
            } else {
                Backing::Empirical
            };
        if complete && !holds {
            gr.failures.push(format!(
                "p = {}: decompletion residues differ: {residues:?}",
                p.get()
            ));
        }
        gr.verdicts.push(Verdict {
            prime: p.get(),
            residues,
            holds,
            backing,
        });
    }
    if config.case_counts {
        case_counts(g, &mut gr, primes, config.budgets.enumeration);
    }
    gr
}

fn case_counts(g: &Graph, gr: &mut GraphReport, primes: &[Prime], budget: u64) {
    let pairs = gr.pairs.clone();
    for label in &pairs {
        let (v, w) = (label.v, label.w);
        let cg = match case_graph(g, v, w) {
            Ok(cg) => cg,
            Err(e) => {
                gr.absorb(&format!("pair ({v},{w})"), e);
                continue;
            }
        };
        for &p in primes {
            let counts = match (label.kind, p.get()) {
                (CaseKind::T, _) => t_case_counts(&cg, p, budget),
                (CaseKind::S, 2) => s_case_counts(&cg, budget),
                (CaseKind::R, 2) => r_case_counts(&cg, budget),
                _ => continue,
            };
            match counts {
                Ok(counts) => {
                    for id in counts.identities.iter().filter(|i| !i.holds) {
                        gr.failures.push(format!(
                            "pair ({v},{w}), {} case, p = {}: {} has residue {}",
                            label.kind,
                            p.get(),
                            id.name,
                            id.residue
                        ));
                    }
                    gr.pair_counts.push(PairCounts {
                        v,
                        w,
                        prime: p.get(),
                        counts,
                    });
                }
                Err(e) => gr.absorb(&format!("pair ({v},{w}) counts"), e),
            }
        }
    }
}

/// For every graph of every input corpus: c₂ of each decompletion per prime
/// and the verdict that they are all equal.
pub fn cmd_verify_completion(config: &VerifyConfig) -> Result<VerifyReport> {
    let primes = config.validate()?;
    let mut report = VerifyReport::new("verify-completion", config);
    let mut entries = Vec::new();
    for path in &config.inputs {
        let corpus = load_corpus(path)?;
        report.warnings.extend(corpus.warnings);
        entries.extend(corpus.entries);
    }
    report.graphs = entries
        .par_iter()
        .map(|e| verify_graph(e, &primes, config))
        .collect();
    Ok(report)
}

fn sweep_pair(
    g: &Graph,
    label: &CaseLabel,
    prime: Prime,
    budget: u64,
) -> Result<Option<PairSweep>> {
    let cg = case_graph(g, label.v, label.w)?;
    let mut out = PairSweep {
        v: label.v,
        w: label.w,
        case: label.kind,
        involutions: Vec::new(),
        orbits: Vec::new(),
    };
    match label.kind {
        CaseKind::S | CaseKind::R => {
            for kind in InvolutionKind::ALL
                .into_iter()
                .filter(|k| k.case() == label.kind)
            {
                out.involutions.push(sweep_involution(&cg, kind, budget)?);
            }
        }
        CaseKind::T => {
            let part =
                |a: &str, b: &str| VertexPartition::two(&cg.marked_set(a), &cg.marked_set(b));
            let q = part("ad", "bc")?;
            let k = prime.get() as usize - 1;
            for (name, base, c) in [
                ("P", part("a", "bcd")?, "b"),
                ("P'", part("d", "abc")?, "c"),
            ] {
                let c = cg.marked_vertex(c).expect("T case has b and c");
                for l in 1..=k {
                    let parts: Vec<&VertexPartition> = std::iter::repeat_n(&base, l)
                        .chain(std::iter::repeat_n(&q, k - l))
                        .collect();
                    let sweep = sweep_orbits(&cg.graph, &parts, 0, c, prime, budget)?;
                    out.orbits.push(NamedOrbitSweep {
                        name: format!("{name}^{l} Q^{}", k - l),
                        sweep,
                    });
                }
            }
        }
        CaseKind::AllShared => return Ok(None),
    }
    Ok(Some(out))
}

/// Exhaustive involution sweeps on every S- and R-pair and orbit sweeps at
/// `prime` on every T-pair of the corpus.
pub fn cmd_sweep_involutions(config: &VerifyConfig) -> Result<VerifyReport> {
    let primes = config.validate()?;
    let mut report = VerifyReport::new("sweep-involutions", config);
    let mut entries = Vec::new();
    for path in &config.inputs {
        let corpus = load_corpus(path)?;
        report.warnings.extend(corpus.warnings);
        entries.extend(corpus.entries);
    }
    let budget = config.budgets.enumeration;
    report.graphs = entries
        .par_iter()
        .map(|entry| {
            let g = &entry.graph;
            let mut gr = GraphReport::new(&entry.id, g);
            if let Err(e) = g.require_connected().and_then(|_| g.require_four_regular()) {
                gr.absorb("input", e);
                return gr;
            }
            for (v, w) in adjacent_pairs(g) {
                let label = match classify_adjacent_pair(g, v, w) {
                    Ok(l) => l,
                    Err(e) => {
                        gr.absorb(&format!("pair ({v},{w})"), e);
                        continue;
                    }
                };
                for &p in &primes {
                    // Involution sweeps do not depend on the prime.
                    if label.kind != CaseKind::T && p != primes[0] {
                        continue;
                    }
                    match sweep_pair(g, &label, p, budget) {
                        Ok(Some(s)) => {
                            record_sweep_failures(&mut gr, &s);
                            gr.sweeps.push(s);
                        }
                        Ok(None) => {}
                        Err(e) => gr.absorb(&format!("pair ({v},{w}) sweep"), e),
                    }
                }
                gr.pairs.push(label);
            }
            gr
        })
        .collect();
    Ok(report)
}

fn record_sweep_failures(gr: &mut GraphReport, s: &PairSweep) {
    for sw in &s.involutions {
        if !sw.is_clean() {
            gr.failures.push(format!(
                "pair ({},{}), {}: {} violations of {} (fixed {}, not involutive {}, outside {}, unstable control {}, case mismatch {}, errors {}), parity {}; first: {}",
                s.v,
                s.w,
                sw.name,
                sw.violations(),
                sw.domain_size,
                sw.fixed_points,
                sw.not_involutive,
                sw.outside_domain,
                sw.unstable_control,
                sw.case_mismatch,
                sw.errors,
                if sw.parity_holds() { "even" } else { "odd" },
                sw.examples.first().map(String::as_str).unwrap_or("-"),
            ));
        }
    }
    for o in &s.orbits {
        if !o.sweep.is_clean() {
            gr.failures.push(format!(
                "pair ({},{}), orbits on {} at p = {}: {} size and {} split mismatches, {} escapes, class sizes {:?}",
                s.v,
                s.w,
                o.name,
                o.sweep.prime,
                o.sweep.size_mismatches,
                o.sweep.split_mismatches,
                o.sweep.escapes,
                o.sweep.class_sizes
            ));
        }
    }
}

fn residue_cell(r: Option<RouteResult>, skip: Option<&Skip>) -> String {
    match (r, skip) {
        (Some(r), _) => r.residue.to_string(),
        (None, Some(Skip::Budget(_))) => "budget".into(),
        (None, Some(Skip::Precondition(_))) => "n/a".into(),
        _ => "-".into(),
    }
}

/// Plain-text rendering for terminals.
pub fn render_human(report: &VerifyReport) -> String {
    let mut out = String::new();
    for w in &report.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    for g in &report.graphs {
        let _ = writeln!(out, "graph {}", g.id);
        if !g.pairs.is_empty() {
            let mut by_kind: BTreeMap<String, usize> = BTreeMap::new();
            for p in &g.pairs {
                *by_kind.entry(p.kind.to_string()).or_default() += 1;
            }
            let kinds: Vec<String> = by_kind.iter().map(|(k, n)| format!("{k}: {n}")).collect();
            let _ = writeln!(out, "  adjacent pairs  {}", kinds.join(", "));
        }
        if !g.vertices.is_empty() {
            let _ = writeln!(
                out,
                "  {:>6} {:>5} {:>7} {:>7} {:>9}",
                "vertex", "p", "direct", "denom", "partition"
            );
            for vc in &g.vertices {
                let vname = if vc.vertex == usize::MAX {
                    "-".to_string()
                } else {
                    vc.vertex.to_string()
                };
                for r in &vc.reports {
                    let _ = writeln!(
                        out,
                        "  {:>6} {:>5} {:>7} {:>7} {:>9}",
                        vname,
                        r.prime,
                        residue_cell(r.route_direct, r.skipped.get("direct")),
                        residue_cell(r.route_denom, r.skipped.get("denom")),
                        residue_cell(r.route_partition, r.skipped.get("partition")),
                    );
                }
            }
        }
        for v in &g.verdicts {
            let _ = writeln!(
                out,
                "  completion p = {}: {} ({:?})",
                v.prime,
                if v.holds { "all equal" } else { "NOT VERIFIED" },
                v.backing
            );
        }
        for pc in &g.pair_counts {
            let ok = pc.counts.all_hold();
            let _ = writeln!(
                out,
                "  pair ({},{}) {} counts p = {}: {}",
                pc.v,
                pc.w,
                pc.counts.case,
                pc.prime,
                if ok {
                    "identities hold"
                } else {
                    "IDENTITY FAILS"
                }
            );
        }
        for s in &g.sweeps {
            for sw in &s.involutions {
                let _ = writeln!(
                    out,
                    "  pair ({},{}) {} {:<48} domain {:>6} violations {:>4} parity {}",
                    s.v,
                    s.w,
                    s.case,
                    sw.name,
                    sw.domain_size,
                    sw.violations(),
                    if sw.parity_holds() { "even" } else { "odd" }
                );
            }
            for o in &s.orbits {
                let _ = writeln!(
                    out,
                    "  pair ({},{}) {} orbits {:<10} p = {} orbits {:>5} classes {:?} {}",
                    s.v,
                    s.w,
                    s.case,
                    o.name,
                    o.sweep.prime,
                    o.sweep.orbits,
                    o.sweep.class_sizes,
                    if o.sweep.is_clean() {
                        "ok"
                    } else {
                        "VIOLATION"
                    }
                );
            }
        }
        for f in &g.failures {
            let _ = writeln!(out, "  FAIL {f}");
        }
        for b in &g.budget_refusals {
            let _ = writeln!(out, "  budget {b}");
        }
        for e in &g.errors {
            let _ = writeln!(out, "  error {e}");
        }
    }
    if let Some(ids) = &report.identities {
        let _ = writeln!(out, "identities (seed {})", ids.seed);
        for o in &ids.outcomes {
            let _ = writeln!(
                out,
                "  {:<28} checks {:>6} failures {:>3}{}",
                o.name,
                o.checks,
                o.failures,
                o.first_failure
                    .as_deref()
                    .map(|f| format!("  first: {f}"))
                    .unwrap_or_default()
            );
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::emit_edge_list;
    use crate::graph::families::*;

    fn entry(id: &str, g: Graph) -> CorpusEntry {
        CorpusEntry {
            id: id.into(),
            graph: g,
        }
    }

    #[test]
    fn compute_k5_all_routes_agree() {
        let cfg = VerifyConfig {
            primes: vec![2, 3],
            ..Default::default()
        };
        let r = cmd_compute_c2(&entry("K5", complete(5)), Some(0), &cfg).unwrap();
        let vc = &r.graphs[0].vertices[0];
        assert_eq!(vc.reports.len(), 2);
        for rep in &vc.reports {
            assert!(rep.agree);
            assert_eq!(rep.routes_ran(), 3);
        }
        assert_eq!(r.exit_status(), ExitStatus::Ok);
    }

    #[test]
    fn compute_triangle_direct() {
        let cfg = VerifyConfig {
            routes: Routes {
                direct: true,
                denom: false,
                partition: false,
            },
            ..Default::default()
        };
        let r = cmd_compute_c2(&entry("C3", cycle(3)), None, &cfg).unwrap();
        assert_eq!(r.graphs[0].vertices[0].reports[0].residue(), Some(1));
    }

    #[test]
    fn compute_rejects_non_quartic_decompletion() {
        let e =
            cmd_compute_c2(&entry("C5", cycle(5)), Some(0), &VerifyConfig::default()).unwrap_err();
        assert_eq!(ExitStatus::of_error(&e), ExitStatus::InputError);
    }

    #[test]
    fn completion_on_small_corpus() {
        let dir = std::env::temp_dir().join(format!("c2lab-verify-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        fs::write(dir.join("k5.json"), emit_edge_list(&complete(5))).unwrap();
        fs::write(dir.join("oct.json"), emit_edge_list(&octahedron())).unwrap();
        fs::write(dir.join("bad.json"), "{\"n\": 2, \"edges\": [[0, 5]]}").unwrap();
        let cfg = VerifyConfig {
            inputs: vec![dir.clone()],
            ..Default::default()
        };
        let r = cmd_verify_completion(&cfg).unwrap();
        fs::remove_dir_all(&dir).unwrap();
        assert_eq!(r.warnings.len(), 1);
        assert_eq!(r.graphs.len(), 2);
        for g in &r.graphs {
            assert!(g.verdicts[0].holds, "{}", render_human(&r));
            assert_eq!(g.verdicts[0].backing, Backing::Theorem);
        }
        assert_eq!(r.exit_status(), ExitStatus::Ok);
        let text = render_human(&r);
        assert!(text.contains("completion p = 2: all equal"));
    }

    #[test]
    fn octahedron_p3_is_theorem_backed() {
        let dir = std::env::temp_dir().join(format!("c2lab-oct-{}.g6", std::process::id()));
        fs::write(&dir, format!("{}\n", emit_graph6(&octahedron()).unwrap())).unwrap();
        let cfg = VerifyConfig {
            inputs: vec![dir.clone()],
            primes: vec![3],
            ..Default::default()
        };
        let r = cmd_verify_completion(&cfg).unwrap();
        fs::remove_file(&dir).unwrap();
        let v = &r.graphs[0].verdicts[0];
        assert!(v.holds && v.backing == Backing::Theorem);
        assert!(!r.graphs[0].pair_counts.is_empty());
        assert_eq!(r.exit_status(), ExitStatus::Ok);
    }

    #[test]
    fn non_quartic_corpus_entry_is_an_input_error() {
        let path = std::env::temp_dir().join(format!("c2lab-c5-{}.g6", std::process::id()));
        fs::write(
            &path,
            format!("# comment\n{}\n\n", emit_graph6(&cycle(5)).unwrap()),
        )
        .unwrap();
        let cfg = VerifyConfig {
            inputs: vec![path.clone()],
            ..Default::default()
        };
        let r = cmd_verify_completion(&cfg).unwrap();
        fs::remove_file(&path).unwrap();
        assert_eq!(r.graphs[0].errors.len(), 1);
        assert_eq!(r.exit_status(), ExitStatus::InputError);
    }

    #[test]
    fn budget_refusal_is_reported() {
        let path = std::env::temp_dir().join(format!("c2lab-k5-{}.json", std::process::id()));
        fs::write(&path, emit_edge_list(&complete(5))).unwrap();
        let cfg = VerifyConfig {
            inputs: vec![path.clone()],
            budgets: Budgets {
                eval: 8,
                enumeration: 1 << 20,
            },
            case_counts: false,
            ..Default::default()
        };
        let r = cmd_verify_completion(&cfg).unwrap();
        fs::remove_file(&path).unwrap();
        assert!(!r.graphs[0].budget_refusals.is_empty());
        assert_eq!(r.exit_status(), ExitStatus::Budget);
    }

    #[test]
    fn pairs_connect_examples() {
        let g = octahedron();
        let pairs: Vec<CaseLabel> = adjacent_pairs(&g)
            .into_iter()
            .map(|(v, w)| classify_adjacent_pair(&g, v, w).unwrap())
            .collect();
        assert!(pairs.iter().all(|p| p.kind == CaseKind::T));
        assert!(pairs_connect(&g, &pairs, &[CaseKind::T]));
        assert!(!pairs_connect(&g, &pairs, &[CaseKind::S]));
    }
}
