//! Catalog scans, Φ estimates and conjecture bookkeeping.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::Serialize;

use super::analyze::{
    analyze, class1_ceiling, factor_bound, recheck_flow, AnalysisReport, AnalyzeOptions,
};
use crate::coloring::{classify, EdgeClass};
use crate::flows::Verdict;
use crate::graph::{bridges, parse_graph_file, Multigraph};
use crate::rational::Rational;
use crate::{Error, Result};

/// A catalog entry that was not analysed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkipRecord {
    pub id: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhiEstimate {
    pub t: usize,
    /// Smallest exact `F_c` among class-2 members; an upper bound on Φ(2t+1)
    /// over this catalog only.
    #[serde(with = "crate::rational::json_opt")]
    pub value: Option<Rational>,
    pub witness: Option<String>,
    pub class2_exact: usize,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Candidate {
    pub id: String,
    #[serde(with = "crate::rational::json")]
    pub fc: Rational,
    /// Outcome of re-running the flow and coloring oracles, when the graph
    /// was available.
    pub recheck: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairRecord {
    #[serde(with = "crate::rational::json")]
    pub fc: Rational,
    pub class1: Vec<String>,
    pub class2: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConjectureFindings {
    pub t: usize,
    /// Class-2 graphs with `F_c < 2 + 2/(2t-1)`.
    pub phi_refutations: Vec<Candidate>,
    /// Class-1 graphs with `F_c > 2 + 2/t`.
    pub class1_above_ceiling: Vec<Candidate>,
    /// `(2t+1)`-graphs with `F_c > 2 + 2/t`.
    pub t_graphs_above_ceiling: Vec<Candidate>,
    /// Class-1/class-2 groups sharing an `F_c` in `(2 + 2/(2t-1), 2 + 2/t]`.
    pub equal_value_pairs: Vec<PairRecord>,
    /// Reports left out because their `F_c` or class is not exact.
    pub excluded: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanSummary {
    pub analysed: usize,
    pub skipped: usize,
    pub inconsistent: Vec<String>,
    pub phi_estimate: PhiEstimate,
    pub conjecture_findings: ConjectureFindings,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptionsRecord {
    pub t: usize,
    pub denom_bound: Option<i64>,
    pub flow_max_nodes: u64,
    pub coloring_max_nodes: u64,
    pub subset_bound: usize,
    pub refute_bound: usize,
}

impl OptionsRecord {
    pub fn new(t: usize, o: &AnalyzeOptions) -> Self {
        OptionsRecord {
            t,
            denom_bound: o.denom_bound,
            flow_max_nodes: o.flow_budget.max_nodes,
            coloring_max_nodes: o.coloring_nodes,
            subset_bound: o.subset_bound,
            refute_bound: o.refute_bound,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    pub tool_version: String,
    pub options: OptionsRecord,
    pub reports: Vec<AnalysisReport>,
    pub skipped: Vec<SkipRecord>,
    pub summary: ScanSummary,
}

impl ScanReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// A graph queued for analysis with its id and source file.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub id: String,
    pub source: String,
    pub graph: Multigraph,
}

/// File extensions picked up by a catalog scan.
pub const GRAPH_EXTENSIONS: [&str; 3] = ["mg", "g6", "graph6"];

/// Reads every graph file in `dir` in filename order. Unreadable or
/// malformed files become skip records.
pub fn read_catalog(dir: &Path) -> Result<(Vec<CatalogEntry>, Vec<SkipRecord>)> {
    let rd = std::fs::read_dir(dir).map_err(|e| Error::Parse {
        line: 0,
        msg: format!("{}: {e}", dir.display()),
    })?;
    let mut files: Vec<_> = rd
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.is_file())
        .filter(|p| {
            let hidden = p
                .file_name()
                .and_then(|n| n.to_str())
                .is_none_or(|n| n.starts_with('.'));
            let ext = p.extension().and_then(|e| e.to_str()).unwrap_or("");
            !hidden && GRAPH_EXTENSIONS.contains(&ext)
        })
        .collect();
    files.sort_by(|a, b| a.file_name().cmp(&b.file_name()));
    let mut entries = Vec::new();
    let mut skipped = Vec::new();
    for path in files {
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        let text = match std::fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) => {
                skipped.push(SkipRecord {
                    id: name,
                    reason: format!("unreadable: {e}"),
                });
                continue;
            }
        };
        match parse_graph_file(&text) {
            Ok(graphs) => {
                for (label, graph) in graphs {
                    let id = if label.is_empty() {
                        name.clone()
                    } else {
                        format!("{name}:{label}")
                    };
                    entries.push(CatalogEntry {
                        id,
                        source: name.clone(),
                        graph,
                    });
                }
            }
            Err(e) => skipped.push(SkipRecord {
                id: name,
                reason: format!("parse error: {e}"),
            }),
        }
    }
    Ok((entries, skipped))
}

/// Analyses every `(2t+1)`-regular bridgeless entry of `dir` and summarises.
pub fn scan_catalog(dir: &Path, t: usize, opts: &AnalyzeOptions, workers: usize) -> Result<ScanReport> {
    let (entries, skipped) = read_catalog(dir)?;
    scan_entries(&entries, skipped, t, opts, workers)
}

/// Same as [`scan_catalog`] on entries already in memory.
pub fn scan_entries(
    entries: &[CatalogEntry],
    mut skipped: Vec<SkipRecord>,
    t: usize,
    opts: &AnalyzeOptions,
    workers: usize,
) -> Result<ScanReport> {
    if t == 0 {
        return Err(Error::Domain("t must be at least 1".into()));
    }
    let degree = 2 * t + 1;
    let mut jobs = Vec::new();
    for (i, e) in entries.iter().enumerate() {
        if e.graph.regular_degree() != Some(degree) {
            skipped.push(SkipRecord {
                id: e.id.clone(),
                reason: format!("not {degree}-regular"),
            });
        } else if !bridges(&e.graph).is_empty() {
            skipped.push(SkipRecord {
                id: e.id.clone(),
                reason: "has a bridge".into(),
            });
        } else {
            jobs.push(i);
        }
    }
    let results = run_jobs(entries, &jobs, opts, workers.max(1));
    let reports: Vec<AnalysisReport> = results;
    let graphs: BTreeMap<&str, &Multigraph> =
        entries.iter().map(|e| (e.id.as_str(), &e.graph)).collect();
    let phi = phi_estimate(&reports, t);
    let findings = conjecture_checks(&reports, t, |id| graphs.get(id).copied(), opts);
    let inconsistent = reports
        .iter()
        .filter(|r| !r.inconsistencies.is_empty())
        .map(|r| r.id.clone())
        .collect();
    Ok(ScanReport {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        options: OptionsRecord::new(t, opts),
        summary: ScanSummary {
            analysed: reports.len(),
            skipped: skipped.len(),
            inconsistent,
            phi_estimate: phi,
            conjecture_findings: findings,
        },
        reports,
        skipped,
    })
}

/// Analyses the selected entries on a small pool; results come back in job order.
fn run_jobs(
    entries: &[CatalogEntry],
    jobs: &[usize],
    opts: &AnalyzeOptions,
    workers: usize,
) -> Vec<AnalysisReport> {
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<AnalysisReport>>> = Mutex::new(vec![None; jobs.len()]);
    std::thread::scope(|s| {
        for _ in 0..workers.min(jobs.len()) {
            s.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                if k >= jobs.len() {
                    break;
                }
                let e = &entries[jobs[k]];
                let rep = analyze(&e.graph, &e.id, &e.source, opts);
                slots.lock().unwrap()[k] = Some(rep);
            });
        }
    });
    slots
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|r| r.expect("every job ran"))
        .collect()
}

/// Smallest exact `F_c` among class-2 `(2t+1)`-regular reports.
pub fn phi_estimate(reports: &[AnalysisReport], t: usize) -> PhiEstimate {
    let mut best: Option<(Rational, &str)> = None;
    let mut count = 0;
    for r in reports {
        if r.regular_degree != Some(2 * t + 1) || r.class != EdgeClass::Class2 {
            continue;
        }
        let Some(fc) = r.exact_fc() else { continue };
        count += 1;
        if best.is_none_or(|(b, _)| fc < b) {
            best = Some((fc, &r.id));
        }
    }
    let note = match best {
        Some((v, _)) => format!(
            "upper bound on the infimum over the {count} exact class-2 members of this catalog; \
             Φ({}) <= {} here, not the true infimum",
            2 * t + 1,
            v
        ),
        None => "no class-2 member with exact F_c".to_string(),
    };
    PhiEstimate {
        t,
        value: best.map(|b| b.0),
        witness: best.map(|b| b.1.to_string()),
        class2_exact: count,
        note,
    }
}

/// Checks the catalog against the open statements about `F_c` and class.
/// `lookup` returns the graph behind a report id so that candidates can be
/// re-verified by running both oracles again.
pub fn conjecture_checks<'a>(
    reports: &[AnalysisReport],
    t: usize,
    lookup: impl Fn(&str) -> Option<&'a Multigraph>,
    opts: &AnalyzeOptions,
) -> ConjectureFindings {
    let low = factor_bound(t);
    let ceiling = class1_ceiling(t);
    let mut f = ConjectureFindings {
        t,
        phi_refutations: Vec::new(),
        class1_above_ceiling: Vec::new(),
        t_graphs_above_ceiling: Vec::new(),
        equal_value_pairs: Vec::new(),
        excluded: Vec::new(),
    };
    let mut groups: BTreeMap<Rational, (Vec<String>, Vec<String>)> = BTreeMap::new();
    for r in reports {
        if r.regular_degree != Some(2 * t + 1) {
            continue;
        }
        let Some(fc) = r.exact_fc() else {
            f.excluded.push(format!("{}: F_c not exact", r.id));
            continue;
        };
        if fc > ceiling && r.t_graph == Some(true) {
            f.t_graphs_above_ceiling.push(Candidate {
                id: r.id.clone(),
                fc,
                recheck: None,
            });
        }
        if r.class == EdgeClass::Unknown {
            f.excluded.push(format!("{}: class unknown", r.id));
            continue;
        }
        let class1 = r.class == EdgeClass::Class1;
        if !class1 && fc < low {
            f.phi_refutations.push(Candidate {
                id: r.id.clone(),
                fc,
                recheck: lookup(&r.id).map(|g| recheck(g, fc, opts)),
            });
        }
        if class1 && fc > ceiling {
            f.class1_above_ceiling.push(Candidate {
                id: r.id.clone(),
                fc,
                recheck: lookup(&r.id).map(|g| recheck(g, fc, opts)),
            });
        }
        if fc > low && fc <= ceiling {
            let g = groups.entry(fc).or_default();
            if class1 {
                g.0.push(r.id.clone());
            } else {
                g.1.push(r.id.clone());
            }
        }
    }
    f.equal_value_pairs = groups
        .into_iter()
        .filter(|(_, (a, b))| !a.is_empty() && !b.is_empty())
        .map(|(fc, (class1, class2))| PairRecord { fc, class1, class2 })
        .collect();
    f
}

/// Re-runs the flow decision just at and below `fc` and the class computation.
fn recheck(g: &Multigraph, fc: Rational, opts: &AnalyzeOptions) -> String {
    let at = recheck_flow(g, fc, &opts.flow_budget);
    let class = classify(g, opts.coloring_nodes, opts.subset_bound)
        .map(|c| format!("{:?}", c.class))
        .unwrap_or_else(|e| e.to_string());
    let verdict = match at {
        Verdict::Yes => "flow confirmed",
        Verdict::No => "flow NOT confirmed",
        Verdict::Unknown => "flow undecided",
    };
    format!("{verdict} at {}, class {class}", fc)
}

/// Plain-text table of the reports.
pub fn render_table(reports: &[AnalysisReport]) -> String {
    let mut out = format!(
        "{:<28} {:>4} {:>4} {:>4} {:>5} {:>7} {:>4} {:>10} {:>8}\n",
        "id", "n", "m", "deg", "bip", "class", "chi'", "F_c", "factor"
    );
    for r in reports {
        let fc = match (r.fc, r.exact_fc()) {
            (_, Some(v)) => v.to_string(),
            (Some(v), None) => format!(">={v}"),
            _ => "-".into(),
        };
        let class = match r.class {
            EdgeClass::Class1 => "1",
            EdgeClass::Class2 => "2",
            EdgeClass::Unknown => "?",
        };
        let chi = r.chi.map_or_else(
            || format!("{}..{}", r.chi_lower, r.chi_upper),
            |c| c.to_string(),
        );
        out.push_str(&format!(
            "{:<28} {:>4} {:>4} {:>4} {:>5} {:>7} {:>4} {:>10} {:>8}{}\n",
            r.id,
            r.n,
            r.m,
            r.regular_degree.map_or("-".into(), |d| d.to_string()),
            if r.bipartite { "yes" } else { "no" },
            class,
            chi,
            fc,
            if r.bipartizing_factor.is_some() { "yes" } else { "no" },
            if r.inconsistencies.is_empty() { "" } else { "  INCONSISTENT" }
        ));
    }
    out
}
