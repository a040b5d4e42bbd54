//! Per-graph analysis with cross-checks between the independent oracles.

use std::time::Instant;

use serde::Serialize;

use crate::coloring::{
    bipartizing_one_factor, chromatic_index, classify, ChromaticIndex, ClassWitness, EdgeClass,
};
use crate::flows::{circular_flow_number, has_nwz_flow, Budget, FcStatus, Verdict};
use crate::graph::{bridges, is_bipartite, odd_cut_obstruction, Multigraph, OddCutScan};
use crate::rational::{int, Rational};
use crate::valuations::{flow_to_valuation, refute_flow_by_valuation, Refutation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalyzeOptions {
    /// Ladder denominator bound; `None` means the vertex count.
    pub denom_bound: Option<i64>,
    pub flow_budget: Budget,
    pub coloring_nodes: u64,
    /// Vertex bound for exhaustive subset scans.
    pub subset_bound: usize,
    /// Vertex bound for the valuation-based refutation cross-check.
    pub refute_bound: usize,
    pub flow_number: bool,
    pub edge_class: bool,
    pub bipartizing_factor: bool,
    pub odd_cut: bool,
    pub valuation_checks: bool,
    /// Wall-clock timings make reports differ between runs; off by default.
    pub include_timings: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            denom_bound: None,
            flow_budget: Budget::default(),
            coloring_nodes: 1_000_000_000,
            subset_bound: crate::graph::DEFAULT_SUBSET_BOUND,
            refute_bound: crate::valuations::DEFAULT_REFUTE_BOUND,
            flow_number: true,
            edge_class: true,
            bipartizing_factor: true,
            odd_cut: true,
            valuation_checks: true,
            include_timings: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OddCutStatus {
    Found,
    None,
    NotAttempted,
    /// Not regular of odd degree.
    NotApplicable,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OddCutField {
    pub status: OddCutStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub set: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub size: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Work {
    pub flow_nodes: u64,
    pub coloring_nodes: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Timings {
    pub flow_ms: f64,
    pub coloring_ms: f64,
    pub total_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub id: String,
    pub source: String,
    pub n: usize,
    pub m: usize,
    pub regular_degree: Option<usize>,
    pub max_multiplicity: usize,
    pub bridgeless: bool,
    pub bipartite: bool,
    pub class: EdgeClass,
    pub class_witness: Option<String>,
    pub chi: Option<usize>,
    pub chi_lower: usize,
    pub chi_upper: usize,
    #[serde(with = "crate::rational::json_opt")]
    pub fc: Option<Rational>,
    pub fc_status: Option<FcStatus>,
    pub fc_denom_bound: Option<i64>,
    /// The candidate just below `fc` that was refuted.
    #[serde(with = "crate::rational::json_opt")]
    pub fc_refused: Option<Rational>,
    /// Best known flow when the search ran out of budget.
    #[serde(with = "crate::rational::json_opt")]
    pub fc_upper: Option<Rational>,
    pub bipartizing_factor: Option<Vec<usize>>,
    pub odd_cut: OddCutField,
    /// `(2t+1)`-regular with no odd set of boundary below `2t+1`.
    pub t_graph: Option<bool>,
    pub valuation_notes: Vec<String>,
    pub work: Work,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
    pub inconsistencies: Vec<String>,
}

impl AnalysisReport {
    /// `F_c` when it is exact.
    pub fn exact_fc(&self) -> Option<Rational> {
        match self.fc_status {
            Some(FcStatus::ExactWithinBound) => self.fc,
            _ => None,
        }
    }

    /// `t` with degree `2t + 1`, for odd regular graphs of degree at least 3.
    pub fn t(&self) -> Option<usize> {
        self.regular_degree
            .filter(|&d| d % 2 == 1 && d >= 3)
            .map(|d| (d - 1) / 2)
    }
}

/// `2 + 1/t`.
pub fn bipartite_value(t: usize) -> Rational {
    int(2) + Rational::new(1, t as i64)
}

/// `2 + 2/(2t - 1)`.
pub fn factor_bound(t: usize) -> Rational {
    int(2) + Rational::new(2, 2 * t as i64 - 1)
}

/// `2 + 2/t`.
pub fn class1_ceiling(t: usize) -> Rational {
    int(2) + Rational::new(2, t as i64)
}

/// Runs every requested oracle on `g` and records each implication the
/// theory guarantees that fails to hold as an inconsistency.
pub fn analyze(g: &Multigraph, id: &str, source: &str, opts: &AnalyzeOptions) -> AnalysisReport {
    let start = Instant::now();
    let delta = g.max_degree();
    let mu = g.max_multiplicity();
    let regular = g.regular_degree();
    let odd_regular = regular.is_some_and(|d| d % 2 == 1);
    let mut rep = AnalysisReport {
        id: id.to_string(),
        source: source.to_string(),
        n: g.n(),
        m: g.m(),
        regular_degree: regular,
        max_multiplicity: mu,
        bridgeless: bridges(g).is_empty(),
        bipartite: is_bipartite(g).is_bipartite(),
        class: EdgeClass::Unknown,
        class_witness: None,
        chi: None,
        chi_lower: delta,
        chi_upper: delta + mu,
        fc: None,
        fc_status: None,
        fc_denom_bound: None,
        fc_refused: None,
        fc_upper: None,
        bipartizing_factor: None,
        odd_cut: OddCutField {
            status: OddCutStatus::Skipped,
            set: None,
            size: None,
        },
        t_graph: None,
        valuation_notes: Vec::new(),
        work: Work::default(),
        timings: None,
        inconsistencies: Vec::new(),
    };
    let mut timings = Timings::default();

    if opts.odd_cut {
        rep.odd_cut = if !odd_regular {
            OddCutField {
                status: OddCutStatus::NotApplicable,
                set: None,
                size: None,
            }
        } else {
            match odd_cut_obstruction(g, opts.subset_bound) {
                Ok(OddCutScan::Found(cut)) => {
                    rep.t_graph = Some(false);
                    OddCutField {
                        status: OddCutStatus::Found,
                        size: Some(cut.size()),
                        set: Some(cut.source.to_vec()),
                    }
                }
                Ok(OddCutScan::None) => {
                    rep.t_graph = Some(true);
                    OddCutField {
                        status: OddCutStatus::None,
                        set: None,
                        size: None,
                    }
                }
                _ => OddCutField {
                    status: OddCutStatus::NotAttempted,
                    set: None,
                    size: None,
                },
            }
        };
    }

    if opts.edge_class && g.m() > 0 {
        let t0 = Instant::now();
        classify_into(g, opts, &mut rep);
        timings.coloring_ms = t0.elapsed().as_secs_f64() * 1e3;
    }

    if opts.bipartizing_factor && odd_regular {
        if let Ok(Some((m, _))) = bipartizing_one_factor(g) {
            rep.bipartizing_factor = Some(m.0);
        }
    }

    if opts.flow_number {
        let t0 = Instant::now();
        let q = opts.denom_bound.unwrap_or(g.n().max(1) as i64);
        match circular_flow_number(g, q, &opts.flow_budget) {
            Ok(fc) => {
                rep.work.flow_nodes += fc.stats.nodes;
                rep.fc = fc.value;
                rep.fc_status = Some(fc.status);
                rep.fc_denom_bound = Some(q);
                rep.fc_refused = fc.refused;
                rep.fc_upper = fc.upper;
                if opts.valuation_checks && fc.status == FcStatus::ExactWithinBound {
                    valuation_checks(g, &fc, opts, &mut rep);
                }
            }
            Err(e) => rep.inconsistencies.push(format!("flow number: {e}")),
        }
        timings.flow_ms = t0.elapsed().as_secs_f64() * 1e3;
    }

    theory_checks(&mut rep);
    if opts.include_timings {
        timings.total_ms = start.elapsed().as_secs_f64() * 1e3;
        rep.timings = Some(timings);
    }
    rep
}

fn classify_into(g: &Multigraph, opts: &AnalyzeOptions, rep: &mut AnalysisReport) {
    let delta = g.max_degree();
    let c = match classify(g, opts.coloring_nodes, opts.subset_bound) {
        Ok(c) => c,
        Err(e) => {
            rep.inconsistencies.push(format!("classify: {e}"));
            return;
        }
    };
    rep.work.coloring_nodes += c.nodes;
    rep.class = c.class;
    rep.class_witness = Some(
        match c.witness {
            ClassWitness::Coloring(_) => "coloring",
            ClassWitness::OddCut(_) => "odd-cut",
            ClassWitness::Exhausted => "exhausted",
            ClassWitness::Budget => "budget",
        }
        .into(),
    );
    match c.class {
        EdgeClass::Class1 => {
            rep.chi = Some(delta);
            rep.chi_upper = delta;
        }
        EdgeClass::Class2 => {
            rep.chi_lower = delta + 1;
            let budget = opts.coloring_nodes.saturating_sub(c.nodes);
            if let Ok((ci, nodes)) = chromatic_index(g, budget) {
                rep.work.coloring_nodes += nodes;
                match ci {
                    ChromaticIndex::Exact { chi, .. } => {
                        rep.chi = Some(chi);
                        rep.chi_lower = chi;
                        rep.chi_upper = chi;
                    }
                    ChromaticIndex::Unknown { lower, upper } => {
                        rep.chi_lower = lower.max(delta + 1);
                        rep.chi_upper = upper;
                    }
                }
            }
        }
        EdgeClass::Unknown => {}
    }
}

/// Builds the valuation of the witness flow and, for small graphs, asks the
/// valuation search whether the refused candidate is really infeasible.
fn valuation_checks(
    g: &Multigraph,
    fc: &crate::flows::FcResult,
    opts: &AnalyzeOptions,
    rep: &mut AnalysisReport,
) {
    if let (Some(w), Some(v)) = (&fc.witness, fc.value) {
        if v > int(2) {
            match flow_to_valuation(g, w) {
                Ok((_, form)) => {
                    let mut ks = form.k.clone();
                    ks.sort_unstable();
                    ks.dedup();
                    rep.valuation_notes
                        .push(format!("witness flow at {v} gives a balanced valuation, k_v in {ks:?}"));
                }
                Err(e) => rep.inconsistencies.push(format!("flow_to_valuation: {e}")),
            }
        }
    }
    if let Some(refused) = fc.refused {
        if refused > int(2) && g.n() <= opts.refute_bound {
            match refute_flow_by_valuation(g, refused, opts.refute_bound) {
                Ok(Refutation::Refuted) => rep
                    .valuation_notes
                    .push(format!("no balanced valuation at {refused}")),
                Ok(Refutation::NotRefuted(_)) => rep.inconsistencies.push(format!(
                    "balanced valuation exists at {refused} but the flow solver refuted it"
                )),
                Err(e) => rep.valuation_notes.push(format!("refutation skipped: {e}")),
            }
        }
    }
}

fn theory_checks(rep: &mut AnalysisReport) {
    if rep.odd_cut.status == OddCutStatus::Found && rep.class == EdgeClass::Class1 {
        rep.inconsistencies.push("odd-cut obstruction but class 1".into());
    }
    let (Some(t), Some(fc)) = (rep.t(), rep.exact_fc()) else {
        return;
    };
    let bound = factor_bound(t);
    let mut bad = Vec::new();
    if rep.bipartite && fc != bipartite_value(t) {
        bad.push(format!("bipartite but F_c = {fc} != {}", bipartite_value(t)));
    }
    if !rep.bipartite && fc < bound {
        bad.push(format!("non-bipartite but F_c = {fc} < {bound}"));
    }
    if rep.bipartizing_factor.is_some() != (fc <= bound) {
        bad.push(format!(
            "bipartizing factor {} but F_c = {fc} (bound {bound})",
            if rep.bipartizing_factor.is_some() { "exists" } else { "absent" }
        ));
    }
    if fc <= bound && rep.class == EdgeClass::Class2 {
        bad.push(format!("F_c = {fc} <= {bound} but class 2"));
    }
    if t == 1 && rep.class != EdgeClass::Unknown && (rep.class == EdgeClass::Class1) != (fc <= int(4)) {
        bad.push(format!("cubic with F_c = {fc} but {:?}", rep.class));
    }
    rep.inconsistencies.extend(bad);
}

/// Re-runs the flow decision at `r` (used to double-check conjecture candidates).
pub(crate) fn recheck_flow(g: &Multigraph, r: Rational, budget: &Budget) -> Verdict {
    has_nwz_flow(g, r, budget).verdict
}
