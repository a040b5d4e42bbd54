//! Perfect matching enumeration and bipartizing 1-factors.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::flows::{circular_flow_number, has_nwz_flow, Budget, FcResult, FcStatus, Verdict};
use crate::graph::{bridges, is_bipartite, Bipartiteness, Bipartition, Multigraph};
use crate::rational::{int, Rational};
use crate::valuations::{is_balanced_mincut, BalancedValuation};

/// Edge ids of a perfect matching, ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PerfectMatching(pub Vec<usize>);

impl PerfectMatching {
    pub fn is_perfect_in(&self, g: &Multigraph) -> bool {
        let mut hit = vec![0u32; g.n()];
        for &e in &self.0 {
            match g.edges().get(e) {
                Some(ed) => {
                    hit[ed.tail] += 1;
                    hit[ed.head] += 1;
                }
                None => return false,
            }
        }
        hit.iter().all(|&h| h == 1)
    }

    pub fn to_text(&self) -> String {
        let ids: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        format!("matching: {}\n", ids.join(" "))
    }
}

/// Lazily enumerates all perfect matchings: repeatedly cover the lowest
/// uncovered vertex with each of its usable edges in id order.
pub struct PerfectMatchings<'a> {
    g: &'a Multigraph,
    covered: Vec<bool>,
    /// (vertex being covered, index into its incidence list, chosen edge)
    stack: Vec<(usize, usize, usize)>,
    started: bool,
    done: bool,
}

pub fn enumerate_perfect_matchings(g: &Multigraph) -> PerfectMatchings<'_> {
    PerfectMatchings {
        g,
        covered: vec![false; g.n()],
        stack: Vec::new(),
        started: false,
        done: g.n() % 2 == 1,
    }
}

impl PerfectMatchings<'_> {
    fn lowest_uncovered(&self) -> Option<usize> {
        self.covered.iter().position(|&c| !c)
    }

    /// Tries to cover `v` starting at incidence index `from`; pushes on success.
    fn cover(&mut self, v: usize, from: usize) -> bool {
        let inc = self.g.incident(v);
        for (i, &e) in inc.iter().enumerate().skip(from) {
            let w = self.g.edges()[e].other(v);
            if !self.covered[w] {
                self.covered[v] = true;
                self.covered[w] = true;
                self.stack.push((v, i, e));
                return true;
            }
        }
        false
    }

    /// Undoes the top choice and advances it; returns false when exhausted.
    fn backtrack(&mut self) -> bool {
        while let Some((v, i, e)) = self.stack.pop() {
            let w = self.g.edges()[e].other(v);
            self.covered[v] = false;
            self.covered[w] = false;
            if self.cover(v, i + 1) {
                return true;
            }
        }
        false
    }
}

impl Iterator for PerfectMatchings<'_> {
    type Item = PerfectMatching;

    fn next(&mut self) -> Option<PerfectMatching> {
        if self.done {
            return None;
        }
        if self.started && !self.backtrack() {
            self.done = true;
            return None;
        }
        self.started = true;
        loop {
            match self.lowest_uncovered() {
                None => {
                    let mut ids: Vec<usize> = self.stack.iter().map(|&(_, _, e)| e).collect();
                    ids.sort_unstable();
                    return Some(PerfectMatching(ids));
                }
                Some(v) => {
                    if !self.cover(v, 0) && !self.backtrack() {
                        self.done = true;
                        return None;
                    }
                }
            }
        }
    }
}

/// First perfect matching (in enumeration order) whose removal leaves a
/// bipartite graph, with the bipartition of the remainder.
pub fn bipartizing_one_factor(g: &Multigraph) -> Result<Option<(PerfectMatching, Bipartition)>> {
    match g.regular_degree() {
        Some(d) if d % 2 == 1 => {}
        _ => {
            return Err(Error::Regularity(
                "bipartizing 1-factor needs a regular graph of odd degree".into(),
            ))
        }
    }
    for m in enumerate_perfect_matchings(g) {
        let (rest, _) = g.without_edges(&m.0)?;
        if let Bipartiteness::Bipartite(b) = is_bipartite(&rest) {
            return Ok(Some((m, b)));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "detail")]
pub enum Agreement {
    Agree,
    Disagree(String),
    /// A flow search ran out of budget.
    Undetermined,
}

/// Both sides of the bipartizing-factor characterization for one graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartizingFlowReport {
    pub t: usize,
    /// `2 + 2/(2t-1)`.
    pub bound: Rational,
    pub factor: Option<PerfectMatching>,
    /// Whether `+2t` / `-2t` on the two sides of `G - F` is balanced; this is
    /// the Jaeger weight of the bound, so a factor must give a balanced one.
    pub factor_valuation_balanced: Option<bool>,
    pub bipartite: bool,
    pub flow_at_bound: Verdict,
    /// Computed for non-bipartite graphs only.
    pub fc: Option<FcResult>,
    pub agreement: Agreement,
}

/// For a connected bridgeless `(2t+1)`-regular graph: a bipartizing 1-factor
/// exists iff there is a nowhere-zero `(2 + 2/(2t-1))`-flow, and for
/// non-bipartite graphs iff the circular flow number equals that bound.
pub fn check_bipartizing_flow_equivalence(
    g: &Multigraph,
    budget: &Budget,
) -> Result<BipartizingFlowReport> {
    let d = match g.regular_degree() {
        Some(d) if d % 2 == 1 => d,
        _ => return Err(Error::Regularity("expected odd regular degree".into())),
    };
    if !g.is_connected() || !bridges(g).is_empty() {
        return Err(Error::Domain("graph must be connected and bridgeless".into()));
    }
    let t = (d - 1) / 2;
    if t == 0 {
        return Err(Error::Regularity("degree must be at least 3".into()));
    }
    let bound = int(2) + Rational::new(2, 2 * t as i64 - 1);
    let found = bipartizing_one_factor(g)?;
    let factor_valuation_balanced = match &found {
        Some((_, sides)) => {
            let w = BalancedValuation::uniform(sides, int(2 * t as i64));
            Some(is_balanced_mincut(g, &w.0)?.is_balanced())
        }
        None => None,
    };
    let factor = found.map(|(m, _)| m);
    let bipartite = is_bipartite(g).is_bipartite();
    let flow_at_bound = has_nwz_flow(g, bound, budget).verdict;

    let mut problems = Vec::new();
    let mut undetermined = flow_at_bound == Verdict::Unknown;
    if factor_valuation_balanced == Some(false) {
        problems.push(format!("factor exists but ±{} on its sides is not balanced", 2 * t));
    }
    if !undetermined && factor.is_some() != (flow_at_bound == Verdict::Yes) {
        problems.push(format!(
            "factor {} but flow at {bound} is {flow_at_bound:?}",
            if factor.is_some() { "exists" } else { "absent" }
        ));
    }
    let fc = if bipartite {
        None
    } else {
        Some(circular_flow_number(g, g.n() as i64, budget)?)
    };
    if let Some(fc) = &fc {
        match (fc.status, fc.value) {
            (FcStatus::ExactWithinBound, Some(v)) => {
                if factor.is_some() != (v == bound) {
                    problems.push(format!(
                        "factor {} but F_c = {v}",
                        if factor.is_some() { "exists" } else { "absent" }
                    ));
                }
            }
            _ => undetermined = true,
        }
    }
    let agreement = if !problems.is_empty() {
        Agreement::Disagree(problems.join("; "))
    } else if undetermined {
        Agreement::Undetermined
    } else {
        Agreement::Agree
    };
    Ok(BipartizingFlowReport {
        t,
        bound,
        factor,
        factor_valuation_balanced,
        bipartite,
        flow_at_bound,
        fc,
        agreement,
    })
}
