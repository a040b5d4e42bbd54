//! The circular flow number via a ladder of candidate rationals.

use std::time::Instant;

use num_traits::Zero;
use serde::Serialize;

use super::{has_nwz_flow, Budget, FlowAssignment, SearchStats, Verdict};
use crate::error::{Error, Result};
use crate::graph::{bridges, Multigraph};
use crate::rational::{int, Rational};

/// Upper end of the candidate ladder. Every bridgeless graph has a 6-flow.
pub const LADDER_CEILING: i64 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FcStatus {
    /// Exact among rationals whose denominator is at most the bound.
    ExactWithinBound,
    /// The search ran out of budget; `value` is the largest refuted candidate.
    LowerBoundOnly,
    /// The graph has a bridge, so no nowhere-zero flow exists.
    UndefinedBridge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FcResult {
    /// For `ExactWithinBound` the flow number; for `LowerBoundOnly` the
    /// largest refuted candidate (absent if none was refuted).
    pub value: Option<Rational>,
    pub status: FcStatus,
    pub denom_bound: i64,
    /// A flow at `value` (exact) or at the best known upper bound.
    pub witness: Option<FlowAssignment>,
    /// Smallest candidate known to admit a flow, when not exact.
    pub upper: Option<Rational>,
    /// The ladder candidate just below `value`, refuted by the solver.
    pub refused: Option<Rational>,
    pub stats: SearchStats,
}

/// All rationals `p/q` in `[2, 6]` with `q <= max_den`, ascending, without repeats.
pub fn candidate_ladder(max_den: i64) -> Vec<Rational> {
    let mut v: Vec<Rational> = (1..=max_den.max(1))
        .flat_map(|q| (2 * q..=LADDER_CEILING * q).map(move |p| Rational::new(p, q)))
        .collect();
    v.sort();
    v.dedup();
    v
}

/// Least ladder candidate admitting a nowhere-zero flow.
///
/// Flow existence is monotone in `r`, so the ladder is binary searched. A
/// disconnected graph takes the maximum over its components.
pub fn circular_flow_number(g: &Multigraph, max_den: i64, budget: &Budget) -> Result<FcResult> {
    let start = Instant::now();
    if !bridges(g).is_empty() {
        return Ok(FcResult {
            value: None,
            status: FcStatus::UndefinedBridge,
            denom_bound: max_den,
            witness: None,
            upper: None,
            refused: None,
            stats: SearchStats::default(),
        });
    }
    let comps: Vec<Vec<usize>> = g
        .components()
        .into_iter()
        .filter(|c| c.iter().any(|&v| !g.incident(v).is_empty()))
        .collect();
    if comps.len() <= 1 {
        let mut res = connected_fc(g, max_den, budget)?;
        res.stats.elapsed = start.elapsed();
        return Ok(res);
    }

    let mut parts = Vec::new();
    for comp in &comps {
        let (sub, edge_map) = g.induced(comp);
        parts.push((connected_fc(&sub, max_den, budget)?, edge_map));
    }
    let nodes = parts.iter().map(|(p, _)| p.stats.nodes).sum();
    let stats = SearchStats {
        nodes,
        elapsed: start.elapsed(),
    };
    if parts.iter().any(|(p, _)| p.status == FcStatus::LowerBoundOnly) {
        let value = parts.iter().filter_map(|(p, _)| p.value.or(p.refused)).max();
        return Ok(FcResult {
            value,
            status: FcStatus::LowerBoundOnly,
            denom_bound: max_den,
            witness: None,
            upper: None,
            refused: None,
            stats,
        });
    }
    let (top, _) = parts
        .iter()
        .max_by_key(|(p, _)| p.value)
        .expect("at least two components");
    let value = top.value.expect("exact component value");
    // each component flow is also a flow at the maximum
    let mut values = vec![Rational::zero(); g.m()];
    for (p, edge_map) in &parts {
        let w = p.witness.as_ref().expect("exact result has a witness");
        for (i, v) in w.values.iter().enumerate() {
            values[edge_map[i]] = *v;
        }
    }
    Ok(FcResult {
        value: Some(value),
        status: FcStatus::ExactWithinBound,
        denom_bound: max_den,
        witness: Some(FlowAssignment { r: value, values }),
        upper: None,
        refused: top.refused,
        stats,
    })
}

fn connected_fc(g: &Multigraph, max_den: i64, budget: &Budget) -> Result<FcResult> {
    let ladder = candidate_ladder(max_den);
    let mut nodes = 0u64;
    let mut probe = |r: Rational| {
        let d = has_nwz_flow(g, r, budget);
        nodes += d.stats.nodes;
        d
    };

    let top = ladder.len() - 1;
    let ceiling = probe(ladder[top]);
    let mut best = match ceiling.verdict {
        Verdict::Yes => ceiling.certificate,
        Verdict::No => {
            return Err(Error::Internal(format!(
                "bridgeless graph refuted at r = {}",
                LADDER_CEILING
            )))
        }
        Verdict::Unknown => None,
    };
    // ladder[hi] has a flow, ladder[lo] does not (lo = -1: nothing refuted yet)
    let mut hi = top as isize;
    let mut lo: isize = -1;
    let mut exhausted = best.is_none();
    while !exhausted && hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        let d = probe(ladder[mid as usize]);
        match d.verdict {
            Verdict::Yes => {
                hi = mid;
                best = d.certificate;
            }
            Verdict::No => lo = mid,
            Verdict::Unknown => exhausted = true,
        }
    }
    let lo = usize::try_from(lo).ok();
    let stats = SearchStats {
        nodes,
        elapsed: Default::default(),
    };
    if exhausted {
        return Ok(FcResult {
            value: lo.map(|l| ladder[l]),
            status: FcStatus::LowerBoundOnly,
            denom_bound: max_den,
            upper: best.as_ref().map(|b| b.r),
            witness: best,
            refused: None,
            stats,
        });
    }
    let value = ladder[hi as usize];
    debug_assert!(value >= int(2));
    Ok(FcResult {
        value: Some(value),
        status: FcStatus::ExactWithinBound,
        denom_bound: max_den,
        witness: best,
        upper: None,
        refused: lo.map(|l| ladder[l]),
        stats,
    })
}
