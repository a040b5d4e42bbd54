//! Nowhere-zero `r`-flows with exact rational values.
//!
//! A [`FlowAssignment`] stores one signed value per edge, relative to the
//! edge's reference direction. It is a nowhere-zero `r`-flow when every value
//! satisfies `1 <= |value| <= r - 1` and the signed sum at every vertex is
//! zero. [`has_nwz_flow`] decides existence for rational `r`, and
//! [`circular_flow_number`] searches a ladder of rationals for the least `r`.

mod number;
mod solver;

pub use number::{candidate_ladder, circular_flow_number, FcResult, FcStatus};
pub use solver::has_nwz_flow;

use std::fmt::Write;
use std::time::Duration;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::rational::{fmt_pq, int, parse_rational, Rational};

/// Per-edge direction: `+1` keeps the stored reference direction, `-1` reverses it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Orientation(pub Vec<i8>);

impl Orientation {
    /// Out-degree minus in-degree at every vertex.
    pub fn net_out_degree(&self, g: &Multigraph) -> Vec<i64> {
        let mut net = vec![0i64; g.n()];
        for (e, &s) in g.edges().iter().zip(&self.0) {
            let (tail, head) = if s > 0 { (e.tail, e.head) } else { (e.head, e.tail) };
            net[tail] += 1;
            net[head] -= 1;
        }
        net
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowAssignment {
    pub r: Rational,
    pub values: Vec<Rational>,
}

impl FlowAssignment {
    /// Text block: `flow r=<p>/<q>` then `<edge-id> <sign><m>/<k>` per edge,
    /// where `k` is the denominator of `r`.
    pub fn to_text(&self) -> String {
        let k = *self.r.denom();
        let mut s = format!("flow r={}\n", fmt_pq(&self.r));
        for (id, v) in self.values.iter().enumerate() {
            let scaled = v * int(k);
            let (sign, m) = if v.is_negative() { ('-', -scaled) } else { ('+', scaled) };
            if m.is_integer() {
                let _ = writeln!(s, "{id} {sign}{}/{k}", m.to_integer());
            } else {
                // value is not a multiple of 1/k; write it reduced
                let _ = writeln!(s, "{id} {sign}{}", fmt_pq(&v.abs()));
            }
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 0,
            msg: "empty certificate".into(),
        })?;
        let r = header
            .strip_prefix("flow r=")
            .ok_or_else(|| Error::Parse {
                line: hline,
                msg: "expected `flow r=<p>/<q>`".into(),
            })
            .and_then(|s| {
                parse_rational(s).map_err(|e| Error::Parse {
                    line: hline,
                    msg: e.to_string(),
                })
            })?;
        let mut values = Vec::new();
        for (line, l) in lines {
            let err = |msg: String| Error::Parse { line, msg };
            let (id, val) = l
                .split_once(char::is_whitespace)
                .ok_or_else(|| err("expected `<edge-id> <value>`".into()))?;
            let id: usize = id.parse().map_err(|_| err(format!("bad edge id {id:?}")))?;
            if id != values.len() {
                return Err(err(format!("edge ids must be listed in order; got {id}")));
            }
            values.push(parse_rational(val.trim()).map_err(|e| err(e.to_string()))?);
        }
        Ok(FlowAssignment { r, values })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Yes,
    No,
    /// The search budget ran out before a decision.
    Unknown,
}

/// Limits for one search. Exhausting either one yields [`Verdict::Unknown`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: u64,
    pub time_limit: Option<Duration>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_nodes: 1_000_000_000,
            time_limit: None,
        }
    }
}

impl Budget {
    pub fn nodes(max_nodes: u64) -> Self {
        Budget {
            max_nodes,
            time_limit: None,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowDecision {
    pub verdict: Verdict,
    pub certificate: Option<FlowAssignment>,
    pub stats: SearchStats,
}

/// Checks the range and conservation conditions exactly.
pub fn verify_flow(g: &Multigraph, f: &FlowAssignment) -> Result<bool> {
    if f.values.len() != g.m() {
        return Err(Error::EdgeMismatch(format!(
            "{} values for {} edges",
            f.values.len(),
            g.m()
        )));
    }
    let upper = f.r - Rational::one();
    if f.values.iter().any(|v| {
        let a = v.abs();
        a < Rational::one() || a > upper
    }) {
        return Ok(false);
    }
    let mut balance = vec![Rational::zero(); g.n()];
    for (e, v) in g.edges().iter().zip(&f.values) {
        balance[e.tail] += v;
        balance[e.head] -= v;
    }
    Ok(balance.iter().all(Zero::is_zero))
}

/// Reorients every negative edge so all values become positive.
pub fn normalize_positive(
    g: &Multigraph,
    f: &FlowAssignment,
) -> Result<(Orientation, Vec<Rational>)> {
    if !verify_flow(g, f)? {
        return Err(Error::InvalidFlow("assignment fails range or conservation".into()));
    }
    let signs = f
        .values
        .iter()
        .map(|v| if v.is_negative() { -1 } else { 1 })
        .collect();
    let values = f.values.iter().map(Signed::abs).collect();
    Ok((Orientation(signs), values))
}
