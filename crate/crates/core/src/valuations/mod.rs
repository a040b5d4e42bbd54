//! Balanced valuations.
//!
//! A vertex weighting `w` is balanced when `|w(X)| <= |∂X|` for every vertex
//! set `X`. For `r > 2`, `G` has a nowhere-zero `r`-flow iff it has a balanced
//! valuation of the form `w(v) = k_v * r / (r - 2)` with `k_v ≡ deg(v) (mod 2)`.
//! Balance is checked either by scanning all subsets or with one s-t min cut
//! per sign.

mod maxflow;

use std::fmt::Write;

use num_traits::{One, Signed};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::flows::{normalize_positive, FlowAssignment};
use crate::graph::{Bipartition, Multigraph, VertexSet};
use crate::rational::{common_denominator, fmt_pq, int, parse_rational, Rational};

use maxflow::Network;

/// Default vertex bound for [`refute_flow_by_valuation`].
pub const DEFAULT_REFUTE_BOUND: usize = 12;

/// Per-vertex weights. Balance is a property to check, not an invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalancedValuation(pub Vec<Rational>);

impl BalancedValuation {
    pub fn uniform(bip: &Bipartition, c: Rational) -> Self {
        let n = bip.a.universe();
        BalancedValuation((0..n).map(|v| if bip.a.contains(v) { c } else { -c }).collect())
    }

    /// One `<v> <p>/<q>` line per vertex.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (v, w) in self.0.iter().enumerate() {
            let _ = writeln!(s, "{v} {}", fmt_pq(w));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut out = Vec::new();
        for (i, l) in text.lines().enumerate() {
            let l = l.trim();
            if l.is_empty() || l.starts_with('#') {
                continue;
            }
            let err = |msg: String| Error::Parse { line: i + 1, msg };
            let (v, w) = l
                .split_once(char::is_whitespace)
                .ok_or_else(|| err("expected `<v> <p>/<q>`".into()))?;
            let v: usize = v.parse().map_err(|_| err(format!("bad vertex {v:?}")))?;
            if v != out.len() {
                return Err(err(format!("vertices must be listed in order; got {v}")));
            }
            out.push(parse_rational(w).map_err(|e| err(e.to_string()))?);
        }
        Ok(BalancedValuation(out))
    }
}

/// `w(v) = k_v * r / (r - 2)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JaegerForm {
    #[serde(with = "crate::rational::json")]
    pub r: Rational,
    pub k: Vec<i64>,
}

impl JaegerForm {
    pub fn valuation(&self) -> Result<BalancedValuation> {
        let c = r_to_weight(self.r)?;
        Ok(BalancedValuation(self.k.iter().map(|&k| int(k) * c).collect()))
    }

    pub fn parity_ok(&self, g: &Multigraph) -> bool {
        self.k.len() == g.n()
            && self
                .k
                .iter()
                .zip(g.degrees())
                .all(|(&k, d)| (k - d as i64).rem_euclid(2) == 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Balance {
    Balanced,
    /// A set with `|w(X)| > |∂X|`.
    Violated(VertexSet),
}

impl Balance {
    pub fn is_balanced(&self) -> bool {
        matches!(self, Balance::Balanced)
    }
}

/// `r / (r - 2)`, for `r > 2`.
pub fn r_to_weight(r: Rational) -> Result<Rational> {
    if r <= int(2) {
        return Err(Error::Domain(format!("r = {r} must exceed 2")));
    }
    Ok(r / (r - int(2)))
}

/// `2c / (c - 1)`, for `c > 1`; inverse of [`r_to_weight`].
pub fn weight_to_r(c: Rational) -> Result<Rational> {
    if c <= Rational::one() {
        return Err(Error::Domain(format!("weight {c} must exceed 1")));
    }
    Ok(int(2) * c / (c - Rational::one()))
}

fn scaled(w: &[Rational]) -> (i64, Vec<i64>) {
    let d = common_denominator(w);
    let ints = w.iter().map(|x| (x * int(d)).to_integer()).collect();
    (d, ints)
}

fn check_len(g: &Multigraph, w: &[Rational]) -> Result<()> {
    if w.len() != g.n() {
        return Err(Error::EdgeMismatch(format!(
            "{} weights for {} vertices",
            w.len(),
            g.n()
        )));
    }
    Ok(())
}

/// Exhaustive check. A nonzero total weight is reported at `X = V`;
/// otherwise only subsets omitting the last vertex are scanned (complements
/// give the rest) and the violator with the smallest bitmask is returned.
pub fn is_balanced_brute(g: &Multigraph, w: &[Rational], bound: usize) -> Result<Balance> {
    check_len(g, w)?;
    let n = g.n();
    if n > bound.min(30) {
        return Err(Error::SizeBound {
            what: "brute-force balance check order",
            size: n,
            bound,
        });
    }
    if n == 0 {
        return Ok(Balance::Balanced);
    }
    let (d, ws) = scaled(w);
    // with a zero total, X and its complement have opposite sums
    if ws.iter().sum::<i64>() != 0 {
        return Ok(Balance::Violated(VertexSet::full(n)));
    }
    let half = 1usize << (n - 1);
    let mut sum = vec![0i64; half];
    let mut cut = vec![0i64; half];
    for mask in 1..half {
        let v = mask.trailing_zeros() as usize;
        let prev = mask & (mask - 1);
        let inside = g
            .incident(v)
            .iter()
            .filter(|&&e| prev >> g.edges()[e].other(v) & 1 == 1)
            .count() as i64;
        sum[mask] = sum[prev] + ws[v];
        cut[mask] = cut[prev] + g.incident(v).len() as i64 - 2 * inside;
        if sum[mask].abs() > d * cut[mask] {
            return Ok(Balance::Violated(VertexSet::from_mask(n, mask as u64)));
        }
    }
    Ok(Balance::Balanced)
}

/// Decides balance with two s-t min cuts (one per sign of `w`).
///
/// With weights scaled to integers `W`, the network has `s -> v` of capacity
/// `W(v)` for positive weights, `v -> t` of capacity `-W(v)` for negative
/// ones, and both directions of every edge with the scale factor as capacity.
/// Then `min_X (scale * |∂X| - W(X)) = mincut - sum of positive W`.
pub fn is_balanced_mincut(g: &Multigraph, w: &[Rational]) -> Result<Balance> {
    check_len(g, w)?;
    let (d, ws) = scaled(w);
    for sign in [1i64, -1] {
        if let Some(x) = min_cut_violator(g, d, ws.iter().map(|&x| sign * x)) {
            return Ok(Balance::Violated(x));
        }
    }
    Ok(Balance::Balanced)
}

fn min_cut_violator(g: &Multigraph, d: i64, ws: impl Iterator<Item = i64>) -> Option<VertexSet> {
    let n = g.n();
    let (s, t) = (n, n + 1);
    let mut net = Network::new(n + 2);
    let mut positive = 0i64;
    for (v, x) in ws.enumerate() {
        if x > 0 {
            net.add(s, v, x, 0);
            positive += x;
        } else if x < 0 {
            net.add(v, t, -x, 0);
        }
    }
    for e in g.edges() {
        net.add(e.tail, e.head, d, d);
    }
    let cut = net.max_flow(s, t);
    if cut - positive < 0 {
        let side = net.source_side(s);
        Some(VertexSet::from_vertices(n, (0..n).filter(|&v| side[v])))
    } else {
        None
    }
}

/// Builds the Jaeger-form valuation of a flow: with all values made positive,
/// `k_v` is out-degree minus in-degree. The result is checked for parity and
/// balance before it is returned.
pub fn flow_to_valuation(
    g: &Multigraph,
    f: &FlowAssignment,
) -> Result<(BalancedValuation, JaegerForm)> {
    let c = r_to_weight(f.r)?;
    let (orientation, _) = normalize_positive(g, f)?;
    let form = JaegerForm {
        r: f.r,
        k: orientation.net_out_degree(g),
    };
    let val = BalancedValuation(form.k.iter().map(|&k| int(k) * c).collect());
    if !form.parity_ok(g) {
        return Err(Error::Correspondence("k_v parity differs from degree parity".into()));
    }
    if let Balance::Violated(x) = is_balanced_mincut(g, &val.0)? {
        return Err(Error::Correspondence(format!(
            "valuation of the flow is unbalanced at {:?}",
            x.to_vec()
        )));
    }
    Ok((val, form))
}

/// Largest `c >= 0` such that `+c` on `A`, `-c` on `B` is balanced: the
/// minimum of `|∂X| / ||X∩A| - |X∩B||` over all sets where the counts differ.
pub fn max_uniform_weight(g: &Multigraph, bip: &Bipartition, bound: usize) -> Result<Rational> {
    let n = g.n();
    if n > bound.min(30) {
        return Err(Error::SizeBound {
            what: "uniform weight scan order",
            size: n,
            bound,
        });
    }
    let a_mask = bip.a.iter().fold(0usize, |m, v| m | 1 << v);
    let full = 1usize << n;
    let mut cut = vec![0i64; full];
    let mut best: Option<Rational> = None;
    for mask in 1..full {
        let v = mask.trailing_zeros() as usize;
        let prev = mask & (mask - 1);
        let inside = g
            .incident(v)
            .iter()
            .filter(|&&e| prev >> g.edges()[e].other(v) & 1 == 1)
            .count() as i64;
        cut[mask] = cut[prev] + g.incident(v).len() as i64 - 2 * inside;
        let a = (mask & a_mask).count_ones() as i64;
        let b = mask.count_ones() as i64 - a;
        if a != b {
            let ratio = Rational::new(cut[mask], (a - b).abs());
            if best.is_none_or(|x| ratio < x) {
                best = Some(ratio);
            }
        }
    }
    best.ok_or_else(|| Error::Domain("no vertex set separates the classes".into()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Refutation {
    /// No balanced Jaeger-form valuation exists, so there is no nowhere-zero `r`-flow.
    Refuted,
    /// A balanced Jaeger-form valuation was found.
    NotRefuted(JaegerForm),
}

impl Refutation {
    pub fn is_refuted(&self) -> bool {
        matches!(self, Refutation::Refuted)
    }
}

/// Searches all Jaeger-form valuations for `r` (`k_v` of the parity of
/// `deg(v)`, `|k_v| <= deg(v)`), checking every subset of the assigned
/// vertices as soon as its last member is fixed.
pub fn refute_flow_by_valuation(g: &Multigraph, r: Rational, bound: usize) -> Result<Refutation> {
    let c = r_to_weight(r)?;
    let n = g.n();
    if n > bound.min(24) {
        return Err(Error::SizeBound {
            what: "valuation refutation order",
            size: n,
            bound,
        });
    }
    let (cn, cd) = (*c.numer(), *c.denom());
    let full = 1usize << n;
    let mut cut = vec![0i64; full];
    for mask in 1..full {
        let v = mask.trailing_zeros() as usize;
        let prev = mask & (mask - 1);
        let inside = g
            .incident(v)
            .iter()
            .filter(|&&e| prev >> g.edges()[e].other(v) & 1 == 1)
            .count() as i64;
        cut[mask] = cut[prev] + g.incident(v).len() as i64 - 2 * inside;
    }
    let choices: Vec<Vec<i64>> = g
        .degrees()
        .into_iter()
        .map(|d| {
            let d = d as i64;
            let mut ks = Vec::new();
            let mut k = d % 2;
            while k <= d {
                ks.push(k);
                if k != 0 {
                    ks.push(-k);
                }
                k += 2;
            }
            ks
        })
        .collect();

    struct Ctx<'a> {
        cut: &'a [i64],
        choices: &'a [Vec<i64>],
        cn: i64,
        cd: i64,
        ksum: Vec<i64>,
        k: Vec<i64>,
    }
    fn place(cx: &mut Ctx, v: usize) -> bool {
        if v == cx.choices.len() {
            return true;
        }
        let low = 1usize << v;
        for i in 0..cx.choices[v].len() {
            let kv = cx.choices[v][i];
            // negating every k_v preserves balance
            if v == 0 && kv < 0 {
                continue;
            }
            let ok = (0..low).all(|m| {
                let x = m | low;
                let s = cx.ksum[m] + kv;
                cx.ksum[x] = s;
                s.abs() * cx.cn <= cx.cd * cx.cut[x]
            });
            if ok {
                cx.k[v] = kv;
                if place(cx, v + 1) {
                    return true;
                }
            }
        }
        false
    }
    let mut cx = Ctx {
        cut: &cut,
        choices: &choices,
        cn,
        cd,
        ksum: vec![0; full],
        k: vec![0; n],
    };
    Ok(if place(&mut cx, 0) {
        Refutation::NotRefuted(JaegerForm { r, k: cx.k })
    } else {
        Refutation::Refuted
    })
}

/// Whether `X` violates the balance inequality for `w`.
pub fn violates(g: &Multigraph, w: &[Rational], x: &VertexSet) -> bool {
    let sum: Rational = x.iter().map(|v| w[v]).sum();
    let cut = crate::graph::boundary(g, x).size();
    sum.abs() > int(cut as i64)
}
