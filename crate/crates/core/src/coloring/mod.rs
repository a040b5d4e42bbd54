//! Edge colorings, perfect matchings, and the bipartizing 1-factor.

mod matching;

pub use matching::{
    bipartizing_one_factor, check_bipartizing_flow_equivalence, enumerate_perfect_matchings,
    Agreement, BipartizingFlowReport, PerfectMatching, PerfectMatchings,
};

use std::fmt::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{odd_cut_obstruction, Cut, Multigraph, OddCutScan};

/// Proper edge coloring with colors `0..colors`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeColoring {
    pub colors: usize,
    pub of_edge: Vec<usize>,
}

impl EdgeColoring {
    pub fn is_proper(&self, g: &Multigraph) -> bool {
        if self.of_edge.len() != g.m() || self.of_edge.iter().any(|&c| c >= self.colors) {
            return false;
        }
        (0..g.n()).all(|v| {
            let mut seen = vec![false; self.colors];
            g.incident(v)
                .iter()
                .all(|&e| !std::mem::replace(&mut seen[self.of_edge[e]], true))
        })
    }

    /// `color <c>: <ids...>` per color class.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in 0..self.colors {
            let _ = write!(s, "color {c}:");
            for (e, _) in self.of_edge.iter().enumerate().filter(|(_, &x)| x == c) {
                let _ = write!(s, " {e}");
            }
            s.push('\n');
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChromaticIndex {
    Exact { chi: usize, coloring: EdgeColoring },
    /// Budget ran out; `lower <= chi' <= upper`.
    Unknown { lower: usize, upper: usize },
}

impl ChromaticIndex {
    pub fn value(&self) -> Option<usize> {
        match self {
            ChromaticIndex::Exact { chi, .. } => Some(*chi),
            ChromaticIndex::Unknown { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EdgeClass {
    #[serde(rename = "1")]
    Class1,
    #[serde(rename = "2")]
    Class2,
    #[serde(rename = "unknown")]
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassWitness {
    /// A coloring with `Δ` colors.
    Coloring(EdgeColoring),
    /// An odd set whose boundary is smaller than the degree.
    OddCut(Cut),
    /// Exhaustive search found no `Δ`-coloring.
    Exhausted,
    /// Search budget ran out.
    Budget,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub class: EdgeClass,
    pub witness: ClassWitness,
    pub nodes: u64,
}

/// Exact `χ'` by backtracking, trying `Δ, Δ+1, …, Δ+μ` colors.
///
/// Edges are colored in id order; an edge may open at most one color not yet
/// used anywhere. `max_nodes` bounds the total number of search nodes.
pub fn chromatic_index(g: &Multigraph, max_nodes: u64) -> Result<(ChromaticIndex, u64)> {
    let delta = g.max_degree();
    let upper = delta + g.max_multiplicity();
    if g.m() == 0 {
        let coloring = EdgeColoring {
            colors: 0,
            of_edge: Vec::new(),
        };
        return Ok((ChromaticIndex::Exact { chi: 0, coloring }, 0));
    }
    if upper > 64 {
        return Err(Error::SizeBound {
            what: "color count",
            size: upper,
            bound: 64,
        });
    }
    let mut nodes = 0;
    for c in delta..=upper {
        match color_with(g, c, max_nodes.saturating_sub(nodes)) {
            (Search::Found(coloring), used) => {
                nodes += used;
                return Ok((ChromaticIndex::Exact { chi: c, coloring }, nodes));
            }
            (Search::Impossible, used) => nodes += used,
            (Search::OutOfBudget, used) => {
                return Ok((ChromaticIndex::Unknown { lower: c, upper }, nodes + used));
            }
        }
    }
    Err(Error::Internal(format!(
        "no edge coloring with Δ + μ = {upper} colors"
    )))
}

/// Class 1 iff `χ' = Δ`. For regular graphs of odd degree an odd-cut
/// obstruction settles class 2 before any coloring search.
pub fn classify(g: &Multigraph, max_nodes: u64, odd_cut_bound: usize) -> Result<Classification> {
    let delta = g.max_degree();
    if let Some(r) = g.regular_degree() {
        if r % 2 == 1 {
            if let OddCutScan::Found(cut) = odd_cut_obstruction(g, odd_cut_bound)? {
                return Ok(Classification {
                    class: EdgeClass::Class2,
                    witness: ClassWitness::OddCut(cut),
                    nodes: 0,
                });
            }
        }
    }
    let (outcome, nodes) = color_with(g, delta, max_nodes);
    let (class, witness) = match outcome {
        Search::Found(c) => (EdgeClass::Class1, ClassWitness::Coloring(c)),
        Search::Impossible => (EdgeClass::Class2, ClassWitness::Exhausted),
        Search::OutOfBudget => (EdgeClass::Unknown, ClassWitness::Budget),
    };
    Ok(Classification {
        class,
        witness,
        nodes,
    })
}

enum Search {
    Found(EdgeColoring),
    Impossible,
    OutOfBudget,
}

/// Colors each component separately and merges the results.
fn color_with(g: &Multigraph, colors: usize, max_nodes: u64) -> (Search, u64) {
    let mut of_edge = vec![usize::MAX; g.m()];
    let mut nodes = 0u64;
    for comp in g.components() {
        let (sub, edge_map) = g.induced(&comp);
        if sub.m() == 0 {
            continue;
        }
        let mut bt = Backtrack::new(&sub, colors, max_nodes.saturating_sub(nodes));
        let res = bt.run();
        nodes += bt.nodes;
        match res {
            Some(true) => {
                for (i, &c) in bt.color.iter().enumerate() {
                    of_edge[edge_map[i]] = c as usize;
                }
            }
            Some(false) => return (Search::Impossible, nodes),
            None => return (Search::OutOfBudget, nodes),
        }
    }
    (Search::Found(EdgeColoring { colors, of_edge }), nodes)
}

struct Backtrack<'a> {
    g: &'a Multigraph,
    colors: usize,
    all: u64,
    /// colors present at each vertex
    used: Vec<u64>,
    color: Vec<u8>,
    nodes: u64,
    max_nodes: u64,
}

impl<'a> Backtrack<'a> {
    fn new(g: &'a Multigraph, colors: usize, max_nodes: u64) -> Self {
        Backtrack {
            g,
            colors,
            all: if colors == 64 { u64::MAX } else { (1u64 << colors) - 1 },
            used: vec![0; g.n()],
            color: vec![u8::MAX; g.m()],
            nodes: 0,
            max_nodes,
        }
    }

    /// `Some(found)` or `None` when out of budget.
    fn run(&mut self) -> Option<bool> {
        if self.g.max_degree() > self.colors {
            return Some(false);
        }
        self.step(0, 0)
    }

    fn available(&self, e: usize) -> u64 {
        let ed = self.g.edges()[e];
        self.all & !(self.used[ed.tail] | self.used[ed.head])
    }

    /// Every vertex can still receive enough distinct colors for its
    /// uncolored edges.
    fn vertex_ok(&self, v: usize, from: usize) -> bool {
        let mut open = 0u32;
        let mut union = 0u64;
        for &e in self.g.incident(v) {
            if e >= from {
                let a = self.available(e);
                if a == 0 {
                    return false;
                }
                open += 1;
                union |= a;
            }
        }
        union.count_ones() >= open
    }

    fn step(&mut self, e: usize, opened: usize) -> Option<bool> {
        if e == self.g.m() {
            return Some(true);
        }
        let Some(ed) = self.g.edges().get(e).copied() else {
            unreachable!()
        };
        let limit = (opened + 1).min(self.colors);
        let mut cand = self.available(e) & ((1u64 << limit) - 1);
        while cand != 0 {
            let c = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            self.nodes += 1;
            if self.nodes > self.max_nodes {
                return None;
            }
            let bit = 1u64 << c;
            self.used[ed.tail] |= bit;
            self.used[ed.head] |= bit;
            self.color[e] = c as u8;
            if self.vertex_ok(ed.tail, e + 1) && self.vertex_ok(ed.head, e + 1) {
                match self.step(e + 1, opened.max(c + 1)) {
                    Some(false) => {}
                    other => return other,
                }
            }
            self.used[ed.tail] &= !bit;
            self.used[ed.head] &= !bit;
            self.color[e] = u8::MAX;
        }
        Some(false)
    }
}
