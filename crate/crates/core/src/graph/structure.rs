//! Cuts, bipartiteness, bridges and odd-cut obstructions.

use serde::Serialize;

use super::{Multigraph, VertexSet};
use crate::error::{Error, Result};

/// Vertex bound for exhaustive subset scans.
pub const DEFAULT_SUBSET_BOUND: usize = 20;

/// The edge boundary of a vertex set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cut {
    pub source: VertexSet,
    pub edges: Vec<usize>,
}

impl Cut {
    pub fn size(&self) -> usize {
        self.edges.len()
    }
}

/// Two disjoint vertex classes covering `V` with every edge joining them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bipartition {
    pub a: VertexSet,
    pub b: VertexSet,
}

impl Bipartition {
    /// Checks disjointness, coverage, and that every edge crosses.
    pub fn is_valid_for(&self, g: &Multigraph) -> bool {
        self.a.universe() == g.n()
            && self.b.universe() == g.n()
            && (0..g.n()).all(|v| self.a.contains(v) != self.b.contains(v))
            && g
                .edges()
                .iter()
                .all(|e| self.a.contains(e.tail) != self.a.contains(e.head))
    }
}

/// A closed walk of odd length: `vertices[i]` and `vertices[i + 1]` (cyclically)
/// are the ends of `edges[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddCycle {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bipartiteness {
    Bipartite(Bipartition),
    NotBipartite(OddCycle),
}

impl Bipartiteness {
    pub fn bipartition(&self) -> Option<&Bipartition> {
        match self {
            Bipartiteness::Bipartite(b) => Some(b),
            Bipartiteness::NotBipartite(_) => None,
        }
    }

    pub fn is_bipartite(&self) -> bool {
        matches!(self, Bipartiteness::Bipartite(_))
    }
}

pub fn boundary(g: &Multigraph, x: &VertexSet) -> Cut {
    let edges = g
        .edges()
        .iter()
        .filter(|e| x.contains(e.tail) != x.contains(e.head))
        .map(|e| e.id)
        .collect();
    Cut {
        source: x.clone(),
        edges,
    }
}

/// BFS 2-coloring; class `a` holds the root of every component.
pub fn is_bipartite(g: &Multigraph) -> Bipartiteness {
    let n = g.n();
    let mut side = vec![u8::MAX; n];
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut depth = vec![0usize; n];
    for root in 0..n {
        if side[root] != u8::MAX {
            continue;
        }
        side[root] = 0;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &id in g.incident(v) {
                let w = g.edges()[id].other(v);
                if side[w] == u8::MAX {
                    side[w] = 1 - side[v];
                    parent[w] = Some((v, id));
                    depth[w] = depth[v] + 1;
                    queue.push_back(w);
                } else if side[w] == side[v] {
                    return Bipartiteness::NotBipartite(odd_cycle(&parent, &depth, v, w, id));
                }
            }
        }
    }
    let a = VertexSet::from_vertices(n, (0..n).filter(|&v| side[v] == 0));
    let b = a.complement();
    Bipartiteness::Bipartite(Bipartition { a, b })
}

/// Cycle through the BFS tree paths from `v` and `w` to their meeting point,
/// closed by the conflicting edge `w -> v`.
fn odd_cycle(
    parent: &[Option<(usize, usize)>],
    depth: &[usize],
    v: usize,
    w: usize,
    closing: usize,
) -> OddCycle {
    let (mut x, mut y) = (v, w);
    let mut left = vec![];
    let mut right = vec![];
    while x != y {
        if depth[x] >= depth[y] {
            let (p, e) = parent[x].expect("non-root has parent");
            left.push((x, e));
            x = p;
        } else {
            let (p, e) = parent[y].expect("non-root has parent");
            right.push((y, e));
            y = p;
        }
    }
    // walk: v .. up to lca, then down to w, then closing edge back to v
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for &(u, e) in &left {
        vertices.push(u);
        edges.push(e);
    }
    vertices.push(x);
    for &(u, e) in right.iter().rev() {
        edges.push(e);
        vertices.push(u);
    }
    edges.push(closing);
    OddCycle { vertices, edges }
}

/// Cut edges, in increasing id order. Parallel edges are never bridges.
pub fn bridges(g: &Multigraph) -> Vec<usize> {
    struct State<'a> {
        g: &'a Multigraph,
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        out: Vec<usize>,
    }
    fn dfs(s: &mut State, v: usize, via: Option<usize>) {
        s.time += 1;
        s.disc[v] = s.time;
        s.low[v] = s.time;
        for &id in s.g.incident(v) {
            if Some(id) == via {
                continue;
            }
            let w = s.g.edges()[id].other(v);
            if s.disc[w] == 0 {
                dfs(s, w, Some(id));
                s.low[v] = s.low[v].min(s.low[w]);
                if s.low[w] > s.disc[v] {
                    s.out.push(id);
                }
            } else {
                s.low[v] = s.low[v].min(s.disc[w]);
            }
        }
    }
    let mut s = State {
        g,
        disc: vec![0; g.n()],
        low: vec![0; g.n()],
        time: 0,
        out: Vec::new(),
    };
    for v in 0..g.n() {
        if s.disc[v] == 0 {
            dfs(&mut s, v, None);
        }
    }
    s.out.sort_unstable();
    s.out
}

/// Outcome of the odd-cut scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OddCutScan {
    /// An odd set with boundary below the degree.
    Found(Cut),
    /// Exhaustive scan found nothing.
    None,
    /// The graph exceeds the scan bound.
    NotAttempted { n: usize, bound: usize },
}

impl OddCutScan {
    pub fn found(&self) -> Option<&Cut> {
        match self {
            OddCutScan::Found(c) => Some(c),
            _ => None,
        }
    }
}

/// Searches for an odd vertex set `X` with `|∂X|` below the regular degree.
///
/// Among all such sets the one returned minimizes `|∂X|`, then `|X|`, then
/// the sorted member list lexicographically. Graphs with more than `bound`
/// vertices are not scanned.
pub fn odd_cut_obstruction(g: &Multigraph, bound: usize) -> Result<OddCutScan> {
    let r = match g.regular_degree() {
        Some(r) if r % 2 == 1 => r,
        _ => {
            return Err(Error::Regularity(
                "odd-cut scan needs a regular graph of odd degree".into(),
            ))
        }
    };
    let n = g.n();
    if n > bound.min(63) {
        return Ok(OddCutScan::NotAttempted { n, bound });
    }
    let masks = g.edge_masks();
    let mut best: Option<(usize, u32, u64)> = None;
    for x in 1u64..(1u64 << n) {
        let size = x.count_ones();
        if size % 2 == 0 {
            continue;
        }
        let mut cut = 0usize;
        for &(a, b) in &masks {
            cut += usize::from(((x & a) != 0) != ((x & b) != 0));
        }
        if cut >= r {
            continue;
        }
        let better = match best {
            None => true,
            Some((bc, bs, bx)) => {
                (cut, size) < (bc, bs) || ((cut, size) == (bc, bs) && lex_less(x, bx))
            }
        };
        if better {
            best = Some((cut, size, x));
        }
    }
    Ok(match best {
        Some((_, _, x)) => OddCutScan::Found(boundary(g, &VertexSet::from_mask(n, x))),
        None => OddCutScan::None,
    })
}

/// Lexicographic order of sorted member lists, for sets of equal size: the set
/// holding the smallest element of the symmetric difference comes first.
fn lex_less(x: u64, y: u64) -> bool {
    let d = x ^ y;
    d != 0 && x & (d & d.wrapping_neg()) != 0
}

/// True iff `g` is `(2t+1)`-regular and every odd vertex set has at least
/// `2t+1` boundary edges.
pub fn is_t_graph(g: &Multigraph, t: usize, bound: usize) -> Result<bool> {
    if t == 0 || g.regular_degree() != Some(2 * t + 1) {
        return Err(Error::Regularity(format!("expected a {}-regular graph", 2 * t + 1)));
    }
    match odd_cut_obstruction(g, bound)? {
        OddCutScan::Found(_) => Ok(false),
        OddCutScan::None => Ok(true),
        OddCutScan::NotAttempted { n, bound } => Err(Error::SizeBound {
            what: "odd-cut scan order",
            size: n,
            bound,
        }),
    }
}
