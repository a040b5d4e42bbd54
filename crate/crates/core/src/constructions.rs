//! Graph families: standard small graphs, the multi-edge gadgets and their
//! gluing, and the Petersen family with added copies of a 1-factor.
//!
//! Every constructor that builds a graph with a promised property checks that
//! property before returning and reports [`Error::Internal`] otherwise.

use std::sync::OnceLock;

use serde::Serialize;

use crate::coloring::enumerate_perfect_matchings;
use crate::error::{Error, Result};
use crate::graph::{
    boundary, is_t_graph, odd_cut_obstruction, Bipartition, Multigraph, OddCutScan, VertexSet,
    DEFAULT_SUBSET_BOUND,
};
use crate::rational::{int, Rational};
use crate::valuations::{is_balanced_brute, is_balanced_mincut, BalancedValuation};

pub fn complete_graph(n: usize) -> Multigraph {
    let mut g = Multigraph::new(n);
    for i in 0..n {
        for j in i + 1..n {
            g.add_edge(i, j).expect("valid ids");
        }
    }
    g
}

/// Parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Multigraph {
    let mut g = Multigraph::new(a + b);
    for i in 0..a {
        for j in a..a + b {
            g.add_edge(i, j).expect("valid ids");
        }
    }
    g
}

pub fn cycle_graph(n: usize) -> Multigraph {
    let mut g = Multigraph::new(n);
    for i in 0..n {
        g.add_edge(i, (i + 1) % n).expect("valid ids");
    }
    g
}

/// Outer 5-cycle `0..5`, spokes `i - i+5`, inner pentagram on `5..10`; edges
/// in that order.
pub fn petersen() -> Multigraph {
    let mut g = Multigraph::new(10);
    for i in 0..5 {
        g.add_edge(i, (i + 1) % 5).expect("valid ids");
    }
    for i in 0..5 {
        g.add_edge(i, i + 5).expect("valid ids");
    }
    for i in 0..5 {
        g.add_edge(5 + i, 5 + (i + 2) % 5).expect("valid ids");
    }
    g
}

/// Vertex ids of one gadget inside a larger graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GadgetLabels {
    pub u: usize,
    pub v: usize,
    pub x: usize,
}

fn check_t(t: usize, min: usize) -> Result<()> {
    if t < min {
        return Err(Error::Domain(format!("t = {t} must be at least {min}")));
    }
    Ok(())
}

/// Two vertices joined by `2t + 1` parallel edges.
pub fn k2_multi(t: usize) -> Result<Multigraph> {
    check_t(t, 1)?;
    Multigraph::from_edges(2, &vec![(0, 1); 2 * t + 1])
}

/// `k2_multi(t)` with edge 0 subdivided by a new vertex `x = 2`: degrees
/// `(2t+1, 2t+1, 2)`. Edge 0 becomes `u - x`, the last edge is `x - v`.
pub fn h_gadget(t: usize) -> Result<(Multigraph, GadgetLabels)> {
    let g = k2_multi(t)?.subdivide(0)?;
    Ok((g, GadgetLabels { u: 0, v: 1, x: 2 }))
}

/// Attaches one `h_gadget(t)` to every vertex of a `(2t-1)`-regular base,
/// identifying the gadget's degree-2 vertex with the base vertex.
///
/// Base vertices keep ids `0..n`; gadget `i` gets `u = n + 2i` and
/// `v = n + 2i + 1`. Base edges come first, then each gadget's edges in
/// gadget order. The result is `(2t+1)`-regular and each gadget triple has a
/// boundary of `2t - 1` edges, an odd cut below the degree.
pub fn glue_gadgets(base: &Multigraph, t: usize) -> Result<(Multigraph, Vec<GadgetLabels>)> {
    check_t(t, 2)?;
    let n = base.n();
    if n == 0 || base.regular_degree() != Some(2 * t - 1) {
        return Err(Error::Regularity(format!(
            "base must be {}-regular",
            2 * t - 1
        )));
    }
    let (gadget, _) = h_gadget(t)?;
    let mut g = base.clone();
    for _ in 0..n {
        g = g.disjoint_union(&gadget);
    }
    // gadget i occupies n + 3i (u), n + 3i + 1 (v), n + 3i + 2 (x)
    let pairs: Vec<(usize, usize)> = (0..n).map(|i| (i, n + 3 * i + 2)).collect();
    let (g, _) = g.identify_vertices(&pairs)?;
    let labels: Vec<GadgetLabels> = (0..n)
        .map(|i| GadgetLabels {
            u: n + 2 * i,
            v: n + 2 * i + 1,
            x: i,
        })
        .collect();

    if g.regular_degree() != Some(2 * t + 1) {
        return Err(Error::Internal("glued graph is not (2t+1)-regular".into()));
    }
    for l in &labels {
        let x = VertexSet::from_vertices(g.n(), [l.u, l.v, l.x]);
        if boundary(&g, &x).size() != 2 * t - 1 {
            return Err(Error::Internal(format!("gadget {l:?} has the wrong boundary")));
        }
    }
    if let OddCutScan::None = odd_cut_obstruction(&g, DEFAULT_SUBSET_BOUND)? {
        return Err(Error::Internal("glued graph has no odd-cut obstruction".into()));
    }
    Ok((g, labels))
}

/// The Petersen graph with a balanced `±5/3` two-coloring and a perfect
/// matching whose edges all join the two classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PetersenData {
    #[serde(skip)]
    pub graph: Multigraph,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub matching: Vec<usize>,
}

impl PetersenData {
    pub fn bipartition(&self) -> Bipartition {
        Bipartition {
            a: VertexSet::from_vertices(10, self.a.iter().copied()),
            b: VertexSet::from_vertices(10, self.b.iter().copied()),
        }
    }
}

/// Derived once: the first 5-set `A` (lexicographic) for which `+5/3` on `A`
/// and `-5/3` elsewhere is balanced, paired with the first perfect matching
/// (enumeration order) crossing between the classes.
pub fn petersen_data() -> &'static PetersenData {
    static DATA: OnceLock<PetersenData> = OnceLock::new();
    DATA.get_or_init(|| derive_petersen_data().expect("Petersen graph has a crossing 1-factor"))
}

fn derive_petersen_data() -> Result<PetersenData> {
    let graph = petersen();
    let c = Rational::new(5, 3);
    for mask in (0u32..1 << 10).filter(|m| m.count_ones() == 5).collect::<Vec<_>>().into_iter().rev()
    {
        // reversed bit order turns numeric order into lexicographic order of member lists
        let a: Vec<usize> = (0..10).filter(|&v| mask >> (9 - v) & 1 == 1).collect();
        let in_a = |v: usize| a.contains(&v);
        let w: Vec<Rational> = (0..10).map(|v| if in_a(v) { c } else { -c }).collect();
        if !is_balanced_brute(&graph, &w, DEFAULT_SUBSET_BOUND)?.is_balanced() {
            continue;
        }
        let crossing = enumerate_perfect_matchings(&graph).find(|m| {
            m.0.iter().all(|&e| {
                let ed = graph.edges()[e];
                in_a(ed.tail) != in_a(ed.head)
            })
        });
        if let Some(m) = crossing {
            let b = (0..10).filter(|&v| !in_a(v)).collect();
            return Ok(PetersenData {
                graph,
                a,
                b,
                matching: m.0,
            });
        }
    }
    Err(Error::Internal("no balanced class pair with a crossing matching".into()))
}

/// Petersen plus `2t - 2` extra copies of the crossing matching of
/// [`petersen_data`]: `(2t+1)`-regular on 10 vertices with `15 + 5(2t-2)` edges.
///
/// Checked on construction: every odd vertex set has at least `2t + 1`
/// boundary edges, and `±(2t - 1/3)` on the two classes is balanced.
pub fn petersen_family(t: usize) -> Result<Multigraph> {
    check_t(t, 1)?;
    let data = petersen_data();
    let g = data.graph.add_edge_copies(&data.matching, 2 * t - 2)?;
    if !is_t_graph(&g, t, DEFAULT_SUBSET_BOUND)? {
        return Err(Error::Internal("Petersen family member has a small odd cut".into()));
    }
    let c = int(2 * t as i64) - Rational::new(1, 3);
    let w = BalancedValuation::uniform(&data.bipartition(), c);
    if !is_balanced_mincut(&g, &w.0)?.is_balanced() {
        return Err(Error::Internal(format!("±{c} is not balanced")));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gadget_shapes() {
        let g = k2_multi(2).unwrap();
        assert_eq!((g.n(), g.m(), g.max_multiplicity()), (2, 5, 5));
        let (h, l) = h_gadget(2).unwrap();
        assert_eq!(h.degrees(), vec![5, 5, 2]);
        assert_eq!(h.m(), 6);
        assert_eq!(l, GadgetLabels { u: 0, v: 1, x: 2 });
        assert_eq!(h_gadget(1).unwrap().0.degrees(), vec![3, 3, 2]);
        assert!(k2_multi(0).is_err());
    }

    #[test]
    fn glue_on_k2_3() {
        let (g, labels) = glue_gadgets(&k2_multi(1).unwrap(), 2).unwrap();
        assert_eq!((g.n(), g.m()), (6, 15));
        assert_eq!(g.regular_degree(), Some(5));
        assert_eq!(labels[0], GadgetLabels { u: 2, v: 3, x: 0 });
        assert_eq!(labels[1], GadgetLabels { u: 4, v: 5, x: 1 });
        let OddCutScan::Found(cut) = odd_cut_obstruction(&g, 20).unwrap() else {
            panic!()
        };
        assert_eq!(cut.source.to_vec(), vec![0, 2, 3]);
        assert_eq!(cut.size(), 3);
    }

    #[test]
    fn glue_rejects_bad_input() {
        assert!(glue_gadgets(&k2_multi(1).unwrap(), 1).is_err());
        assert!(glue_gadgets(&complete_graph(4), 3).is_err());
    }

    #[test]
    fn glue_on_petersen_is_large() {
        let (g, _) = glue_gadgets(&petersen(), 2).unwrap();
        assert_eq!(g.n(), 30);
        assert_eq!(g.regular_degree(), Some(5));
    }

    #[test]
    fn petersen_family_sizes() {
        assert_eq!(petersen_family(1).unwrap(), petersen());
        let p5 = petersen_family(2).unwrap();
        assert_eq!((p5.m(), p5.regular_degree(), p5.max_multiplicity()), (25, Some(5), 3));
        let p7 = petersen_family(3).unwrap();
        assert_eq!((p7.m(), p7.regular_degree()), (35, Some(7)));
    }

    #[test]
    fn small_families() {
        assert_eq!(complete_bipartite(3, 3).regular_degree(), Some(3));
        assert_eq!(cycle_graph(6).m(), 6);
        assert_eq!(complete_graph(6).m(), 15);
    }
}
