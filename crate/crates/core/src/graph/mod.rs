//! Loopless undirected multigraphs with stable edge identities.
//!
//! Vertices are `0..n`, edges are `0..m` in insertion order. Every edge keeps
//! the `(tail, head)` pair it was created with; that pair is its reference
//! direction, and flow values elsewhere in the crate are signed relative to
//! it. Parallel edges are separate records and count separately in degrees
//! and cuts.

mod io;
mod structure;
mod vertex_set;

pub use io::{parse_graph6, parse_graph_file, parse_multigraph, serialize, to_graph6};
pub use structure::{
    boundary, bridges, is_bipartite, is_t_graph, odd_cut_obstruction, Bipartiteness, Bipartition,
    Cut, OddCutScan, OddCycle, DEFAULT_SUBSET_BOUND,
};
pub use vertex_set::VertexSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub id: usize,
    pub tail: usize,
    pub head: usize,
}

impl Edge {
    /// The endpoint opposite `v`. `v` must be an endpoint.
    pub fn other(&self, v: usize) -> usize {
        if v == self.tail {
            self.head
        } else {
            self.tail
        }
    }

    /// +1 if the edge leaves `v` along its reference direction, -1 if it enters.
    pub fn sign_at(&self, v: usize) -> i64 {
        if v == self.tail {
            1
        } else {
            -1
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    edges: Vec<Edge>,
    incidence: Vec<Vec<usize>>,
}

impl Multigraph {
    pub fn new(n: usize) -> Self {
        Multigraph {
            n,
            edges: Vec::new(),
            incidence: vec![Vec::new(); n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Multigraph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Appends an edge with reference direction `tail -> head` and returns its id.
    pub fn add_edge(&mut self, tail: usize, head: usize) -> Result<usize> {
        self.check_vertex(tail)?;
        self.check_vertex(head)?;
        if tail == head {
            return Err(Error::Loop(tail));
        }
        let id = self.edges.len();
        self.edges.push(Edge { id, tail, head });
        self.incidence[tail].push(id);
        self.incidence[head].push(id);
        Ok(id)
    }

    /// Appends a fresh isolated vertex and returns its id.
    pub fn add_vertex(&mut self) -> usize {
        self.incidence.push(Vec::new());
        self.n += 1;
        self.n - 1
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> Result<&Edge> {
        self.edges.get(id).ok_or(Error::InvalidEdge {
            edge: id,
            m: self.edges.len(),
        })
    }

    /// Edge ids incident to `v`, in id order.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::InvalidVertex { vertex: v, n: self.n })
        }
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.incidence[v].len())
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.incidence.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.incidence.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// The common degree if every vertex has the same degree.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.incidence.first()?.len();
        self.incidence.iter().all(|inc| inc.len() == d).then_some(d)
    }

    /// Largest number of edges joining one pair of vertices (0 for edgeless graphs).
    pub fn max_multiplicity(&self) -> usize {
        let mut counts = std::collections::HashMap::new();
        for e in &self.edges {
            let key = (e.tail.min(e.head), e.tail.max(e.head));
            *counts.entry(key).or_insert(0usize) += 1;
        }
        counts.into_values().max().unwrap_or(0)
    }

    /// Number of edges joining `u` and `v`.
    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        self.incidence[u]
            .iter()
            .filter(|&&e| self.edges[e].other(u) == v)
            .count()
    }

    /// Connected components as sorted vertex lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let c = out.len();
            let mut members = vec![s];
            comp[s] = c;
            let mut i = 0;
            while i < members.len() {
                let v = members[i];
                i += 1;
                for &e in &self.incidence[v] {
                    let w = self.edges[e].other(v);
                    if comp[w] == usize::MAX {
                        comp[w] = c;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Subgraph induced by `vertices` (listed in the order they get new ids),
    /// with the original id of every kept edge.
    pub fn induced(&self, vertices: &[usize]) -> (Multigraph, Vec<usize>) {
        let mut map = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            map[v] = i;
        }
        let mut g = Multigraph::new(vertices.len());
        let mut kept = Vec::new();
        for e in &self.edges {
            let (a, b) = (map[e.tail], map[e.head]);
            if a != usize::MAX && b != usize::MAX {
                g.push_unchecked(a, b);
                kept.push(e.id);
            }
        }
        (g, kept)
    }

    /// Copy without the listed edges; remaining edges are renumbered densely in
    /// their original order and the returned vector maps new ids to old ones.
    pub fn without_edges(&self, removed: &[usize]) -> Result<(Multigraph, Vec<usize>)> {
        let mut drop = vec![false; self.m()];
        for &e in removed {
            self.edge(e)?;
            drop[e] = true;
        }
        let mut g = Multigraph::new(self.n);
        let mut kept = Vec::new();
        for e in &self.edges {
            if !drop[e.id] {
                g.push_unchecked(e.tail, e.head);
                kept.push(e.id);
            }
        }
        Ok((g, kept))
    }

    fn push_unchecked(&mut self, tail: usize, head: usize) {
        let id = self.edges.len();
        self.edges.push(Edge { id, tail, head });
        self.incidence[tail].push(id);
        self.incidence[head].push(id);
    }

    /// `G` followed by `H`, with `H`'s vertices shifted by `G.n()` and its edges
    /// appended after `G`'s.
    pub fn disjoint_union(&self, other: &Multigraph) -> Multigraph {
        let mut g = self.clone();
        g.incidence.extend(std::iter::repeat_with(Vec::new).take(other.n));
        g.n += other.n;
        for e in &other.edges {
            g.push_unchecked(e.tail + self.n, e.head + self.n);
        }
        g
    }

    /// Replaces edge `e = (tail, head)` by `tail -> x` (keeping id `e`) and
    /// `x -> head` (new id `m`), where `x = n` is a fresh vertex.
    pub fn subdivide(&self, e: usize) -> Result<Multigraph> {
        let old = *self.edge(e)?;
        let mut g = self.clone();
        let x = g.add_vertex();
        g.edges[e].head = x;
        g.incidence[old.head].retain(|&id| id != e);
        g.incidence[x].push(e);
        g.push_unchecked(x, old.head);
        Ok(g)
    }

    /// Merges the second vertex of each pair into the first. Removed vertices
    /// disappear and the survivors are renumbered in increasing order; edges
    /// keep their ids. Returns the graph and the old-to-new vertex map.
    pub fn identify_vertices(&self, pairs: &[(usize, usize)]) -> Result<(Multigraph, Vec<usize>)> {
        let mut seen = vec![false; self.n];
        let mut target: Vec<usize> = (0..self.n).collect();
        for &(a, b) in pairs {
            self.check_vertex(a)?;
            self.check_vertex(b)?;
            if a == b || seen[a] || seen[b] {
                return Err(Error::Domain(format!(
                    "identification pairs must be disjoint: ({a}, {b})"
                )));
            }
            seen[a] = true;
            seen[b] = true;
            target[b] = a;
        }
        let mut new_id = vec![usize::MAX; self.n];
        let mut next = 0;
        for v in 0..self.n {
            if target[v] == v {
                new_id[v] = next;
                next += 1;
            }
        }
        let map: Vec<usize> = (0..self.n).map(|v| new_id[target[v]]).collect();
        let mut g = Multigraph::new(next);
        for e in &self.edges {
            let (a, b) = (map[e.tail], map[e.head]);
            if a == b {
                return Err(Error::Loop(a));
            }
            g.push_unchecked(a, b);
        }
        Ok((g, map))
    }

    /// Appends `copies` parallel copies of every edge in `set`. New ids follow
    /// the order of `set`, and for each edge the copies are consecutive.
    pub fn add_edge_copies(&self, set: &[usize], copies: usize) -> Result<Multigraph> {
        let mut g = self.clone();
        for &e in set {
            let Edge { tail, head, .. } = *self.edge(e)?;
            for _ in 0..copies {
                g.push_unchecked(tail, head);
            }
        }
        Ok(g)
    }

    /// Bit `i` set iff vertex `i` is in the set; only for `n <= 64`.
    pub(crate) fn edge_masks(&self) -> Vec<(u64, u64)> {
        debug_assert!(self.n <= 64);
        self.edges
            .iter()
            .map(|e| (1u64 << e.tail, 1u64 << e.head))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k2(mult: usize) -> Multigraph {
        Multigraph::from_edges(2, &vec![(0, 1); mult]).unwrap()
    }

    #[test]
    fn degrees_and_multiplicity() {
        let g = k2(3);
        assert_eq!(g.degree(0).unwrap(), 3);
        assert_eq!(g.degree(1).unwrap(), 3);
        assert_eq!(g.max_multiplicity(), 3);
        assert_eq!(g.regular_degree(), Some(3));
        assert!(g.degree(2).is_err());
    }

    #[test]
    fn loops_rejected() {
        assert_eq!(Multigraph::from_edges(3, &[(1, 1)]), Err(Error::Loop(1)));
    }

    #[test]
    fn subdivide_k2_3() {
        let g = k2(3).subdivide(0).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 4);
        assert_eq!(g.degrees(), vec![3, 3, 2]);
        assert_eq!(g.edge(0).unwrap(), &Edge { id: 0, tail: 0, head: 2 });
        assert_eq!(g.edge(3).unwrap(), &Edge { id: 3, tail: 2, head: 1 });
    }

    #[test]
    fn union_of_two_k4() {
        let k4 = Multigraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let g = k4.disjoint_union(&k4);
        assert_eq!((g.n(), g.m()), (8, 12));
        assert_eq!(g.components().len(), 2);
    }

    #[test]
    fn identify_compacts_ids() {
        // path 0-1, 2-3; merge 3 into 0
        let g = Multigraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let (h, map) = g.identify_vertices(&[(0, 3)]).unwrap();
        assert_eq!(map, vec![0, 1, 2, 0]);
        assert_eq!(h.n(), 3);
        assert_eq!(h.degrees(), vec![2, 1, 1]);
        assert!(g.identify_vertices(&[(0, 1)]).is_err());
        assert!(g.identify_vertices(&[(0, 2), (2, 3)]).is_err());
    }

    #[test]
    fn edge_copies_order() {
        let g = Multigraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let h = g.add_edge_copies(&[2, 0], 2).unwrap();
        let tail: Vec<_> = h.edges()[3..].iter().map(|e| (e.tail, e.head)).collect();
        assert_eq!(tail, vec![(2, 3), (2, 3), (0, 1), (0, 1)]);
    }

    #[test]
    fn without_edges_maps_ids() {
        let g = k2(3);
        let (h, kept) = g.without_edges(&[1]).unwrap();
        assert_eq!(h.m(), 2);
        assert_eq!(kept, vec![0, 2]);
    }
}
