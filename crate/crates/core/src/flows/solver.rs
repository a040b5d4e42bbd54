//! Cycle-space search for integer circulations.
//!
//! With `r = 1 + hi/k` in lowest terms, `G` has a nowhere-zero `r`-flow iff it
//! has an integer circulation with `k <= |m(e)| <= hi` on every edge; dividing
//! by `k` recovers the flow. The circulation is parametrised by the cotree
//! edges of a BFS spanning forest: each cotree edge carries a free value and
//! each tree edge carries the signed sum of the cotree values whose
//! fundamental cycles pass through it. Conservation then holds by
//! construction, and the search only has to keep every tree-edge sum inside
//! `±[k, hi]`.

use std::collections::{HashMap, VecDeque};
use std::time::Instant;

use num_traits::{One, Signed, Zero};

use super::{verify_flow, Budget, FlowAssignment, FlowDecision, SearchStats, Verdict};
use crate::graph::{bridges, Multigraph};
use crate::rational::{int, Rational};

/// Decides whether `g` has a nowhere-zero `r`-flow.
///
/// A `Yes` carries a certificate that passes [`verify_flow`]. Running out of
/// budget gives `Unknown`, never `No`.
pub fn has_nwz_flow(g: &Multigraph, r: Rational, budget: &Budget) -> FlowDecision {
    let start = Instant::now();
    let done = |verdict, certificate, nodes| FlowDecision {
        verdict,
        certificate,
        stats: SearchStats {
            nodes,
            elapsed: start.elapsed(),
        },
    };
    if g.m() == 0 {
        let empty = FlowAssignment {
            r,
            values: Vec::new(),
        };
        return done(Verdict::Yes, Some(empty), 0);
    }
    if r < int(2) || !bridges(g).is_empty() {
        return done(Verdict::No, None, 0);
    }
    let k = *r.denom();
    let hi = r.numer() - k;

    let mut search = Search::new(g, k, hi, budget, start);
    let outcome = search.run();
    let nodes = search.nodes;
    match outcome {
        Outcome::Found => {
            let cert = search.certificate(g, r);
            debug_assert_eq!(verify_flow(g, &cert), Ok(true));
            done(Verdict::Yes, Some(cert), nodes)
        }
        Outcome::Exhausted => done(Verdict::No, None, nodes),
        Outcome::Aborted => done(Verdict::Unknown, None, nodes),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Outcome {
    Found,
    Exhausted,
    Aborted,
}

#[derive(Debug)]
struct Var {
    edge: usize,
    /// Tree edges on the fundamental cycle, with the sign of the contribution.
    touches: Vec<(usize, i64)>,
    /// Position of the previous variable parallel to this one.
    prev_parallel: Option<usize>,
    /// +1 if the edge points the same way as the first edge of its parallel
    /// class, -1 otherwise.
    norm: i64,
}

#[derive(Debug)]
struct TreeEdge {
    edge: usize,
    fixed: i64,
    remaining: usize,
}

struct Search<'a> {
    k: i64,
    hi: i64,
    vars: Vec<Var>,
    tree: Vec<TreeEdge>,
    values: Vec<i64>,
    nodes: u64,
    budget: &'a Budget,
    start: Instant,
}

impl<'a> Search<'a> {
    fn new(g: &Multigraph, k: i64, hi: i64, budget: &'a Budget, start: Instant) -> Self {
        let (tree_edges, cotree, cycles) = fundamental_cycles(g);
        let tree_index: HashMap<usize, usize> =
            tree_edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();

        let mut members = vec![0usize; tree_edges.len()];
        let raw: Vec<Vec<(usize, i64)>> = cycles
            .iter()
            .map(|cyc| {
                cyc.iter()
                    .map(|&(e, c)| {
                        let t = tree_index[&e];
                        members[t] += 1;
                        (t, c)
                    })
                    .collect()
            })
            .collect();

        let order = variable_order(&raw, &members, &cotree);

        let mut vars: Vec<Var> = Vec::with_capacity(order.len());
        // (last position, tail of first member) per unordered endpoint pair
        let mut classes: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
        for (pos, &i) in order.iter().enumerate() {
            let e = g.edges()[cotree[i]];
            let key = (e.tail.min(e.head), e.tail.max(e.head));
            let (prev_parallel, first_tail) = match classes.get(&key) {
                Some(&(p, t)) => (Some(p), t),
                None => (None, e.tail),
            };
            classes.insert(key, (pos, first_tail));
            vars.push(Var {
                edge: e.id,
                touches: raw[i].clone(),
                prev_parallel,
                norm: if e.tail == first_tail { 1 } else { -1 },
            });
        }

        let tree = tree_edges
            .iter()
            .zip(&members)
            .map(|(&edge, &remaining)| TreeEdge {
                edge,
                fixed: 0,
                remaining,
            })
            .collect();
        let nvars = vars.len();
        Search {
            k,
            hi,
            vars,
            tree,
            values: vec![0; nvars],
            nodes: 0,
            budget,
            start,
        }
    }

    fn run(&mut self) -> Outcome {
        if self.tree.iter().any(|t| t.remaining == 0) {
            // a tree edge on no cycle is a bridge
            return Outcome::Exhausted;
        }
        self.dfs(0)
    }

    /// Some way to fill the `j` open slots of a tree edge lands in `±[k, hi]`.
    fn feasible(&self, fixed: i64, j: usize) -> bool {
        let (k, hi) = (self.k, self.hi);
        if j == 0 {
            let a = fixed.abs();
            return k <= a && a <= hi;
        }
        let j = j as i64;
        (0..=j).any(|s| {
            let lo = fixed + s * k - (j - s) * hi;
            let up = fixed + s * hi - (j - s) * k;
            (lo <= hi && up >= k) || (lo <= -k && up >= -hi)
        })
    }

    fn out_of_budget(&self) -> bool {
        if self.nodes > self.budget.max_nodes {
            return true;
        }
        match self.budget.time_limit {
            Some(limit) if self.nodes.is_multiple_of(1024) => self.start.elapsed() > limit,
            _ => false,
        }
    }

    fn dfs(&mut self, pos: usize) -> Outcome {
        if pos == self.vars.len() {
            return Outcome::Found;
        }
        let norm = self.vars[pos].norm;
        let parallel_cap = self.vars[pos]
            .prev_parallel
            .map(|p| self.values[p] * self.vars[p].norm);
        for a in self.k..=self.hi {
            for sign in [1i64, -1] {
                if pos == 0 && sign < 0 {
                    continue;
                }
                let val = sign * a;
                // parallel cotree edges are interchangeable: keep them sorted
                if parallel_cap.is_some_and(|cap| val * norm > cap) {
                    continue;
                }
                self.nodes += 1;
                if self.out_of_budget() {
                    return Outcome::Aborted;
                }
                if self.assign(pos, val) {
                    self.values[pos] = val;
                    match self.dfs(pos + 1) {
                        Outcome::Exhausted => {}
                        other => return other,
                    }
                }
                self.unassign(pos, val);
            }
        }
        Outcome::Exhausted
    }

    /// Applies `val` to every touched tree edge; returns whether all stay feasible.
    /// The caller always undoes with [`Self::unassign`].
    fn assign(&mut self, pos: usize, val: i64) -> bool {
        let mut ok = true;
        for i in 0..self.vars[pos].touches.len() {
            let (t, c) = self.vars[pos].touches[i];
            let te = &mut self.tree[t];
            te.fixed += c * val;
            te.remaining -= 1;
            let (f, j) = (te.fixed, te.remaining);
            if ok && !self.feasible(f, j) {
                ok = false;
            }
        }
        ok
    }

    fn unassign(&mut self, pos: usize, val: i64) {
        for &(t, c) in &self.vars[pos].touches {
            let te = &mut self.tree[t];
            te.fixed -= c * val;
            te.remaining += 1;
        }
    }

    fn certificate(&self, g: &Multigraph, r: Rational) -> FlowAssignment {
        let k = self.k;
        let mut values = vec![Rational::zero(); g.m()];
        for (v, &val) in self.vars.iter().zip(&self.values) {
            values[v.edge] = Rational::new(val, k);
        }
        for t in &self.tree {
            values[t.edge] = Rational::new(t.fixed, k);
        }
        debug_assert!(values.iter().all(|v| v.abs() >= Rational::one()));
        FlowAssignment { r, values }
    }
}

/// Tree edges of a fundamental cycle with their coefficients.
type Cycle = Vec<(usize, i64)>;

/// BFS spanning forest (roots at the lowest vertex of each component, edges in
/// id order). Returns the tree edges, the cotree edges, and for each cotree
/// edge its fundamental cycle as `(tree edge, coefficient)` pairs: pushing `x`
/// units along the cotree edge's reference direction adds `coefficient * x`
/// to that tree edge.
fn fundamental_cycles(g: &Multigraph) -> (Vec<usize>, Vec<usize>, Vec<Cycle>) {
    let n = g.n();
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut depth = vec![0usize; n];
    let mut seen = vec![false; n];
    let mut in_tree = vec![false; g.m()];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &id in g.incident(v) {
                let w = g.edges()[id].other(v);
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some((v, id));
                    depth[w] = depth[v] + 1;
                    in_tree[id] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let tree: Vec<usize> = (0..g.m()).filter(|&e| in_tree[e]).collect();
    let cotree: Vec<usize> = (0..g.m()).filter(|&e| !in_tree[e]).collect();

    // coefficient for moving along tree edge `id` from `from` towards `to`
    let coef = |id: usize, from: usize| if g.edges()[id].tail == from { 1 } else { -1 };
    let cycles = cotree
        .iter()
        .map(|&c| {
            let e = g.edges()[c];
            // path from head back to tail through the tree
            let (mut x, mut y) = (e.head, e.tail);
            let mut up = Vec::new(); // head side, walked upward
            let mut down = Vec::new(); // tail side, walked downward later
            while x != y {
                if depth[x] >= depth[y] {
                    let (p, id) = parent[x].expect("non-root");
                    up.push((id, coef(id, x)));
                    x = p;
                } else {
                    let (p, id) = parent[y].expect("non-root");
                    down.push((id, coef(id, p)));
                    y = p;
                }
            }
            up.extend(down);
            up
        })
        .collect();
    (tree, cotree, cycles)
}

/// Greedy variable order: next is the cotree edge completing the most tree
/// edges, then touching the most tree edges that already hold an assigned
/// variable, then the lowest edge id.
fn variable_order(cycles: &[Vec<(usize, i64)>], members: &[usize], cotree: &[usize]) -> Vec<usize> {
    let mut remaining = members.to_vec();
    let mut used = vec![false; cycles.len()];
    let mut order = Vec::with_capacity(cycles.len());
    for _ in 0..cycles.len() {
        let best = (0..cycles.len())
            .filter(|&i| !used[i])
            .max_by_key(|&i| {
                let completes = cycles[i].iter().filter(|&&(t, _)| remaining[t] == 1).count();
                let constrained = cycles[i]
                    .iter()
                    .filter(|&&(t, _)| remaining[t] < members[t])
                    .count();
                (completes, constrained, std::cmp::Reverse(cotree[i]))
            })
            .expect("unused variable");
        used[best] = true;
        for &(t, _) in &cycles[best] {
            remaining[t] -= 1;
        }
        order.push(best);
    }
    order
}
