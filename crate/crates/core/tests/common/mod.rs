//! Independent oracles and generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashSet;

use circflow::rational::{int, Rational};
use circflow::Multigraph;
use rand::Rng;

pub const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures");

pub fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!("{FIXTURES}/{name}")).expect("fixture present")
}

/// Multiplicity matrix, row-major.
fn counts(g: &Multigraph) -> Vec<u8> {
    let n = g.n();
    let mut c = vec![0u8; n * n];
    for e in g.edges() {
        c[e.tail * n + e.head] += 1;
        c[e.head * n + e.tail] += 1;
    }
    c
}

/// Canonical key: the lexicographically smallest upper triangle over all
/// relabelings that keep vertices sorted by a relabeling-invariant signature.
pub fn canonical_key(g: &Multigraph) -> (usize, Vec<u8>) {
    let n = g.n();
    let c = counts(g);
    let deg = g.degrees();
    let sig: Vec<(usize, Vec<(usize, u8)>)> = (0..n)
        .map(|v| {
            let mut nb: Vec<(usize, u8)> = (0..n)
                .filter(|&u| c[v * n + u] > 0)
                .map(|u| (deg[u], c[v * n + u]))
                .collect();
            nb.sort_unstable();
            (deg[v], nb)
        })
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| sig[a].cmp(&sig[b]));
    // classes of equal signature, permuted independently
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match classes.last_mut() {
            Some(cl) if sig[cl[0]] == sig[v] => cl.push(v),
            _ => classes.push(vec![v]),
        }
    }
    let mut best: Option<Vec<u8>> = None;
    let mut perm: Vec<usize> = Vec::with_capacity(n);
    permute_classes(&classes, 0, &mut perm, &c, n, &mut best);
    (n, best.unwrap_or_default())
}

fn permute_classes(
    classes: &[Vec<usize>],
    i: usize,
    perm: &mut Vec<usize>,
    c: &[u8],
    n: usize,
    best: &mut Option<Vec<u8>>,
) {
    if i == classes.len() {
        let mut key = Vec::with_capacity(n * (n - 1) / 2);
        for a in 0..n {
            for b in a + 1..n {
                key.push(c[perm[a] * n + perm[b]]);
            }
        }
        if best.as_ref().is_none_or(|b| key < *b) {
            *best = Some(key);
        }
        return;
    }
    let mut cl = classes[i].clone();
    heap_permutations(&mut cl, classes[i].len(), &mut |p| {
        let base = perm.len();
        perm.extend_from_slice(p);
        permute_classes(classes, i + 1, perm, c, n, best);
        perm.truncate(base);
    });
}

fn heap_permutations(a: &mut [usize], k: usize, f: &mut dyn FnMut(&[usize])) {
    if k <= 1 {
        f(a);
        return;
    }
    for i in 0..k - 1 {
        heap_permutations(a, k - 1, f);
        if k.is_multiple_of(2) {
            a.swap(i, k - 1);
        } else {
            a.swap(0, k - 1);
        }
    }
    heap_permutations(a, k - 1, f);
}

/// All connected loopless multigraphs with `1..=max_edges` edges, one per
/// isomorphism class. Every connected graph arises from a smaller one by
/// adding an edge between old vertices or a pendant edge to a new vertex.
pub fn connected_multigraphs(max_edges: usize) -> Vec<Multigraph> {
    let mut level = vec![Multigraph::new(1)];
    let mut out = Vec::new();
    for _ in 0..max_edges {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in &level {
            let n = g.n();
            let mut cands = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    let mut h = g.clone();
                    h.add_edge(u, v).unwrap();
                    cands.push(h);
                }
                let mut h = g.clone();
                let x = h.add_vertex();
                h.add_edge(u, x).unwrap();
                cands.push(h);
            }
            for h in cands {
                if seen.insert(canonical_key(&h)) {
                    next.push(h);
                }
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

/// Bridgeless multigraphs with at most `max_edges` edges: every connected
/// one, plus disjoint unions of two connected ones.
pub fn bridgeless_multigraphs(max_edges: usize) -> Vec<Multigraph> {
    let conn: Vec<Multigraph> = connected_multigraphs(max_edges)
        .into_iter()
        .filter(|g| circflow::graph::bridges(g).is_empty())
        .collect();
    let mut all = conn.clone();
    for (i, a) in conn.iter().enumerate() {
        for b in &conn[i..] {
            if a.m() + b.m() <= max_edges {
                all.push(a.disjoint_union(b));
            }
        }
    }
    all
}

/// Orientation criterion: a nowhere-zero `r`-flow exists iff some orientation
/// has `|out(X)| <= (r - 1) |in(X)|` for every vertex set `X`.
pub fn flow_by_orientations(g: &Multigraph, r: Rational) -> bool {
    if r < int(2) {
        return g.m() == 0;
    }
    let n = g.n();
    let m = g.m();
    let edges: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.tail, e.head)).collect();
    let ratio = r - int(1);
    (0u32..1 << m).any(|orient| {
        (1u32..(1 << n) - 1).all(|x| {
            let (mut out, mut inn) = (0i64, 0i64);
            for (i, &(a, b)) in edges.iter().enumerate() {
                let (s, t) = if orient >> i & 1 == 0 { (a, b) } else { (b, a) };
                match (x >> s & 1 == 1, x >> t & 1 == 1) {
                    (true, false) => out += 1,
                    (false, true) => inn += 1,
                    _ => {}
                }
            }
            int(out) <= ratio * int(inn)
        })
    })
}

/// Enumerates integer edge values `m` with `q <= |m| <= p - q` (edge
/// direction fixed, sign encodes orientation) and checks conservation at each
/// vertex once all its edges are set.
pub fn flow_by_values(g: &Multigraph, r: Rational) -> bool {
    if g.m() == 0 {
        return true;
    }
    if r < int(2) {
        return false;
    }
    let (p, q) = (*r.numer(), *r.denom());
    let (lo, hi) = (q, p - q);
    let mut vals: Vec<i64> = (lo..=hi).flat_map(|v| [v, -v]).collect();
    vals.sort_unstable();
    // vertex v is complete after the edge with the largest id touching it
    let mut complete_at: Vec<Vec<usize>> = vec![Vec::new(); g.m()];
    for v in 0..g.n() {
        if let Some(&last) = g.incident(v).iter().max() {
            complete_at[last].push(v);
        }
    }
    let mut assign = vec![0i64; g.m()];
    fn rec(
        g: &Multigraph,
        i: usize,
        vals: &[i64],
        assign: &mut [i64],
        complete_at: &[Vec<usize>],
    ) -> bool {
        if i == g.m() {
            return true;
        }
        for &x in vals {
            assign[i] = x;
            let ok = complete_at[i].iter().all(|&v| {
                g.incident(v)
                    .iter()
                    .map(|&e| g.edges()[e].sign_at(v) * assign[e])
                    .sum::<i64>()
                    == 0
            });
            if ok && rec(g, i + 1, vals, assign, complete_at) {
                return true;
            }
        }
        false
    }
    rec(g, 0, &vals, &mut assign, &complete_at)
}

/// Random simple graph on `n` vertices with edge probability `p`.
pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Multigraph {
    let mut g = Multigraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// Random multigraph: a random simple graph plus a few parallel copies.
pub fn random_multigraph(rng: &mut impl Rng, n: usize, p: f64) -> Multigraph {
    let mut g = random_graph(rng, n, p);
    let m = g.m();
    for _ in 0..rng.gen_range(0..=m.min(4)) {
        let e = g.edges()[rng.gen_range(0..m)];
        g.add_edge(e.tail, e.head).unwrap();
    }
    g
}

/// Rational in `[-bound, bound]` with denominator at most `max_den`.
pub fn random_rational(rng: &mut impl Rng, bound: i64, max_den: i64) -> Rational {
    let q = rng.gen_range(1..=max_den);
    Rational::new(rng.gen_range(-bound * q..=bound * q), q)
}

/// Random weights; with probability `zero_sum` the last vertex absorbs the
/// total so the whole vertex set is not itself a violator.
pub fn random_weights(rng: &mut impl Rng, g: &Multigraph, max_den: i64, zero_sum: f64) -> Vec<Rational> {
    let n = g.n();
    let mut w: Vec<Rational> = (0..n)
        .map(|v| random_rational(rng, (g.degree(v).unwrap() as i64).max(1), max_den))
        .collect();
    if n > 0 && rng.gen_bool(zero_sum) {
        let s: Rational = w[..n - 1].iter().sum();
        w[n - 1] = -s;
    }
    w
}

/// Independent count of perfect matchings: match the lowest vertex with
/// each incident edge in turn.
pub fn count_perfect_matchings(g: &Multigraph) -> u64 {
    fn rec(g: &Multigraph, covered: &mut Vec<bool>) -> u64 {
        let Some(v) = covered.iter().position(|&c| !c) else {
            return 1;
        };
        let mut total = 0;
        covered[v] = true;
        for &e in g.incident(v) {
            let u = g.edges()[e].other(v);
            if !covered[u] {
                covered[u] = true;
                total += rec(g, covered);
                covered[u] = false;
            }
        }
        covered[v] = false;
        total
    }
    rec(g, &mut vec![false; g.n()])
}

/// Cycle-space solver against both enumeration oracles on every bridgeless
/// multigraph with at most `max_edges` edges.
pub fn check_flow_bruteforce(max_edges: usize) -> Result<String, String> {
    use circflow::flows::{has_nwz_flow, verify_flow, Budget, Verdict};
    use circflow::rational::rat;
    let graphs = bridgeless_multigraphs(max_edges);
    let radii = [rat(2, 1), rat(5, 2), rat(3, 1), rat(7, 2), rat(4, 1)];
    let mut bad = Vec::new();
    for g in &graphs {
        for &r in &radii {
            let d = has_nwz_flow(g, r, &Budget::default());
            if let Some(c) = &d.certificate {
                if !verify_flow(g, c).unwrap_or(false) {
                    bad.push(format!("{:?} r={r}: invalid certificate", g.edges()));
                }
            }
            let yes = d.verdict == Verdict::Yes;
            let by_orient = flow_by_orientations(g, r);
            let by_values = flow_by_values(g, r);
            if d.verdict == Verdict::Unknown || yes != by_orient || yes != by_values {
                bad.push(format!(
                    "{:?} r={r}: solver {:?}, orientations {by_orient}, values {by_values}",
                    g.edges(),
                    d.verdict
                ));
            }
        }
    }
    if bad.is_empty() {
        Ok(format!("{} graphs x {} values, 0 disagreements", graphs.len(), radii.len()))
    } else {
        Err(format!("{} disagreements, first: {}", bad.len(), bad[0]))
    }
}

/// Brute-force and min-cut balance checks on `count` seeded random instances.
pub fn check_valuation_oracles(seed: u64, count: usize) -> Result<String, String> {
    use circflow::valuations::{is_balanced_brute, is_balanced_mincut, violates, Balance};
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let (mut balanced, mut violated) = (0, 0);
    for i in 0..count {
        let n = rng.gen_range(1..=12);
        let p = [0.15, 0.3, 0.5, 0.8][i % 4];
        let g = if i % 3 == 0 {
            random_multigraph(&mut rng, n, p)
        } else {
            random_graph(&mut rng, n, p)
        };
        let w = random_weights(&mut rng, &g, 6, 0.85);
        let brute = is_balanced_brute(&g, &w, 20).map_err(|e| e.to_string())?;
        let cut = is_balanced_mincut(&g, &w).map_err(|e| e.to_string())?;
        if brute.is_balanced() != cut.is_balanced() {
            return Err(format!("instance {i}: verdicts differ on {:?} with {w:?}", g.edges()));
        }
        for b in [&brute, &cut] {
            if let Balance::Violated(x) = b {
                if !violates(&g, &w, x) {
                    return Err(format!("instance {i}: reported set {:?} does not violate", x.to_vec()));
                }
            }
        }
        if brute.is_balanced() {
            balanced += 1
        } else {
            violated += 1
        }
    }
    if balanced < count / 10 || violated < count / 10 {
        return Err(format!("unbalanced sample: {balanced} balanced, {violated} violated"));
    }
    Ok(format!("{count} instances ({balanced} balanced, {violated} violated), identical verdicts"))
}

/// Runs `circflow scan` twice on a small catalog and compares the bytes.
pub fn check_scan_determinism(bin: &str) -> Result<String, String> {
    use std::process::Command;
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cat = dir.path().join("catalog");
    std::fs::create_dir(&cat).map_err(|e| e.to_string())?;
    let write = |name: &str, g: &Multigraph| {
        std::fs::write(cat.join(name), circflow::graph::serialize(g)).map_err(|e| e.to_string())
    };
    write("k6.mg", &circflow::constructions::complete_graph(6))?;
    write("k2_5.mg", &circflow::constructions::k2_multi(2).unwrap())?;
    let base = circflow::constructions::k2_multi(1).unwrap();
    write("glue.mg", &circflow::constructions::glue_gadgets(&base, 2).unwrap().0)?;
    write("k5.mg", &circflow::constructions::complete_graph(5))?;
    let mut outputs = Vec::new();
    for (i, jobs) in ["4", "1"].iter().enumerate() {
        let report = dir.path().join(format!("r{i}.json"));
        let status = Command::new(bin)
            .args(["scan", cat.to_str().unwrap(), "--t", "2", "--report", report.to_str().unwrap(), "--jobs", jobs])
            .output()
            .map_err(|e| e.to_string())?;
        if !status.status.success() {
            return Err(format!("scan exited with {:?}", status.status.code()));
        }
        outputs.push(std::fs::read(report).map_err(|e| e.to_string())?);
    }
    if outputs[0] == outputs[1] {
        Ok(format!("two scans, {} identical bytes", outputs[0].len()))
    } else {
        Err("scan reports differ".into())
    }
}
