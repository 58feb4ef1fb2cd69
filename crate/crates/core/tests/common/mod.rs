//! Brute-force oracles. Slow, small, and written without the library's algorithms.
#![allow(dead_code)]

use num_rational::Ratio;
use proptest::prelude::*;
use sicgraph_core::Graph;

pub type Q = Ratio<i64>;

pub fn edge(g: &Graph, u: usize, v: usize) -> bool {
    g.rows()[u] >> v & 1 == 1
}

pub fn is_independent(g: &Graph, s: u32) -> bool {
    let n = g.order();
    (0..n).all(|u| s >> u & 1 == 0 || (u + 1..n).all(|v| s >> v & 1 == 0 || !edge(g, u, v)))
}

pub fn is_clique(g: &Graph, s: u32) -> bool {
    let n = g.order();
    (0..n).all(|u| s >> u & 1 == 0 || (u + 1..n).all(|v| s >> v & 1 == 0 || edge(g, u, v)))
}

pub fn clique_number(g: &Graph) -> usize {
    (0u32..1 << g.order()).filter(|&s| is_clique(g, s)).map(|s| s.count_ones() as usize).max().unwrap()
}

/// Inclusion-maximal independent sets by subset enumeration, sorted.
pub fn maximal_independent(g: &Graph) -> Vec<u32> {
    let n = g.order();
    (1u32..1 << n)
        .filter(|&s| is_independent(g, s))
        .filter(|&s| (0..n).all(|v| s >> v & 1 == 1 || !is_independent(g, s | 1 << v)))
        .collect()
}

/// Inclusion-maximal cliques by subset enumeration, sorted.
pub fn maximal_cliques(g: &Graph) -> Vec<u32> {
    let n = g.order();
    (1u32..1 << n)
        .filter(|&s| is_clique(g, s))
        .filter(|&s| (0..n).all(|v| s >> v & 1 == 1 || !is_clique(g, s | 1 << v)))
        .collect()
}

/// Solves the square system `a x = b` over the rationals; `None` if singular.
fn solve(mut a: Vec<Vec<Q>>, mut b: Vec<Q>) -> Option<Vec<Q>> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n).find(|&r| a[r][c] != Q::from_integer(0))?;
        a.swap(c, p);
        b.swap(c, p);
        for r in 0..n {
            if r != c && a[r][c] != Q::from_integer(0) {
                let f = a[r][c] / a[c][c];
                for k in c..n {
                    let d = a[c][k] * f;
                    a[r][k] -= d;
                }
                let d = b[c] * f;
                b[r] -= d;
            }
        }
    }
    Some((0..n).map(|i| b[i] / a[i][i]).collect())
}

/// χ_f as the maximum of `Σ x_v` over the vertices of
/// `{x >= 0, Σ_{v∈I} x_v <= 1 for every maximal independent I}`, found by trying every
/// choice of `n` tight constraints.
pub fn frac_chromatic(g: &Graph) -> Q {
    let n = g.order();
    let sets = maximal_independent(g);
    let rows: Vec<Vec<Q>> = (0..n)
        .map(|v| (0..n).map(|u| Q::from_integer((u == v) as i64)).collect())
        .chain(sets.iter().map(|&s| (0..n).map(|u| Q::from_integer((s >> u & 1) as i64)).collect()))
        .collect();
    let rhs: Vec<Q> = (0..n).map(|_| Q::from_integer(0)).chain(sets.iter().map(|_| Q::from_integer(1))).collect();
    let mut best = Q::from_integer(0);
    let mut pick: Vec<usize> = (0..n).collect();
    loop {
        let a = pick.iter().map(|&i| rows[i].clone()).collect();
        let b = pick.iter().map(|&i| rhs[i]).collect();
        if let Some(x) = solve(a, b) {
            let feasible = x.iter().all(|v| *v >= Q::from_integer(0))
                && sets.iter().all(|&s| (0..n).filter(|&u| s >> u & 1 == 1).map(|u| x[u]).sum::<Q>() <= Q::from_integer(1));
            if feasible {
                best = best.max(x.iter().sum());
            }
        }
        // next n-combination of rows
        let m = rows.len();
        let Some(i) = (0..n).rev().find(|&i| pick[i] < m - n + i) else {
            return best;
        };
        pick[i] += 1;
        for j in i + 1..n {
            pick[j] = pick[j - 1] + 1;
        }
    }
}

/// Connectivity by transitive closure of the adjacency relation.
pub fn connected(g: &Graph) -> bool {
    let n = g.order();
    let mut r = vec![vec![false; n]; n];
    for (u, row) in r.iter_mut().enumerate() {
        for (v, x) in row.iter_mut().enumerate() {
            *x = u == v || edge(g, u, v);
        }
    }
    for k in 0..n {
        for u in 0..n {
            for v in 0..n {
                if r[u][k] && r[k][v] {
                    r[u][v] = true;
                }
            }
        }
    }
    r.iter().all(|row| row.iter().all(|&x| x))
}

pub fn complement(g: &Graph) -> Graph {
    let n = g.order();
    let edges: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| !edge(g, u, v)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

/// Visits every permutation of `0..n` (Heap's algorithm).
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut p: Vec<usize> = (0..n).collect();
    let mut c = vec![0; n];
    f(&p);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            f(&p);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Upper triangle of the adjacency matrix under `perm`, read as a bit string.
fn code(g: &Graph, perm: &[usize]) -> u64 {
    let n = g.order();
    let mut inv = vec![0; n];
    for (v, &p) in perm.iter().enumerate() {
        inv[p] = v;
    }
    let mut c = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            c = c << 1 | edge(g, inv[i], inv[j]) as u64;
        }
    }
    c
}

/// Canonical code: the largest [`code`] over all relabelings.
pub fn canonical_code(g: &Graph) -> u64 {
    let mut best = 0;
    for_each_permutation(g.order(), |p| best = best.max(code(g, p)));
    best
}

/// All labeled graphs on `n` vertices.
pub fn all_labeled(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u64..1 << pairs.len()).map(move |m| {
        let edges: Vec<(usize, usize)> = pairs.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &e)| e).collect();
        Graph::from_edges(n, &edges).unwrap()
    })
}

/// Whether some injection of pattern vertices into host vertices preserves adjacency
/// and non-adjacency, trying every injection.
pub fn embeds_induced(pattern: &Graph, host: &Graph) -> bool {
    fn go(p: &Graph, h: &Graph, map: &mut Vec<usize>) -> bool {
        let k = map.len();
        if k == p.order() {
            return (0..k).all(|a| (a + 1..k).all(|b| edge(p, a, b) == edge(h, map[a], map[b])));
        }
        for w in 0..h.order() {
            if !map.contains(&w) {
                map.push(w);
                if go(p, h, map) {
                    return true;
                }
                map.pop();
            }
        }
        false
    }
    pattern.order() <= host.order() && go(pattern, host, &mut Vec::new())
}

/// Random graph on `lo..=hi` vertices with edge probability 1/2.
pub fn graph(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}
