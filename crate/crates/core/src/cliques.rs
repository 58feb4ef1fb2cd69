//! Cliques, maximal independent sets, and the joined-pair structure `nK̄2 + mK1`.

use alloc::vec::Vec;

use crate::graph::{low_mask, Bits, Graph, VertexSet};

/// A maximum clique of `g`.
pub fn max_clique(g: &Graph) -> VertexSet {
    fn grow(g: &Graph, r: u32, mut p: u32, best: &mut u32) {
        if p == 0 {
            if r.count_ones() > best.count_ones() {
                *best = r;
            }
            return;
        }
        while p != 0 {
            if r.count_ones() + p.count_ones() <= best.count_ones() {
                return;
            }
            let v = p.trailing_zeros();
            grow(g, r | 1 << v, p & g.row(v as usize), best);
            p &= p - 1;
        }
        if r.count_ones() > best.count_ones() {
            *best = r;
        }
    }
    let mut best = 0;
    grow(g, 0, g.vertices().bits(), &mut best);
    VertexSet(best)
}

/// Clique number ω(g).
pub fn max_clique_size(g: &Graph) -> usize {
    max_clique(g).len()
}

/// A family of independent sets of a host graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependentSetFamily {
    pub sets: Vec<VertexSet>,
    /// Whether `sets` is exactly the family of inclusion-maximal independent sets.
    pub maximal: bool,
}

impl IndependentSetFamily {
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
}

/// All inclusion-maximal independent sets, sorted by bitmask.
///
/// Bron–Kerbosch with Tomita pivoting, run on the complement graph.
pub fn maximal_independent_sets(g: &Graph) -> IndependentSetFamily {
    let mut sets = Vec::new();
    for_each_maximal_independent_set(g, |s| sets.push(s));
    sets.sort_unstable();
    IndependentSetFamily { sets, maximal: true }
}

/// Visits the maximal independent sets of `g` in search order.
pub fn for_each_maximal_independent_set<F: FnMut(VertexSet)>(g: &Graph, mut f: F) {
    let full = low_mask(g.order());
    let mut non = [0u32; 32];
    for (v, row) in non.iter_mut().enumerate().take(g.order()) {
        *row = !g.row(v) & full & !(1 << v);
    }
    fn bk<F: FnMut(VertexSet)>(non: &[u32; 32], r: u32, p: u32, x: u32, f: &mut F) {
        if p == 0 {
            if x == 0 {
                f(VertexSet(r));
            }
            return;
        }
        let pivot = Bits(p | x).max_by_key(|&u| (non[u] & p).count_ones()).unwrap();
        let mut p = p;
        let mut x = x;
        for v in Bits(p & !non[pivot]) {
            bk(non, r | 1 << v, p & non[v], x & non[v], f);
            p &= !(1 << v);
            x |= 1 << v;
        }
    }
    bk(&non, 0, full, 0, &mut f);
}

/// Witness that `nK̄2 + mK1` is a (not necessarily induced) subgraph of a host graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairStructureWitness {
    pub pairs: Vec<(usize, usize)>,
    pub singletons: Vec<usize>,
}

impl PairStructureWitness {
    /// `2n + m`, the lower bound on the orthogonal rank that this witness certifies.
    pub fn bound(&self) -> usize {
        2 * self.pairs.len() + self.singletons.len()
    }

    /// Checks disjointness and that every edge between distinct parts is present in `g`.
    /// Edges inside a pair are not required.
    pub fn verify(&self, g: &Graph) -> bool {
        let mut parts: Vec<Vec<usize>> = self.pairs.iter().map(|&(a, b)| alloc::vec![a, b]).collect();
        parts.extend(self.singletons.iter().map(|&v| alloc::vec![v]));
        let mut seen = Vec::new();
        for part in &parts {
            for &v in part {
                if v >= g.order() || seen.contains(&v) {
                    return false;
                }
                seen.push(v);
            }
        }
        for (i, a) in parts.iter().enumerate() {
            for b in &parts[i + 1..] {
                for &u in a {
                    for &v in b {
                        if !g.has_edge(u, v) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// Finds `nK̄2 + mK1` with `2n + m = t` and `m = t mod 2` as a subgraph of `g`.
///
/// Equivalently: `t` vertices on which the complement of `g` induces a matching.
/// Vertices are tried by descending degree; a vertex needs degree at least `t - 2`.
pub fn find_pair_structure(g: &Graph, t: usize) -> Option<PairStructureWitness> {
    let n = g.order();
    if t == 0 || t > n {
        return None;
    }
    let full = low_mask(n);
    let mut non = [0u32; 32];
    for (v, row) in non.iter_mut().enumerate().take(n) {
        *row = !g.row(v) & full & !(1 << v);
    }
    let mut order: Vec<usize> = (0..n).filter(|&v| g.degree(v) + 2 >= t).collect();
    order.sort_by_key(|&v| core::cmp::Reverse(g.degree(v)));
    if order.len() < t {
        return None;
    }

    struct Ctx<'a> {
        non: &'a [u32; 32],
        order: &'a [usize],
        t: u32,
    }
    fn search(c: &Ctx, idx: usize, chosen: u32, matched: u32) -> Option<u32> {
        if chosen.count_ones() == c.t {
            return Some(chosen);
        }
        if chosen.count_ones() as usize + (c.order.len() - idx) < c.t as usize {
            return None;
        }
        let v = c.order[idx];
        let clash = c.non[v] & chosen;
        let ok = match clash.count_ones() {
            0 => true,
            1 => clash & matched == 0,
            _ => false,
        };
        if ok {
            let m = if clash != 0 { matched | clash | 1 << v } else { matched };
            if let Some(s) = search(c, idx + 1, chosen | 1 << v, m) {
                return Some(s);
            }
        }
        search(c, idx + 1, chosen, matched)
    }
    let ctx = Ctx {
        non: &non,
        order: &order,
        t: t as u32,
    };
    let chosen = search(&ctx, 0, 0, 0)?;

    let mut pairs = Vec::new();
    let mut loose = Vec::new();
    for v in Bits(chosen) {
        let partner = non[v] & chosen;
        if partner == 0 {
            loose.push(v);
        } else {
            let w = partner.trailing_zeros() as usize;
            if v < w {
                pairs.push((v, w));
            }
        }
    }
    let mut singletons = Vec::new();
    if loose.len() % 2 == 1 {
        singletons.push(loose.pop().unwrap());
    }
    pairs.extend(loose.chunks(2).map(|c| (c[0], c[1])));
    pairs.sort_unstable();
    Some(PairStructureWitness { pairs, singletons })
}
