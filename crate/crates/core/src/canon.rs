//! Canonical labeling and automorphism groups.
//!
//! Individualization-refinement search in the style of nauty: equitable partition
//! refinement, a search tree over individualized vertices, node invariants taken from
//! the refinement trace, and pruning with the automorphisms discovered along the way.
//! The canonical graph is the leaf maximizing `(trace sequence, relabeled graph)`.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::graph::{Bits, Graph, MAX_ORDER};

/// A permutation of `0..n` stored in a fixed array; entries `>= n` are unused.
pub type Perm = [u8; MAX_ORDER];

/// Isomorphism-invariant identifier of a graph.
///
/// Holds the canonically relabeled graph; equal forms mean isomorphic graphs.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CanonicalForm(Graph);

impl CanonicalForm {
    pub fn graph(&self) -> &Graph {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.order()
    }

    /// Order byte followed by the upper triangle packed column by column.
    pub fn to_bytes(&self) -> Vec<u8> {
        let g = &self.0;
        let n = g.order();
        let mut out = Vec::with_capacity(1 + (n * (n - 1) / 2).div_ceil(8));
        out.push(n as u8);
        let mut acc = 0u8;
        let mut nbits = 0;
        for j in 1..n {
            for i in 0..j {
                acc = acc << 1 | g.has_edge(i, j) as u8;
                nbits += 1;
                if nbits == 8 {
                    out.push(acc);
                    acc = 0;
                    nbits = 0;
                }
            }
        }
        if nbits > 0 {
            out.push(acc << (8 - nbits));
        }
        out
    }
}

/// Result of a canonical labeling run.
#[derive(Clone, Debug)]
pub struct Labeling {
    order: usize,
    lab: Perm,
    canon: Graph,
    generators: Vec<Perm>,
    orbits: Perm,
}

impl Labeling {
    /// Vertex placed at canonical position `i`.
    #[inline]
    pub fn vertex_at(&self, i: usize) -> usize {
        self.lab[i] as usize
    }

    /// Canonical position of vertex `v`.
    pub fn position_of(&self, v: usize) -> usize {
        self.lab[..self.order].iter().position(|&x| x as usize == v).unwrap()
    }

    pub fn canonical_graph(&self) -> &Graph {
        &self.canon
    }

    pub fn form(&self) -> CanonicalForm {
        CanonicalForm(self.canon)
    }

    /// Generators of the automorphism group, as vertex maps `v -> gen[v]`.
    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    /// Smallest vertex in the automorphism orbit of `v`.
    #[inline]
    pub fn orbit_of(&self, v: usize) -> usize {
        self.orbits[v] as usize
    }

    pub fn is_rigid(&self) -> bool {
        self.generators.is_empty()
    }

    /// Order of the automorphism group, by Schreier-free brute closure; only meant for tests on tiny graphs.
    #[doc(hidden)]
    pub fn group_order_by_closure(&self) -> usize {
        let n = self.order;
        let mut id = [0u8; MAX_ORDER];
        for (i, x) in id.iter_mut().enumerate() {
            *x = i as u8;
        }
        let mut elements: Vec<Perm> = alloc::vec![id];
        let mut i = 0;
        while i < elements.len() {
            let e = elements[i];
            for gen in &self.generators {
                let mut c = id;
                for v in 0..n {
                    c[v] = gen[e[v] as usize];
                }
                if !elements.contains(&c) {
                    elements.push(c);
                }
            }
            i += 1;
        }
        elements.len()
    }
}

/// Canonical form of `g`.
pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonical_labeling(g).form()
}

/// Runs the full search and returns the canonical labeling with automorphism data.
pub fn canonical_labeling(g: &Graph) -> Labeling {
    let n = g.order();
    let mut part = Partition::unit(n);
    let mut queue = Queue::new();
    queue.push(part.cells[0]);
    let trace = refine(g, &mut part, &mut queue);

    let mut search = Search {
        g,
        n,
        path: [0; MAX_ORDER],
        traces: [0; MAX_ORDER + 1],
        first: None,
        best: None,
        generators: Vec::new(),
    };
    search.traces[0] = trace;
    search.visit(&part, 0);

    let best = search.best.expect("search reaches at least one leaf");
    let mut orbits = [0u8; MAX_ORDER];
    orbit_partition(n, search.generators.iter(), &mut orbits);
    Labeling {
        order: n,
        lab: best.lab,
        canon: best.graph,
        generators: search.generators,
        orbits,
    }
}

/// Fills `orbits[v]` with the smallest vertex reachable from `v` under `gens`.
fn orbit_partition<'a>(n: usize, gens: impl Iterator<Item = &'a Perm>, orbits: &mut Perm) {
    for (v, o) in orbits.iter_mut().enumerate().take(n) {
        *o = v as u8;
    }
    fn find(orbits: &mut Perm, mut v: usize) -> usize {
        while orbits[v] as usize != v {
            let p = orbits[v] as usize;
            orbits[v] = orbits[p];
            v = p;
        }
        v
    }
    for gen in gens {
        for v in 0..n {
            let a = find(orbits, v);
            let b = find(orbits, gen[v] as usize);
            if a != b {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                orbits[hi] = lo as u8;
            }
        }
    }
    for v in 0..n {
        orbits[v] = find(orbits, v) as u8;
    }
}

/// Ordered partition of the vertex set into cells.
#[derive(Clone, Copy)]
struct Partition {
    cells: [u32; MAX_ORDER],
    len: usize,
}

impl Partition {
    fn unit(n: usize) -> Self {
        let mut cells = [0; MAX_ORDER];
        cells[0] = crate::graph::low_mask(n);
        Partition { cells, len: 1 }
    }

    fn is_discrete(&self, n: usize) -> bool {
        self.len == n
    }

    fn first_nonsingleton(&self) -> usize {
        (0..self.len).find(|&i| self.cells[i].count_ones() > 1).unwrap()
    }

    /// Splits `{v}` off the front of cell `ci`.
    fn individualize(&mut self, ci: usize, v: usize) {
        let bit = 1u32 << v;
        self.cells.copy_within(ci + 1..self.len, ci + 2);
        self.cells[ci + 1] = self.cells[ci] & !bit;
        self.cells[ci] = bit;
        self.len += 1;
    }
}

struct Queue {
    items: [u32; 2 * MAX_ORDER + 1],
    head: usize,
    tail: usize,
}

impl Queue {
    fn new() -> Self {
        Queue {
            items: [0; 2 * MAX_ORDER + 1],
            head: 0,
            tail: 0,
        }
    }

    fn push(&mut self, cell: u32) {
        self.items[self.tail] = cell;
        self.tail += 1;
    }

    fn pop(&mut self) -> Option<u32> {
        (self.head < self.tail).then(|| {
            self.head += 1;
            self.items[self.head - 1]
        })
    }
}

#[inline]
fn mix(h: u64, x: u64) -> u64 {
    let h = (h ^ x).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    h ^ (h >> 29)
}

/// Refines `part` to the coarsest equitable partition finer than it, using the queued
/// splitter cells. Every decision depends only on cell positions, so the result and the
/// returned trace are invariant under relabeling.
fn refine(g: &Graph, part: &mut Partition, queue: &mut Queue) -> u64 {
    let mut trace = 0x243F_6A88_85A3_08D3u64;
    while let Some(splitter) = queue.pop() {
        let mut i = 0;
        while i < part.len {
            let cell = part.cells[i];
            if cell & (cell - 1) == 0 {
                i += 1;
                continue;
            }
            let mut it = Bits(cell);
            let v0 = it.next().unwrap();
            let c0 = (g.row(v0) & splitter).count_ones();
            if it.all(|v| (g.row(v) & splitter).count_ones() == c0) {
                i += 1;
                continue;
            }
            let mut buckets = [0u32; MAX_ORDER + 1];
            let (mut lo, mut hi) = (MAX_ORDER, 0);
            for v in Bits(cell) {
                let c = (g.row(v) & splitter).count_ones() as usize;
                buckets[c] |= 1 << v;
                lo = lo.min(c);
                hi = hi.max(c);
            }
            let frags = buckets[lo..=hi].iter().filter(|&&b| b != 0).count();
            part.cells.copy_within(i + 1..part.len, i + frags);
            part.len += frags - 1;
            let mut j = i;
            for (c, &b) in buckets[lo..=hi].iter().enumerate() {
                if b != 0 {
                    part.cells[j] = b;
                    queue.push(b);
                    trace = mix(trace, ((i as u64) << 40) | (((lo + c) as u64) << 8) | b.count_ones() as u64);
                    j += 1;
                }
            }
            i += frags;
        }
    }
    mix(trace, part.len as u64)
}

#[derive(Clone, Copy)]
struct Leaf {
    lab: Perm,
    graph: Graph,
    path: [u8; MAX_ORDER],
    traces: [u64; MAX_ORDER + 1],
    depth: usize,
}

struct Search<'a> {
    g: &'a Graph,
    n: usize,
    /// `path[k]` is the vertex individualized at depth `k`.
    path: [u8; MAX_ORDER],
    /// `traces[k]` is the refinement trace of the node at depth `k`.
    traces: [u64; MAX_ORDER + 1],
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Perm>,
}

impl Search<'_> {
    /// Explores the subtree at `part`. Returns `Some(d)` to unwind to depth `d` once an
    /// automorphism shows the rest of the enclosing subtree is already accounted for.
    fn visit(&mut self, part: &Partition, depth: usize) -> Option<usize> {
        if part.is_discrete(self.n) {
            return self.leaf(part, depth);
        }
        let ci = part.first_nonsingleton();
        let cell = part.cells[ci];
        let mut explored = 0u32;
        let mut orbits = [0u8; MAX_ORDER];
        let mut gens_seen = usize::MAX;
        for w in Bits(cell) {
            if explored != 0 {
                if gens_seen != self.generators.len() {
                    gens_seen = self.generators.len();
                    let fixed = &self.path[..depth];
                    let stab = self.generators.iter().filter(|gen| fixed.iter().all(|&p| gen[p as usize] == p));
                    orbit_partition(self.n, stab, &mut orbits);
                }
                let ow = orbits[w];
                if Bits(explored).any(|x| orbits[x] == ow) {
                    continue;
                }
            }
            explored |= 1 << w;

            let mut child = *part;
            child.individualize(ci, w);
            let mut queue = Queue::new();
            queue.push(1 << w);
            self.path[depth] = w as u8;
            self.traces[depth + 1] = refine(self.g, &mut child, &mut queue);

            let eq_first = self.first.as_ref().is_none_or(|f| prefix_eq(&f.traces, f.depth, &self.traces, depth + 1));
            let vs_best = match &self.best {
                None => Ordering::Equal,
                Some(b) => prefix_cmp(&self.traces, depth + 1, &b.traces, b.depth),
            };
            if vs_best == Ordering::Less && !eq_first {
                continue;
            }
            if let Some(target) = self.visit(&child, depth + 1) {
                if target < depth {
                    return Some(target);
                }
            }
        }
        None
    }

    fn leaf(&mut self, part: &Partition, depth: usize) -> Option<usize> {
        let n = self.n;
        let mut lab = [0u8; MAX_ORDER];
        let mut pos = [0u8; MAX_ORDER];
        for i in 0..n {
            let v = part.cells[i].trailing_zeros() as usize;
            lab[i] = v as u8;
            pos[v] = i as u8;
        }
        let mut rows = [0u32; MAX_ORDER];
        for i in 0..n {
            let mut row = 0u32;
            for u in Bits(self.g.row(lab[i] as usize)) {
                row |= 1 << pos[u];
            }
            rows[i] = row;
        }
        let graph = Graph::from_rows(n, &rows[..n]).expect("relabeling preserves validity");
        let leaf = Leaf {
            lab,
            graph,
            path: self.path,
            traces: self.traces,
            depth,
        };

        let Some(first) = self.first else {
            self.first = Some(leaf);
            self.best = Some(leaf);
            return None;
        };
        if graph == first.graph {
            return self.automorphism(&first, &leaf);
        }
        let best = self.best.unwrap();
        match prefix_cmp(&leaf.traces, depth, &best.traces, best.depth).then_with(|| graph.cmp(&best.graph)) {
            Ordering::Equal => self.automorphism(&best, &leaf),
            Ordering::Greater => {
                self.best = Some(leaf);
                None
            }
            Ordering::Less => None,
        }
    }

    /// Records the automorphism taking leaf `a` to leaf `b` and picks the unwind depth.
    fn automorphism(&mut self, a: &Leaf, b: &Leaf) -> Option<usize> {
        let n = self.n;
        let mut gen = [0u8; MAX_ORDER];
        for i in 0..n {
            gen[a.lab[i] as usize] = b.lab[i];
        }
        if (0..n).all(|v| gen[v] as usize == v) {
            return None;
        }
        self.generators.push(gen);
        let common = (0..a.depth.min(b.depth)).take_while(|&k| a.path[k] == b.path[k]).count();
        let fixes_prefix = (0..common).all(|k| gen[a.path[k] as usize] == a.path[k]);
        let maps_branch = common < a.depth && common < b.depth && gen[a.path[common] as usize] == b.path[common];
        (fixes_prefix && maps_branch).then_some(common)
    }
}

fn prefix_eq(a: &[u64; MAX_ORDER + 1], a_depth: usize, b: &[u64; MAX_ORDER + 1], upto: usize) -> bool {
    upto <= a_depth && a[..=upto] == b[..=upto]
}

/// Compares the trace sequences on their common depth range.
fn prefix_cmp(a: &[u64; MAX_ORDER + 1], a_depth: usize, b: &[u64; MAX_ORDER + 1], b_depth: usize) -> Ordering {
    let k = a_depth.min(b_depth);
    a[..=k].cmp(&b[..=k])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexSet;

    fn all_perms(n: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut p: Vec<usize> = (0..n).collect();
        fn heap(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if k <= 1 {
                out.push(p.clone());
                return;
            }
            for i in 0..k {
                heap(k - 1, p, out);
                if k % 2 == 0 {
                    p.swap(i, k - 1);
                } else {
                    p.swap(0, k - 1);
                }
            }
        }
        heap(n, &mut p, &mut out);
        out
    }

    fn brute_aut_order(g: &Graph) -> usize {
        all_perms(g.order()).iter().filter(|p| g.permute(p) == *g).count()
    }

    #[test]
    fn p4_reversal_has_same_form() {
        let p4 = Graph::path(4).unwrap();
        assert_eq!(canonical_form(&p4), canonical_form(&p4.permute(&[3, 2, 1, 0])));
        let k3k1 = Graph::complete(3).unwrap().union(&Graph::empty(1).unwrap()).unwrap();
        assert_ne!(canonical_form(&k3k1), canonical_form(&p4));
    }

    #[test]
    fn every_relabeling_of_four_vertex_graphs_has_one_form() {
        for mask in 0u32..64 {
            let mut g = Graph::empty(4).unwrap();
            let mut bit = 0;
            for j in 1..4 {
                for i in 0..j {
                    if mask >> bit & 1 == 1 {
                        g.add_edge(i, j);
                    }
                    bit += 1;
                }
            }
            let forms: Vec<_> = all_perms(4).iter().map(|p| canonical_form(&g.permute(p))).collect();
            assert!(forms.iter().all(|f| *f == forms[0]));
        }
    }

    #[test]
    fn group_orders_match_brute_force() {
        let samples = [
            Graph::empty(6).unwrap(),
            Graph::complete(6).unwrap(),
            Graph::cycle(6).unwrap(),
            Graph::cycle(7).unwrap(),
            Graph::path(6).unwrap(),
            Graph::complete(2).unwrap().union(&Graph::complete(2).unwrap()).unwrap().union(&Graph::complete(3).unwrap()).unwrap(),
            Graph::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (6, 5)]).unwrap(),
            Graph::circulant(8, &[1, 2]).unwrap(),
        ];
        for g in samples {
            let lab = canonical_labeling(&g);
            assert_eq!(lab.group_order_by_closure(), brute_aut_order(&g), "{g:?}");
            for gen in lab.generators() {
                let p: Vec<usize> = gen[..g.order()].iter().map(|&x| x as usize).collect();
                assert_eq!(g.permute(&p), g);
            }
        }
    }

    #[test]
    fn orbits_of_disjoint_union() {
        let g = Graph::complete(3).unwrap().union(&Graph::path(3).unwrap()).unwrap();
        let lab = canonical_labeling(&g);
        assert_eq!(lab.orbit_of(1), 0);
        assert_eq!(lab.orbit_of(2), 0);
        assert_eq!(lab.orbit_of(5), 3);
        assert_eq!(lab.orbit_of(4), 4);
        let _ = VertexSet::EMPTY;
    }

    #[test]
    fn canonical_graph_is_relabeled_input() {
        let g = Graph::circulant(9, &[1, 3]).unwrap();
        let lab = canonical_labeling(&g);
        let mut perm = alloc::vec![0usize; 9];
        for i in 0..9 {
            perm[lab.vertex_at(i)] = i;
        }
        assert_eq!(g.permute(&perm), *lab.canonical_graph());
        assert_eq!(lab.position_of(lab.vertex_at(4)), 4);
    }

    #[test]
    fn bytes_are_order_prefixed() {
        let f = canonical_form(&Graph::complete(3).unwrap());
        assert_eq!(f.to_bytes(), alloc::vec![3, 0b1110_0000]);
    }
}
