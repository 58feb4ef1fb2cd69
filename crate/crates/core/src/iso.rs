//! Induced-subgraph matching and the fixed table of filter graphs.

use alloc::vec;
use alloc::vec::Vec;

use crate::fracchrom::Rational;
use crate::graph::{low_mask, Bits, Graph};
use crate::graph6;

/// Injective vertex map from a pattern into a host; `map[p]` is the image of `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub map: Vec<usize>,
}

impl Embedding {
    /// Edge-by-edge check that the map is injective and preserves adjacency and non-adjacency.
    pub fn verify(&self, pattern: &Graph, host: &Graph) -> bool {
        let n = pattern.order();
        if self.map.len() != n || self.map.iter().any(|&w| w >= host.order()) {
            return false;
        }
        for a in 0..n {
            for b in a + 1..n {
                let (x, y) = (self.map[a], self.map[b]);
                if x == y || pattern.has_edge(a, b) != host.has_edge(x, y) {
                    return false;
                }
            }
        }
        true
    }
}

/// Finds an induced embedding of `pattern` into `host`, if one exists.
///
/// Backtracking over pattern vertices in a connectivity-first order; candidate images
/// must dominate the pattern vertex in both degree and non-degree and must agree with
/// every earlier assignment on adjacency.
pub fn find_induced_embedding(pattern: &Graph, host: &Graph) -> Option<Embedding> {
    let (np, nh) = (pattern.order(), host.order());
    if np > nh {
        return None;
    }
    let hfull = low_mask(nh);
    let mut hnon = [0u32; 32];
    for (w, row) in hnon.iter_mut().enumerate().take(nh) {
        *row = !host.row(w) & hfull & !(1 << w);
    }

    let mut order = Vec::with_capacity(np);
    let mut placed = 0u32;
    while order.len() < np {
        let next = (0..np)
            .filter(|&p| placed >> p & 1 == 0)
            .max_by_key(|&p| ((pattern.row(p) & placed).count_ones(), pattern.degree(p), core::cmp::Reverse(p)))
            .unwrap();
        order.push(next);
        placed |= 1 << next;
    }

    let mut domain = vec![0u32; np];
    for p in 0..np {
        let (dp, cp) = (pattern.degree(p), np - 1 - pattern.degree(p));
        domain[p] = Bits(hfull).filter(|&w| host.degree(w) >= dp && nh - 1 - host.degree(w) >= cp).fold(0, |m, w| m | 1 << w);
        if domain[p] == 0 {
            return None;
        }
    }

    struct Ctx<'a> {
        pattern: &'a Graph,
        host: &'a Graph,
        hnon: &'a [u32; 32],
        order: &'a [usize],
        domain: &'a [u32],
    }
    fn extend(c: &Ctx, k: usize, used: u32, map: &mut [usize]) -> bool {
        if k == c.order.len() {
            return true;
        }
        let p = c.order[k];
        let mut cand = c.domain[p] & !used;
        for &q in &c.order[..k] {
            cand &= if c.pattern.has_edge(p, q) {
                c.host.row(map[q])
            } else {
                c.hnon[map[q]]
            };
        }
        for w in Bits(cand) {
            map[p] = w;
            if extend(c, k + 1, used | 1 << w, map) {
                return true;
            }
        }
        false
    }
    let ctx = Ctx {
        pattern,
        host,
        hnon: &hnon,
        order: &order,
        domain: &domain,
    };
    let mut map = vec![usize::MAX; np];
    extend(&ctx, 0, 0, &mut map).then_some(Embedding { map })
}

/// A graph with known minimal faithful dimension, used by the induced-subgraph filters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilterGraph {
    pub name: &'static str,
    pub graph6: &'static str,
    pub graph: Graph,
    /// Smallest dimension admitting a faithful orthogonal representation.
    pub xi: usize,
    /// Position in the cascade, `1..=7`, reported as filter `3.k`.
    pub index: u8,
}

struct Entry {
    name: &'static str,
    graph6: &'static str,
    xi: usize,
    order: usize,
    size: usize,
}

/// Filter graphs in cascade order. `H` is the path on two vertices with two leaves on
/// each end, `P_k^{a,b,..}` a path on `k` vertices with leaves attached, `Ci_n(..)` a
/// circulant graph.
const TABLE: [Entry; 7] = [
    Entry { name: "co-H", graph6: "Ebtw", xi: 5, order: 6, size: 10 },
    Entry { name: "Ci8(1,2)", graph6: "Gbijmo", xi: 5, order: 8, size: 16 },
    Entry { name: "co-H + K1", graph6: "Fbvzw", xi: 6, order: 7, size: 16 },
    Entry { name: "co-P2^{3,2}", graph6: "Fbtzw", xi: 6, order: 7, size: 15 },
    Entry { name: "co-P3^{2,1,1}", graph6: "Fbuzw", xi: 6, order: 7, size: 15 },
    Entry { name: "Ci11(1,2,3) - v", graph6: "Ibgzmngjg", xi: 6, order: 10, size: 27 },
    Entry { name: "co-H + K2", graph6: "Gzznnk", xi: 7, order: 8, size: 23 },
];

/// Decodes the filter table, checking each entry's order and edge count.
pub fn filter_graphs() -> Vec<FilterGraph> {
    TABLE
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let graph = graph6::decode_str(e.graph6).expect("filter table holds valid graph6");
            assert_eq!((graph.order(), graph.size()), (e.order, e.size), "filter table entry {}", e.name);
            FilterGraph {
                name: e.name,
                graph6: e.graph6,
                graph,
                xi: e.xi,
                index: i as u8 + 1,
            }
        })
        .collect()
}

/// The first filter (in table order) with `chi_f <= xi` whose graph is an induced subgraph of `host`.
pub fn has_any_filter_graph<'a>(host: &Graph, filters: &'a [FilterGraph], chi_f: &Rational) -> Option<(&'a FilterGraph, Embedding)> {
    filters
        .iter()
        .filter(|f| f.graph.order() <= host.order() && *chi_f <= Rational::from_integer(f.xi.into()))
        .find_map(|f| find_induced_embedding(&f.graph, host).map(|e| (f, e)))
}
