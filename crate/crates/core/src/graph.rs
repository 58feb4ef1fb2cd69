//! Simple undirected graphs on at most 32 vertices stored as packed adjacency rows.

use core::fmt;

use crate::error::GraphError;

/// Largest supported order; one adjacency row fits in a `u32`.
pub const MAX_ORDER: usize = 32;

/// A set of vertices as a bitmask, bit `v` set iff `v` is a member.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u32);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// All vertices `0..n`.
    #[inline]
    pub fn full(n: usize) -> Self {
        VertexSet(low_mask(n))
    }

    #[inline]
    pub fn singleton(v: usize) -> Self {
        VertexSet(1 << v)
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(vs: I) -> Self {
        VertexSet(vs.into_iter().fold(0, |m, v| m | (1 << v)))
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < MAX_ORDER && self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    #[inline]
    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> Bits {
        Bits(self.0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = Bits;
    fn into_iter(self) -> Bits {
        Bits(self.0)
    }
}

/// Iterator over the set bits of a word, lowest first.
#[derive(Clone, Copy, Debug)]
pub struct Bits(pub u32);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Bits {}

#[inline]
pub(crate) fn low_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Simple undirected graph with vertices `0..order`.
///
/// `adj[v]` has bit `u` set iff `{u, v}` is an edge. Rows beyond `order` are zero,
/// so derived equality and ordering compare graphs by their labeled edge sets.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    order: u8,
    adj: [u32; MAX_ORDER],
}

impl Graph {
    /// Edgeless graph on `order` vertices.
    pub fn empty(order: usize) -> Result<Self, GraphError> {
        if order == 0 || order > MAX_ORDER {
            return Err(GraphError::InvalidOrder(order));
        }
        Ok(Graph {
            order: order as u8,
            adj: [0; MAX_ORDER],
        })
    }

    pub fn complete(order: usize) -> Result<Self, GraphError> {
        let mut g = Graph::empty(order)?;
        let full = low_mask(order);
        for v in 0..order {
            g.adj[v] = full & !(1 << v);
        }
        Ok(g)
    }

    /// Path `0 - 1 - ... - (order-1)`.
    pub fn path(order: usize) -> Result<Self, GraphError> {
        let mut g = Graph::empty(order)?;
        for v in 1..order {
            g.add_edge(v - 1, v);
        }
        Ok(g)
    }

    /// Cycle on `order >= 3` vertices.
    pub fn cycle(order: usize) -> Result<Self, GraphError> {
        if order < 3 {
            return Err(GraphError::InvalidOrder(order));
        }
        let mut g = Graph::path(order)?;
        g.add_edge(0, order - 1);
        Ok(g)
    }

    /// Circulant graph: `v` is adjacent to `v ± j (mod order)` for every jump `j`.
    pub fn circulant(order: usize, jumps: &[usize]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(order)?;
        for v in 0..order {
            for &j in jumps {
                let u = (v + j) % order;
                if u != v {
                    g.add_edge(u, v);
                }
            }
        }
        Ok(g)
    }

    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(order)?;
        for &(u, v) in edges {
            if u >= order || v >= order {
                return Err(GraphError::VertexOutOfRange(u.max(v)));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from raw adjacency rows, checking every representation invariant.
    pub fn from_rows(order: usize, rows: &[u32]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(order)?;
        if rows.len() != order {
            return Err(GraphError::InvalidOrder(rows.len()));
        }
        let full = low_mask(order);
        for (v, &row) in rows.iter().enumerate() {
            if row & !full != 0 {
                return Err(GraphError::VertexOutOfRange(order));
            }
            if row >> v & 1 == 1 {
                return Err(GraphError::SelfLoop(v));
            }
            g.adj[v] = row;
        }
        for u in 0..order {
            for v in Bits(g.adj[u]) {
                if g.adj[v] >> u & 1 == 0 {
                    return Err(GraphError::Asymmetric(u, v));
                }
            }
        }
        Ok(g)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order as usize
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.rows().iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    #[inline]
    pub fn rows(&self) -> &[u32] {
        &self.adj[..self.order as usize]
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    #[inline]
    pub(crate) fn row(&self, v: usize) -> u32 {
        self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.order())
    }

    /// Adds `{u, v}`. Panics in debug builds on a loop or an out-of-range vertex.
    #[inline]
    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.order() && v < self.order());
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    #[inline]
    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order()).flat_map(move |v| Bits(self.adj[v] & low_mask(v)).map(move |u| (u, v)))
    }

    pub fn complement(&self) -> Graph {
        let n = self.order();
        let full = low_mask(n);
        let mut g = *self;
        for v in 0..n {
            g.adj[v] = !self.adj[v] & full & !(1 << v);
        }
        g
    }

    /// True iff every vertex is reachable from vertex 0.
    pub fn is_connected(&self) -> bool {
        let full = low_mask(self.order());
        let mut seen = 1u32;
        let mut frontier = 1u32;
        while frontier != 0 {
            let mut next = 0;
            for v in Bits(frontier) {
                next |= self.adj[v];
            }
            frontier = next & !seen;
            seen |= frontier;
        }
        seen == full
    }

    /// Vertices in the connected component of `v`.
    pub fn component_of(&self, v: usize) -> VertexSet {
        let mut seen = 1u32 << v;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for u in Bits(frontier) {
                next |= self.adj[u];
            }
            frontier = next & !seen;
            seen |= frontier;
        }
        VertexSet(seen)
    }

    /// Disjoint union; the vertices of `other` follow those of `self`.
    pub fn union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let (n1, n2) = (self.order(), other.order());
        let mut g = Graph::empty(n1 + n2).map_err(|_| GraphError::OrderOverflow(n1 + n2))?;
        g.adj[..n1].copy_from_slice(self.rows());
        for v in 0..n2 {
            g.adj[n1 + v] = other.adj[v] << n1;
        }
        Ok(g)
    }

    /// Disjoint union plus every edge between the two parts.
    pub fn join(&self, other: &Graph) -> Result<Graph, GraphError> {
        let (n1, n2) = (self.order(), other.order());
        let mut g = self.union(other)?;
        let left = low_mask(n1);
        let right = low_mask(n1 + n2) & !left;
        for v in 0..n1 {
            g.adj[v] |= right;
        }
        for v in n1..n1 + n2 {
            g.adj[v] |= left;
        }
        Ok(g)
    }

    /// Subgraph induced by `vertices`, relabeled in increasing order.
    pub fn induced_subgraph(&self, vertices: VertexSet) -> Result<Graph, GraphError> {
        if vertices.is_empty() {
            return Err(GraphError::EmptySelection);
        }
        if !vertices.is_subset(self.vertices()) {
            return Err(GraphError::VertexOutOfRange(31 - vertices.0.leading_zeros() as usize));
        }
        let mut g = Graph::empty(vertices.len())?;
        for (i, v) in vertices.iter().enumerate() {
            g.adj[i] = pext(self.adj[v], vertices.0);
        }
        Ok(g)
    }

    /// Graph with vertex `v` deleted and later vertices shifted down by one.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph, GraphError> {
        self.induced_subgraph(VertexSet(self.vertices().0 & !(1 << v)))
    }

    /// Relabels vertices: vertex `v` of `self` becomes vertex `perm[v]`.
    ///
    /// `perm` must be a permutation of `0..order`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        debug_assert_eq!(perm.len(), self.order());
        let mut g = *self;
        for v in 0..self.order() {
            let mut row = 0u32;
            for u in Bits(self.adj[v]) {
                row |= 1 << perm[u];
            }
            g.adj[perm[v]] = row;
        }
        g
    }

    /// Adds a new last vertex adjacent to exactly `neighbors`.
    pub fn with_new_vertex(&self, neighbors: VertexSet) -> Result<Graph, GraphError> {
        let n = self.order();
        if n + 1 > MAX_ORDER {
            return Err(GraphError::OrderOverflow(n + 1));
        }
        if !neighbors.is_subset(self.vertices()) {
            return Err(GraphError::VertexOutOfRange(n));
        }
        let mut g = *self;
        g.order += 1;
        g.adj[n] = neighbors.0;
        for u in neighbors {
            g.adj[u] |= 1 << n;
        }
        Ok(g)
    }

    /// True iff `set` has no internal edges.
    #[inline]
    pub fn is_independent(&self, set: VertexSet) -> bool {
        set.iter().all(|v| self.adj[v] & set.0 == 0)
    }

    /// True iff every two members of `set` are adjacent.
    #[inline]
    pub fn is_clique(&self, set: VertexSet) -> bool {
        set.iter().all(|v| (self.adj[v] | 1 << v) & set.0 == set.0)
    }
}

/// Compresses the bits of `x` selected by `mask` into the low bits.
#[inline]
fn pext(x: u32, mask: u32) -> u32 {
    let mut out = 0;
    for (i, b) in Bits(mask).enumerate() {
        out |= (x >> b & 1) << i;
    }
    out
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, [", self.order)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        f.write_str("])")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    fn is_isomorphic_brute(a: &Graph, b: &Graph) -> bool {
        fn rec(a: &Graph, b: &Graph, perm: &mut Vec<usize>, used: u32) -> bool {
            let n = a.order();
            if perm.len() == n {
                return a.permute(perm) == *b;
            }
            for w in 0..n {
                if used >> w & 1 == 0 {
                    perm.push(w);
                    if rec(a, b, perm, used | 1 << w) {
                        return true;
                    }
                    perm.pop();
                }
            }
            false
        }
        a.order() == b.order() && rec(a, b, &mut Vec::new(), 0)
    }

    #[test]
    fn complement_of_complete_is_empty() {
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(k4.complement(), Graph::empty(4).unwrap());
        let k1 = Graph::empty(1).unwrap();
        assert_eq!(k1.complement(), k1);
    }

    #[test]
    fn p4_is_self_complementary() {
        let p4 = Graph::path(4).unwrap();
        let c = p4.complement();
        assert_ne!(c, p4);
        assert!(is_isomorphic_brute(&p4, &c));
        assert_eq!(c.complement(), p4);
    }

    #[test]
    fn connectivity() {
        let k1 = Graph::empty(1).unwrap();
        assert!(k1.is_connected());
        assert!(!k1.union(&k1).unwrap().is_connected());
        assert!(Graph::path(4).unwrap().is_connected());
    }

    #[test]
    fn union_and_join() {
        let k1 = Graph::empty(1).unwrap();
        let k2 = Graph::complete(2).unwrap();
        assert_eq!(k1.union(&k1).unwrap(), Graph::empty(2).unwrap());
        assert_eq!(k1.join(&k1).unwrap(), k2);
        let two_k2 = k2.union(&k2).unwrap();
        assert_eq!(two_k2, Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap());
        let e2 = Graph::empty(2).unwrap();
        let c4 = e2.join(&e2).unwrap();
        assert!(is_isomorphic_brute(&c4, &Graph::cycle(4).unwrap()));
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(k2.join(&k3).unwrap(), Graph::complete(5).unwrap());
        let k20 = Graph::complete(20).unwrap();
        assert_eq!(k20.union(&k20), Err(GraphError::OrderOverflow(40)));
        assert_eq!(k20.join(&k20), Err(GraphError::OrderOverflow(40)));
    }

    #[test]
    fn induced_subgraphs() {
        let k4 = Graph::complete(4).unwrap();
        let sel = VertexSet::from_vertices([0, 1, 2]);
        assert_eq!(k4.induced_subgraph(sel).unwrap(), Graph::complete(3).unwrap());
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(c5.induced_subgraph(sel).unwrap(), Graph::path(3).unwrap());
        assert_eq!(c5.induced_subgraph(c5.vertices()).unwrap(), c5);
        assert_eq!(c5.induced_subgraph(VertexSet::EMPTY), Err(GraphError::EmptySelection));
        assert!(c5.induced_subgraph(VertexSet::singleton(7)).is_err());
    }

    #[test]
    fn rows_validation() {
        assert!(Graph::from_rows(2, &[0b10, 0b00]).is_err());
        assert!(Graph::from_rows(2, &[0b01, 0b00]).is_err());
        assert!(Graph::from_rows(2, &[0b110, 0b001]).is_err());
        assert_eq!(Graph::from_rows(2, &[0b10, 0b01]).unwrap(), Graph::complete(2).unwrap());
    }

    #[test]
    fn clique_and_independence_predicates() {
        let c5 = Graph::cycle(5).unwrap();
        assert!(c5.is_clique(VertexSet::from_vertices([0, 1])));
        assert!(!c5.is_clique(VertexSet::from_vertices([0, 1, 2])));
        assert!(c5.is_independent(VertexSet::from_vertices([0, 2])));
        assert!(!c5.is_independent(VertexSet::from_vertices([0, 1])));
    }
}
