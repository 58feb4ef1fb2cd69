//! Isomorph-free generation of all graphs of a given order by canonical augmentation.
//!
//! A graph of order `k + 1` is produced from a parent of order `k` by adding a vertex
//! adjacent to a subset `S` of the parent's vertices. The child is kept iff
//!
//! * `S` is the smallest member of its orbit under the parent's automorphism group, and
//! * the new vertex lies in the automorphism orbit of the child's canonical deletion
//!   vertex: the vertex of maximal [`vertex_invariant`] with the latest canonical position.
//!
//! Starting from `K1`, every isomorphism class is emitted exactly once and no seen-set
//! is stored.

use alloc::vec;
use alloc::vec::Vec;

use crate::canon::{canonical_labeling, Perm};
use crate::error::EnumerateError;
use crate::graph::{Bits, Graph, VertexSet};

/// Largest order accepted by [`enumerate_order`] and [`enumerate_shard`].
pub const MAX_CENSUS_ORDER: usize = 12;

/// Order of the ancestors whose hash assigns subtrees to shards.
pub const DEFAULT_SPLIT_ORDER: usize = 8;

/// Cheap isomorphism invariant of a vertex: degree, then neighbor degree sum, then
/// the number of triangles through it.
#[inline]
pub fn vertex_invariant(g: &Graph, v: usize) -> u32 {
    let row = g.row(v);
    let mut nsum = 0u32;
    let mut tri = 0u32;
    for u in Bits(row) {
        let r = g.row(u);
        nsum += r.count_ones();
        tri += (r & row).count_ones();
    }
    (row.count_ones() << 24) | (nsum << 12) | (tri / 2)
}

fn check_order(n: usize) -> Result<(), EnumerateError> {
    if (1..=MAX_CENSUS_ORDER).contains(&n) {
        Ok(())
    } else {
        Err(EnumerateError::OrderOutOfRange(n))
    }
}

/// Emits one representative of every isomorphism class of graphs on `n` vertices.
pub fn enumerate_order<F: FnMut(&Graph)>(n: usize, sink: &mut F) -> Result<u64, EnumerateError> {
    check_order(n)?;
    Ok(expand(&Graph::empty(1).unwrap(), n, sink))
}

/// Emits the graphs of order `n` whose split-level ancestor hashes to `shard`.
///
/// The shards `0..total_shards` partition the output of [`enumerate_order`].
pub fn enumerate_shard<F: FnMut(&Graph)>(
    n: usize,
    shard: usize,
    total_shards: usize,
    sink: &mut F,
) -> Result<u64, EnumerateError> {
    check_order(n)?;
    if shard >= total_shards {
        return Err(EnumerateError::InvalidShard {
            shard,
            total: total_shards,
        });
    }
    let mut count = 0;
    for root in split_roots(n) {
        if shard_of(&root, total_shards) == shard {
            count += expand(&root, n, sink);
        }
    }
    Ok(count)
}

/// Order at which the generation tree is cut into independent subtrees.
pub fn split_order(n: usize) -> usize {
    n.min(DEFAULT_SPLIT_ORDER)
}

/// All generation-tree nodes at [`split_order`]`(n)`, in deterministic order.
pub fn split_roots(n: usize) -> Vec<Graph> {
    let mut roots = Vec::new();
    expand(&Graph::empty(1).unwrap(), split_order(n), &mut |g: &Graph| roots.push(*g));
    roots
}

/// Stable shard assignment of a split-level node (FNV-1a over its adjacency rows).
pub fn shard_of(root: &Graph, total_shards: usize) -> usize {
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    let mut eat = |b: u8| {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    };
    eat(root.order() as u8);
    for &row in root.rows() {
        for b in row.to_le_bytes() {
            eat(b);
        }
    }
    (h % total_shards as u64) as usize
}

/// Emits every descendant of `root` at order `n` (or `root` itself when it has order `n`).
pub fn expand<F: FnMut(&Graph)>(root: &Graph, n: usize, sink: &mut F) -> u64 {
    if root.order() >= n {
        if root.order() == n {
            sink(root);
            return 1;
        }
        return 0;
    }
    let mut count = 0;
    for_each_child(root, &mut |child: &Graph| count += expand(child, n, sink));
    count
}

/// Calls `f` on each accepted one-vertex augmentation of `parent`.
pub fn for_each_child<F: FnMut(&Graph)>(parent: &Graph, f: &mut F) {
    let k = parent.order();
    let labeling = canonical_labeling(parent);
    let orbit_min = (!labeling.is_rigid()).then(|| subset_orbit_minima(k, labeling.generators()));

    let mut deg = [0u32; 32];
    for (v, d) in deg.iter_mut().enumerate().take(k) {
        *d = parent.degree(v) as u32;
    }
    let maxdeg = deg[..k].iter().copied().max().unwrap_or(0);

    for mask in 0u32..(1u32 << k) {
        let s = mask.count_ones();
        if s < maxdeg {
            continue;
        }
        // every other vertex must have child degree <= s
        if Bits(mask).any(|u| deg[u] >= s) {
            continue;
        }
        if let Some(minima) = &orbit_min {
            if !minima[mask as usize] {
                continue;
            }
        }
        let child = parent.with_new_vertex(VertexSet(mask)).unwrap();
        if is_canonical_augmentation(&child) {
            f(&child);
        }
    }
}

/// True iff the last vertex of `child` is in the orbit of its canonical deletion vertex.
pub fn is_canonical_augmentation(child: &Graph) -> bool {
    let n = child.order();
    let new = n - 1;
    let s = child.degree(new) as u32;
    let mut ties = 0u32;
    for u in 0..new {
        let d = child.degree(u) as u32;
        if d > s {
            return false;
        }
        if d == s {
            ties |= 1 << u;
        }
    }
    if ties == 0 {
        return true;
    }
    let f_new = vertex_invariant(child, new);
    let mut best_ties = 0u32;
    for u in Bits(ties) {
        let f = vertex_invariant(child, u);
        if f > f_new {
            return false;
        }
        if f == f_new {
            best_ties |= 1 << u;
        }
    }
    if best_ties == 0 {
        return true;
    }
    let labeling = canonical_labeling(child);
    let candidates = best_ties | 1 << new;
    let deletion = (0..n).rev().map(|i| labeling.vertex_at(i)).find(|&v| candidates >> v & 1 == 1).unwrap();
    labeling.orbit_of(deletion) == labeling.orbit_of(new)
}

/// `out[mask]` is true iff `mask` is the smallest subset in its orbit under `gens`.
fn subset_orbit_minima(k: usize, gens: &[Perm]) -> Vec<bool> {
    let size = 1usize << k;
    let mut parent: Vec<u32> = (0..size as u32).collect();
    fn find(p: &mut [u32], mut x: u32) -> u32 {
        while p[x as usize] != x {
            let up = p[x as usize];
            p[x as usize] = p[up as usize];
            x = up;
        }
        x
    }
    for gen in gens {
        for mask in 0..size as u32 {
            let mut img = 0u32;
            for v in Bits(mask) {
                img |= 1 << gen[v];
            }
            let a = find(&mut parent, mask);
            let b = find(&mut parent, img);
            if a != b {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi as usize] = lo;
            }
        }
    }
    let mut out = vec![false; size];
    for mask in 0..size as u32 {
        out[mask as usize] = find(&mut parent, mask) == mask;
    }
    out
}
