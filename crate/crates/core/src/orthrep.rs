//! Faithful orthogonal representations (FORs).
//!
//! An orthogonal representation maps vertices to pairwise distinct rays so that adjacent
//! vertices get orthogonal rays; it is faithful when non-adjacent vertices never do.
//! This module verifies candidate representations numerically and searches for them.
//! A successful search certifies an upper bound on the minimal faithful dimension; a
//! failed one proves nothing.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::cliques::find_pair_structure;
use crate::error::OrthRepError;
use crate::graph::Graph;
use crate::graph6;
use crate::iso::find_induced_embedding;

/// Allowed deviation of a vector's norm from 1.
pub const NORM_TOLERANCE: f64 = 1e-9;

/// Unit vectors, one per vertex, all of length `dimension`.
#[derive(Clone, Debug, PartialEq)]
pub struct OrthRep {
    pub dimension: usize,
    pub vectors: Vec<Vec<Complex64>>,
}

/// Which scalars a search may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Field {
    Complex,
    Real,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Largest |⟨u,v⟩| accepted as orthogonal on an edge.
    pub orth: f64,
    /// Smallest |⟨u,v⟩| accepted as non-orthogonal on a non-edge.
    pub sep: f64,
    /// Two vectors with |⟨u,v⟩| >= 1 - ray are the same ray.
    pub ray: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            orth: 1e-9,
            sep: 1e-6,
            ray: 1e-6,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ForReport {
    /// Adjacent vertices are orthogonal.
    pub is_or: bool,
    /// Additionally, non-adjacent vertices are not orthogonal.
    pub is_faithful: bool,
    pub max_edge_violation: f64,
    /// 1.0 when the graph is complete.
    pub min_nonedge_overlap: f64,
}

#[inline]
fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

#[inline]
fn norm(a: &[Complex64]) -> f64 {
    libm::sqrt(a.iter().map(|x| x.norm_sqr()).sum())
}

/// Checks `rep` against `g` from the pairwise inner products of the given vectors.
pub fn verify_for(g: &Graph, rep: &OrthRep, tol: Tolerances) -> Result<ForReport, OrthRepError> {
    let n = g.order();
    if rep.dimension == 0 {
        return Err(OrthRepError::ZeroDimension);
    }
    if rep.vectors.len() != n {
        return Err(OrthRepError::OrderMismatch {
            expected: n,
            found: rep.vectors.len(),
        });
    }
    for (v, vec) in rep.vectors.iter().enumerate() {
        if vec.len() != rep.dimension {
            return Err(OrthRepError::DimensionMismatch {
                vertex: v,
                expected: rep.dimension,
                found: vec.len(),
            });
        }
        let nv = norm(vec);
        if nv.is_nan() || libm::fabs(nv - 1.0) > NORM_TOLERANCE {
            return Err(OrthRepError::NotNormalized { vertex: v, norm: nv });
        }
    }
    let mut max_edge = 0.0f64;
    let mut min_non = 1.0f64;
    for u in 0..n {
        for v in u + 1..n {
            let a = inner(&rep.vectors[u], &rep.vectors[v]).norm();
            if a >= 1.0 - tol.ray {
                return Err(OrthRepError::RayCollision(u, v));
            }
            if g.has_edge(u, v) {
                max_edge = max_edge.max(a);
            } else {
                min_non = min_non.min(a);
            }
        }
    }
    let is_or = max_edge <= tol.orth;
    Ok(ForReport {
        is_or,
        is_faithful: is_or && min_non >= tol.sep,
        max_edge_violation: max_edge,
        min_nonedge_overlap: min_non,
    })
}

/// Limits for [`search_for`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    /// Gradient iterations summed over all restarts.
    pub total_iterations: u64,
    /// Gradient iterations in a single restart.
    pub restart_iterations: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            total_iterations: 1_000_000,
            restart_iterations: 20_000,
        }
    }
}

impl SearchBudget {
    pub fn restarts(&self) -> u64 {
        self.total_iterations.div_ceil(self.restart_iterations.max(1))
    }

    /// Iterations available to `restart` when every earlier restart used its full share.
    pub fn allowance(&self, restart: u64) -> u64 {
        let before = restart.saturating_mul(self.restart_iterations);
        self.restart_iterations.min(self.total_iterations.saturating_sub(before))
    }
}

/// A verified representation and the effort spent finding it.
#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub rep: OrthRep,
    pub restart: u64,
    /// Iterations charged against the budget, counting earlier restarts in full.
    pub iterations: u64,
    pub report: ForReport,
}

/// Searches for a FOR of `g` in dimension `d`, trying restarts `0, 1, ...` in order.
pub fn search_for(g: &Graph, d: usize, budget: SearchBudget, seed: u64, field: Field) -> Option<SearchOutcome> {
    (0..budget.restarts()).find_map(|restart| run_restart(g, d, budget, seed, restart, field))
}

/// Restart `restart` of [`search_for`], with the outcome it would report.
pub fn run_restart(g: &Graph, d: usize, budget: SearchBudget, seed: u64, restart: u64, field: Field) -> Option<SearchOutcome> {
    let (found, used) = search_restart(g, d, seed, restart, budget.allowance(restart), field);
    found.map(|(rep, report)| SearchOutcome {
        rep,
        restart,
        iterations: restart * budget.restart_iterations + used,
        report,
    })
}

// Margins the optimizer aims for before polishing.
const SEP_TARGET: f64 = 0.05;
const RAY_TARGET: f64 = 1e-3;
const COARSE_EDGE: f64 = 1e-8;
// Neighbor directions with a smaller Gram-Schmidt residual count as dependent.
const DEPENDENT: f64 = 1e-6;

/// One restart from the random start determined by `(seed, restart)`. Returns the
/// verified representation, if any, and the number of gradient iterations used.
pub fn search_restart(
    g: &Graph,
    d: usize,
    seed: u64,
    restart: u64,
    max_iterations: u64,
    field: Field,
) -> (Option<(OrthRep, ForReport)>, u64) {
    let n = g.order();
    if d == 0 {
        return (None, 0);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart);
    let mut z: Vec<Vec<Complex64>> = (0..n)
        .map(|_| {
            let mut v: Vec<Complex64> = (0..d)
                .map(|_| match field {
                    Field::Complex => Complex64::new(gaussian(&mut rng), gaussian(&mut rng)),
                    Field::Real => Complex64::new(gaussian(&mut rng), 0.0),
                })
                .collect();
            normalize(&mut v);
            v
        })
        .collect();

    let mut grad = vec![vec![Complex64::new(0.0, 0.0); d]; n];
    let mut step = 0.1f64;
    let mut prev_loss = f64::INFINITY;
    let mut used = 0;
    while used < max_iterations {
        used += 1;
        let (loss, max_edge, min_non, max_pair) = loss_and_gradient(g, &z, &mut grad);
        if max_edge < COARSE_EDGE && min_non > SEP_TARGET / 2.0 && max_pair < 1.0 - RAY_TARGET {
            break;
        }
        if loss > prev_loss {
            step = (step * 0.5).max(1e-4);
        } else {
            step = (step * 1.05).min(0.5);
        }
        prev_loss = loss;
        for (v, gv) in z.iter_mut().zip(&grad) {
            // tangent projection keeps the step on the unit sphere to first order
            let radial = inner(v, gv).re;
            for (x, gx) in v.iter_mut().zip(gv) {
                *x -= (*gx - *x * radial) * step;
            }
            normalize(v);
        }
    }

    if !polish(g, &mut z) {
        return (None, used);
    }
    let rep = OrthRep { dimension: d, vectors: z };
    match verify_for(g, &rep, Tolerances::default()) {
        Ok(report) if report.is_faithful => (Some((rep, report)), used),
        _ => (None, used),
    }
}

/// Loss over all pairs and its gradient. Returns `(loss, max edge overlap, min non-edge
/// overlap, max overlap)`.
fn loss_and_gradient(g: &Graph, z: &[Vec<Complex64>], grad: &mut [Vec<Complex64>]) -> (f64, f64, f64, f64) {
    let n = z.len();
    for gv in grad.iter_mut() {
        gv.iter_mut().for_each(|x| *x = Complex64::new(0.0, 0.0));
    }
    let (mut loss, mut max_edge, mut min_non, mut max_pair) = (0.0, 0.0f64, 1.0f64, 0.0f64);
    for u in 0..n {
        for v in u + 1..n {
            let a = inner(&z[u], &z[v]);
            let m = a.norm();
            max_pair = max_pair.max(m);
            // d(loss)/d|a|
            let mut dl = 0.0;
            if g.has_edge(u, v) {
                max_edge = max_edge.max(m);
                loss += m * m;
                dl += 2.0 * m;
            } else {
                min_non = min_non.min(m);
                if m < SEP_TARGET {
                    loss += (SEP_TARGET - m) * (SEP_TARGET - m);
                    dl -= 2.0 * (SEP_TARGET - m);
                }
            }
            let cap = 1.0 - RAY_TARGET;
            if m > cap {
                loss += (m - cap) * (m - cap);
                dl += 2.0 * (m - cap);
            }
            if dl == 0.0 {
                continue;
            }
            // direction of increasing |a|; at a = 0 any phase works
            let phase = if m > 1e-300 { a / m } else { Complex64::new(1.0, 0.0) };
            let cu = phase.conj() * dl;
            let cv = phase * dl;
            for i in 0..z[u].len() {
                grad[u][i] += cu * z[v][i];
                grad[v][i] += cv * z[u][i];
            }
        }
    }
    (loss, max_edge, min_non, max_pair)
}

/// Cyclic projections: each vector is replaced by its normalized component orthogonal to
/// the span of its neighbors' vectors. Returns false if a vector collapses.
fn polish(g: &Graph, z: &mut [Vec<Complex64>]) -> bool {
    let n = z.len();
    for _ in 0..500 {
        for u in 0..n {
            let mut basis: Vec<Vec<Complex64>> = Vec::new();
            for w in g.neighbors(u).iter() {
                let mut b = z[w].clone();
                for _ in 0..2 {
                    for e in &basis {
                        let c = inner(e, &b);
                        b.iter_mut().zip(e).for_each(|(x, y)| *x -= c * y);
                    }
                }
                let nb = norm(&b);
                if nb > DEPENDENT {
                    b.iter_mut().for_each(|x| *x /= nb);
                    basis.push(b);
                }
            }
            let mut x = z[u].clone();
            for _ in 0..2 {
                for e in &basis {
                    let c = inner(e, &x);
                    x.iter_mut().zip(e).for_each(|(xi, ei)| *xi -= c * ei);
                }
            }
            if norm(&x) < 1e-6 {
                return false;
            }
            normalize(&mut x);
            z[u] = x;
        }
        let worst = g.edges().map(|(u, v)| inner(&z[u], &z[v]).norm()).fold(0.0, f64::max);
        if worst < 1e-14 {
            break;
        }
    }
    true
}

fn normalize(v: &mut [Complex64]) {
    let nv = norm(v);
    if nv > 0.0 {
        v.iter_mut().for_each(|x| *x /= nv);
    }
}

fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    // Box-Muller on (0, 1]
    let u1 = ((rng.next_u64() >> 11) as f64 + 1.0) / (1u64 << 53) as f64;
    let u2 = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
    libm::sqrt(-2.0 * libm::log(u1)) * libm::cos(2.0 * core::f64::consts::PI * u2)
}

/// Largest `t = 2n + m` with `m ∈ {0, 1}` such that `nK̄2 + mK1` is a subgraph of `g`:
/// a certified lower bound on the orthogonal rank and hence on the faithful dimension.
pub fn xi_lower_bound_pairs(g: &Graph) -> usize {
    (1..=g.order()).rev().find(|&t| find_pair_structure(g, t).is_some()).unwrap_or(1)
}

/// Representation of the join `g1 + g2` placing the two representations in orthogonal
/// coordinate blocks: vertices of `g1` first, then those of `g2`.
pub fn join_representations(a: &OrthRep, b: &OrthRep) -> OrthRep {
    let d = a.dimension + b.dimension;
    let zero = Complex64::new(0.0, 0.0);
    let mut vectors = Vec::with_capacity(a.vectors.len() + b.vectors.len());
    for v in &a.vectors {
        let mut w = v.clone();
        w.resize(d, zero);
        vectors.push(w);
    }
    for v in &b.vectors {
        let mut w = vec![zero; a.dimension];
        w.extend_from_slice(v);
        vectors.push(w);
    }
    OrthRep { dimension: d, vectors }
}

/// Moves a representation of `from` onto an isomorphic graph `to`; `None` if the graphs
/// are not isomorphic.
pub fn transfer(rep: &OrthRep, from: &Graph, to: &Graph) -> Option<OrthRep> {
    if from.order() != to.order() {
        return None;
    }
    let iso = find_induced_embedding(from, to)?;
    Some(rep.permuted(&iso.map))
}

impl OrthRep {
    /// Standard basis vectors `e_0, ..., e_{n-1}` in dimension `n`: a FOR of `K_n`.
    pub fn standard_basis(n: usize) -> OrthRep {
        let vectors = (0..n)
            .map(|i| (0..n).map(|j| Complex64::new((i == j) as u8 as f64, 0.0)).collect())
            .collect();
        OrthRep { dimension: n, vectors }
    }

    /// Representation of the relabeled graph where vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> OrthRep {
        let mut vectors = vec![Vec::new(); self.vectors.len()];
        for (v, vec) in self.vectors.iter().enumerate() {
            vectors[perm[v]] = vec.clone();
        }
        OrthRep {
            dimension: self.dimension,
            vectors,
        }
    }

    pub fn is_real(&self) -> bool {
        self.vectors.iter().flatten().all(|x| x.im == 0.0)
    }

    /// Text form: graph6 line, dimension line, then one vector per line as
    /// comma-separated `re±imi` entries with 17 significant digits.
    pub fn to_text(&self, g: &Graph) -> String {
        let mut out = graph6::encode(g);
        out.push('\n');
        out.push_str(&format!("{}\n", self.dimension));
        for v in &self.vectors {
            let entries: Vec<String> = v.iter().map(|x| format_complex(*x)).collect();
            out.push_str(&entries.join(","));
            out.push('\n');
        }
        out
    }

    /// Parses [`OrthRep::to_text`] output.
    pub fn from_text(text: &str) -> Result<(Graph, OrthRep), OrthRepError> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let g = graph6::decode_str(lines.next().ok_or(OrthRepError::Parse("missing graph6 line"))?)
            .map_err(|_| OrthRepError::Parse("bad graph6 line"))?;
        let dimension: usize = lines
            .next()
            .ok_or(OrthRepError::Parse("missing dimension"))?
            .parse()
            .map_err(|_| OrthRepError::Parse("bad dimension"))?;
        let vectors = lines
            .map(|l| l.split(',').map(parse_complex).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()
            .ok_or(OrthRepError::Parse("bad vector entry"))?;
        Ok((g, OrthRep { dimension, vectors }))
    }
}

fn format_complex(x: Complex64) -> String {
    let sign = if x.im.is_sign_negative() { '-' } else { '+' };
    format!("{:.16e}{}{:.16e}i", x.re, sign, libm::fabs(x.im))
}

fn parse_complex(s: &str) -> Option<Complex64> {
    let body = s.trim().strip_suffix('i')?;
    let bytes = body.as_bytes();
    let split = (1..bytes.len()).rev().find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'))?;
    let re: f64 = body[..split].parse().ok()?;
    let im: f64 = body[split..].parse().ok()?;
    Some(Complex64::new(re, im))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis(d: usize, i: usize) -> Vec<Complex64> {
        OrthRep::standard_basis(d).vectors[i].clone()
    }

    #[test]
    fn k3_standard_basis_is_faithful() {
        let k3 = Graph::complete(3).unwrap();
        let r = verify_for(&k3, &OrthRep::standard_basis(3), Tolerances::default()).unwrap();
        assert!(r.is_or && r.is_faithful);
        assert_eq!(r.max_edge_violation, 0.0);
    }

    #[test]
    fn orthogonal_non_edge_is_unfaithful() {
        let e2 = Graph::empty(2).unwrap();
        let r = verify_for(&e2, &OrthRep::standard_basis(2), Tolerances::default()).unwrap();
        assert!(r.is_or);
        assert!(!r.is_faithful);
    }

    #[test]
    fn repeated_rays_rejected() {
        let c4 = Graph::cycle(4).unwrap();
        let rep = OrthRep {
            dimension: 2,
            vectors: vec![basis(2, 0), basis(2, 1), basis(2, 0), basis(2, 1)],
        };
        assert_eq!(verify_for(&c4, &rep, Tolerances::default()), Err(OrthRepError::RayCollision(0, 2)));
    }

    #[test]
    fn malformed_representations() {
        let k2 = Graph::complete(2).unwrap();
        let short = OrthRep {
            dimension: 2,
            vectors: vec![basis(2, 0)],
        };
        assert!(matches!(verify_for(&k2, &short, Tolerances::default()), Err(OrthRepError::OrderMismatch { .. })));
        let ragged = OrthRep {
            dimension: 2,
            vectors: vec![basis(2, 0), basis(3, 1)],
        };
        assert!(matches!(verify_for(&k2, &ragged, Tolerances::default()), Err(OrthRepError::DimensionMismatch { .. })));
        let long = OrthRep {
            dimension: 2,
            vectors: vec![basis(2, 0), vec![Complex64::new(0.0, 2.0), Complex64::new(0.0, 0.0)]],
        };
        assert!(matches!(verify_for(&k2, &long, Tolerances::default()), Err(OrthRepError::NotNormalized { vertex: 1, .. })));
    }

    #[test]
    fn complete_graph_search() {
        let k4 = Graph::complete(4).unwrap();
        let out = search_for(&k4, 4, SearchBudget::default(), 7, Field::Complex).unwrap();
        assert!(out.report.is_faithful);
        // an orthonormal basis: the Gram matrix is the identity
        for u in 0..4 {
            for v in 0..4 {
                let a = inner(&out.rep.vectors[u], &out.rep.vectors[v]).norm();
                assert!((a - (u == v) as u8 as f64).abs() < 1e-9);
            }
        }
        assert!(search_for(&k4, 3, SearchBudget { total_iterations: 2000, restart_iterations: 500 }, 7, Field::Complex).is_none());
    }

    #[test]
    fn join_of_bases() {
        // K2 + K1 = K3
        let rep = join_representations(&OrthRep::standard_basis(2), &OrthRep::standard_basis(1));
        assert_eq!(rep, OrthRep::standard_basis(3));
        let k3 = Graph::complete(3).unwrap();
        let p3 = Graph::path(3).unwrap();
        assert!(transfer(&rep, &k3, &p3).is_none());
        let moved = transfer(&rep, &k3, &k3).unwrap();
        assert!(verify_for(&k3, &moved, Tolerances::default()).unwrap().is_faithful);
    }

    #[test]
    fn pair_bounds() {
        assert_eq!(xi_lower_bound_pairs(&Graph::complete(4).unwrap()), 4);
        assert_eq!(xi_lower_bound_pairs(&Graph::cycle(4).unwrap()), 4);
        assert_eq!(xi_lower_bound_pairs(&Graph::empty(3).unwrap()), 2);
        assert_eq!(xi_lower_bound_pairs(&Graph::empty(1).unwrap()), 1);
    }

    #[test]
    fn text_round_trip() {
        let c4 = Graph::cycle(4).unwrap();
        // C4 is the join of two non-adjacent pairs, each needing its own plane
        let small = SearchBudget { total_iterations: 20_000, restart_iterations: 2_000 };
        assert!(search_for(&c4, 3, small, 1, Field::Complex).is_none());
        let out = search_for(&c4, 4, SearchBudget::default(), 1, Field::Complex).unwrap();
        let text = out.rep.to_text(&c4);
        let (g, back) = OrthRep::from_text(&text).unwrap();
        assert_eq!(g, c4);
        assert_eq!(back, out.rep);
        assert_eq!(parse_complex("1.5e-3-2.0e1i"), Some(Complex64::new(1.5e-3, -20.0)));
        assert_eq!(parse_complex("-1e0+0e0i"), Some(Complex64::new(-1.0, 0.0)));
    }
}
