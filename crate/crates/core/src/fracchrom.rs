//! Exact fractional chromatic number.
//!
//! χ_f(G) is the optimum of
//!
//! ```text
//! maximize    Σ_v x_v
//! subject to  Σ_{v ∈ I} x_v <= 1   for every maximal independent set I
//!             x_v >= 0
//! ```
//!
//! whose dual is the fractional coloring LP. [`frac_chromatic`] solves it exactly and
//! returns both optimal solutions as a certificate; [`frac_chromatic_float`] follows the
//! float-solve, duality-check, rational-reconstruction route and serves as a cross-check.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::cliques::maximal_independent_sets;
use crate::error::{CertificateError, ReconstructError};
use crate::graph::{Graph, VertexSet};
use crate::graph6;
use crate::simplex;

/// Arbitrary-precision rational in lowest terms.
pub type Rational = BigRational;

/// Accuracy threshold of the float route.
pub const FLOAT_EPSILON: f64 = 1e-12;

/// Optimal primal and dual solutions of the fractional chromatic LP.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpCertificate {
    /// Maximal independent sets of the graph, indexing `dual`.
    pub sets: Vec<VertexSet>,
    /// Vertex weights `x_v`.
    pub primal: Vec<Rational>,
    /// Independent-set weights `y_I`, a fractional coloring.
    pub dual: Vec<Rational>,
    pub value: Rational,
}

/// χ_f(g) with its certificate.
pub fn frac_chromatic(g: &Graph) -> (Rational, LpCertificate) {
    let sets = maximal_independent_sets(g).sets;
    let rows: Vec<u32> = sets.iter().map(|s| s.bits()).collect();
    let sol = simplex::solve_exact(&rows, g.order());
    let d = &sol.denominator;
    let ratio = |num: BigInt| Rational::new(num, d.clone());
    let value = ratio(sol.value);
    let cert = LpCertificate {
        sets,
        primal: sol.primal.into_iter().map(ratio).collect(),
        dual: sol.dual.into_iter().map(ratio).collect(),
        value: value.clone(),
    };
    (value, cert)
}

/// χ_f(g) without building a certificate.
pub fn frac_chromatic_value(g: &Graph) -> Rational {
    let mut rows: Vec<u32> = Vec::new();
    crate::cliques::for_each_maximal_independent_set(g, |s| rows.push(s.bits()));
    rows.sort_unstable();
    let sol = simplex::solve_exact(&rows, g.order());
    Rational::new(sol.value, sol.denominator)
}

/// Checks primal feasibility, dual feasibility and equality of both objectives with
/// `cert.value`, all in exact arithmetic.
pub fn verify_certificate(g: &Graph, cert: &LpCertificate) -> Result<bool, CertificateError> {
    let n = g.order();
    let family = maximal_independent_sets(g).sets;
    if cert.primal.len() != n {
        return Err(CertificateError::PrimalLength {
            expected: n,
            found: cert.primal.len(),
        });
    }
    if cert.dual.len() != family.len() || cert.sets.len() != family.len() {
        return Err(CertificateError::DualLength {
            expected: family.len(),
            found: cert.dual.len().max(cert.sets.len()),
        });
    }
    if let Some(i) = (0..family.len()).find(|&i| cert.sets[i] != family[i]) {
        return Err(CertificateError::SetMismatch(i));
    }

    let one = Rational::from_integer(1.into());
    if cert.primal.iter().any(|x| x.is_negative()) || cert.dual.iter().any(|y| y.is_negative()) {
        return Ok(false);
    }
    for set in &family {
        let load: Rational = set.iter().map(|v| &cert.primal[v]).sum();
        if load > one {
            return Ok(false);
        }
    }
    for v in 0..n {
        let cover: Rational = family.iter().zip(&cert.dual).filter(|(s, _)| s.contains(v)).map(|(_, y)| y).sum();
        if cover < one {
            return Ok(false);
        }
    }
    let primal_obj: Rational = cert.primal.iter().sum();
    let dual_obj: Rational = cert.dual.iter().sum();
    Ok(primal_obj == cert.value && dual_obj == cert.value)
}

/// Float route: solve in `f64`, verify feasibility and strong duality within
/// [`FLOAT_EPSILON`], then reconstruct χ_f as the continued-fraction convergent within
/// the threshold whose denominator is at most `n·m` (`m` maximal independent sets).
pub fn frac_chromatic_float(g: &Graph) -> Result<Rational, ReconstructError> {
    let sets = maximal_independent_sets(g).sets;
    let rows: Vec<u32> = sets.iter().map(|s| s.bits()).collect();
    let n = g.order();
    let sol = simplex::solve_float(&rows, n, FLOAT_EPSILON).ok_or(ReconstructError::SolverFailed)?;
    let eps = FLOAT_EPSILON;

    let primal_ok = sol.primal.iter().all(|&x| x >= -eps)
        && rows.iter().all(|&r| (0..n).filter(|&v| r >> v & 1 == 1).map(|v| sol.primal[v]).sum::<f64>() <= 1.0 + eps);
    let dual_ok = sol.dual.iter().all(|&y| y >= -eps)
        && (0..n).all(|v| rows.iter().zip(&sol.dual).filter(|(r, _)| *r >> v & 1 == 1).map(|(_, y)| y).sum::<f64>() >= 1.0 - eps);
    let primal_obj: f64 = sol.primal.iter().sum();
    let dual_obj: f64 = sol.dual.iter().sum();
    let gap = libm::fabs(primal_obj - dual_obj);
    if !primal_ok || !dual_ok || gap >= eps {
        return Err(ReconstructError::DualityGap { gap });
    }
    let bound = (n * rows.len()) as u64;
    reconstruct_rational(sol.value, bound, eps).ok_or(ReconstructError::NoRational { value: sol.value, bound })
}

/// First continued-fraction convergent `p/q` of `x` with `q <= max_denominator` and
/// `|x - p/q| < eps`.
pub fn reconstruct_rational(x: f64, max_denominator: u64, eps: f64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut rest = x;
    for _ in 0..64 {
        let a = libm::floor(rest);
        let ai = a as i128;
        let h = ai.checked_mul(h1)?.checked_add(h0)?;
        let k = ai.checked_mul(k1)?.checked_add(k0)?;
        if k > max_denominator as i128 {
            return None;
        }
        if libm::fabs(x - h as f64 / k as f64) < eps {
            return Some(Rational::new(BigInt::from(h), BigInt::from(k)));
        }
        (h0, h1, k0, k1) = (h1, h, k1, k);
        let frac = rest - a;
        if frac == 0.0 {
            return None;
        }
        rest = 1.0 / frac;
    }
    None
}

/// Formats a rational as `p/q`, always with an explicit denominator.
pub fn format_ratio(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or an integer.
pub fn parse_ratio(s: &str) -> Option<Rational> {
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.parse::<BigInt>().ok()?, q.parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::from(1)),
    };
    (!q.is_zero()).then(|| Rational::new(p, q))
}

/// Smallest integer `t` with `t >= r`.
pub fn ceil_to_usize(r: &Rational) -> usize {
    r.ceil().to_integer().to_usize().expect("nonnegative and small")
}

/// Audit line: `<graph6> <p/q> primal=<x0,x1,...> dual=<y0,y1,...>`.
pub struct CertificateLine<'a> {
    pub graph: &'a Graph,
    pub cert: &'a LpCertificate,
}

impl fmt::Display for CertificateLine<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[Rational]| v.iter().map(format_ratio).collect::<Vec<_>>().join(",");
        write!(
            f,
            "{} {} primal={} dual={}",
            graph6::encode(self.graph),
            format_ratio(&self.cert.value),
            join(&self.cert.primal),
            join(&self.cert.dual)
        )
    }
}

/// Parses an audit line back into the graph and its certificate.
pub fn parse_certificate_line(line: &str) -> Option<(Graph, LpCertificate)> {
    let mut parts = line.split_whitespace();
    let g = graph6::decode_str(parts.next()?).ok()?;
    let value = parse_ratio(parts.next()?)?;
    let list = |s: &str, key: &str| -> Option<Vec<Rational>> {
        let body = s.strip_prefix(key)?;
        if body.is_empty() {
            return Some(Vec::new());
        }
        body.split(',').map(parse_ratio).collect()
    };
    let primal = list(parts.next()?, "primal=")?;
    let dual = list(parts.next()?, "dual=")?;
    if parts.next().is_some() {
        return None;
    }
    let sets = maximal_independent_sets(&g).sets;
    Some((g, LpCertificate { sets, primal, dual, value }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p.into(), d.into())
    }

    #[test]
    fn complete_graphs() {
        for n in 1..=8 {
            let (v, cert) = frac_chromatic(&Graph::complete(n).unwrap());
            assert_eq!(v, q(n as i64, 1));
            assert!(verify_certificate(&Graph::complete(n).unwrap(), &cert).unwrap());
        }
    }

    #[test]
    fn odd_cycles() {
        for k in 1..=4 {
            let c = Graph::cycle(2 * k + 1).unwrap();
            let (v, cert) = frac_chromatic(&c);
            assert_eq!(v, q(2 * k as i64 + 1, k as i64));
            assert!(verify_certificate(&c, &cert).unwrap());
            assert_eq!(frac_chromatic_value(&c), v);
        }
    }

    #[test]
    fn hand_certificates() {
        let k3 = Graph::complete(3).unwrap();
        let cert = LpCertificate {
            sets: maximal_independent_sets(&k3).sets,
            primal: vec![q(1, 1); 3],
            dual: vec![q(1, 1); 3],
            value: q(3, 1),
        };
        assert!(verify_certificate(&k3, &cert).unwrap());

        // each maximal independent set of C5 is a non-edge and each vertex lies in two
        let c5 = Graph::cycle(5).unwrap();
        let cert = LpCertificate {
            sets: maximal_independent_sets(&c5).sets,
            primal: vec![q(1, 2); 5],
            dual: vec![q(1, 2); 5],
            value: q(5, 2),
        };
        assert!(verify_certificate(&c5, &cert).unwrap());

        // feasible but suboptimal primal: objective 2 differs from the dual's 5/2
        let mut low = cert.clone();
        low.primal = vec![q(2, 5); 5];
        assert!(!verify_certificate(&c5, &low).unwrap());

        let mut skewed = cert.clone();
        skewed.dual[0] = q(1, 1);
        assert!(!verify_certificate(&c5, &skewed).unwrap());

        let mut short = cert.clone();
        short.dual.pop();
        assert!(matches!(verify_certificate(&c5, &short), Err(CertificateError::DualLength { .. })));
        let mut wrong = cert;
        wrong.primal.push(q(0, 1));
        assert!(matches!(verify_certificate(&c5, &wrong), Err(CertificateError::PrimalLength { .. })));
    }

    #[test]
    fn reconstruction() {
        assert_eq!(reconstruct_rational(2.5, 10, 1e-12), Some(q(5, 2)));
        assert_eq!(reconstruct_rational(7.0 / 3.0, 3, 1e-12), Some(q(7, 3)));
        assert_eq!(reconstruct_rational(7.0 / 3.0, 2, 1e-12), None);
        assert_eq!(reconstruct_rational(3.0, 1, 1e-12), Some(q(3, 1)));
        assert_eq!(frac_chromatic_float(&Graph::cycle(7).unwrap()).unwrap(), q(7, 3));
    }

    #[test]
    fn certificate_line_round_trip() {
        let c5 = Graph::cycle(5).unwrap();
        let (_, cert) = frac_chromatic(&c5);
        let line = CertificateLine { graph: &c5, cert: &cert }.to_string();
        assert!(line.starts_with("Dhc 5/2 primal="));
        let (g, back) = parse_certificate_line(&line).unwrap();
        assert_eq!(g, c5);
        assert_eq!(back, cert);
    }

    #[test]
    fn ratio_text() {
        assert_eq!(format_ratio(&q(3, 1)), "3/1");
        assert_eq!(parse_ratio("10/4"), Some(q(5, 2)));
        assert_eq!(parse_ratio("3"), Some(q(3, 1)));
        assert_eq!(parse_ratio("3/0"), None);
        assert_eq!(ceil_to_usize(&q(5, 2)), 3);
        assert_eq!(ceil_to_usize(&q(4, 1)), 4);
    }
}
