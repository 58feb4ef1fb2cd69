//! Packing LPs `max 1·x  s.t.  A x <= 1, x >= 0` with a 0/1 matrix `A`.
//!
//! Two solvers share the same pivoting rules (Bland's rule, lowest index first):
//! a fraction-free integer simplex that is exact, and an `f64` simplex used by the
//! float-then-reconstruct route.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Integer arithmetic for the fraction-free tableau; `None` means overflow.
pub(crate) trait TableauInt: Clone + Ord {
    fn from_i64(v: i64) -> Self;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn div_exact(&self, o: &Self) -> Self;
    fn sign(&self) -> Ordering;
    fn to_bigint(&self) -> BigInt;
}

impl TableauInt for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        debug_assert_eq!(self % o, 0);
        self / o
    }
    fn sign(&self) -> Ordering {
        self.cmp(&0)
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl TableauInt for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        debug_assert!(self.is_multiple_of(o));
        self / o
    }
    fn sign(&self) -> Ordering {
        if self.is_positive() {
            Ordering::Greater
        } else if self.is_zero() {
            Ordering::Equal
        } else {
            Ordering::Less
        }
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

/// Exact optimum: every quantity is `numerator / denominator` with a shared positive denominator.
#[derive(Clone, Debug)]
pub(crate) struct IntSolution {
    pub denominator: BigInt,
    pub value: BigInt,
    pub primal: Vec<BigInt>,
    pub dual: Vec<BigInt>,
}

/// Solves the packing LP whose rows are the bitmasks `rows` over `n` variables.
pub(crate) fn solve_exact(rows: &[u32], n: usize) -> IntSolution {
    match solve_fraction_free::<i64>(rows, n) {
        Some(s) => s,
        None => solve_fraction_free::<BigInt>(rows, n).expect("big integers do not overflow"),
    }
}

pub(crate) fn solve_fraction_free<T: TableauInt>(rows: &[u32], n: usize) -> Option<IntSolution> {
    let m = rows.len();
    let width = n + m + 1;
    let rhs = n + m;
    let zero = T::from_i64(0);
    let one = T::from_i64(1);
    let mut t = vec![zero.clone(); (m + 1) * width];
    for (i, &row) in rows.iter().enumerate() {
        for j in 0..n {
            if row >> j & 1 == 1 {
                t[i * width + j] = one.clone();
            }
        }
        t[i * width + n + i] = one.clone();
        t[i * width + rhs] = one.clone();
    }
    for j in 0..n {
        t[m * width + j] = T::from_i64(-1);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    let mut denom = one.clone();

    loop {
        let Some(col) = (0..n + m).find(|&j| t[m * width + j].sign() == Ordering::Less) else {
            break;
        };
        let mut leave: Option<usize> = None;
        for i in 0..m {
            let a = &t[i * width + col];
            if a.sign() != Ordering::Greater {
                continue;
            }
            leave = match leave {
                None => Some(i),
                Some(r) => {
                    // compare rhs_i / a_i with rhs_r / a_r
                    let lhs = t[i * width + rhs].mul(&t[r * width + col])?;
                    let cur = t[r * width + rhs].mul(a)?;
                    match lhs.cmp(&cur) {
                        Ordering::Less => Some(i),
                        Ordering::Equal if basis[i] < basis[r] => Some(i),
                        _ => Some(r),
                    }
                }
            };
        }
        let r = leave.expect("packing LP is bounded");
        let p = t[r * width + col].clone();
        for i in 0..=m {
            if i == r {
                continue;
            }
            let f = t[i * width + col].clone();
            for j in 0..width {
                let v = t[i * width + j].mul(&p)?.sub(&f.mul(&t[r * width + j])?)?;
                t[i * width + j] = v.div_exact(&denom);
            }
        }
        denom = p;
        basis[r] = col;
    }

    let mut primal = vec![BigInt::zero(); n];
    for (i, &b) in basis.iter().enumerate() {
        if b < n {
            primal[b] = t[i * width + rhs].to_bigint();
        }
    }
    let dual = (0..m).map(|i| t[m * width + n + i].to_bigint()).collect();
    Some(IntSolution {
        denominator: denom.to_bigint(),
        value: t[m * width + rhs].to_bigint(),
        primal,
        dual,
    })
}

/// Floating-point optimum of the same LP.
#[derive(Clone, Debug)]
pub(crate) struct FloatSolution {
    pub value: f64,
    pub primal: Vec<f64>,
    pub dual: Vec<f64>,
}

/// Dense `f64` simplex with Bland's rule; `tol` is the pivoting zero threshold.
pub(crate) fn solve_float(rows: &[u32], n: usize, tol: f64) -> Option<FloatSolution> {
    let m = rows.len();
    let width = n + m + 1;
    let rhs = n + m;
    let mut t = vec![0.0f64; (m + 1) * width];
    for (i, &row) in rows.iter().enumerate() {
        for j in 0..n {
            if row >> j & 1 == 1 {
                t[i * width + j] = 1.0;
            }
        }
        t[i * width + n + i] = 1.0;
        t[i * width + rhs] = 1.0;
    }
    for j in 0..n {
        t[m * width + j] = -1.0;
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    let max_iter = 50 * (n + m) + 100;
    let mut it = 0;
    loop {
        let Some(col) = (0..n + m).find(|&j| t[m * width + j] < -tol) else {
            break;
        };
        it += 1;
        if it > max_iter {
            return None;
        }
        let mut leave: Option<(usize, f64)> = None;
        for i in 0..m {
            let a = t[i * width + col];
            if a <= tol {
                continue;
            }
            let ratio = t[i * width + rhs] / a;
            leave = match leave {
                Some((r, best)) if ratio > best + tol || (ratio >= best - tol && basis[r] < basis[i]) => Some((r, best)),
                _ => Some((i, ratio)),
            };
        }
        let (r, _) = leave?;
        let p = t[r * width + col];
        for j in 0..width {
            t[r * width + j] /= p;
        }
        for i in 0..=m {
            if i == r {
                continue;
            }
            let f = t[i * width + col];
            if f != 0.0 {
                for j in 0..width {
                    t[i * width + j] -= f * t[r * width + j];
                }
            }
        }
        basis[r] = col;
    }
    let mut primal = vec![0.0; n];
    for (i, &b) in basis.iter().enumerate() {
        if b < n {
            primal[b] = t[i * width + rhs];
        }
    }
    let dual = (0..m).map(|i| t[m * width + n + i]).collect();
    Some(FloatSolution {
        value: t[m * width + rhs],
        primal,
        dual,
    })
}
