//! Descent probabilities: the closed two-factor formula, its upper bound,
//! and the recursive bound `D̄(n,k) ≥ D(n,k,i)`.

use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::canonical::CanonicalBraid;
use crate::perm::PermutationBraid;

fn ratio(num: u64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn binom(n: usize, k: usize) -> BigInt {
    if k > n {
        BigInt::zero()
    } else {
        binomial(BigInt::from(n), BigInt::from(k))
    }
}

/// `D(n,2,i)` by the closed double sum.
pub fn exact_d2(n: usize, i: usize) -> BigRational {
    assert!(n >= 2 && (1..n).contains(&i), "need n >= 2 and 1 <= i < n");
    let mut total = BigRational::zero();
    for k in 0..=n - 2 {
        let mut inner = BigRational::zero();
        for j in 0..=k {
            let num = binom(i - 1, j) * binom(n - i - 1, k - j);
            inner += BigRational::new(num, binom(k + 2, j + 1));
        }
        total += BigRational::new(BigInt::from(n - k - 1), binom(n - 2, k)) * inner;
    }
    ratio(1, 2) + total / BigRational::from_integer(BigInt::from(n * (n - 1)))
}

/// `D(n,2,i)` by enumerating all `(x₁, x₂) ∈ S_n²`.
pub fn exact_d2_enumerated(n: usize, i: usize) -> BigRational {
    let all: Vec<PermutationBraid> = PermutationBraid::all(n).collect();
    let mut hits = 0u64;
    for a in &all {
        for b in &all {
            let x = CanonicalBraid::from_factors(n, 0, [a.clone(), b.clone()]);
            let starts = x.inf() > 0
                || x.factors()
                    .first()
                    .is_some_and(|h| h.starting_set().iter().any(|g| g.get() == i));
            hits += starts as u64;
        }
    }
    let total = (all.len() * all.len()) as u64;
    ratio(hits, total)
}

/// `(1/n) Σ_{k=0}^{n-2} (n-k-1)/(k+2)`, bounding `d(n,2)`.
pub fn d2_upper_bound(n: usize) -> BigRational {
    assert!(n >= 2);
    let sum: BigRational = (0..=n - 2)
        .map(|k| ratio((n - k - 1) as u64, (k + 2) as u64))
        .sum();
    sum / BigRational::from_integer(BigInt::from(n))
}

/// `(1/2 + ln n/(n−1) + 3(ln n)²/(n(n−1)), 3(ln n)²/n)`: the bound on
/// `D(n,3,1)` and its asymptotic `d(n,3)` form.
pub fn d3_bound(n: usize) -> (f64, f64) {
    assert!(n >= 2);
    let nf = n as f64;
    let l = nf.ln();
    (
        0.5 + l / (nf - 1.0) + 3.0 * l * l / (nf * (nf - 1.0)),
        3.0 * l * l / nf,
    )
}

/// Arithmetic needed by the recursion.
pub trait Scalar: Clone + Send + Sync + Add<Output = Self> + Sub<Output = Self> {
    fn ratio(num: u64, den: u64) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// `self · num / den`.
    fn scale(&self, num: u64, den: u64) -> Self;
    fn as_f64(&self) -> f64;
}

impl Scalar for BigRational {
    fn ratio(num: u64, den: u64) -> Self {
        ratio(num, den)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, num: u64, den: u64) -> Self {
        self * ratio(num, den)
    }
    fn as_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn ratio(num: u64, den: u64) -> Self {
        num as f64 / den as f64
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, num: u64, den: u64) -> Self {
        self * num as f64 / den as f64
    }
    fn as_f64(&self) -> f64 {
        *self
    }
}

/// Binary fixed point with [`Fixed::FRAC_BITS`] fractional bits.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Fixed(BigInt);

impl Fixed {
    pub const FRAC_BITS: u32 = 448;
}

impl Add for Fixed {
    type Output = Fixed;
    fn add(self, o: Fixed) -> Fixed {
        Fixed(self.0 + o.0)
    }
}

impl Sub for Fixed {
    type Output = Fixed;
    fn sub(self, o: Fixed) -> Fixed {
        Fixed(self.0 - o.0)
    }
}

impl Scalar for Fixed {
    fn ratio(num: u64, den: u64) -> Self {
        Fixed((BigInt::from(num) << Self::FRAC_BITS) / den)
    }
    fn mul(&self, other: &Self) -> Self {
        Fixed((&self.0 * &other.0) >> Self::FRAC_BITS)
    }
    fn scale(&self, num: u64, den: u64) -> Self {
        Fixed(&self.0 * num / den)
    }
    fn as_f64(&self) -> f64 {
        let bits = self.0.bits() as i64;
        let shift = (bits - 64).max(0);
        let top = (&self.0 >> shift as usize).to_f64().unwrap_or(f64::NAN);
        top * 2f64.powi((shift - Self::FRAC_BITS as i64) as i32)
    }
}

/// Memoized `D̄(n,k)`, the recursive upper bound on `D(n,k,i)`, with
/// `D̄(n,0) = 0`, `D̄(n,1) = 1/2` and `D̄(1,k) = 0`.
pub struct DescentBound<S> {
    /// `values[k][n]`
    values: Vec<Vec<S>>,
}

impl<S: Scalar> DescentBound<S> {
    /// Fills the grid for all `n ≤ max_n`, `k ≤ max_k`.
    pub fn new(max_n: usize, max_k: usize) -> Self {
        let zero = S::ratio(0, 1);
        let half = S::ratio(1, 2);
        let mut values: Vec<Vec<S>> = Vec::with_capacity(max_k + 1);
        for k in 0..=max_k {
            let row: Vec<S> = (0..=max_n)
                .into_par_iter()
                .map(|n| match (n, k) {
                    (0..=1, _) | (_, 0) => zero.clone(),
                    (_, 1) => half.clone(),
                    _ => Self::step(n, &values[k - 1], &values[k - 2]),
                })
                .collect();
            values.push(row);
        }
        DescentBound { values }
    }

    /// One application of the recursion given rows `k-1` and `k-2`.
    fn step(n: usize, prev: &[S], prev2: &[S]) -> S {
        let mut sum = S::ratio(0, 1);
        for a in 0..=n - 2 {
            let q = &prev2[n - a - 1];
            // Σ_{b=0}^{a} q^b / C(a+1, b), with 0⁰ = 1.
            let mut term = S::ratio(1, 1);
            let mut inner = term.clone();
            for b in 0..a {
                term = term.mul(q).scale((b + 1) as u64, (a + 1 - b) as u64);
                inner = inner + term.clone();
            }
            let outer = prev[n - a].mul(&inner);
            sum = sum + outer.scale((n - a - 1) as u64, (a + 2) as u64);
        }
        S::ratio(1, 2) + sum.scale(2, (n * (n - 1)) as u64)
    }

    pub fn value(&self, n: usize, k: usize) -> &S {
        &self.values[k][n]
    }

    /// `(n−1)(D̄(n,k) − D̄(n,k−1))`, the tabulated estimate of `d(n,k)`.
    pub fn d_estimate(&self, n: usize, k: usize) -> S {
        assert!(k >= 1);
        (self.values[k][n].clone() - self.values[k - 1][n].clone()).scale((n - 1) as u64, 1)
    }
}

/// `d̄(n,k)` as `f64`, evaluated in fixed point.
pub fn d_estimate(n: usize, k: usize) -> f64 {
    DescentBound::<Fixed>::new(n, k).d_estimate(n, k).as_f64()
}
