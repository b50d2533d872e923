//! Exact and asymptotic evaluation of the closed-form quantities behind the
//! bounded-degree ensembles: perfect-matching counts, degree-class weights,
//! falling factorials, Poisson census means, the simplicity constant and
//! truncated Poisson masses.
//!
//! Everything exact is computed with big integers/rationals; every asymptotic
//! formula is shipped with its leading term only and is exercised by tests
//! against the exact route, never used as a production substitute.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::graph::StructureProfile;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountingError {
    #[error("matching count requires an even number of points, got {0}")]
    OddPointCount(u64),
    #[error("degree class has odd total degree {0}")]
    OddTotalDegree(u64),
    #[error("falling factorial requires k <= n, got n={n}, k={k}")]
    FallingFactorialRange { n: u64, k: u64 },
    #[error("matching ratio requires p <= m, got m={m}, p={p}")]
    MatchingRatioRange { m: u64, p: u64 },
    #[error("truncated Poisson mass is undefined above the cap: x={x}, k={k}")]
    TruncatedPoissonRange { x: u32, k: u32 },
}

/// Number of vertices of each degree, `counts[i]` = number of degree-`i`
/// vertices. The maximum degree bound is `counts.len() - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DegreeClass {
    counts: Vec<u64>,
}

impl DegreeClass {
    pub fn new(counts: Vec<u64>) -> Self {
        assert!(!counts.is_empty(), "degree class needs at least degree 0");
        Self { counts }
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn max_degree(&self) -> usize {
        self.counts.len() - 1
    }

    /// Total number of vertices.
    pub fn n(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Total degree, i.e. twice the number of edges of any realisation.
    pub fn two_m(&self) -> u64 {
        self.counts
            .iter()
            .enumerate()
            .map(|(i, &d)| i as u64 * d)
            .sum()
    }

    /// Expands the class into a degree-per-vertex vector, low degrees first.
    pub fn degree_vector(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.n() as usize);
        for (degree, &count) in self.counts.iter().enumerate() {
            out.extend(std::iter::repeat_n(degree, count as usize));
        }
        out
    }
}

/// An exact rational weight together with its natural logarithm.
///
/// The log shadow is computed through an independent floating-point route
/// (log-factorials) so the two representations cross-check each other.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactWeight {
    pub rational: BigRational,
    pub log: f64,
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut res = BigUint::one();
    for i in 0..k {
        res = res * (n - i) / (i + 1);
    }
    res
}

/// Multinomial coefficient `n! / (parts[0]! * ... * parts[r]!)`.
/// The parts must sum to `n`.
pub fn multinomial(n: u64, parts: &[u64]) -> BigUint {
    debug_assert_eq!(parts.iter().sum::<u64>(), n);
    let mut res = BigUint::one();
    let mut rest = n;
    for &p in parts {
        res *= binomial(rest, p);
        rest -= p;
    }
    res
}

/// Exact number `M(2m)` of perfect matchings on `two_m` points,
/// `(2m)! / (m! 2^m)`, evaluated as the double factorial `(2m-1)!!`.
pub fn matchings(two_m: u64) -> Result<BigUint, CountingError> {
    if !two_m.is_multiple_of(2) {
        return Err(CountingError::OddPointCount(two_m));
    }
    let m = two_m / 2;
    Ok((1..=m).fold(BigUint::one(), |acc, i| acc * (2 * i - 1)))
}

/// Stirling-form approximant `(2m/e)^m * sqrt(2)` of `M(2m)`, with the
/// `o(1)` term dropped. Only useful for ratio checks against [`matchings`].
pub fn matchings_stirling(two_m: u64) -> f64 {
    assert!(two_m >= 2 && two_m.is_multiple_of(2), "need a positive even point count");
    let m = two_m as f64 / 2.0;
    (m * (two_m as f64 / std::f64::consts::E).ln()).exp() * std::f64::consts::SQRT_2
}

/// Exact ratio `M(2m) / M(2m - 2p)` as a float: the product of the top `p`
/// odd factors. Asymptotically `(2m)^p`; overflows to +inf when out of f64
/// range.
pub fn matching_ratio(m: u64, p: u64) -> Result<f64, CountingError> {
    if p > m {
        return Err(CountingError::MatchingRatioRange { m, p });
    }
    Ok((m - p + 1..=m).map(|i| (2 * i - 1) as f64).product())
}

/// Exact falling factorial `(n)_k = n (n-1) ... (n-k+1)`.
pub fn falling_factorial(n: u64, k: u64) -> Result<BigUint, CountingError> {
    if k > n {
        return Err(CountingError::FallingFactorialRange { n, k });
    }
    Ok((n - k + 1..=n).fold(BigUint::one(), |acc, i| acc * i))
}

/// First-order approximant `n^k exp(-k^2 / 2n)` of the falling factorial.
pub fn falling_factorial_approx(n: u64, k: u64) -> f64 {
    ln_falling_factorial_approx(n, k).exp()
}

/// Log of [`falling_factorial_approx`]; safe where the plain value overflows.
pub fn ln_falling_factorial_approx(n: u64, k: u64) -> f64 {
    if k == 0 {
        return 0.0;
    }
    let (n, k) = (n as f64, k as f64);
    k * n.ln() - k * k / (2.0 * n)
}

const LN_FACT_TABLE_LEN: u64 = 1024;

fn ln_factorial_table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = Vec::with_capacity(LN_FACT_TABLE_LEN as usize);
        t.push(0.0);
        let mut acc = 0.0f64;
        for i in 1..LN_FACT_TABLE_LEN {
            acc += (i as f64).ln();
            t.push(acc);
        }
        t
    })
}

/// `ln(n!)` via a cached exact-summation table for small `n` and the Stirling
/// series beyond it. Absolute error stays below 1e-10 over the u64 range.
pub fn ln_factorial(n: u64) -> f64 {
    if n < LN_FACT_TABLE_LEN {
        return ln_factorial_table()[n as usize];
    }
    let x = n as f64;
    let x2 = x * x;
    x * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI * x).ln() + 1.0 / (12.0 * x)
        - 1.0 / (360.0 * x2 * x)
        + 1.0 / (1260.0 * x2 * x2 * x)
}

/// `ln M(2m)` through log-factorials. Companion to [`matchings`].
pub fn ln_matchings(two_m: u64) -> Result<f64, CountingError> {
    if !two_m.is_multiple_of(2) {
        return Err(CountingError::OddPointCount(two_m));
    }
    let m = two_m / 2;
    Ok(ln_factorial(two_m) - ln_factorial(m) - m as f64 * std::f64::consts::LN_2)
}

/// Natural log of a positive big integer.
pub fn ln_biguint(x: &BigUint) -> f64 {
    assert!(!x.is_zero(), "ln of zero");
    let bits = x.bits();
    if bits <= 53 {
        return x.to_f64().expect("fits f64").ln();
    }
    // Top 64 bits carry all the precision a f64 can hold.
    let shift = bits - 64;
    let top = (x >> shift).to_f64().expect("64-bit mantissa fits");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Exact class weight
/// `N(d_0,...,d_R) = multinomial(n; d_0..d_R) * M(2m) / prod_i (i!)^{d_i}`.
///
/// This is the configuration mass of the class divided by the per-vertex
/// cell symmetry `prod_i (i!)^{d_i}`; it is generally non-integral.
pub fn degree_class_weight(class: &DegreeClass) -> Result<ExactWeight, CountingError> {
    let two_m = class.two_m();
    if !two_m.is_multiple_of(2) {
        return Err(CountingError::OddTotalDegree(two_m));
    }
    let numer = multinomial(class.n(), class.counts()) * matchings(two_m)?;
    let mut denom = BigUint::one();
    for (degree, &count) in class.counts().iter().enumerate() {
        let f = factorial(degree as u64);
        for _ in 0..count {
            denom *= &f;
        }
    }
    let rational = BigRational::new(BigInt::from(numer), BigInt::from(denom));
    Ok(ExactWeight {
        log: log_degree_class_weight(class)?,
        rational,
    })
}

/// `ln N(d_0,...,d_R)` evaluated purely with log-factorials. This is the
/// weight path used for sampling at scales where the rational is impractical.
pub fn log_degree_class_weight(class: &DegreeClass) -> Result<f64, CountingError> {
    let two_m = class.two_m();
    if !two_m.is_multiple_of(2) {
        return Err(CountingError::OddTotalDegree(two_m));
    }
    let mut log = ln_factorial(class.n());
    for (degree, &count) in class.counts().iter().enumerate() {
        log -= ln_factorial(count);
        log -= count as f64 * ln_factorial(degree as u64);
    }
    Ok(log + ln_matchings(two_m)?)
}

/// Log of the asymptotic class weight with the `C_n` prefactor removed:
/// `(R-1)^{d_{R-2}}/d_{R-2}! * sqrt(Rn)^{d_{R-1}}/d_{R-1}!` times
/// `exp(-(d_{R-1}+d_{R-2})^2/2n + (d_{R-1}+2d_{R-2})^2/4Rn)`.
///
/// Only weight *ratios* across classes at the same `n` are meaningful.
pub fn asymptotic_class_logweight(n: u64, r: u32, d_r2: u64, d_r1: u64) -> f64 {
    assert!(r >= 2, "asymptotic weight needs max degree >= 2");
    let nf = n as f64;
    let (a, b) = (d_r2 as f64, d_r1 as f64);
    a * ((r - 1) as f64).ln() - ln_factorial(d_r2)
        + b * 0.5 * (r as f64 * nf).ln()
        - ln_factorial(d_r1)
        - (b + a) * (b + a) / (2.0 * nf)
        + (b + 2.0 * a) * (b + 2.0 * a) / (4.0 * r as f64 * nf)
}

fn big_pow(base: u64, exp: u32) -> BigInt {
    BigInt::from(base).pow(exp)
}

/// Limiting mean number of p-cycles, `lambda_p = (R-1)^p / 2p`.
pub fn lambda(r: u32, p: u32) -> BigRational {
    assert!(r >= 2 && p >= 1);
    BigRational::new(big_pow((r - 1) as u64, p), BigInt::from(2 * p))
}

/// Limiting mean number of p-paths with both endpoints of degree `R-1`,
/// `mu_p = (R-1)^{p+1} / 2`.
pub fn mu(r: u32, p: u32) -> BigRational {
    assert!(r >= 2 && p >= 1);
    BigRational::new(big_pow((r - 1) as u64, p + 1), BigInt::from(2))
}

/// Limiting mean of the degree-`(R-2)` vertex count.
pub fn degree_poisson_mean(r: u32) -> u32 {
    assert!(r >= 2);
    r - 1
}

/// Limiting probability that a uniform configuration projects to a simple
/// graph: `exp(-(R-1)/2 - (R-1)^2/4)`.
pub fn simplicity_constant(r: u32) -> f64 {
    assert!(r >= 2);
    let t = (r - 1) as f64;
    (-t / 2.0 - t * t / 4.0).exp()
}

/// Poisson pmf at `x` (safe in log space for large means).
pub fn poisson_pmf(x: u32, mean: f64) -> f64 {
    assert!(mean > 0.0);
    (x as f64 * mean.ln() - mean - ln_factorial(x as u64)).exp()
}

/// Poisson mass truncated at `k`: the pmf below the cap, the complementary
/// tail mass `1 - sum_{i<k} pmf(i)` at the cap itself.
pub fn truncated_poisson(k: u32, x: u32, mean: f64) -> Result<f64, CountingError> {
    if x > k {
        return Err(CountingError::TruncatedPoissonRange { x, k });
    }
    if x < k {
        Ok(poisson_pmf(x, mean))
    } else {
        let below: f64 = (0..k).map(|i| poisson_pmf(i, mean)).sum();
        Ok((1.0 - below).max(0.0))
    }
}

/// Limiting probability of a full structure class:
/// `P_k(q, R-1) * prod_{p=3..m} P_k(r_p, lambda_p) * prod_{p=1..m} P_k(s_p, mu_p)`.
///
/// Evaluated in log space; classes whose probability underflows f64 come out
/// as 0, which is within 1e-300 of the truth.
pub fn profile_limit_probability(profile: &StructureProfile, r: u32) -> f64 {
    assert!(r >= 2);
    let k = profile.k();
    let mut log = truncated_poisson(k, profile.q(), degree_poisson_mean(r) as f64)
        .expect("profile entries are capped at k")
        .ln();
    for (p, &rp) in profile.cycle_entries() {
        let mean = lambda(r, p as u32).to_f64().expect("finite mean");
        log += truncated_poisson(k, rp, mean).expect("capped").ln();
    }
    for (p, &sp) in profile.path_entries() {
        let mean = mu(r, p as u32).to_f64().expect("finite mean");
        log += truncated_poisson(k, sp, mean).expect("capped").ln();
    }
    log.exp()
}

/// Converts an exact rational to f64 through numerator/denominator logs,
/// usable far outside the f64 exponent range of either part.
pub fn rational_to_f64(x: &BigRational) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let sign = if x.is_negative() { -1.0 } else { 1.0 };
    let ln = ln_biguint(x.numer().magnitude()) - ln_biguint(x.denom().magnitude());
    sign * ln.exp()
}
