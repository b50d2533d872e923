//! Limiting-probability computation: Monte Carlo estimation over a schedule
//! of sizes for arbitrary sentences, and exact profile-lattice summation for
//! properties of the truncated structure census.

use rayon::prelude::*;

use super::{eval, Formula, LogicError};
use crate::counting::{degree_poisson_mean, lambda, mu, truncated_poisson};
use crate::graph::profile_span;
use crate::sampler::{Sampler, SamplerSpec};
use crate::stats::wilson_ci;
use num_traits::ToPrimitive;

const Z_95: f64 = 1.959964;

/// Satisfaction frequency of a sentence at one size.
#[derive(Debug, Clone)]
pub struct PerNEstimate {
    pub n: usize,
    pub samples: u64,
    pub successes: u64,
    pub frequency: f64,
    pub ci: (f64, f64),
}

/// Monte Carlo limit estimate: per-size frequencies with Wilson intervals;
/// the point estimate is the largest-size frequency. Whether the per-size
/// trend has settled is reported, never asserted.
#[derive(Debug, Clone)]
pub struct LimitEstimate {
    pub estimate: f64,
    pub ci: (f64, f64),
    pub per_n: Vec<PerNEstimate>,
}

impl LimitEstimate {
    /// True when the gap to the final frequency shrinks monotonically along
    /// the schedule. Diagnostic only; noisy at small sample counts.
    pub fn trend_monotone(&self) -> bool {
        let last = self.estimate;
        let gaps: Vec<f64> = self
            .per_n
            .iter()
            .map(|e| (e.frequency - last).abs())
            .collect();
        gaps.windows(2).all(|w| w[1] <= w[0] + 1e-12)
    }
}

fn mix_seed(seed: u64, salt: u64) -> u64 {
    // splitmix64 step.
    let mut z = seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Empirical satisfaction frequency of `sentence` over uniform samples at
/// each size in the schedule. Exact-mode sampling where the class lattice is
/// small, truncated otherwise.
pub fn limit_mc(
    sentence: &Formula,
    max_degree: usize,
    n_schedule: &[usize],
    samples_per_n: u64,
    seed: u64,
) -> Result<LimitEstimate, LogicError> {
    assert!(!n_schedule.is_empty());
    let mut per_n = Vec::with_capacity(n_schedule.len());
    for (i, &n) in n_schedule.iter().enumerate() {
        let spec = SamplerSpec::auto(n, max_degree, mix_seed(seed, i as u64 + 1));
        let sampler = Sampler::new(spec)?;
        let graphs = sampler.batch_graphs(samples_per_n)?;
        let successes = graphs
            .par_iter()
            .map(|(g, _)| eval(g, sentence).map(u64::from))
            .try_reduce(|| 0u64, |a, b| Ok(a + b))?;
        let frequency = successes as f64 / samples_per_n as f64;
        per_n.push(PerNEstimate {
            n,
            samples: samples_per_n,
            successes,
            frequency,
            ci: wilson_ci(successes, samples_per_n, Z_95),
        });
    }
    let last = per_n
        .iter()
        .max_by_key(|e| e.n)
        .expect("schedule is nonempty");
    Ok(LimitEstimate {
        estimate: last.frequency,
        ci: last.ci,
        per_n: per_n.clone(),
    })
}

/// A coordinate of the truncated structure profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileCoord {
    /// q: the capped count of degree-(R-2) vertices.
    LowDegreeCount,
    /// r_p: the capped count of p-cycles, 3 <= p <= m.
    Cycles(usize),
    /// s_p: the capped count of p-paths with degree-(R-1) endpoints,
    /// 1 <= p <= m.
    Paths(usize),
}

const PROFILE_ASSIGNMENT_BUDGET: u64 = 10_000_000;

/// Exact limiting probability that the structure profile satisfies a
/// predicate over the given coordinates. Coordinates not mentioned are
/// marginalized out exactly (their truncated Poisson factors sum to 1), so
/// the cost is `(k+1)^{coords}` rather than the astronomically large full
/// lattice.
pub fn limit_profile_property(
    k: u32,
    max_degree: u32,
    coords: &[ProfileCoord],
    pred: impl Fn(&[u32]) -> bool,
) -> Result<f64, LogicError> {
    assert!(k >= 1 && max_degree >= 2);
    let m = profile_span(k);
    let mut means = Vec::with_capacity(coords.len());
    for (i, c) in coords.iter().enumerate() {
        if coords[..i].contains(c) {
            return Err(LogicError::DuplicateCoord(format!("{c:?}")));
        }
        let mean = match *c {
            ProfileCoord::LowDegreeCount => degree_poisson_mean(max_degree) as f64,
            ProfileCoord::Cycles(p) => {
                if !(3..=m).contains(&p) {
                    return Err(LogicError::CoordOutOfRange(format!(
                        "cycles({p}) outside 3..={m}"
                    )));
                }
                lambda(max_degree, p as u32).to_f64().expect("finite")
            }
            ProfileCoord::Paths(p) => {
                if !(1..=m).contains(&p) {
                    return Err(LogicError::CoordOutOfRange(format!(
                        "paths({p}) outside 1..={m}"
                    )));
                }
                mu(max_degree, p as u32).to_f64().expect("finite")
            }
        };
        means.push(mean);
    }
    let assignments = (k as u64 + 1).checked_pow(coords.len() as u32);
    match assignments {
        Some(a) if a <= PROFILE_ASSIGNMENT_BUDGET => {}
        _ => return Err(LogicError::BudgetExceeded),
    }

    let mut total = 0.0f64;
    let mut values = vec![0u32; coords.len()];
    sum_assignments(k, &means, &pred, &mut values, 0, 1.0, &mut total);
    Ok(total)
}

fn sum_assignments(
    k: u32,
    means: &[f64],
    pred: &impl Fn(&[u32]) -> bool,
    values: &mut Vec<u32>,
    index: usize,
    mass: f64,
    total: &mut f64,
) {
    if index == means.len() {
        if pred(values) {
            *total += mass;
        }
        return;
    }
    for x in 0..=k {
        values[index] = x;
        let p = truncated_poisson(k, x, means[index]).expect("x <= k");
        sum_assignments(k, means, pred, values, index + 1, mass * p, total);
    }
}
