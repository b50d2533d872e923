//! Provably uniform sampling of bounded-degree graphs and multigraphs via
//! the configuration model: draw a degree class proportionally to its exact
//! weight, spread the degrees uniformly over the vertices, draw a uniform
//! perfect matching on the points, project, and reject non-simple images.
//!
//! Rejection restarts the whole pipeline from the class draw: acceptance
//! probability varies across classes, so restarting only the matching would
//! bias class frequencies. Within a class, each simple graph has exactly
//! `prod_i (i!)^{d_i}` configuration preimages, which cancels the matching
//! `1/prod_i (i!)^{d_i}` factor of the class weight; exact mode is therefore
//! exactly uniform over all simple graphs.

use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::counting::{
    self, binomial, degree_class_weight, log_degree_class_weight, DegreeClass, ExactWeight,
};
use crate::graph::{Configuration, Graph, GraphError, Multigraph};

/// Upper bound on the exact-mode class lattice size `binom(n+R, R)`.
pub const EXACT_CLASS_BUDGET: u64 = 10_000_000;

/// Lattice size up to which [`SamplerSpec::auto`] picks exact mode. Beyond
/// this the big-rational weight table dominates the runtime, so auto falls
/// back to truncated mode; exact mode stays available explicitly up to
/// [`EXACT_CLASS_BUDGET`].
pub const AUTO_EXACT_CLASS_LIMIT: u64 = 10_000;

pub const DEFAULT_MAX_RESTARTS: u32 = 100_000;

#[derive(Debug, Clone, Error)]
pub enum SamplerError {
    #[error("restart budget exhausted after {attempts} attempts; spec is infeasible or nearly so")]
    RestartBudgetExhausted { attempts: u64 },
    #[error("exact-mode class lattice has {classes} classes, over the budget {budget}")]
    ExactBudgetExceeded { classes: BigUint, budget: u64 },
    #[error("no degree class with even total degree within the caps")]
    NoFeasibleClass,
    #[error("invalid sampler spec: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Counting(#[from] counting::CountingError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleMode {
    /// Every even-sum degree class, exact rational weights: output is
    /// exactly uniform. Practical only while the class lattice is small.
    Exact,
    /// Degree classes restricted to degrees in `R-2..=R` within caps;
    /// exact class weights evaluated in log space. Uniform on the capped
    /// sub-ensemble.
    Truncated,
}

/// Caps for truncated mode, all on degree-class coordinates:
/// `d_{R-2} <= cap_low`, `floor_mid <= d_{R-1} <= cap_mid`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TruncationCaps {
    pub cap_low: u64,
    pub floor_mid: u64,
    pub cap_mid: u64,
}

impl TruncationCaps {
    /// Defaults sized so the excluded tail mass is negligible:
    /// `cap_low = max(30, 2 n^{1/4})`, `cap_mid = ceil(4 sqrt(Rn))`.
    pub fn defaults(n: usize, max_degree: usize) -> Self {
        let nf = n as f64;
        let cap_low = 30f64.max(2.0 * nf.powf(0.25)).ceil() as u64;
        let cap_mid = (4.0 * (max_degree as f64 * nf).sqrt()).ceil() as u64;
        Self {
            cap_low: cap_low.min(n as u64),
            floor_mid: 0,
            cap_mid: cap_mid.min(n as u64),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SamplerSpec {
    pub n: usize,
    pub max_degree: usize,
    pub mode: SampleMode,
    pub caps: TruncationCaps,
    pub seed: u64,
    pub max_restarts: u32,
}

impl SamplerSpec {
    pub fn exact(n: usize, max_degree: usize, seed: u64) -> Self {
        Self {
            n,
            max_degree,
            mode: SampleMode::Exact,
            caps: TruncationCaps::defaults(n, max_degree),
            seed,
            max_restarts: DEFAULT_MAX_RESTARTS,
        }
    }

    pub fn truncated(n: usize, max_degree: usize, seed: u64) -> Self {
        Self {
            mode: SampleMode::Truncated,
            ..Self::exact(n, max_degree, seed)
        }
    }

    /// Exact mode while the class lattice is small, truncated otherwise.
    /// Truncated mode needs R >= 2, so R <= 1 always selects exact.
    pub fn auto(n: usize, max_degree: usize, seed: u64) -> Self {
        if max_degree < 2
            || exact_lattice_size(n, max_degree) <= BigUint::from(AUTO_EXACT_CLASS_LIMIT)
        {
            Self::exact(n, max_degree, seed)
        } else {
            Self::truncated(n, max_degree, seed)
        }
    }
}

fn exact_lattice_size(n: usize, max_degree: usize) -> BigUint {
    binomial((n + max_degree) as u64, max_degree as u64)
}

/// Record of one accepted draw: the degree class it came from and how many
/// rejected pipeline passes preceded it.
#[derive(Debug, Clone)]
pub struct SampleTrace {
    pub class: DegreeClass,
    pub restarts: u32,
}

/// Every even-sum degree class for `(n, R)` with its exact weight.
/// Budget-guarded by the lattice size.
pub fn enumerate_degree_classes_exact(
    n: usize,
    max_degree: usize,
) -> Result<Vec<(DegreeClass, ExactWeight)>, SamplerError> {
    let lattice = exact_lattice_size(n, max_degree);
    if lattice > BigUint::from(EXACT_CLASS_BUDGET) {
        return Err(SamplerError::ExactBudgetExceeded {
            classes: lattice,
            budget: EXACT_CLASS_BUDGET,
        });
    }
    let mut out = Vec::new();
    let mut counts = vec![0u64; max_degree + 1];
    enumerate_compositions(n as u64, 0, &mut counts, &mut |counts| {
        let class = DegreeClass::new(counts.to_vec());
        if class.two_m().is_multiple_of(2) {
            let weight = degree_class_weight(&class).expect("even class");
            out.push((class, weight));
        }
    });
    Ok(out)
}

fn enumerate_compositions(
    remaining: u64,
    index: usize,
    counts: &mut Vec<u64>,
    f: &mut impl FnMut(&[u64]),
) {
    if index + 1 == counts.len() {
        counts[index] = remaining;
        f(counts);
        counts[index] = 0;
        return;
    }
    for d in 0..=remaining {
        counts[index] = d;
        enumerate_compositions(remaining - d, index + 1, counts, f);
    }
    counts[index] = 0;
}

/// Truncated-mode classes: degrees confined to `R-2..=R` within the caps,
/// even total degree, paired with exact log weights.
pub fn enumerate_degree_classes_truncated(
    n: usize,
    max_degree: usize,
    caps: TruncationCaps,
) -> Result<Vec<(DegreeClass, f64)>, SamplerError> {
    if max_degree < 2 {
        return Err(SamplerError::InvalidSpec(
            "truncated mode requires a degree bound of at least 2".into(),
        ));
    }
    let r = max_degree;
    let mut out = Vec::new();
    for low in 0..=caps.cap_low.min(n as u64) {
        for mid in caps.floor_mid..=caps.cap_mid.min(n as u64 - low) {
            let full = n as u64 - low - mid;
            let mut counts = vec![0u64; r + 1];
            counts[r - 2] = low;
            counts[r - 1] = mid;
            counts[r] += full; // += so R-2 = 0 classes still work at R = 2
            let class = DegreeClass::new(counts);
            if !class.two_m().is_multiple_of(2) {
                continue;
            }
            let log = log_degree_class_weight(&class)?;
            out.push((class, log));
        }
    }
    Ok(out)
}

enum ClassWeights {
    Exact {
        classes: Vec<DegreeClass>,
        cumulative: Vec<BigUint>,
    },
    Log {
        classes: Vec<DegreeClass>,
        cumulative: Vec<f64>,
    },
}

impl ClassWeights {
    fn len(&self) -> usize {
        match self {
            ClassWeights::Exact { classes, .. } => classes.len(),
            ClassWeights::Log { classes, .. } => classes.len(),
        }
    }

    fn draw(&self, rng: &mut impl Rng) -> &DegreeClass {
        match self {
            ClassWeights::Exact { classes, cumulative } => {
                let total = cumulative.last().expect("nonempty");
                let ticket = rng.gen_biguint_below(total);
                let idx = cumulative.partition_point(|c| *c <= ticket);
                &classes[idx]
            }
            ClassWeights::Log { classes, cumulative } => {
                let total = *cumulative.last().expect("nonempty");
                let ticket = rng.gen::<f64>() * total;
                let idx = cumulative.partition_point(|&c| c <= ticket).min(classes.len() - 1);
                &classes[idx]
            }
        }
    }
}

pub struct Sampler {
    spec: SamplerSpec,
    weights: ClassWeights,
}

impl Sampler {
    pub fn new(spec: SamplerSpec) -> Result<Self, SamplerError> {
        if spec.n == 0 {
            return Err(SamplerError::InvalidSpec("n must be positive".into()));
        }
        let weights = match spec.mode {
            SampleMode::Exact => {
                let pairs = enumerate_degree_classes_exact(spec.n, spec.max_degree)?;
                if pairs.is_empty() {
                    return Err(SamplerError::NoFeasibleClass);
                }
                // Scale the rationals to a common denominator so class
                // selection is exact integer arithmetic.
                let mut denom = BigUint::one();
                for (_, w) in &pairs {
                    let d = w.rational.denom().magnitude();
                    denom = num_integer::lcm(denom, d.clone());
                }
                let mut classes = Vec::with_capacity(pairs.len());
                let mut cumulative = Vec::with_capacity(pairs.len());
                let mut acc = BigUint::zero();
                for (class, w) in pairs {
                    let scaled =
                        w.rational.numer().magnitude() * (&denom / w.rational.denom().magnitude());
                    acc += scaled;
                    classes.push(class);
                    cumulative.push(acc.clone());
                }
                ClassWeights::Exact { classes, cumulative }
            }
            SampleMode::Truncated => {
                let pairs =
                    enumerate_degree_classes_truncated(spec.n, spec.max_degree, spec.caps)?;
                if pairs.is_empty() {
                    return Err(SamplerError::NoFeasibleClass);
                }
                let max_log = pairs
                    .iter()
                    .map(|&(_, l)| l)
                    .fold(f64::NEG_INFINITY, f64::max);
                let mut classes = Vec::with_capacity(pairs.len());
                let mut cumulative = Vec::with_capacity(pairs.len());
                // Neumaier-compensated running sum.
                let (mut acc, mut comp) = (0.0f64, 0.0f64);
                for (class, log) in pairs {
                    let w = (log - max_log).exp();
                    let t = acc + w;
                    comp += if acc.abs() >= w.abs() {
                        (acc - t) + w
                    } else {
                        (w - t) + acc
                    };
                    acc = t;
                    classes.push(class);
                    cumulative.push(acc + comp);
                }
                ClassWeights::Log { classes, cumulative }
            }
        };
        Ok(Self { spec, weights })
    }

    pub fn spec(&self) -> &SamplerSpec {
        &self.spec
    }

    pub fn class_count(&self) -> usize {
        self.weights.len()
    }

    /// Independent RNG stream for one draw index; the contract behind
    /// worker-count-independent reproducibility.
    pub fn rng_for_draw(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.spec.seed);
        rng.set_stream(index);
        rng
    }

    /// One full pipeline pass: class, degree assignment, configuration,
    /// projection. `None` when the image was not simple.
    pub fn attempt_graph(&self, rng: &mut impl Rng) -> Result<Option<(Graph, DegreeClass)>, SamplerError> {
        let class = self.weights.draw(rng).clone();
        let mut degrees = class.degree_vector();
        degrees.shuffle(rng);
        let config = sample_configuration(&degrees, rng)?;
        let image = config.image();
        if !image.is_simple() {
            return Ok(None);
        }
        let graph = image.to_graph(self.spec.max_degree)?;
        Ok(Some((graph, class)))
    }

    /// Uniform graph draw; restarts the entire pipeline on rejection.
    pub fn sample_graph(&self, rng: &mut impl Rng) -> Result<(Graph, SampleTrace), SamplerError> {
        for restarts in 0..=self.spec.max_restarts {
            if let Some((graph, class)) = self.attempt_graph(rng)? {
                return Ok((graph, SampleTrace { class, restarts }));
            }
        }
        Err(SamplerError::RestartBudgetExhausted {
            attempts: self.spec.max_restarts as u64 + 1,
        })
    }

    /// One multigraph draw: same pipeline without rejection. The class
    /// marginal follows the exact class weights.
    pub fn sample_multigraph(&self, rng: &mut impl Rng) -> Result<(Multigraph, DegreeClass), SamplerError> {
        let class = self.weights.draw(rng).clone();
        let mut degrees = class.degree_vector();
        degrees.shuffle(rng);
        let config = sample_configuration(&degrees, rng)?;
        Ok((config.image(), class))
    }

    /// `count` independent draws, parallelised over draw indices. The output
    /// depends only on the spec (seed included), not on the worker count.
    pub fn batch_graphs(&self, count: u64) -> Result<Vec<(Graph, SampleTrace)>, SamplerError> {
        (0..count)
            .into_par_iter()
            .map(|i| {
                let mut rng = self.rng_for_draw(i);
                self.sample_graph(&mut rng)
            })
            .collect()
    }
}

/// Uniform configuration over all `M(2m)` perfect matchings on cells of the
/// given sizes, by sequential random pairing of unmatched points.
pub fn sample_configuration(
    cell_sizes: &[usize],
    rng: &mut impl Rng,
) -> Result<Configuration, SamplerError> {
    let total: usize = cell_sizes.iter().sum();
    if !total.is_multiple_of(2) {
        return Err(SamplerError::InvalidSpec(format!(
            "cell sizes sum to odd point count {total}"
        )));
    }
    let mut matching = vec![usize::MAX; total];
    let mut pool: Vec<usize> = (0..total).collect();
    while !pool.is_empty() {
        let p = pool[0];
        pool.swap_remove(0);
        let j = rng.gen_range(0..pool.len());
        let q = pool[j];
        pool.swap_remove(j);
        matching[p] = q;
        matching[q] = p;
    }
    Ok(Configuration::new(cell_sizes.to_vec(), matching)?)
}

/// Uniform draw from the simple graphs with exactly the given degree
/// sequence, by configuration sampling with rejection. Restarting within a
/// fixed sequence is valid here because the acceptance probability is
/// constant across the sequence's graphs.
pub fn sample_graph_given_degrees(
    degrees: &[usize],
    max_restarts: u32,
    rng: &mut impl Rng,
) -> Result<Graph, SamplerError> {
    let max_degree = degrees.iter().copied().max().unwrap_or(0);
    for _ in 0..=max_restarts {
        let config = sample_configuration(degrees, rng)?;
        let image = config.image();
        if image.is_simple() {
            return Ok(image.to_graph(max_degree)?);
        }
    }
    Err(SamplerError::RestartBudgetExhausted {
        attempts: max_restarts as u64 + 1,
    })
}
