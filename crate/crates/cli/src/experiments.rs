//! `maxdeg experiment`: named reproduction suites. Each experiment samples
//! over a size schedule and emits one CSV row per size with observed and
//! predicted columns plus goodness-of-fit diagnostics.

use std::path::PathBuf;

use clap::Args;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use maxdeg::counting::{lambda, mu, poisson_pmf, simplicity_constant};
use maxdeg::logic::parse_sentence;
use maxdeg::sampler::Sampler;
use maxdeg::stats::{chi_square_gof_p, pearson_correlation, wilson_ci};
use maxdeg::Graph;

use crate::output::{parse_schedule, with_workers, CsvWriter};
use crate::sample_cmd::build_spec;
use crate::AppError;

#[derive(Args)]
pub struct ExperimentArgs {
    /// degree-dist | poisson-census | simplicity | fo-limit |
    /// connectivity-rigidity | small-components
    #[arg(long)]
    name: String,
    #[arg(long = "R")]
    max_degree: usize,
    /// Comma-separated vertex counts, e.g. 200,1000
    #[arg(long = "n-schedule", value_delimiter = ',')]
    n_schedule: Vec<usize>,
    /// Samples (or pipeline attempts, for `simplicity`) per size
    #[arg(long)]
    samples: u64,
    #[arg(long)]
    seed: u64,
    /// Sentence for the fo-limit experiment
    #[arg(long)]
    sentence: Option<String>,
    /// Component-size threshold for small-components
    #[arg(long, default_value_t = 10)]
    component_threshold: usize,
    /// exact | truncated | auto
    #[arg(long, default_value = "auto")]
    mode: String,
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Output CSV (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

fn schedule_error(e: maxdeg::sampler::SamplerError) -> AppError {
    AppError::Schedule(e.to_string())
}

struct Ctx {
    args: ExperimentArgs,
    schedule: Vec<usize>,
}

impl Ctx {
    fn sampler(&self, n: usize, salt: u64) -> Result<Sampler, AppError> {
        let spec = build_spec(
            n,
            self.args.max_degree,
            self.args.seed.wrapping_add(salt),
            &self.args.mode,
            (None, None, None),
            maxdeg::sampler::DEFAULT_MAX_RESTARTS,
        )?;
        Sampler::new(spec).map_err(schedule_error)
    }

    fn batch(&self, n: usize, salt: u64) -> Result<Vec<Graph>, AppError> {
        let sampler = self.sampler(n, salt)?;
        let draws = with_workers(self.args.workers, || sampler.batch_graphs(self.args.samples))?
            .map_err(schedule_error)?;
        Ok(draws.into_iter().map(|(g, _)| g).collect())
    }

    fn writer(&self, header: &[&str]) -> Result<CsvWriter, AppError> {
        match &self.args.out {
            Some(path) => CsvWriter::file(path, header, self.args.seed),
            None => CsvWriter::stdout(header, self.args.seed),
        }
    }
}

pub fn run(args: ExperimentArgs) -> Result<(), AppError> {
    let schedule = parse_schedule(&args.n_schedule)?;
    if args.max_degree < 2 {
        return Err(AppError::Usage("experiments need R >= 2".into()));
    }
    let ctx = Ctx { args, schedule };
    match ctx.args.name.as_str() {
        "degree-dist" => degree_dist(&ctx),
        "poisson-census" => poisson_census(&ctx),
        "simplicity" => simplicity(&ctx),
        "fo-limit" => fo_limit(&ctx),
        "connectivity-rigidity" => connectivity_rigidity(&ctx),
        "small-components" => small_components(&ctx),
        other => Err(AppError::Usage(format!(
            "unknown experiment `{other}`; expected degree-dist, poisson-census, simplicity, fo-limit, connectivity-rigidity or small-components"
        ))),
    }
}

/// Degree distribution: the degree-(R-2) count against Poisson(R-1) and the
/// degree-(R-1) count against sqrt(Rn).
fn degree_dist(ctx: &Ctx) -> Result<(), AppError> {
    let r = ctx.args.max_degree;
    let mut csv = ctx.writer(&[
        "n",
        "samples",
        "mean_low_count",
        "predicted_mean_low",
        "p_low_zero",
        "predicted_p_low_zero",
        "chisq_p_low_vs_poisson",
        "mean_mid_over_sqrt_n",
        "predicted_mid_over_sqrt_n",
    ])?;
    for (i, &n) in ctx.schedule.iter().enumerate() {
        let graphs = ctx.batch(n, i as u64 + 1)?;
        let lows: Vec<u64> = graphs
            .iter()
            .map(|g| g.degree_histogram()[r - 2])
            .collect();
        let mids: Vec<f64> = graphs
            .iter()
            .map(|g| g.degree_histogram()[r - 1] as f64)
            .collect();
        let mean_low = lows.iter().sum::<u64>() as f64 / lows.len() as f64;
        let zero = lows.iter().filter(|&&x| x == 0).count() as f64 / lows.len() as f64;
        let max_bin = 8usize;
        let mut bins = vec![0u64; max_bin + 1];
        for &x in &lows {
            bins[(x as usize).min(max_bin)] += 1;
        }
        let mean = (r - 1) as f64;
        let mut probs: Vec<f64> = (0..max_bin as u32).map(|x| poisson_pmf(x, mean)).collect();
        probs.push((1.0 - probs.iter().sum::<f64>()).max(1e-12));
        let chisq_p = chi_square_gof_p(&bins, &probs);
        let mean_mid = mids.iter().sum::<f64>() / mids.len() as f64 / (n as f64).sqrt();
        csv.row(&[
            n.to_string(),
            lows.len().to_string(),
            format!("{mean_low:.4}"),
            format!("{mean:.4}"),
            format!("{zero:.4}"),
            format!("{:.4}", (-mean).exp()),
            format!("{chisq_p:.6}"),
            format!("{mean_mid:.4}"),
            format!("{:.4}", (r as f64).sqrt()),
        ])?;
    }
    csv.finish()
}

/// Short-cycle and short-path census against the limiting Poisson means,
/// plus pairwise correlations (asymptotic independence).
fn poisson_census(ctx: &Ctx) -> Result<(), AppError> {
    let r = ctx.args.max_degree;
    let lambda3 = lambda(r as u32, 3).to_f64().unwrap();
    let lambda4 = lambda(r as u32, 4).to_f64().unwrap();
    let mu1 = mu(r as u32, 1).to_f64().unwrap();
    let mut csv = ctx.writer(&[
        "n",
        "samples",
        "mean_cycles3",
        "lambda3",
        "mean_cycles4",
        "lambda4",
        "mean_paths1",
        "mu1",
        "corr_c3_c4",
        "corr_c3_p1",
        "corr_c4_p1",
        "corr_c3_low",
    ])?;
    for (i, &n) in ctx.schedule.iter().enumerate() {
        let graphs = ctx.batch(n, i as u64 + 1)?;
        let stats: Vec<(f64, f64, f64, f64)> = graphs
            .par_iter()
            .map(|g| {
                (
                    g.count_cycles(3) as f64,
                    g.count_cycles(4) as f64,
                    g.count_paths_with_endpoint_degree(1, r - 1) as f64,
                    g.degree_histogram()[r - 2] as f64,
                )
            })
            .collect();
        let c3: Vec<f64> = stats.iter().map(|s| s.0).collect();
        let c4: Vec<f64> = stats.iter().map(|s| s.1).collect();
        let p1: Vec<f64> = stats.iter().map(|s| s.2).collect();
        let low: Vec<f64> = stats.iter().map(|s| s.3).collect();
        let mean = |xs: &[f64]| xs.iter().sum::<f64>() / xs.len() as f64;
        csv.row(&[
            n.to_string(),
            stats.len().to_string(),
            format!("{:.4}", mean(&c3)),
            format!("{lambda3:.4}"),
            format!("{:.4}", mean(&c4)),
            format!("{lambda4:.4}"),
            format!("{:.4}", mean(&p1)),
            format!("{mu1:.4}"),
            format!("{:.4}", pearson_correlation(&c3, &c4)),
            format!("{:.4}", pearson_correlation(&c3, &p1)),
            format!("{:.4}", pearson_correlation(&c4, &p1)),
            format!("{:.4}", pearson_correlation(&c3, &low)),
        ])?;
    }
    csv.finish()
}

/// Acceptance rate of the rejection pipeline against the simplicity
/// constant. `--samples` counts pipeline attempts here.
fn simplicity(ctx: &Ctx) -> Result<(), AppError> {
    let r = ctx.args.max_degree;
    let predicted = simplicity_constant(r as u32);
    let mut csv = ctx.writer(&["n", "attempts", "accepted", "rate", "predicted"])?;
    for (i, &n) in ctx.schedule.iter().enumerate() {
        let sampler = ctx.sampler(n, i as u64 + 1)?;
        let attempts = ctx.args.samples;
        let accepted: u64 = with_workers(ctx.args.workers, || {
            (0..attempts)
                .into_par_iter()
                .map(|j| {
                    let mut rng = sampler.rng_for_draw(j);
                    match sampler.attempt_graph(&mut rng) {
                        Ok(Some(_)) => Ok(1u64),
                        Ok(None) => Ok(0u64),
                        Err(e) => Err(e),
                    }
                })
                .try_reduce(|| 0, |a, b| Ok(a + b))
        })?
        .map_err(schedule_error)?;
        let rate = accepted as f64 / attempts as f64;
        csv.row(&[
            n.to_string(),
            attempts.to_string(),
            accepted.to_string(),
            format!("{rate:.5}"),
            format!("{predicted:.5}"),
        ])?;
    }
    csv.finish()
}

/// Satisfaction frequency of a sentence along the schedule.
fn fo_limit(ctx: &Ctx) -> Result<(), AppError> {
    let text = ctx
        .args
        .sentence
        .as_ref()
        .ok_or_else(|| AppError::Usage("fo-limit requires --sentence".into()))?;
    let sentence = parse_sentence(text).map_err(|e| AppError::Parse(e.to_string()))?;
    for (v, _, c) in sentence.degree_atoms_exceeding(ctx.args.max_degree as u32) {
        eprintln!(
            "warning: deg({v}) compared against {c} > R = {}; atom is vacuous on this ensemble",
            ctx.args.max_degree
        );
    }
    let est = with_workers(ctx.args.workers, || {
        maxdeg::logic::limit_mc(
            &sentence,
            ctx.args.max_degree,
            &ctx.schedule,
            ctx.args.samples,
            ctx.args.seed,
        )
    })?
    .map_err(|e| AppError::Schedule(e.to_string()))?;
    let mut csv = ctx.writer(&["n", "samples", "successes", "frequency", "ci_lo", "ci_hi"])?;
    for per in &est.per_n {
        csv.row(&[
            per.n.to_string(),
            per.samples.to_string(),
            per.successes.to_string(),
            format!("{:.5}", per.frequency),
            format!("{:.5}", per.ci.0),
            format!("{:.5}", per.ci.1),
        ])?;
    }
    csv.row(&[
        "estimate".to_string(),
        est.per_n.last().map(|p| p.samples).unwrap_or(0).to_string(),
        String::new(),
        format!("{:.5}", est.estimate),
        format!("{:.5}", est.ci.0),
        format!("{:.5}", est.ci.1),
    ])?;
    csv.finish()
}

/// Vertex connectivity in {R-2, R-1} and rigidity frequencies.
fn connectivity_rigidity(ctx: &Ctx) -> Result<(), AppError> {
    let r = ctx.args.max_degree;
    let mut csv = ctx.writer(&[
        "n",
        "samples",
        "frac_connectivity_r2_r1",
        "frac_rigid",
        "mean_connectivity",
    ])?;
    for (i, &n) in ctx.schedule.iter().enumerate() {
        let graphs = ctx.batch(n, i as u64 + 1)?;
        let rows: Vec<(usize, bool)> = graphs
            .par_iter()
            .map(|g| {
                let kappa = g.vertex_connectivity().expect("n >= 2");
                let rigid = g.is_rigid().expect("within rigidity cap");
                (kappa, rigid)
            })
            .collect();
        let in_range = rows
            .iter()
            .filter(|(k, _)| (r - 2..=r - 1).contains(k))
            .count() as f64
            / rows.len() as f64;
        let rigid = rows.iter().filter(|(_, x)| *x).count() as f64 / rows.len() as f64;
        let mean_k = rows.iter().map(|(k, _)| *k as f64).sum::<f64>() / rows.len() as f64;
        csv.row(&[
            n.to_string(),
            rows.len().to_string(),
            format!("{in_range:.4}"),
            format!("{rigid:.4}"),
            format!("{mean_k:.4}"),
        ])?;
    }
    csv.finish()
}

/// Fraction of samples containing a connected component smaller than the
/// threshold, with a Wilson interval.
fn small_components(ctx: &Ctx) -> Result<(), AppError> {
    let threshold = ctx.args.component_threshold;
    let mut csv = ctx.writer(&[
        "n",
        "samples",
        "threshold",
        "frac_with_small_component",
        "ci_lo",
        "ci_hi",
    ])?;
    for (i, &n) in ctx.schedule.iter().enumerate() {
        let graphs = ctx.batch(n, i as u64 + 1)?;
        let hits = graphs
            .iter()
            .filter(|g| g.component_sizes().first().is_some_and(|&s| s < threshold))
            .count() as u64;
        let frac = hits as f64 / graphs.len() as f64;
        let ci = wilson_ci(hits, graphs.len() as u64, 1.959964);
        csv.row(&[
            n.to_string(),
            graphs.len().to_string(),
            threshold.to_string(),
            format!("{frac:.4}"),
            format!("{:.4}", ci.0),
            format!("{:.4}", ci.1),
        ])?;
    }
    csv.finish()
}
