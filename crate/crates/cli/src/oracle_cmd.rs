//! `maxdeg oracle`: brute-force enumeration suites and the exact-mode
//! sampler comparison. Any mismatch exits nonzero so CI scripts can dispatch
//! on the failure class.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Subcommand};

use maxdeg::oracle::{count_unlabelled, enumerate_configurations, enumerate_graphs};
use maxdeg::sampler::{Sampler, SamplerSpec};
use maxdeg::stats::{chi_square_gof_p, total_variation};

use crate::output::CsvWriter;
use crate::AppError;

#[derive(Args)]
pub struct OracleArgs {
    #[command(subcommand)]
    command: OracleCommand,
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Compare exact-mode sampler frequencies to the uniform enumeration
    CompareSampler {
        #[arg(long)]
        n: usize,
        #[arg(long = "R")]
        max_degree: usize,
        #[arg(long)]
        samples: u64,
        #[arg(long)]
        seed: u64,
        /// Fail when total variation reaches this bound
        #[arg(long, default_value_t = 0.02)]
        tv_bound: f64,
        /// Fail when the chi-square p-value falls to this bound or below
        #[arg(long, default_value_t = 1e-3)]
        p_bound: f64,
    },
    /// Labelled and unlabelled counts of the ensemble
    Counts {
        #[arg(long)]
        n: usize,
        #[arg(long = "R")]
        max_degree: usize,
    },
    /// Enumerate all configurations over the given cell sizes
    Configs {
        #[arg(long, value_delimiter = ',')]
        cells: Vec<usize>,
    },
    /// Exact distribution of a statistic under the uniform ensemble
    StatDist {
        #[arg(long)]
        n: usize,
        #[arg(long = "R")]
        max_degree: usize,
        /// cycles-<p> | paths-<p> | degree-<d>-count | edges
        #[arg(long)]
        stat: String,
    },
    /// Dump the ensemble, one graph per line: "n R u1 v1 u2 v2 ..."
    Dump {
        #[arg(long)]
        n: usize,
        #[arg(long = "R")]
        max_degree: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn oracle_err(e: maxdeg::oracle::OracleError) -> AppError {
    AppError::Usage(e.to_string())
}

pub fn run(args: OracleArgs) -> Result<(), AppError> {
    match args.command {
        OracleCommand::CompareSampler {
            n,
            max_degree,
            samples,
            seed,
            tv_bound,
            p_bound,
        } => {
            let table = enumerate_graphs(n, max_degree).map_err(oracle_err)?;
            let sampler = Sampler::new(SamplerSpec::exact(n, max_degree, seed))
                .map_err(|e| AppError::Sampler(e.to_string()))?;
            let mut counts = vec![0u64; table.len()];
            let mut rng = sampler.rng_for_draw(0);
            for _ in 0..samples {
                let (g, _) = sampler
                    .sample_graph(&mut rng)
                    .map_err(|e| AppError::Sampler(e.to_string()))?;
                match table.index_of(&g) {
                    Some(i) => counts[i] += 1,
                    None => {
                        return Err(AppError::OracleMismatch(
                            "sampler produced a graph outside the enumerated ensemble".into(),
                        ))
                    }
                }
            }
            let uniform = vec![1.0 / table.len() as f64; table.len()];
            let tv = total_variation(&counts, &uniform);
            let p = chi_square_gof_p(&counts, &uniform);
            let mut csv = CsvWriter::stdout(&["stat", "value"], seed)?;
            csv.row(&["graphs".to_string(), table.len().to_string()])?;
            csv.row(&["samples".to_string(), samples.to_string()])?;
            csv.row(&["tv_distance".to_string(), format!("{tv:.6}")])?;
            csv.row(&["chisq_p".to_string(), format!("{p:.6}")])?;
            csv.finish()?;
            if tv >= tv_bound || p <= p_bound {
                return Err(AppError::OracleMismatch(format!(
                    "sampler deviates from uniform: tv = {tv:.5} (bound {tv_bound}), p = {p:.6} (bound {p_bound})"
                )));
            }
            Ok(())
        }
        OracleCommand::Counts { n, max_degree } => {
            let labelled = enumerate_graphs(n, max_degree).map_err(oracle_err)?.len();
            let unlabelled = count_unlabelled(n, max_degree).map_err(oracle_err)?;
            let mut csv = CsvWriter::stdout(&["stat", "value"], 0)?;
            csv.row(&["labelled", &labelled.to_string()])?;
            csv.row(&["unlabelled", &unlabelled.to_string()])?;
            csv.finish()
        }
        OracleCommand::Configs { cells } => {
            let configs = enumerate_configurations(&cells).map_err(oracle_err)?;
            let simple = configs.iter().filter(|c| c.image().is_simple()).count();
            let mut csv = CsvWriter::stdout(&["stat", "value"], 0)?;
            csv.row(&["configurations", &configs.len().to_string()])?;
            csv.row(&["simple_images", &simple.to_string()])?;
            csv.finish()
        }
        OracleCommand::StatDist {
            n,
            max_degree,
            stat,
        } => {
            let statistic = parse_statistic(&stat)?;
            let pmf =
                maxdeg::oracle::exact_statistic_distribution(n, max_degree, |g| statistic(g))
                    .map_err(oracle_err)?;
            let mut csv =
                CsvWriter::stdout(&["value", "probability_num", "probability_den"], 0)?;
            for (value, prob) in pmf {
                csv.row(&[
                    value.to_string(),
                    prob.numer().to_string(),
                    prob.denom().to_string(),
                ])?;
            }
            csv.finish()
        }
        OracleCommand::Dump { n, max_degree, out } => {
            let table = enumerate_graphs(n, max_degree).map_err(oracle_err)?;
            let mut sink: Box<dyn Write> = match &out {
                Some(path) => Box::new(BufWriter::new(File::create(path)?)),
                None => Box::new(io::stdout().lock()),
            };
            for g in table.iter() {
                let mut line = format!("{} {}", g.n(), g.max_degree());
                for (u, v) in g.edges() {
                    line.push_str(&format!(" {} {}", u + 1, v + 1));
                }
                writeln!(sink, "{line}")?;
            }
            sink.flush()?;
            Ok(())
        }
    }
}

type Statistic = Box<dyn Fn(&maxdeg::Graph) -> u64>;

fn parse_statistic(name: &str) -> Result<Statistic, AppError> {
    if let Some(p) = name.strip_prefix("cycles-") {
        let p: usize = p
            .parse()
            .map_err(|_| AppError::Usage(format!("bad cycle length in `{name}`")))?;
        return Ok(Box::new(move |g| g.count_cycles(p)));
    }
    if let Some(rest) = name.strip_prefix("degree-") {
        if let Some(d) = rest.strip_suffix("-count") {
            let d: usize = d
                .parse()
                .map_err(|_| AppError::Usage(format!("bad degree in `{name}`")))?;
            return Ok(Box::new(move |g| {
                g.degree_histogram().get(d).copied().unwrap_or(0)
            }));
        }
    }
    if name == "edges" {
        return Ok(Box::new(|g| g.edge_count() as u64));
    }
    if let Some(p) = name.strip_prefix("paths-") {
        let p: usize = p
            .parse()
            .map_err(|_| AppError::Usage(format!("bad path length in `{name}`")))?;
        return Ok(Box::new(move |g| {
            let r = g.max_degree();
            g.count_paths_with_endpoint_degree(p, r - 1)
        }));
    }
    Err(AppError::Usage(format!(
        "unknown statistic `{name}`; expected cycles-<p>, paths-<p>, degree-<d>-count or edges"
    )))
}
