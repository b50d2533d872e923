//! `maxdeg`: counting, uniform sampling, census, first-order analysis and
//! oracle comparison for graphs with bounded maximum degree.
//!
//! Exit codes: 0 ok, 2 usage, 3 sampler failure, 4 infeasible schedule,
//! 5 parse error, 6 oracle mismatch.

mod experiments;
mod fo_cmd;
mod oracle_cmd;
mod output;
mod sample_cmd;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use maxdeg::counting::{
    degree_class_weight, degree_poisson_mean, lambda, matchings, mu, simplicity_constant,
    truncated_poisson, DegreeClass,
};
use output::CsvWriter;

#[derive(Debug)]
pub enum AppError {
    Usage(String),
    Sampler(String),
    Schedule(String),
    Parse(String),
    OracleMismatch(String),
    Io(String),
    /// Downstream consumer closed the pipe; exit quietly.
    BrokenPipe,
}

impl AppError {
    fn exit_code(&self) -> u8 {
        match self {
            AppError::Usage(_) => 2,
            AppError::Sampler(_) => 3,
            AppError::Schedule(_) => 4,
            AppError::Parse(_) => 5,
            AppError::OracleMismatch(_) => 6,
            AppError::Io(_) => 1,
            AppError::BrokenPipe => 0,
        }
    }

    fn message(&self) -> &str {
        match self {
            AppError::Usage(m)
            | AppError::Sampler(m)
            | AppError::Schedule(m)
            | AppError::Parse(m)
            | AppError::OracleMismatch(m)
            | AppError::Io(m) => m,
            AppError::BrokenPipe => "broken pipe",
        }
    }
}

impl From<std::io::Error> for AppError {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            AppError::BrokenPipe
        } else {
            AppError::Io(e.to_string())
        }
    }
}

#[derive(Parser)]
#[command(name = "maxdeg", version, about = "Bounded-maximum-degree random graphs: exact counts, uniform sampling, census statistics and first-order limit estimation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact counts: matching numbers, degree-class weights, census means
    Count(CountArgs),
    /// Draw uniform graphs and write them in the text format
    Sample(sample_cmd::SampleArgs),
    /// Structure census of a graph file as stat,value CSV
    Census(CensusArgs),
    /// Run a named reproduction experiment and emit a CSV report
    Experiment(experiments::ExperimentArgs),
    /// First-order sentences: evaluate, estimate limits, play EF games
    Fo(fo_cmd::FoArgs),
    /// Brute-force enumeration and sampler comparison at tiny scale
    Oracle(oracle_cmd::OracleArgs),
}

#[derive(Args)]
pub struct CensusArgs {
    /// Graph in the text format
    #[arg(long)]
    graph: std::path::PathBuf,
    /// Truncation level k (census lengths run up to 5^{k+1})
    #[arg(long, default_value_t = 1)]
    k: u32,
    /// Also compute exact vertex connectivity
    #[arg(long)]
    connectivity: bool,
    /// Also test rigidity
    #[arg(long)]
    rigidity: bool,
}

fn cmd_census(args: CensusArgs) -> Result<(), AppError> {
    let text = std::fs::read_to_string(&args.graph)?;
    let g = maxdeg::Graph::from_text(&text)
        .map_err(|e| AppError::Parse(format!("{}: {e}", args.graph.display())))?;
    let (profile, report) = maxdeg::graph::census(&g, args.k);
    let mut csv = CsvWriter::stdout(&["stat", "value"], 0)?;
    csv.row(&["n".to_string(), g.n().to_string()])?;
    csv.row(&["max_degree".to_string(), g.max_degree().to_string()])?;
    csv.row(&["k".to_string(), args.k.to_string()])?;
    csv.row(&["m".to_string(), report.m().to_string()])?;
    for (d, count) in report.degree_histogram.iter().enumerate() {
        csv.row(&[format!("degree_{d}_count"), count.to_string()])?;
    }
    for (i, count) in report.cycle_counts.iter().enumerate() {
        if *count > 0 {
            csv.row(&[format!("cycles_{}", i + 1), count.to_string()])?;
        }
    }
    for (i, count) in report.path_counts.iter().enumerate() {
        if *count > 0 {
            csv.row(&[format!("paths_{}", i + 1), count.to_string()])?;
        }
    }
    let fmt_opt = |x: Option<usize>| x.map_or("inf".to_string(), |d| d.to_string());
    csv.row(&["min_object_distance".to_string(), fmt_opt(report.min_object_distance)])?;
    csv.row(&["min_separation".to_string(), fmt_opt(report.min_separation)])?;
    csv.row(&[
        "min_component_size".to_string(),
        report.min_component_size.to_string(),
    ])?;
    csv.row(&["profile_q".to_string(), profile.q().to_string()])?;
    csv.row(&[
        "class_conditions_hold".to_string(),
        report.class_conditions_hold().to_string(),
    ])?;
    if args.connectivity {
        let kappa = g
            .vertex_connectivity()
            .map_err(|e| AppError::Usage(e.to_string()))?;
        csv.row(&["connectivity".to_string(), kappa.to_string()])?;
    }
    if args.rigidity {
        let rigid = g.is_rigid().map_err(|e| AppError::Usage(e.to_string()))?;
        csv.row(&["rigid".to_string(), rigid.to_string()])?;
    }
    csv.finish()
}

#[derive(Args)]
pub struct CountArgs {
    /// Print M(two_m), the number of perfect matchings on this many points
    #[arg(long)]
    matchings: Option<u64>,
    /// Degree class d_0,d_1,...,d_R; prints its exact weight N(d0..dR)
    #[arg(long, value_delimiter = ',')]
    class: Option<Vec<u64>>,
    /// Maximum degree bound R
    #[arg(long = "R")]
    max_degree: Option<u32>,
    /// Print lambda_p = (R-1)^p / 2p (requires --R and --p)
    #[arg(long)]
    lambda: bool,
    /// Print mu_p = (R-1)^{p+1} / 2 (requires --R and --p)
    #[arg(long)]
    mu: bool,
    /// Cycle/path length p
    #[arg(long)]
    p: Option<u32>,
    /// Print the simplicity constant exp(-(R-1)/2 - (R-1)^2/4)
    #[arg(long)]
    simplicity: bool,
    /// Print the limiting Poisson mean R-1 of the degree-(R-2) count
    #[arg(long)]
    poisson_mean: bool,
    /// Truncated Poisson mass P_k(x, mu) as "k,x,mu"
    #[arg(long, value_delimiter = ',', num_args = 3)]
    pk: Option<Vec<String>>,
}

fn cmd_count(args: CountArgs) -> Result<(), AppError> {
    let mut csv = CsvWriter::stdout(&["stat", "value"], 0)?;
    let mut printed = false;

    if let Some(two_m) = args.matchings {
        let m = matchings(two_m).map_err(|e| AppError::Usage(e.to_string()))?;
        csv.row(&[format!("matchings({two_m})"), m.to_string()])?;
        printed = true;
    }
    if let Some(counts) = &args.class {
        if let Some(r) = args.max_degree {
            if counts.len() != r as usize + 1 {
                return Err(AppError::Usage(format!(
                    "--class lists {} entries but --R {r} needs {}",
                    counts.len(),
                    r + 1
                )));
            }
        }
        let class = DegreeClass::new(counts.clone());
        let weight = degree_class_weight(&class).map_err(|e| AppError::Usage(e.to_string()))?;
        let name: Vec<String> = counts.iter().map(u64::to_string).collect();
        csv.row(&[format!("weight({})", name.join(",")), weight.rational.to_string()])?;
        printed = true;
    }
    if args.lambda || args.mu {
        let r = args
            .max_degree
            .ok_or_else(|| AppError::Usage("--lambda/--mu require --R".into()))?;
        let p = args
            .p
            .ok_or_else(|| AppError::Usage("--lambda/--mu require --p".into()))?;
        if r < 2 || p < 1 {
            return Err(AppError::Usage("need R >= 2 and p >= 1".into()));
        }
        if args.lambda {
            csv.row(&[format!("lambda_{p}(R={r})"), lambda(r, p).to_string()])?;
        }
        if args.mu {
            csv.row(&[format!("mu_{p}(R={r})"), mu(r, p).to_string()])?;
        }
        printed = true;
    }
    if args.simplicity {
        let r = args
            .max_degree
            .ok_or_else(|| AppError::Usage("--simplicity requires --R".into()))?;
        if r < 2 {
            return Err(AppError::Usage("need R >= 2".into()));
        }
        csv.row(&[
            format!("simplicity(R={r})"),
            format!("{:.12}", simplicity_constant(r)),
        ])?;
        printed = true;
    }
    if args.poisson_mean {
        let r = args
            .max_degree
            .ok_or_else(|| AppError::Usage("--poisson-mean requires --R".into()))?;
        if r < 2 {
            return Err(AppError::Usage("need R >= 2".into()));
        }
        csv.row(&[
            format!("degree_poisson_mean(R={r})"),
            degree_poisson_mean(r).to_string(),
        ])?;
        printed = true;
    }
    if let Some(pk) = &args.pk {
        let parse_err = |what: &str| AppError::Usage(format!("--pk {what} is malformed"));
        let k: u32 = pk[0].parse().map_err(|_| parse_err("k"))?;
        let x: u32 = pk[1].parse().map_err(|_| parse_err("x"))?;
        let mean: f64 = pk[2].parse().map_err(|_| parse_err("mu"))?;
        let mass = truncated_poisson(k, x, mean).map_err(|e| AppError::Usage(e.to_string()))?;
        csv.row(&[format!("pk({k},{x},{mean})"), format!("{mass:.12}")])?;
        printed = true;
    }

    if !printed {
        return Err(AppError::Usage(
            "count: nothing requested; pass --matchings, --class, --lambda, --mu, --simplicity, --poisson-mean or --pk".into(),
        ));
    }
    csv.finish()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Count(args) => cmd_count(args),
        Command::Sample(args) => sample_cmd::run(args),
        Command::Census(args) => cmd_census(args),
        Command::Experiment(args) => experiments::run(args),
        Command::Fo(args) => fo_cmd::run(args),
        Command::Oracle(args) => oracle_cmd::run(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(AppError::BrokenPipe) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
