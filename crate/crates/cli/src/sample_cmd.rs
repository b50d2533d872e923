//! `maxdeg sample`: draw uniform graphs, write them in the text format
//! (blank-line separated when streamed together) plus an optional trace CSV
//! with one `class,restarts,accepted` row per draw.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::Args;

use maxdeg::sampler::{Sampler, SamplerError, SamplerSpec, TruncationCaps};

use crate::output::{with_workers, CsvWriter};
use crate::AppError;

#[derive(Args)]
pub struct SampleArgs {
    /// Number of vertices
    #[arg(long)]
    n: usize,
    /// Maximum degree bound
    #[arg(long = "R")]
    max_degree: usize,
    /// Number of graphs to draw
    #[arg(long)]
    count: u64,
    /// Master seed; draw i uses the independent stream (seed, i)
    #[arg(long)]
    seed: u64,
    /// exact | truncated | auto
    #[arg(long, default_value = "auto")]
    mode: String,
    /// Cap on the number of degree-(R-2) vertices (truncated mode)
    #[arg(long)]
    cap_low: Option<u64>,
    /// Cap on the number of degree-(R-1) vertices (truncated mode)
    #[arg(long)]
    cap_mid: Option<u64>,
    /// Lower bound on the number of degree-(R-1) vertices (truncated mode)
    #[arg(long)]
    floor_mid: Option<u64>,
    /// Abort a draw after this many rejected pipeline passes
    #[arg(long, default_value_t = maxdeg::sampler::DEFAULT_MAX_RESTARTS)]
    max_restarts: u32,
    /// Output file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Trace CSV path; defaults to <out>.trace.csv when --out is given
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Worker threads (0 = library default)
    #[arg(long, default_value_t = 0)]
    workers: usize,
}

pub fn build_spec(
    n: usize,
    max_degree: usize,
    seed: u64,
    mode: &str,
    caps: (Option<u64>, Option<u64>, Option<u64>),
    max_restarts: u32,
) -> Result<SamplerSpec, AppError> {
    let mut spec = match mode {
        "exact" => SamplerSpec::exact(n, max_degree, seed),
        "truncated" => SamplerSpec::truncated(n, max_degree, seed),
        "auto" => SamplerSpec::auto(n, max_degree, seed),
        other => {
            return Err(AppError::Usage(format!(
                "unknown mode `{other}`; expected exact, truncated or auto"
            )))
        }
    };
    let defaults = TruncationCaps::defaults(n, max_degree);
    spec.caps = TruncationCaps {
        cap_low: caps.0.unwrap_or(defaults.cap_low),
        cap_mid: caps.1.unwrap_or(defaults.cap_mid),
        floor_mid: caps.2.unwrap_or(defaults.floor_mid),
    };
    spec.max_restarts = max_restarts;
    Ok(spec)
}

pub fn map_sampler_error(e: SamplerError) -> AppError {
    match e {
        SamplerError::RestartBudgetExhausted { .. } => AppError::Sampler(e.to_string()),
        other => AppError::Usage(other.to_string()),
    }
}

pub fn run(args: SampleArgs) -> Result<(), AppError> {
    let spec = build_spec(
        args.n,
        args.max_degree,
        args.seed,
        &args.mode,
        (args.cap_low, args.cap_mid, args.floor_mid),
        args.max_restarts,
    )?;
    let sampler = Sampler::new(spec).map_err(map_sampler_error)?;
    let draws = with_workers(args.workers, || sampler.batch_graphs(args.count))?
        .map_err(map_sampler_error)?;

    let mut out: Box<dyn Write> = match &args.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(io::stdout().lock()),
    };
    for (i, (graph, _)) in draws.iter().enumerate() {
        if i > 0 {
            writeln!(out)?;
        }
        out.write_all(graph.to_text().as_bytes())?;
    }
    out.flush()?;
    drop(out);

    let trace_path = args.trace.or_else(|| {
        args.out
            .as_ref()
            .map(|p| PathBuf::from(format!("{}.trace.csv", p.display())))
    });
    if let Some(path) = trace_path {
        let mut csv = CsvWriter::file(&path, &["class", "restarts", "accepted"], args.seed)?;
        for (_, trace) in &draws {
            let class: Vec<String> = trace.class.counts().iter().map(u64::to_string).collect();
            csv.row(&[class.join(":"), trace.restarts.to_string(), "1".into()])?;
        }
        csv.finish()?;
    }
    Ok(())
}
