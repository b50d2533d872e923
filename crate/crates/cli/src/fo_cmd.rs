//! `maxdeg fo`: evaluate a sentence on a graph file, estimate its limiting
//! probability, or play the Ehrenfeucht–Fraïssé game on two graph files.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Subcommand};

use maxdeg::logic::{ef_game, eval, limit_mc, parse_sentence, Winner};
use maxdeg::Graph;

use crate::output::{parse_schedule, with_workers, CsvWriter};
use crate::AppError;

#[derive(Args)]
pub struct FoArgs {
    #[command(subcommand)]
    command: FoCommand,
}

#[derive(Subcommand)]
enum FoCommand {
    /// Evaluate a sentence on a graph in the text format
    Eval {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        sentence: String,
    },
    /// Monte Carlo estimate of the limiting satisfaction probability
    Limit {
        #[arg(long)]
        sentence: String,
        #[arg(long = "R")]
        max_degree: usize,
        #[arg(long = "n-schedule", value_delimiter = ',')]
        n_schedule: Vec<usize>,
        #[arg(long)]
        samples: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        workers: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide the k-round Ehrenfeucht–Fraïssé game on two graph files
    Ef {
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        h: PathBuf,
        #[arg(long)]
        k: u32,
    },
}

fn load_graph(path: &PathBuf) -> Result<Graph, AppError> {
    let text = fs::read_to_string(path)?;
    Graph::from_text(&text).map_err(|e| AppError::Parse(format!("{}: {e}", path.display())))
}

pub fn run(args: FoArgs) -> Result<(), AppError> {
    match args.command {
        FoCommand::Eval { graph, sentence } => {
            let sentence =
                parse_sentence(&sentence).map_err(|e| AppError::Parse(e.to_string()))?;
            let g = load_graph(&graph)?;
            let value = eval(&g, &sentence).map_err(|e| AppError::Usage(e.to_string()))?;
            println!("{value}");
            Ok(())
        }
        FoCommand::Limit {
            sentence,
            max_degree,
            n_schedule,
            samples,
            seed,
            workers,
            out,
        } => {
            let sentence =
                parse_sentence(&sentence).map_err(|e| AppError::Parse(e.to_string()))?;
            let schedule = parse_schedule(&n_schedule)?;
            let est = with_workers(workers, || {
                limit_mc(&sentence, max_degree, &schedule, samples, seed)
            })?
            .map_err(|e| AppError::Sampler(e.to_string()))?;
            let header = ["n", "samples", "successes", "frequency", "ci_lo", "ci_hi"];
            let mut csv = match &out {
                Some(path) => CsvWriter::file(path, &header, seed)?,
                None => CsvWriter::stdout(&header, seed)?,
            };
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
                samples.to_string(),
                String::new(),
                format!("{:.5}", est.estimate),
                format!("{:.5}", est.ci.0),
                format!("{:.5}", est.ci.1),
            ])?;
            csv.finish()
        }
        FoCommand::Ef { g, h, k } => {
            let g = load_graph(&g)?;
            let h = load_graph(&h)?;
            let winner = ef_game(&g, &h, k).map_err(|e| AppError::Usage(e.to_string()))?;
            println!(
                "{}",
                match winner {
                    Winner::Duplicator => "Duplicator",
                    Winner::Spoiler => "Spoiler",
                }
            );
            Ok(())
        }
    }
}
