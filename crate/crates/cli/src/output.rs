//! CSV emission: header row, data rows, and the trailing metadata comment
//! line `# seed=<seed> version=<ver>` every report carries.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use crate::AppError;

pub struct CsvWriter {
    out: Box<dyn Write>,
    seed: u64,
}

impl CsvWriter {
    pub fn stdout(header: &[&str], seed: u64) -> Result<Self, AppError> {
        Self::new(Box::new(io::stdout().lock()), header, seed)
    }

    pub fn file(path: &Path, header: &[&str], seed: u64) -> Result<Self, AppError> {
        let file = File::create(path)?;
        Self::new(Box::new(BufWriter::new(file)), header, seed)
    }

    fn new(mut out: Box<dyn Write>, header: &[&str], seed: u64) -> Result<Self, AppError> {
        writeln!(out, "{}", header.join(","))?;
        Ok(Self { out, seed })
    }

    pub fn row<S: AsRef<str>>(&mut self, fields: &[S]) -> Result<(), AppError> {
        let line: Vec<&str> = fields.iter().map(AsRef::as_ref).collect();
        writeln!(self.out, "{}", line.join(","))?;
        Ok(())
    }

    pub fn finish(mut self) -> Result<(), AppError> {
        writeln!(
            self.out,
            "# seed={} version={}",
            self.seed,
            env!("CARGO_PKG_VERSION")
        )?;
        self.out.flush()?;
        Ok(())
    }
}

/// Parses a comma-separated schedule like "200,1000".
pub fn parse_schedule(raw: &[usize]) -> Result<Vec<usize>, AppError> {
    if raw.is_empty() {
        return Err(AppError::Usage("empty size schedule".into()));
    }
    if raw.contains(&0) {
        return Err(AppError::Usage("schedule sizes must be positive".into()));
    }
    Ok(raw.to_vec())
}

/// Runs `f` inside a rayon pool with the requested worker count
/// (0 = library default).
pub fn with_workers<T>(workers: usize, f: impl FnOnce() -> T + Send) -> Result<T, AppError>
where
    T: Send,
{
    if workers == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| AppError::Io(e.to_string()))?;
    Ok(pool.install(f))
}
