//! Squares-examined table: one row per problem file, one column per
//! adaptive step size plus the fixed-multiplier baseline.

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::Context;
use cci_core::engine::{solve, Mode};
use rayon::prelude::*;

use crate::problem::Problem;
use crate::SolverArgs;

pub const DEFAULT_EPSILONS: [f64; 5] = [0.01, 0.05, 0.1, 0.15, 0.2];
pub const BASELINE_COLUMN: &str = "KTS-CC";

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub problem: String,
    pub degrees: (usize, usize),
    pub adaptive: Vec<usize>,
    pub baseline: Option<usize>,
    pub truncated: bool,
}

#[derive(Debug)]
pub struct BenchOutcome {
    pub rows: Vec<BenchRow>,
    /// `(file, message)` for problems that could not be run; the message
    /// names the file.
    pub failures: Vec<(PathBuf, String)>,
}

pub fn problem_files(dir: &Path) -> anyhow::Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .with_context(|| format!("reading {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    Ok(files)
}

pub fn run_problem(
    problem: &Problem,
    epsilons: &[f64],
    include_baseline: bool,
    args: &SolverArgs,
) -> anyhow::Result<BenchRow> {
    let mut truncated = false;
    let mut count = |mode, eps| -> anyhow::Result<usize> {
        let report = solve(&problem.c1, &problem.c2, &args.config(mode, eps)?);
        truncated |= report.truncated;
        Ok(report.squares_examined)
    };
    let adaptive = epsilons
        .iter()
        .map(|&e| count(Mode::Adaptive, e))
        .collect::<anyhow::Result<Vec<_>>>()?;
    let baseline = if include_baseline {
        Some(count(Mode::Fixed, 0.0)?)
    } else {
        None
    };
    Ok(BenchRow {
        problem: problem.name.clone(),
        degrees: (problem.c1.degree(), problem.c2.degree()),
        adaptive,
        baseline,
        truncated,
    })
}

/// Runs every `*.json` file of `dir`; rows come back in file-name order.
pub fn run(
    dir: &Path,
    epsilons: &[f64],
    include_baseline: bool,
    args: &SolverArgs,
) -> anyhow::Result<BenchOutcome> {
    let files = problem_files(dir)?;
    let results: Vec<_> = files
        .par_iter()
        .map(|path| {
            let problem = Problem::load(path)?;
            let row = run_problem(&problem, epsilons, include_baseline, args)
                .with_context(|| path.display().to_string())?;
            log::info!(
                "{}: {:?} baseline {:?}",
                row.problem,
                row.adaptive,
                row.baseline
            );
            Ok::<_, anyhow::Error>(row)
        })
        .collect();
    let mut outcome = BenchOutcome {
        rows: Vec::new(),
        failures: Vec::new(),
    };
    for (path, result) in files.into_iter().zip(results) {
        match result {
            Ok(row) => outcome.rows.push(row),
            Err(e) => outcome.failures.push((path, format!("{e:#}"))),
        }
    }
    Ok(outcome)
}

pub fn header(epsilons: &[f64], include_baseline: bool) -> Vec<String> {
    let mut cols = vec!["problem".to_owned(), "degrees".to_owned()];
    cols.extend(epsilons.iter().map(|e| format!("eps={e}")));
    if include_baseline {
        cols.push(BASELINE_COLUMN.to_owned());
    }
    cols
}

pub fn write_csv(
    out: impl Write,
    epsilons: &[f64],
    include_baseline: bool,
    rows: &[BenchRow],
) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header(epsilons, include_baseline))?;
    for row in rows {
        let mut rec = vec![
            row.problem.clone(),
            format!("({}, {})", row.degrees.0, row.degrees.1),
        ];
        rec.extend(row.adaptive.iter().map(|c| c.to_string()));
        rec.extend(row.baseline.map(|c| c.to_string()));
        w.write_record(rec)?;
    }
    w.flush()?;
    Ok(())
}
