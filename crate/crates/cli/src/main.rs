use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use cci_cli::bench::{self, DEFAULT_EPSILONS};
use cci_cli::problem::Problem;
use cci_cli::report::ResultFile;
use cci_cli::{plot, ModeArg, SolverArgs};
use cci_core::engine::{solve, DEFAULT_EPSILON};
use clap::{Parser, Subcommand};

/// Finds all intersections of two 3D Bézier curves by Kantorovich-test
/// subdivision.
#[derive(Debug, Parser)]
#[command(name = "cci", version, allow_negative_numbers = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve one problem file and write a JSON result document.
    Solve {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Adaptive)]
        mode: ModeArg,
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
        #[command(flatten)]
        solver: SolverArgs,
        /// Output file; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Squares-examined table over a directory of problem files.
    Bench {
        input_dir: PathBuf,
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_EPSILONS)]
        epsilons: Vec<f64>,
        /// Leave out the fixed-multiplier baseline column.
        #[arg(long)]
        no_baseline: bool,
        #[command(flatten)]
        solver: SolverArgs,
        /// Output CSV; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Sampled curve polylines and intersection points as CSV.
    PlotData {
        input: PathBuf,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Adaptive)]
        mode: ModeArg,
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
        #[command(flatten)]
        solver: SolverArgs,
        /// Directory receiving `<name>_curves.csv` and `<name>_intersections.csv`.
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
}

fn writer(path: Option<&PathBuf>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Solve {
            input,
            mode,
            epsilon,
            solver,
            output,
        } => {
            let problem = Problem::load(&input)?;
            let config = solver.config(mode.into(), epsilon)?;
            let report = solve(&problem.c1, &problem.c2, &config);
            log::info!(
                "{}: {} intersections, {} squares examined",
                problem.name,
                report.intersections.len(),
                report.squares_examined
            );
            let doc = ResultFile::new(&problem.name, &config, &report);
            let mut out = writer(output.as_ref())?;
            writeln!(out, "{}", doc.to_json())?;
            out.flush()?;
            if report.truncated {
                eprintln!(
                    "warning: {}: subdivision hit max depth {}; results may be incomplete",
                    problem.name, config.max_depth
                );
                return Ok(ExitCode::from(2));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Bench {
            input_dir,
            epsilons,
            no_baseline,
            solver,
            output,
        } => {
            let outcome = bench::run(&input_dir, &epsilons, !no_baseline, &solver)?;
            let out = writer(output.as_ref())?;
            bench::write_csv(out, &epsilons, !no_baseline, &outcome.rows)?;
            for row in outcome.rows.iter().filter(|r| r.truncated) {
                eprintln!("warning: {}: some runs hit max depth", row.problem);
            }
            for (_, message) in &outcome.failures {
                eprintln!("error: {message}");
            }
            Ok(if outcome.failures.is_empty() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::PlotData {
            input,
            samples,
            mode,
            epsilon,
            solver,
            out_dir,
        } => {
            if samples < 2 {
                bail!("--samples must be at least 2");
            }
            let problem = Problem::load(&input)?;
            let config = solver.config(mode.into(), epsilon)?;
            let report = solve(&problem.c1, &problem.c2, &config);
            std::fs::create_dir_all(&out_dir)?;
            let curves = out_dir.join(format!("{}_curves.csv", problem.name));
            let points = out_dir.join(format!("{}_intersections.csv", problem.name));
            let mut w = writer(Some(&curves))?;
            plot::write_curves(&mut w, &problem, samples)?;
            w.flush()?;
            let mut w = writer(Some(&points))?;
            plot::write_intersections(&mut w, &report)?;
            w.flush()?;
            log::info!("wrote {} and {}", curves.display(), points.display());
            Ok(if report.truncated {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            })
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("CCI_LOG_LEVEL", "warn")).init();
    // usage errors share the validation exit code; 2 means truncation
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::FAILURE
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
