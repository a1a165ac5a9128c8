//! File formats and subcommands of the `cci` command-line tool.

pub mod bench;
pub mod plot;
pub mod problem;
pub mod report;

use cci_core::engine::{Mode, SolverConfig};
use clap::{Args, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Adaptive,
    Fixed,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Adaptive => Mode::Adaptive,
            ModeArg::Fixed => Mode::Fixed,
        }
    }
}

/// Solver knobs shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct SolverArgs {
    /// Newton step tolerance (infinity norm).
    #[arg(long, default_value_t = cci_core::newton::DEFAULT_TOLERANCE)]
    pub newton_tol: f64,
    /// Deepest subdivision level before the run is reported as truncated.
    #[arg(long, default_value_t = cci_core::engine::DEFAULT_MAX_DEPTH)]
    pub max_depth: u32,
    /// Residual accepted as a zero; defaults to 1e-6 * (1 + max |b_ij|).
    #[arg(long)]
    pub zero_tol: Option<f64>,
    /// Clip explored regions to the test domain they were derived on.
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    pub clip_explored_region: bool,
    /// Test-domain multiplier of the fixed mode and of the root square.
    #[arg(long, default_value_t = cci_core::engine::DEFAULT_ALPHA)]
    pub fixed_alpha: f64,
}

impl SolverArgs {
    pub fn config(&self, mode: Mode, epsilon: f64) -> anyhow::Result<SolverConfig> {
        let config = SolverConfig {
            mode,
            epsilon,
            fixed_alpha: self.fixed_alpha,
            newton_tol: self.newton_tol,
            zero_tol: self.zero_tol,
            max_depth: self.max_depth,
            clip_explored_region: self.clip_explored_region,
            ..SolverConfig::default()
        };
        config.validate()?;
        Ok(config)
    }
}
