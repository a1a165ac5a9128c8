//! Result documents written by `cci solve`.

use cci_core::engine::{Mode, SolveReport, SolverConfig};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub mode: String,
    pub epsilon: f64,
    pub fixed_alpha: f64,
    pub newton_tol: f64,
    pub newton_max_iter: usize,
    pub zero_tol: Option<f64>,
    pub max_depth: u32,
    pub clip_explored_region: bool,
}

impl From<&SolverConfig> for ConfigEcho {
    fn from(c: &SolverConfig) -> Self {
        ConfigEcho {
            mode: match c.mode {
                Mode::Adaptive => "adaptive".into(),
                Mode::Fixed => "fixed".into(),
            },
            epsilon: c.epsilon,
            fixed_alpha: c.fixed_alpha,
            newton_tol: c.newton_tol,
            newton_max_iter: c.newton_max_iter,
            zero_tol: c.zero_tol,
            max_depth: c.max_depth,
            clip_explored_region: c.clip_explored_region,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Intersection {
    pub u: f64,
    pub v: f64,
    pub point: [f64; 3],
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub squares_examined: usize,
    pub subdivisions: usize,
    pub region_prunes: usize,
    pub exclusion_passes: usize,
    pub kantorovich_passes: usize,
    pub newton_calls: usize,
    pub max_depth_reached: u32,
    pub truncated: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultFile {
    pub problem: String,
    pub config: ConfigEcho,
    pub intersections: Vec<Intersection>,
    pub stats: Stats,
}

impl ResultFile {
    pub fn new(problem: &str, config: &SolverConfig, report: &SolveReport) -> Self {
        ResultFile {
            problem: problem.to_owned(),
            config: config.into(),
            intersections: report
                .intersections
                .iter()
                .map(|r| Intersection {
                    u: r.u,
                    v: r.v,
                    point: r.point,
                    residual: r.residual,
                })
                .collect(),
            stats: Stats {
                squares_examined: report.squares_examined,
                subdivisions: report.subdivisions,
                region_prunes: report.region_prunes,
                exclusion_passes: report.exclusion_passes,
                kantorovich_passes: report.kantorovich_passes,
                newton_calls: report.newton_calls,
                max_depth_reached: report.max_depth_reached,
                truncated: report.truncated,
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("result documents always serialize")
    }
}
