//! The subdivision driver.
//!
//! Squares are processed first-in first-out starting from `[0, 1]²`. A popped
//! square is dropped if a single explored region contains it, or if the
//! exclusion test clears it. Otherwise the Kantorovich test runs; a pass
//! triggers Newton on the passing pair and, when the limit is a new zero of
//! the full system inside `[0, 1]²`, records it together with its explored
//! region. Surviving squares are always split into four, whether or not the
//! Kantorovich test passed, because a square may hold several zeros.

use alloc::collections::VecDeque;
use alloc::vec::Vec;
use core::fmt;

use crate::exclusion::exclusion_test;
use crate::geometry::{difference_net, BezierCurve, Differentiated, Pair, Point2, Point3, Rect};
use crate::kantorovich::{
    explored_region, ExploredRegion, KantorovichContext, KantorovichOutcome, PairMetrics,
    PairOutcome,
};
use crate::newton::{newton_solve_with, NewtonResult, DEFAULT_MAX_ITERATIONS, DEFAULT_TOLERANCE};

/// Multiplier giving the initial test domain `[-0.25, 1.25]²` on the root.
pub const DEFAULT_ALPHA: f64 = 1.5;
pub const DEFAULT_EPSILON: f64 = 0.05;
pub const DEFAULT_MAX_DEPTH: u32 = 32;
/// Slack for accepting a Newton limit as lying in `[0, 1]²`.
pub const DOMAIN_SLACK: f64 = 1e-9;
/// Accepted zeros closer than this to a recorded one are not re-recorded.
pub const DUPLICATE_RADIUS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Test-domain multipliers follow the parent's Kantorovich outcome.
    Adaptive,
    /// Every square uses `fixed_alpha` for all pairs.
    Fixed,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub mode: Mode,
    pub epsilon: f64,
    /// Multiplier of the fixed mode, and the root multiplier of both modes.
    pub fixed_alpha: f64,
    pub newton_tol: f64,
    pub newton_max_iter: usize,
    /// `None` selects `1e-6 · (1 + max |b_ij|)`.
    pub zero_tol: Option<f64>,
    pub max_depth: u32,
    pub clip_explored_region: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            mode: Mode::Adaptive,
            epsilon: DEFAULT_EPSILON,
            fixed_alpha: DEFAULT_ALPHA,
            newton_tol: DEFAULT_TOLERANCE,
            newton_max_iter: DEFAULT_MAX_ITERATIONS,
            zero_tol: None,
            max_depth: DEFAULT_MAX_DEPTH,
            clip_explored_region: true,
        }
    }
}

impl SolverConfig {
    pub fn adaptive(epsilon: f64) -> Self {
        SolverConfig {
            mode: Mode::Adaptive,
            epsilon,
            ..Self::default()
        }
    }

    pub fn fixed() -> Self {
        SolverConfig {
            mode: Mode::Fixed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(self.epsilon >= 0.0 && self.epsilon.is_finite()) {
            return Err(ConfigError::Epsilon(self.epsilon));
        }
        if !(self.fixed_alpha >= 1.0 && self.fixed_alpha.is_finite()) {
            return Err(ConfigError::Alpha(self.fixed_alpha));
        }
        if !(self.newton_tol > 0.0) {
            return Err(ConfigError::NewtonTolerance(self.newton_tol));
        }
        if let Some(tol) = self.zero_tol {
            if !(tol > 0.0) {
                return Err(ConfigError::ZeroTolerance(tol));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConfigError {
    Epsilon(f64),
    Alpha(f64),
    NewtonTolerance(f64),
    ZeroTolerance(f64),
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::Epsilon(e) => write!(f, "epsilon must be a finite value >= 0, got {e}"),
            ConfigError::Alpha(a) => write!(f, "fixed alpha must be >= 1, got {a}"),
            ConfigError::NewtonTolerance(t) => {
                write!(f, "Newton tolerance must be positive, got {t}")
            }
            ConfigError::ZeroTolerance(t) => write!(f, "zero tolerance must be positive, got {t}"),
        }
    }
}

impl core::error::Error for ConfigError {}

/// `B̄(center, half_width)` inside `[0, 1]²` with one multiplier per pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Square {
    pub center: Point2,
    pub half_width: f64,
    /// Indexed by [`Pair::index`]; never below 1.
    pub alphas: [f64; 3],
    pub depth: u32,
}

impl Square {
    pub fn root(alpha: f64) -> Self {
        Square {
            center: [0.5, 0.5],
            half_width: 0.5,
            alphas: [alpha; 3],
            depth: 0,
        }
    }

    pub fn rect(&self) -> Rect {
        Rect {
            lo_u: self.center[0] - self.half_width,
            hi_u: self.center[0] + self.half_width,
            lo_v: self.center[1] - self.half_width,
            hi_v: self.center[1] + self.half_width,
        }
    }

    /// Quadrants in the order (low u, low v), (high u, low v), (low u, high v),
    /// (high u, high v).
    pub fn children(&self, alphas: [f64; 3]) -> [Square; 4] {
        let r = 0.5 * self.half_width;
        let [cu, cv] = self.center;
        [[-r, -r], [r, -r], [-r, r], [r, r]].map(|[du, dv]| Square {
            center: [cu + du, cv + dv],
            half_width: r,
            alphas,
            depth: self.depth + 1,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntersectionRecord {
    pub u: f64,
    pub v: f64,
    /// `c1(u)`.
    pub point: Point3,
    /// `‖c1(u) - c2(v)‖∞`.
    pub residual: f64,
    pub source_square: Square,
    pub pair: Pair,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SolveReport {
    pub intersections: Vec<IntersectionRecord>,
    pub squares_examined: usize,
    pub subdivisions: usize,
    pub region_prunes: usize,
    pub exclusion_passes: usize,
    pub kantorovich_passes: usize,
    pub newton_calls: usize,
    pub max_depth_reached: u32,
    /// Some square wanted to split beyond `max_depth`.
    pub truncated: bool,
    pub regions: Vec<ExploredRegion>,
}

/// Hook into the driver, mainly for tests and tracing tools.
pub trait SolveObserver {
    fn on_pop(&mut self, _square: &Square) {}
    fn on_kantorovich(&mut self, _square: &Square, _outcome: &KantorovichOutcome) {}
    fn on_pass(&mut self, _event: &PassEvent<'_>) {}
}

impl SolveObserver for () {}

/// A Kantorovich pass and the Newton run it triggered.
#[derive(Debug, Clone, Copy)]
pub struct PassEvent<'a> {
    pub square: &'a Square,
    pub pair: Pair,
    pub metrics: &'a PairMetrics,
    /// The passing `f_ij` with its derivative nets.
    pub system: &'a Differentiated,
    pub newton: &'a NewtonResult,
    pub accepted: bool,
}

/// Child multipliers from the parent's outcome. A pass keeps all three; a
/// failing pair grows by `epsilon` when only containment failed, shrinks by
/// `epsilon` (never below 1) when `h` was too large, and is left alone when
/// its Jacobian was singular.
pub fn update_alphas(
    parent: &KantorovichOutcome,
    parent_alphas: [f64; 3],
    epsilon: f64,
) -> [f64; 3] {
    if parent.passed() {
        return parent_alphas;
    }
    let mut out = parent_alphas;
    for pair in Pair::ALL {
        let alpha = &mut out[pair.index()];
        match parent.pair(pair) {
            PairOutcome::FailContainment(_) => *alpha += epsilon,
            PairOutcome::FailH(_) => *alpha = (*alpha - epsilon).max(1.0),
            PairOutcome::SingularJacobian | PairOutcome::Pass(_) => {}
        }
    }
    out
}

/// True when one region on its own holds the whole square.
pub fn region_prunes_square(regions: &[ExploredRegion], square: &Square) -> bool {
    let rect = square.rect();
    regions.iter().any(|r| r.contains_rect(&rect))
}

pub fn point_is_known(regions: &[ExploredRegion], x: Point2) -> bool {
    regions.iter().any(|r| r.contains(x))
}

pub fn solve(c1: &BezierCurve, c2: &BezierCurve, config: &SolverConfig) -> SolveReport {
    solve_observed(c1, c2, config, &mut ())
}

pub fn solve_observed(
    c1: &BezierCurve,
    c2: &BezierCurve,
    config: &SolverConfig,
    observer: &mut impl SolveObserver,
) -> SolveReport {
    let net = difference_net(c1, c2);
    let ctx = KantorovichContext::new(&net);
    let zero_tol = config
        .zero_tol
        .unwrap_or(1e-6 * (1.0 + net.max_abs_coeff()));
    let mut report = SolveReport::default();
    let mut queue = VecDeque::new();
    queue.push_back(Square::root(config.fixed_alpha));

    while let Some(square) = queue.pop_front() {
        report.squares_examined += 1;
        report.max_depth_reached = report.max_depth_reached.max(square.depth);
        observer.on_pop(&square);

        if region_prunes_square(&report.regions, &square) {
            report.region_prunes += 1;
            log::trace!("pop {square:?}: inside explored region");
            continue;
        }
        let sub = net
            .reparametrize(&square.rect())
            .expect("squares have positive width");
        if exclusion_test(&sub) {
            report.exclusion_passes += 1;
            log::trace!("pop {square:?}: excluded");
            continue;
        }

        let outcome = ctx.test(square.center, square.half_width, square.alphas);
        observer.on_kantorovich(&square, &outcome);
        log::trace!(
            "pop {square:?}: kantorovich {:?}",
            Pair::ALL.map(|p| outcome.pair(p).status())
        );

        if let Some(pair) = outcome.passing_pair() {
            report.kantorovich_passes += 1;
            report.newton_calls += 1;
            let PairOutcome::Pass(metrics) = outcome.pair(pair) else {
                unreachable!()
            };
            let system = ctx.pair_system(pair);
            let newton = newton_solve_with(
                system,
                square.center,
                config.newton_tol,
                config.newton_max_iter,
                |_, _| {},
            );
            let accepted = newton
                .x_star
                .and_then(|x| accept_zero(c1, c2, &ctx, x, zero_tol, &report))
                .map(|record_point| {
                    let (rho_minus, rho_plus) = metrics.radii.expect("a pass has h <= 1/4");
                    let x_star = newton.x_star.unwrap();
                    report.regions.push(explored_region(
                        square.center,
                        rho_minus,
                        rho_plus,
                        pair,
                        outcome.test_domain(pair),
                        x_star,
                        config.clip_explored_region,
                    ));
                    let (u, v, point, residual) = record_point;
                    log::debug!("zero at ({u}, {v}) via {pair}, residual {residual:e}");
                    report.intersections.push(IntersectionRecord {
                        u,
                        v,
                        point,
                        residual,
                        source_square: square,
                        pair,
                    });
                })
                .is_some();
            observer.on_pass(&PassEvent {
                square: &square,
                pair,
                metrics,
                system,
                newton: &newton,
                accepted,
            });
        }

        let alphas = match config.mode {
            Mode::Fixed => [config.fixed_alpha; 3],
            Mode::Adaptive => update_alphas(&outcome, square.alphas, config.epsilon),
        };
        if square.depth >= config.max_depth {
            report.truncated = true;
            log::debug!("max depth reached at {square:?}");
            continue;
        }
        report.subdivisions += 1;
        queue.extend(square.children(alphas));
    }
    report
}

/// Checks a Newton limit against the full system and the known zeros and
/// returns `(u, v, c1(u), residual)` for a new intersection.
fn accept_zero(
    c1: &BezierCurve,
    c2: &BezierCurve,
    ctx: &KantorovichContext,
    x: Point2,
    zero_tol: f64,
    report: &SolveReport,
) -> Option<(f64, f64, Point3, f64)> {
    let inside = |t: f64| (-DOMAIN_SLACK..=1.0 + DOMAIN_SLACK).contains(&t);
    if !(inside(x[0]) && inside(x[1])) {
        return None;
    }
    let residual = ctx
        .net()
        .eval(x[0], x[1])
        .iter()
        .fold(0.0, |acc: f64, c| acc.max(c.abs()));
    if !(residual <= zero_tol) || point_is_known(&report.regions, x) {
        return None;
    }
    let (u, v) = (x[0].clamp(0.0, 1.0), x[1].clamp(0.0, 1.0));
    let duplicate = report
        .intersections
        .iter()
        .any(|r| (r.u - u).abs().max((r.v - v).abs()) <= DUPLICATE_RADIUS);
    if duplicate {
        return None;
    }
    let (p, q) = (c1.eval(u), c2.eval(v));
    let residual = (p[0] - q[0])
        .abs()
        .max((p[1] - q[1]).abs())
        .max((p[2] - q[2]).abs());
    Some((u, v, p, residual))
}
