//! Brute-force intersection finder used to cross-check the solver.
//!
//! It shares nothing with the subdivision path beyond curve evaluation:
//! `‖c1(u) - c2(v)‖∞` is sampled on a uniform grid, low local minima are
//! refined with Levenberg–Marquardt on the least-squares objective, and
//! converged points are deduplicated. Near-tangential intersections can be
//! missed.

use alloc::vec::Vec;

use crate::geometry::{BezierCurve, Point2, Point3};

pub const DEFAULT_GRID: usize = 400;
pub const DEDUP_RADIUS: f64 = 1e-6;

/// Grid minima that were low enough to refine, split by what refinement made
/// of them.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct OracleScan {
    /// Refined zeros in `[0, 1]²`, sorted lexicographically.
    pub roots: Vec<Point2>,
    /// `(grid point, sampled ‖f‖∞)` of candidates that did not refine to a
    /// zero inside the domain.
    pub near_misses: Vec<(Point2, f64)>,
}

fn norm_inf3(x: Point3) -> f64 {
    x[0].abs().max(x[1].abs()).max(x[2].abs())
}

fn diff(a: Point3, b: Point3) -> Point3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn max_speed(c: &BezierCurve) -> f64 {
    c.derivative()
        .control_points()
        .iter()
        .map(|&p| norm_inf3(p))
        .fold(0.0, f64::max)
}

fn refine(c1: &BezierCurve, c2: &BezierCurve, start: Point2, refine_tol: f64) -> (Point2, f64) {
    let (d1, d2) = (c1.derivative(), c2.derivative());
    let residual = |x: Point2| diff(c1.eval(x[0]), c2.eval(x[1]));
    let sq = |f: Point3| f[0] * f[0] + f[1] * f[1] + f[2] * f[2];
    let mut x = start;
    let mut f = residual(x);
    let mut mu = 1e-3;
    for _ in 0..200 {
        let (a, b) = (d1.eval(x[0]), d2.eval(x[1]));
        let b = [-b[0], -b[1], -b[2]];
        let (aa, ab, bb) = (
            a[0] * a[0] + a[1] * a[1] + a[2] * a[2],
            a[0] * b[0] + a[1] * b[1] + a[2] * b[2],
            b[0] * b[0] + b[1] * b[1] + b[2] * b[2],
        );
        let (ga, gb) = (
            a[0] * f[0] + a[1] * f[1] + a[2] * f[2],
            b[0] * f[0] + b[1] * f[1] + b[2] * f[2],
        );
        let mut improved = false;
        for _ in 0..30 {
            let damp = mu * (aa + bb).max(1e-300);
            let (m00, m11) = (aa + damp, bb + damp);
            let det = m00 * m11 - ab * ab;
            if det == 0.0 {
                mu *= 10.0;
                continue;
            }
            let du = -(m11 * ga - ab * gb) / det;
            let dv = -(m00 * gb - ab * ga) / det;
            let next = [x[0] + du, x[1] + dv];
            let fn_ = residual(next);
            if sq(fn_) <= sq(f) {
                x = next;
                f = fn_;
                mu = (mu * 0.1).max(1e-12);
                improved = true;
                if du.abs().max(dv.abs()) <= refine_tol {
                    return (x, norm_inf3(f));
                }
                break;
            }
            mu *= 10.0;
        }
        if !improved {
            break;
        }
    }
    (x, norm_inf3(f))
}

/// Full scan: roots plus the candidates that failed to refine.
pub fn brute_force_scan(
    c1: &BezierCurve,
    c2: &BezierCurve,
    grid_n: usize,
    refine_tol: f64,
) -> OracleScan {
    let n = grid_n.max(2);
    let h = 1.0 / (n - 1) as f64;
    let p: Vec<Point3> = (0..n).map(|i| c1.eval(i as f64 * h)).collect();
    let q: Vec<Point3> = (0..n).map(|j| c2.eval(j as f64 * h)).collect();
    let value = |i: usize, j: usize| norm_inf3(diff(p[i], q[j]));
    let grid: Vec<f64> = (0..n * n).map(|k| value(k / n, k % n)).collect();
    let threshold = (max_speed(c1) + max_speed(c2)) * h;

    let scale = c1
        .control_points()
        .iter()
        .chain(c2.control_points())
        .map(|&x| norm_inf3(x))
        .fold(0.0, f64::max);
    let root_tol = 1e-9 * (1.0 + scale);

    let mut scan = OracleScan::default();
    for i in 0..n {
        for j in 0..n {
            let here = grid[i * n + j];
            if here > threshold {
                continue;
            }
            let is_min = (i.saturating_sub(1)..=(i + 1).min(n - 1))
                .flat_map(|a| (j.saturating_sub(1)..=(j + 1).min(n - 1)).map(move |b| (a, b)))
                .all(|(a, b)| grid[a * n + b] >= here);
            if !is_min {
                continue;
            }
            let start = [i as f64 * h, j as f64 * h];
            let (x, res) = refine(c1, c2, start, refine_tol);
            let inside = |t: f64| (-1e-9..=1.0 + 1e-9).contains(&t);
            if res <= root_tol && inside(x[0]) && inside(x[1]) {
                let x = [x[0].clamp(0.0, 1.0), x[1].clamp(0.0, 1.0)];
                let seen = scan
                    .roots
                    .iter()
                    .any(|r| (r[0] - x[0]).abs().max((r[1] - x[1]).abs()) <= DEDUP_RADIUS);
                if !seen {
                    scan.roots.push(x);
                }
            } else {
                scan.near_misses.push((start, here));
            }
        }
    }
    scan.roots
        .sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    scan
}

/// Parameter pairs `(u, v)` where the curves meet.
pub fn brute_force_intersections(
    c1: &BezierCurve,
    c2: &BezierCurve,
    grid_n: usize,
    refine_tol: f64,
) -> Vec<Point2> {
    brute_force_scan(c1, c2, grid_n, refine_tol).roots
}
