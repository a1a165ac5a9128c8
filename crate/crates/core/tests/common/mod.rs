#![allow(dead_code)]

use cci_core::geometry::{BezierCurve, Point2, Point3};
use cci_core::oracle::{brute_force_scan, DEFAULT_GRID};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn curve(points: &[Point3]) -> BezierCurve {
    BezierCurve::new(points.to_vec()).unwrap()
}

fn random_rotation(rng: &mut ChaCha8Rng) -> [[f64; 3]; 3] {
    // Gram-Schmidt on random vectors
    let mut basis: Vec<[f64; 3]> = Vec::new();
    while basis.len() < 3 {
        let mut v = [
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        ];
        for b in &basis {
            let d = v[0] * b[0] + v[1] * b[1] + v[2] * b[2];
            for k in 0..3 {
                v[k] -= d * b[k];
            }
        }
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 0.1 {
            basis.push([v[0] / n, v[1] / n, v[2] / n]);
        }
    }
    [basis[0], basis[1], basis[2]]
}

/// Two random curves in a random plane of R³; these typically cross
/// several times.
pub fn planar_problem(rng: &mut ChaCha8Rng, m: usize, n: usize) -> (BezierCurve, BezierCurve) {
    let rot = random_rotation(rng);
    let shift = [
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
    ];
    let mut lift = |deg: usize| {
        let pts: Vec<Point3> = (0..=deg)
            .map(|_| {
                let (x, y) = (rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0));
                [0, 1, 2].map(|k| shift[k] + x * rot[0][k] + y * rot[1][k])
            })
            .collect();
        curve(&pts)
    };
    (lift(m), lift(n))
}

/// Two random space curves translated so that they meet once at interior
/// parameters.
pub fn forced_problem(rng: &mut ChaCha8Rng, m: usize, n: usize) -> (BezierCurve, BezierCurve) {
    let mut random = |deg: usize| -> Vec<Point3> {
        (0..=deg)
            .map(|_| {
                [
                    rng.gen_range(0.0..1.0),
                    rng.gen_range(0.0..1.0),
                    rng.gen_range(0.0..1.0),
                ]
            })
            .collect()
    };
    let (a, b) = (random(m), random(n));
    let (c1, c2) = (curve(&a), curve(&b));
    let (u, v) = (rng.gen_range(0.1..0.9), rng.gen_range(0.1..0.9));
    let (p, q) = (c1.eval(u), c2.eval(v));
    let moved: Vec<Point3> = b
        .iter()
        .map(|x| [0, 1, 2].map(|k| x[k] + p[k] - q[k]))
        .collect();
    (c1, curve(&moved))
}

/// `σ_min / σ_max` of `[c1'(u), -c2'(v)]`.
pub fn conditioning(c1: &BezierCurve, c2: &BezierCurve, x: Point2) -> f64 {
    let (a, b) = (c1.derivative().eval(x[0]), c2.derivative().eval(x[1]));
    let aa = a[0] * a[0] + a[1] * a[1] + a[2] * a[2];
    let bb = b[0] * b[0] + b[1] * b[1] + b[2] * b[2];
    let ab = -(a[0] * b[0] + a[1] * b[1] + a[2] * b[2]);
    let tr = aa + bb;
    let det = aa * bb - ab * ab;
    let disc = (tr * tr / 4.0 - det).max(0.0).sqrt();
    let (hi, lo) = (tr / 2.0 + disc, (tr / 2.0 - disc).max(0.0));
    if hi == 0.0 {
        0.0
    } else {
        (lo / hi).sqrt()
    }
}

/// A problem whose oracle roots are all well inside the domain, well
/// separated and well conditioned, with no near misses.
pub fn is_transversal(
    c1: &BezierCurve,
    c2: &BezierCurve,
    roots: &[Point2],
    near_misses: usize,
) -> bool {
    if near_misses > 0 {
        return false;
    }
    let interior = |t: f64| (0.01..=0.99).contains(&t);
    roots
        .iter()
        .all(|&r| interior(r[0]) && interior(r[1]) && conditioning(c1, c2, r) >= 0.05)
        && roots.iter().enumerate().all(|(i, a)| {
            roots[i + 1..]
                .iter()
                .all(|b| (a[0] - b[0]).abs().max((a[1] - b[1]).abs()) >= 1e-3)
        })
}

pub struct Problem {
    pub c1: BezierCurve,
    pub c2: BezierCurve,
    pub roots: Vec<Point2>,
}

/// Deterministic stream of transversal problems with degrees up to
/// `(max_deg, max_deg)`, mixing planar and forced-crossing constructions.
pub fn transversal_problems(rng: &mut ChaCha8Rng, count: usize, max_deg: usize) -> Vec<Problem> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let (m, n) = (rng.gen_range(1..=max_deg), rng.gen_range(1..=max_deg));
        let (c1, c2) = if rng.gen_bool(0.5) {
            planar_problem(rng, m, n)
        } else {
            forced_problem(rng, m, n)
        };
        let scan = brute_force_scan(&c1, &c2, DEFAULT_GRID, 1e-14);
        if is_transversal(&c1, &c2, &scan.roots, scan.near_misses.len()) {
            out.push(Problem {
                c1,
                c2,
                roots: scan.roots,
            });
        }
    }
    out
}

/// Both lists match one-to-one within `tol` in the infinity norm.
pub fn same_point_sets(a: &[Point2], b: &[Point2], tol: f64) -> bool {
    a.len() == b.len()
        && a.iter().all(|p| {
            b.iter()
                .any(|q| (p[0] - q[0]).abs().max((p[1] - q[1]).abs()) <= tol)
        })
        && b.iter().all(|p| {
            a.iter()
                .any(|q| (p[0] - q[0]).abs().max((p[1] - q[1]).abs()) <= tol)
        })
}
