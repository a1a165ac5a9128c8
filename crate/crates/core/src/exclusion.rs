//! Convex-hull exclusion test.
//!
//! A Bernstein polynomial takes its values inside the convex hull of its
//! coefficients, so if that hull misses the origin the square holds no zero.
//! The hull distance is found with Wolfe's minimum-norm-point iteration. A
//! pass is only reported with a separating-plane certificate: a direction `w`
//! with `w·p / ‖w‖ > HULL_TOLERANCE` for every control point `p`. Anything
//! short of that (origin within tolerance, stalled iteration, degenerate
//! corral) is a fail.

use crate::geometry::ControlNet;
use alloc::vec::Vec;

/// Origin closer than this to the hull is treated as inside.
pub const HULL_TOLERANCE: f64 = 1e-12;

const MAX_MAJOR_ITERATIONS: usize = 256;

type V3 = [f64; 3];

fn dot(a: V3, b: V3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn sub(a: V3, b: V3) -> V3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn combine(points: &[V3], corral: &[usize], weights: &[f64]) -> V3 {
    let mut x = [0.0; 3];
    for (&idx, &w) in corral.iter().zip(weights) {
        for k in 0..3 {
            x[k] += w * points[idx][k];
        }
    }
    x
}

/// Lower bound on the origin-to-hull distance certified by direction `w`.
fn separation(points: &[V3], w: V3) -> f64 {
    let norm = libm::sqrt(dot(w, w));
    if norm == 0.0 {
        return f64::NEG_INFINITY;
    }
    points
        .iter()
        .map(|&p| dot(w, p))
        .fold(f64::INFINITY, f64::min)
        / norm
}

/// Weights of the minimum-norm point of the affine hull of the corral, or
/// `None` when the corral is affinely dependent to working precision.
fn affine_minimizer(points: &[V3], corral: &[usize]) -> Option<Vec<f64>> {
    let base = points[corral[0]];
    let dirs: Vec<V3> = corral[1..].iter().map(|&i| sub(points[i], base)).collect();
    let k = dirs.len();
    if k == 0 {
        return Some(alloc::vec![1.0]);
    }
    // Normal equations G β = -D·base, k ≤ 3.
    let mut g = [[0.0; 4]; 3];
    let mut scale: f64 = 0.0;
    for r in 0..k {
        for c in 0..k {
            g[r][c] = dot(dirs[r], dirs[c]);
        }
        g[r][k] = -dot(dirs[r], base);
        scale = scale.max(g[r][r]);
    }
    for col in 0..k {
        let pivot = (col..k)
            .max_by(|&a, &b| g[a][col].abs().total_cmp(&g[b][col].abs()))
            .unwrap();
        if g[pivot][col].abs() <= 1e-13 * scale {
            return None;
        }
        g.swap(col, pivot);
        for r in 0..k {
            if r != col {
                let factor = g[r][col] / g[col][col];
                for c in col..=k {
                    g[r][c] -= factor * g[col][c];
                }
            }
        }
    }
    let beta: Vec<f64> = (0..k).map(|r| g[r][k] / g[r][r]).collect();
    let mut weights = Vec::with_capacity(k + 1);
    weights.push(1.0 - beta.iter().sum::<f64>());
    weights.extend(beta);
    Some(weights)
}

/// Cheap certificate: some coordinate has a constant strict sign over all
/// control points.
fn axis_separates(points: &[V3]) -> bool {
    (0..3).any(|k| {
        let lo = points.iter().map(|p| p[k]).fold(f64::INFINITY, f64::min);
        let hi = points
            .iter()
            .map(|p| p[k])
            .fold(f64::NEG_INFINITY, f64::max);
        lo > HULL_TOLERANCE || hi < -HULL_TOLERANCE
    })
}

/// Returns `true` when the convex hull of `points` provably misses the origin
/// by more than [`HULL_TOLERANCE`].
pub fn hull_excludes_origin(points: &[V3]) -> bool {
    if points.is_empty() {
        return true;
    }
    if axis_separates(points) {
        return true;
    }
    let max_sq = points.iter().map(|&p| dot(p, p)).fold(0.0, f64::max);

    let start = (0..points.len())
        .min_by(|&a, &b| dot(points[a], points[a]).total_cmp(&dot(points[b], points[b])))
        .unwrap();
    let mut corral: Vec<usize> = alloc::vec![start];
    let mut weights: Vec<f64> = alloc::vec![1.0];
    let mut x = points[start];

    for _ in 0..MAX_MAJOR_ITERATIONS {
        let x_sq = dot(x, x);
        if libm::sqrt(x_sq) <= HULL_TOLERANCE {
            return false;
        }
        if separation(points, x) > HULL_TOLERANCE {
            return true;
        }
        let (best, best_dot) = points
            .iter()
            .enumerate()
            .map(|(i, &p)| (i, dot(x, p)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        // x is (numerically) the minimum-norm point yet carries no
        // certificate: the origin sits on the hull boundary.
        if x_sq - best_dot <= 1e-15 * max_sq || corral.contains(&best) || corral.len() == 4 {
            return false;
        }
        corral.push(best);
        weights.push(0.0);

        loop {
            let Some(alpha) = affine_minimizer(points, &corral) else {
                return false;
            };
            if alpha.iter().all(|&a| a > 0.0) {
                weights = alpha;
                break;
            }
            let theta = weights
                .iter()
                .zip(&alpha)
                .filter(|(_, &a)| a <= 0.0)
                .map(|(&l, &a)| l / (l - a))
                .fold(1.0, f64::min);
            for (l, a) in weights.iter_mut().zip(&alpha) {
                *l += theta * (a - *l);
            }
            let mut keep = 0;
            for i in 0..corral.len() {
                if weights[i] > 1e-15 {
                    corral[keep] = corral[i];
                    weights[keep] = weights[i];
                    keep += 1;
                }
            }
            if keep == 0 {
                return false;
            }
            corral.truncate(keep);
            weights.truncate(keep);
            let total: f64 = weights.iter().sum();
            weights.iter_mut().for_each(|w| *w /= total);
        }
        x = combine(points, &corral, &weights);
    }
    false
}

/// Exclusion test on a net reparametrized over the square under test.
/// `true` means pass: the square provably holds no zero of the net.
/// Nets of dimension below 3 are padded with zero coordinates.
pub fn exclusion_test(net: &ControlNet) -> bool {
    let d = net.dim().min(3);
    let points: Vec<V3> = net
        .points()
        .map(|p| {
            let mut q = [0.0; 3];
            q[..d].copy_from_slice(&p[..d]);
            q
        })
        .collect();
    hull_excludes_origin(&points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ControlNet;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn plane_separated_cloud_passes() {
        let net = ControlNet::from_fn(2, 3, 3, |i, j, k| {
            if k == 2 {
                0.1 + 0.2 * i as f64
            } else {
                (i as f64 - j as f64) * 3.0
            }
        })
        .unwrap();
        assert!(exclusion_test(&net));
    }

    #[test]
    fn origin_as_convex_combination_fails() {
        let pts = [
            [-1.0, 0.0, 0.0],
            [1.0, 0.0, 0.0],
            [0.0, -1.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.5, 0.5, 0.0],
        ];
        assert!(!hull_excludes_origin(&pts));
    }

    #[test]
    fn oblique_separation_needs_iteration() {
        // No coordinate axis separates, but the plane x + y + z = 1 does.
        let pts = [
            [2.0, -0.5, -0.5],
            [-0.5, 2.0, -0.5],
            [-0.5, -0.5, 2.0],
            [0.5, 0.5, 0.5],
        ];
        assert!(hull_excludes_origin(&pts));
        // Shift towards the origin so the triangle passes through it.
        let shifted: Vec<V3> = pts
            .iter()
            .map(|p| [p[0] - 0.34, p[1] - 0.34, p[2] - 0.34])
            .collect();
        assert!(!hull_excludes_origin(&shifted));
    }

    #[test]
    fn boundary_contact_fails() {
        // Origin is a vertex of the hull.
        assert!(!hull_excludes_origin(&[
            [0.0, 0.0, 0.0],
            [1.0, 1.0, 1.0],
            [1.0, -1.0, 2.0]
        ]));
        // Origin on an edge.
        assert!(!hull_excludes_origin(&[
            [-1.0, 1.0, 0.0],
            [1.0, -1.0, 0.0],
            [0.0, 0.0, 5.0]
        ]));
    }

    #[test]
    fn random_nets_pass_only_when_sampled_values_avoid_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let mut passes = 0;
        for _ in 0..200 {
            let (m, n) = (rng.gen_range(0..5), rng.gen_range(0..5));
            let offset = [
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            ];
            let net = ControlNet::from_fn(m, n, 3, |_, _, k| offset[k] + rng.gen_range(-0.7..0.7))
                .unwrap();
            if exclusion_test(&net) {
                passes += 1;
                for a in 0..50 {
                    for b in 0..50 {
                        let f = net.eval(a as f64 / 49.0, b as f64 / 49.0);
                        assert!(f.iter().fold(0.0f64, |acc, c| acc.max(c.abs())) > 0.0);
                    }
                }
            }
        }
        assert!(passes > 20);
    }

    proptest! {
        #[test]
        fn scale_invariant(
            pts in proptest::collection::vec(proptest::array::uniform3(-1.0f64..1.0), 1..20),
            scale in 1e-3f64..1e3,
        ) {
            let scaled: Vec<V3> = pts.iter().map(|p| [p[0] * scale, p[1] * scale, p[2] * scale]).collect();
            prop_assert_eq!(hull_excludes_origin(&pts), hull_excludes_origin(&scaled));
        }

        #[test]
        fn far_translation_forces_pass(
            pts in proptest::collection::vec(proptest::array::uniform3(-1.0f64..1.0), 1..20),
            dir in proptest::array::uniform3(-1.0f64..1.0),
        ) {
            let norm = libm::sqrt(dot(dir, dir));
            prop_assume!(norm > 1e-3);
            // every point has norm ≤ √3, so shifting by more than 2√3 clears the origin
            let t = 4.0 / norm;
            let moved: Vec<V3> = pts.iter().map(|p| [p[0] + t * dir[0], p[1] + t * dir[1], p[2] + t * dir[2]]).collect();
            prop_assert!(hull_excludes_origin(&moved));
        }

        #[test]
        fn pass_agrees_with_brute_force_separation(
            pts in proptest::collection::vec(proptest::array::uniform3(-1.0f64..1.0), 1..12),
            shift in proptest::array::uniform3(-1.5f64..1.5),
        ) {
            let moved: Vec<V3> = pts.iter().map(|p| [p[0] + shift[0], p[1] + shift[1], p[2] + shift[2]]).collect();
            // A sweep of candidate normals: if one of them separates with a
            // margin, the hull certainly excludes the origin.
            let mut found = false;
            for a in 0..24 {
                for b in 0..12 {
                    let (th, ph) = (a as f64 * core::f64::consts::PI / 12.0, b as f64 * core::f64::consts::PI / 11.0);
                    let w = [libm::sin(ph) * libm::cos(th), libm::sin(ph) * libm::sin(th), libm::cos(ph)];
                    if separation(&moved, w) > 1e-6 {
                        found = true;
                    }
                }
            }
            if found {
                prop_assert!(hull_excludes_origin(&moved));
            }
            if hull_excludes_origin(&moved) {
                // the certificate must hold for every point
                prop_assert!(!moved.iter().any(|p| dot(*p, *p) == 0.0));
            }
        }
    }
}
