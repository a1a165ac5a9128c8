//! Kantorovich convergence test on the two-coordinate sub-systems `f_ij`.
//!
//! All norms are infinity norms, so balls are axis-aligned squares. For a
//! square `B̄(x0, r)` and a pair with multiplier `α`, the test domain is
//! `D = B̄(x0, α r)`. With `A = f'_ij(x0)^{-1}`:
//!
//! * `η = ‖A f_ij(x0)‖∞`
//! * `ω̂ = 4 · max |c|` over the Bernstein coefficients `c` of the second
//!   partials of `A f_ij` re-expressed over `D`
//! * `h = η ω̂`, and the pair passes when `h ≤ 1/4` and `ρ₋ ≤ α r`.
//!
//! `ω̂` bounds the Lipschitz constant of `A f'_ij` on `D`: each entry of the
//! 2×2 difference `A (f'(x) - f'(y))` is a sum of two second partials times
//! components of `x - y`, and a row sum has two such entries.

use crate::engine::Square;
use crate::geometry::{ControlNet, Differentiated, Pair, Point2, Rect};
use crate::mat2::{self, Mat2};
use alloc::vec::Vec;

/// Largest `h` for which a pass is granted ("fast starting point").
pub const H_PASS: f64 = 0.25;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairMetrics {
    pub eta: f64,
    pub omega_hat: f64,
    pub h: f64,
    /// `(ρ₋, ρ₊)`, present whenever `h ≤ 1/2`.
    pub radii: Option<(f64, f64)>,
}

impl PairMetrics {
    pub fn rho_minus(&self) -> Option<f64> {
        self.radii.map(|r| r.0)
    }

    pub fn rho_plus(&self) -> Option<f64> {
        self.radii.map(|r| r.1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairStatus {
    Pass,
    FailH,
    FailContainment,
    SingularJacobian,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PairOutcome {
    Pass(PairMetrics),
    /// `h > 1/4`.
    FailH(PairMetrics),
    /// `h ≤ 1/4` but `B̄(x0, ρ₋)` sticks out of the test domain.
    FailContainment(PairMetrics),
    SingularJacobian,
}

impl PairOutcome {
    pub fn status(&self) -> PairStatus {
        match self {
            PairOutcome::Pass(_) => PairStatus::Pass,
            PairOutcome::FailH(_) => PairStatus::FailH,
            PairOutcome::FailContainment(_) => PairStatus::FailContainment,
            PairOutcome::SingularJacobian => PairStatus::SingularJacobian,
        }
    }

    pub fn metrics(&self) -> Option<&PairMetrics> {
        match self {
            PairOutcome::Pass(m) | PairOutcome::FailH(m) | PairOutcome::FailContainment(m) => {
                Some(m)
            }
            PairOutcome::SingularJacobian => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KantorovichOutcome {
    pub center: Point2,
    pub half_width: f64,
    pub alphas: [f64; 3],
    /// Indexed by [`Pair::index`].
    pub pairs: [PairOutcome; 3],
}

impl KantorovichOutcome {
    /// First passing pair in the order `{1,2}`, `{1,3}`, `{2,3}`.
    pub fn passing_pair(&self) -> Option<Pair> {
        Pair::ALL
            .into_iter()
            .find(|p| self.pairs[p.index()].status() == PairStatus::Pass)
    }

    pub fn passed(&self) -> bool {
        self.passing_pair().is_some()
    }

    pub fn pair(&self, pair: Pair) -> &PairOutcome {
        &self.pairs[pair.index()]
    }

    /// Test domain `B̄(x0, α_ij r)` used for `pair`.
    pub fn test_domain(&self, pair: Pair) -> Rect {
        test_domain(self.center, self.half_width, self.alphas[pair.index()])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SingularJacobian;

impl core::fmt::Display for SingularJacobian {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str("Jacobian is singular at the starting point")
    }
}

impl core::error::Error for SingularJacobian {}

fn test_domain(center: Point2, half_width: f64, alpha: f64) -> Rect {
    let r = alpha * half_width;
    Rect {
        lo_u: center[0] - r,
        hi_u: center[0] + r,
        lo_v: center[1] - r,
        hi_v: center[1] + r,
    }
}

/// `η = ‖J⁻¹ F‖∞`.
pub fn eta(jacobian: &[[f64; 2]; 2], value: [f64; 2]) -> Result<f64, SingularJacobian> {
    let inv = mat2::inverse(jacobian).ok_or(SingularJacobian)?;
    Ok(mat2::vec_norm_inf(mat2::mul_vec(&inv, value)))
}

/// `(ρ₋, ρ₊)` for `h = η ω̂ ≤ 1/2`; `(η, ∞)` when `ω̂ = 0`.
pub fn rho_radii(eta: f64, omega_hat: f64) -> (f64, f64) {
    let h = eta * omega_hat;
    debug_assert!(h <= 0.5 + 1e-15, "radii requested for h = {h}");
    let s = libm::sqrt((1.0 - 2.0 * h).max(0.0));
    // (1 - s) / ω rewritten to stay finite as ω → 0
    let rho_minus = 2.0 * eta / (1.0 + s);
    let rho_plus = if omega_hat == 0.0 {
        f64::INFINITY
    } else {
        (1.0 + s) / omega_hat
    };
    (rho_minus, rho_plus)
}

/// Upper bound on `‖x* - x^k‖∞` after `k` Newton steps,
/// `(η/h) (1 - √(1-2h))^(2^k) / 2^k`, written in a form that stays finite at
/// `h = 0`.
pub fn newton_error_bound(eta: f64, h: f64, k: u32) -> f64 {
    let s = libm::sqrt((1.0 - 2.0 * h).max(0.0));
    let q = 2.0 * h / (1.0 + s);
    let power = libm::pow(q, libm::exp2(k as f64) - 1.0);
    eta * (2.0 / (1.0 + s)) * power / libm::exp2(k as f64)
}

fn premultiplied_max(a: &Mat2, nets: [&ControlNet; 3]) -> f64 {
    nets.iter()
        .map(|n| n.premultiply2(a).max_abs_coeff())
        .fold(0.0, f64::max)
}

/// `ω̂` for a 2-component net at `x0` over the test domain `domain` (both in
/// the net's own coordinates).
pub fn lipschitz_bound(
    pair_net: &ControlNet,
    x0: Point2,
    domain: &Rect,
) -> Result<f64, SingularJacobian> {
    assert_eq!(
        pair_net.dim(),
        2,
        "lipschitz_bound expects a two-component net"
    );
    let sys = Differentiated::new(pair_net);
    let jac = mat2::from_rows(&sys.jacobian(x0));
    let inv = mat2::inverse(&jac).ok_or(SingularJacobian)?;
    let reparam = |n: &ControlNet| {
        n.reparametrize(domain)
            .expect("test domain is non-degenerate")
    };
    let (duu, duv, dvv) = (reparam(&sys.duu), reparam(&sys.duv), reparam(&sys.dvv));
    Ok(4.0 * premultiplied_max(&inv, [&duu, &duv, &dvv]))
}

/// Precomputed derivative nets of the full system, reused across squares.
#[derive(Debug, Clone)]
pub struct KantorovichContext {
    full: Differentiated,
    pairs: [Differentiated; 3],
}

impl KantorovichContext {
    pub fn new(net: &ControlNet) -> Self {
        assert_eq!(
            net.dim(),
            3,
            "the Kantorovich test runs on the 3D difference net"
        );
        let full = Differentiated::new(net);
        let pairs = Pair::ALL.map(|p| full.select(&p.components()));
        KantorovichContext { full, pairs }
    }

    pub fn pair_system(&self, pair: Pair) -> &Differentiated {
        &self.pairs[pair.index()]
    }

    pub fn net(&self) -> &ControlNet {
        &self.full.net
    }

    pub fn test(&self, center: Point2, half_width: f64, alphas: [f64; 3]) -> KantorovichOutcome {
        let value = self.full.value(center);
        let jac = self.full.jacobian(center);
        // second-derivative nets over each distinct test domain
        let mut cache: Vec<(f64, [ControlNet; 3])> = Vec::with_capacity(3);

        let pairs = Pair::ALL.map(|pair| {
            let [i, j] = pair.components();
            let jp = [jac[i], jac[j]];
            let Some(inv) = mat2::inverse(&jp) else {
                return PairOutcome::SingularJacobian;
            };
            let eta = mat2::vec_norm_inf(mat2::mul_vec(&inv, [value[i], value[j]]));
            let alpha = alphas[pair.index()];
            let idx = match cache.iter().position(|(a, _)| *a == alpha) {
                Some(idx) => idx,
                None => {
                    let domain = test_domain(center, half_width, alpha);
                    let reparam = |n: &ControlNet| {
                        n.reparametrize(&domain)
                            .expect("test domain is non-degenerate")
                    };
                    cache.push((
                        alpha,
                        [
                            reparam(&self.full.duu),
                            reparam(&self.full.duv),
                            reparam(&self.full.dvv),
                        ],
                    ));
                    cache.len() - 1
                }
            };
            let [duu, duv, dvv] = &cache[idx].1;
            let comps = pair.components();
            let selected = [duu.select(&comps), duv.select(&comps), dvv.select(&comps)];
            let omega_hat =
                4.0 * premultiplied_max(&inv, [&selected[0], &selected[1], &selected[2]]);
            classify(eta, omega_hat, alpha * half_width)
        });
        KantorovichOutcome {
            center,
            half_width,
            alphas,
            pairs,
        }
    }
}

fn classify(eta: f64, omega_hat: f64, domain_radius: f64) -> PairOutcome {
    let h = eta * omega_hat;
    let radii = (h <= 0.5).then(|| rho_radii(eta, omega_hat));
    let metrics = PairMetrics {
        eta,
        omega_hat,
        h,
        radii,
    };
    if !(h <= H_PASS) {
        PairOutcome::FailH(metrics)
    } else if metrics.rho_minus().unwrap() <= domain_radius {
        PairOutcome::Pass(metrics)
    } else {
        PairOutcome::FailContainment(metrics)
    }
}

/// Runs the test on a 3D net for `square`, using the square's multipliers.
pub fn kantorovich_test(net: &ControlNet, square: &Square) -> KantorovichOutcome {
    KantorovichContext::new(net).test(square.center, square.half_width, square.alphas)
}

/// Region around a confirmed zero in which no other zero exists:
/// `B̄(x0, ρ₊)` (which contains the `ρ₋` ball), optionally clipped to the
/// test domain the radii were derived on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExploredRegion {
    pub center: Point2,
    pub rho_minus: f64,
    pub rho_plus: f64,
    pub pair: Pair,
    pub clip: Option<Rect>,
    pub zero: Point2,
}

impl ExploredRegion {
    /// Closed membership.
    pub fn contains(&self, p: Point2) -> bool {
        let d = mat2::vec_norm_inf([p[0] - self.center[0], p[1] - self.center[1]]);
        d <= self.rho_plus && self.clip.is_none_or(|c| c.contains(p))
    }

    /// The region is convex, so containing the corners is enough.
    pub fn contains_rect(&self, rect: &Rect) -> bool {
        rect.corners().iter().all(|&c| self.contains(c))
    }
}

pub fn explored_region(
    x0: Point2,
    rho_minus: f64,
    rho_plus: f64,
    pair: Pair,
    domain: Rect,
    x_star: Point2,
    clip: bool,
) -> ExploredRegion {
    ExploredRegion {
        center: x0,
        rho_minus,
        rho_plus,
        pair,
        clip: clip.then_some(domain),
        zero: x_star,
    }
}
