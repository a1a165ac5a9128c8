//! Undamped Newton iteration on a two-component net.

use crate::geometry::{ControlNet, Differentiated, Point2};
use crate::mat2;

pub const DEFAULT_TOLERANCE: f64 = 1e-7;
pub const DEFAULT_MAX_ITERATIONS: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NewtonFailure {
    SingularJacobian,
    MaxIterations,
    NonFinite,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NewtonResult {
    pub converged: bool,
    /// Final iterate, present only on convergence.
    pub x_star: Option<Point2>,
    pub iterations: usize,
    pub final_step_norm: f64,
    pub final_residual_norm: f64,
    pub failure: Option<NewtonFailure>,
}

/// Iterates `x ← x - J(x)⁻¹ f(x)` until `‖Δx‖∞ ≤ tol`.
pub fn newton_solve(pair_net: &ControlNet, x0: Point2, tol: f64, max_iter: usize) -> NewtonResult {
    newton_solve_with(&Differentiated::new(pair_net), x0, tol, max_iter, |_, _| {})
}

/// Same as [`newton_solve`] on a pre-differentiated system; `visit` sees
/// every iterate, starting with `(0, x0)`.
pub fn newton_solve_with(
    sys: &Differentiated,
    x0: Point2,
    tol: f64,
    max_iter: usize,
    mut visit: impl FnMut(usize, Point2),
) -> NewtonResult {
    debug_assert_eq!(sys.net.dim(), 2);
    let mut x = x0;
    let mut value = sys.value(x);
    let mut step_norm = f64::INFINITY;
    visit(0, x);
    let result = |converged, x: Point2, k, step, value: &[f64], failure| NewtonResult {
        converged,
        x_star: converged.then_some(x),
        iterations: k,
        final_step_norm: step,
        final_residual_norm: mat2::vec_norm_inf([value[0], value[1]]),
        failure,
    };

    for k in 1..=max_iter {
        let jac = mat2::from_rows(&sys.jacobian(x));
        let Some(inv) = mat2::inverse(&jac) else {
            return result(
                false,
                x,
                k - 1,
                step_norm,
                &value,
                Some(NewtonFailure::SingularJacobian),
            );
        };
        let step = mat2::mul_vec(&inv, [value[0], value[1]]);
        x = [x[0] - step[0], x[1] - step[1]];
        step_norm = mat2::vec_norm_inf(step);
        if !(x[0].is_finite() && x[1].is_finite()) {
            return result(
                false,
                x,
                k,
                step_norm,
                &value,
                Some(NewtonFailure::NonFinite),
            );
        }
        value = sys.value(x);
        visit(k, x);
        if step_norm <= tol {
            return result(true, x, k, step_norm, &value, None);
        }
    }
    result(
        false,
        x,
        max_iter,
        step_norm,
        &value,
        Some(NewtonFailure::MaxIterations),
    )
}
