//! Tiny 2×2 linear algebra used by the Kantorovich test and Newton's method.

pub(crate) type Mat2 = [[f64; 2]; 2];

pub(crate) fn det(a: &Mat2) -> f64 {
    a[0][0] * a[1][1] - a[0][1] * a[1][0]
}

/// Max row sum.
pub(crate) fn norm_inf(a: &Mat2) -> f64 {
    (a[0][0].abs() + a[0][1].abs()).max(a[1][0].abs() + a[1][1].abs())
}

pub(crate) fn vec_norm_inf(x: [f64; 2]) -> f64 {
    x[0].abs().max(x[1].abs())
}

/// `|det A| <= 1e-14 * max(1, ‖A‖∞²)` counts as singular.
pub(crate) fn is_singular(a: &Mat2) -> bool {
    let scale = norm_inf(a);
    det(a).abs() <= 1e-14 * (scale * scale).max(1.0)
}

pub(crate) fn inverse(a: &Mat2) -> Option<Mat2> {
    if is_singular(a) {
        return None;
    }
    let d = det(a);
    Some([[a[1][1] / d, -a[0][1] / d], [-a[1][0] / d, a[0][0] / d]])
}

pub(crate) fn mul_vec(a: &Mat2, x: [f64; 2]) -> [f64; 2] {
    [
        a[0][0] * x[0] + a[0][1] * x[1],
        a[1][0] * x[0] + a[1][1] * x[1],
    ]
}

#[cfg(test)]
pub(crate) fn mul(a: &Mat2, b: &Mat2) -> Mat2 {
    [
        [
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
        ],
        [
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        ],
    ]
}

pub(crate) fn from_rows(rows: &[[f64; 2]]) -> Mat2 {
    [rows[0], rows[1]]
}
