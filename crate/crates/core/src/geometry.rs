//! Bernstein/Bézier arithmetic.
//!
//! Everything here is evaluated with de Casteljau recursion. Control nets are
//! stored as a dense row-major grid: entry `(i, j)` is the coefficient of
//! `Z_{i,m}(u) Z_{j,n}(v)` and occupies `dim` consecutive reals.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

pub type Point2 = [f64; 2];
pub type Point3 = [f64; 3];

#[derive(Debug, Clone, PartialEq)]
pub enum GeometryError {
    EmptyCurve,
    NonFinite,
    ShapeMismatch { expected: usize, found: usize },
    DegenerateRect,
    WrongDimension { expected: usize, found: usize },
    InvalidPair(usize, usize),
}

impl fmt::Display for GeometryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeometryError::EmptyCurve => f.write_str("a curve needs at least one control point"),
            GeometryError::NonFinite => f.write_str("coordinates must be finite"),
            GeometryError::ShapeMismatch { expected, found } => {
                write!(f, "expected {expected} coefficients, found {found}")
            }
            GeometryError::DegenerateRect => f.write_str("rectangle has zero or negative width"),
            GeometryError::WrongDimension { expected, found } => {
                write!(f, "expected a net of dimension {expected}, found {found}")
            }
            GeometryError::InvalidPair(i, j) => write!(f, "invalid coordinate pair {{{i},{j}}}"),
        }
    }
}

impl core::error::Error for GeometryError {}

/// `Z_{i,m}(t) = C(m, i) (1 - t)^{m - i} t^i`, zero when `i > m`.
pub fn bernstein_basis(i: usize, m: usize, t: f64) -> f64 {
    if i > m {
        return 0.0;
    }
    let mut binom = 1.0;
    for k in 0..i.min(m - i) {
        binom = binom * (m - k) as f64 / (k + 1) as f64;
    }
    binom * powi(1.0 - t, m - i) * powi(t, i)
}

fn powi(x: f64, n: usize) -> f64 {
    let mut acc = 1.0;
    for _ in 0..n {
        acc *= x;
    }
    acc
}

/// Runs de Casteljau on `count` points of dimension `dim` stored contiguously
/// in `buf`. The value at `t` ends up in `buf[..dim]`.
fn casteljau_in_place(buf: &mut [f64], count: usize, dim: usize, t: f64) {
    let s = 1.0 - t;
    for level in 1..count {
        for p in 0..count - level {
            for k in 0..dim {
                buf[p * dim + k] = s * buf[p * dim + k] + t * buf[(p + 1) * dim + k];
            }
        }
    }
}

/// Splits a 1D Bézier (points of dimension `dim`) at `t`, writing the control
/// points of the `[0, t]` piece into `left` and of the `[t, 1]` piece into
/// `right`. Works for any real `t` (extrapolation outside `[0, 1]`).
fn split(points: &[f64], dim: usize, t: f64, left: &mut [f64], right: &mut [f64]) {
    let count = points.len() / dim;
    let mut work = points.to_vec();
    let s = 1.0 - t;
    left[..dim].copy_from_slice(&work[..dim]);
    right[(count - 1) * dim..].copy_from_slice(&work[(count - 1) * dim..]);
    for level in 1..count {
        for p in 0..count - level {
            for k in 0..dim {
                work[p * dim + k] = s * work[p * dim + k] + t * work[(p + 1) * dim + k];
            }
        }
        left[level * dim..(level + 1) * dim].copy_from_slice(&work[..dim]);
        let last = count - level - 1;
        right[last * dim..(last + 1) * dim].copy_from_slice(&work[last * dim..(last + 1) * dim]);
    }
}

/// Control points of the same polynomial restricted to `[a, b]`, obtained by
/// two de Casteljau splits. The first split is taken at whichever endpoint
/// keeps the second split parameter well conditioned.
fn restrict(points: &[f64], dim: usize, a: f64, b: f64) -> Vec<f64> {
    let n = points.len();
    let mut left = vec![0.0; n];
    let mut right = vec![0.0; n];
    if b.abs() >= (1.0 - a).abs() {
        split(points, dim, b, &mut left, &mut right);
        let first = left.clone();
        split(&first, dim, a / b, &mut left, &mut right);
        right
    } else {
        split(points, dim, a, &mut left, &mut right);
        let first = right.clone();
        split(&first, dim, (b - a) / (1.0 - a), &mut left, &mut right);
        left
    }
}

/// Axis-aligned parameter rectangle `[lo_u, hi_u] × [lo_v, hi_v]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub lo_u: f64,
    pub hi_u: f64,
    pub lo_v: f64,
    pub hi_v: f64,
}

impl Rect {
    pub fn new(lo_u: f64, hi_u: f64, lo_v: f64, hi_v: f64) -> Result<Self, GeometryError> {
        if !(lo_u.is_finite() && hi_u.is_finite() && lo_v.is_finite() && hi_v.is_finite()) {
            return Err(GeometryError::NonFinite);
        }
        if !(lo_u < hi_u && lo_v < hi_v) {
            return Err(GeometryError::DegenerateRect);
        }
        Ok(Rect {
            lo_u,
            hi_u,
            lo_v,
            hi_v,
        })
    }

    pub const fn unit() -> Self {
        Rect {
            lo_u: 0.0,
            hi_u: 1.0,
            lo_v: 0.0,
            hi_v: 1.0,
        }
    }

    /// The infinity-norm ball `B̄(center, radius)`.
    pub fn ball(center: Point2, radius: f64) -> Result<Self, GeometryError> {
        Rect::new(
            center[0] - radius,
            center[0] + radius,
            center[1] - radius,
            center[1] + radius,
        )
    }

    pub fn width_u(&self) -> f64 {
        self.hi_u - self.lo_u
    }

    pub fn width_v(&self) -> f64 {
        self.hi_v - self.lo_v
    }

    pub fn center(&self) -> Point2 {
        [0.5 * (self.lo_u + self.hi_u), 0.5 * (self.lo_v + self.hi_v)]
    }

    /// Image of local coordinates `(s, t) ∈ [0, 1]²` in this rectangle.
    pub fn map(&self, s: f64, t: f64) -> Point2 {
        [
            self.lo_u + s * self.width_u(),
            self.lo_v + t * self.width_v(),
        ]
    }

    /// Image of `inner` (given in this rectangle's local coordinates).
    pub fn compose(&self, inner: &Rect) -> Rect {
        let lo = self.map(inner.lo_u, inner.lo_v);
        let hi = self.map(inner.hi_u, inner.hi_v);
        Rect {
            lo_u: lo[0],
            hi_u: hi[0],
            lo_v: lo[1],
            hi_v: hi[1],
        }
    }

    pub fn contains(&self, p: Point2) -> bool {
        self.lo_u <= p[0] && p[0] <= self.hi_u && self.lo_v <= p[1] && p[1] <= self.hi_v
    }

    pub fn corners(&self) -> [Point2; 4] {
        [
            [self.lo_u, self.lo_v],
            [self.hi_u, self.lo_v],
            [self.lo_u, self.hi_v],
            [self.hi_u, self.hi_v],
        ]
    }
}

/// A 3D Bézier curve of degree `control_points.len() - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct BezierCurve {
    control_points: Vec<Point3>,
}

impl BezierCurve {
    pub fn new(control_points: Vec<Point3>) -> Result<Self, GeometryError> {
        if control_points.is_empty() {
            return Err(GeometryError::EmptyCurve);
        }
        if control_points.iter().flatten().any(|c| !c.is_finite()) {
            return Err(GeometryError::NonFinite);
        }
        Ok(BezierCurve { control_points })
    }

    /// Checks the point count against a declared degree.
    pub fn with_degree(degree: usize, control_points: Vec<Point3>) -> Result<Self, GeometryError> {
        if control_points.len() != degree + 1 {
            return Err(GeometryError::ShapeMismatch {
                expected: degree + 1,
                found: control_points.len(),
            });
        }
        Self::new(control_points)
    }

    pub fn degree(&self) -> usize {
        self.control_points.len() - 1
    }

    pub fn control_points(&self) -> &[Point3] {
        &self.control_points
    }

    pub fn eval(&self, t: f64) -> Point3 {
        let mut buf: Vec<f64> = self.control_points.iter().flatten().copied().collect();
        casteljau_in_place(&mut buf, self.control_points.len(), 3, t);
        [buf[0], buf[1], buf[2]]
    }

    /// Hodograph; the derivative of a degree-0 curve is the zero point.
    pub fn derivative(&self) -> BezierCurve {
        let m = self.degree();
        if m == 0 {
            return BezierCurve {
                control_points: vec![[0.0; 3]],
            };
        }
        let scale = m as f64;
        let control_points = self
            .control_points
            .windows(2)
            .map(|w| {
                [
                    scale * (w[1][0] - w[0][0]),
                    scale * (w[1][1] - w[0][1]),
                    scale * (w[1][2] - w[0][2]),
                ]
            })
            .collect();
        BezierCurve { control_points }
    }
}

/// Free-function form of [`BezierCurve::eval`].
pub fn eval_curve(curve: &BezierCurve, t: f64) -> Point3 {
    curve.eval(t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    U,
    V,
}

/// Tensor-product Bernstein polynomial with vector coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct ControlNet {
    degree_u: usize,
    degree_v: usize,
    dim: usize,
    coeffs: Vec<f64>,
    domain: Rect,
}

impl ControlNet {
    /// `coeffs` is row-major: `coeffs[((i * (degree_v + 1)) + j) * dim + k]`.
    pub fn new(
        degree_u: usize,
        degree_v: usize,
        dim: usize,
        coeffs: Vec<f64>,
        domain: Rect,
    ) -> Result<Self, GeometryError> {
        let expected = (degree_u + 1) * (degree_v + 1) * dim;
        if dim == 0 || coeffs.len() != expected {
            return Err(GeometryError::ShapeMismatch {
                expected,
                found: coeffs.len(),
            });
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(GeometryError::NonFinite);
        }
        Ok(ControlNet {
            degree_u,
            degree_v,
            dim,
            coeffs,
            domain,
        })
    }

    pub fn from_fn(
        degree_u: usize,
        degree_v: usize,
        dim: usize,
        mut f: impl FnMut(usize, usize, usize) -> f64,
    ) -> Result<Self, GeometryError> {
        let mut coeffs = Vec::with_capacity((degree_u + 1) * (degree_v + 1) * dim);
        for i in 0..=degree_u {
            for j in 0..=degree_v {
                for k in 0..dim {
                    coeffs.push(f(i, j, k));
                }
            }
        }
        Self::new(degree_u, degree_v, dim, coeffs, Rect::unit())
    }

    pub fn zero(degree_u: usize, degree_v: usize, dim: usize) -> Self {
        ControlNet {
            degree_u,
            degree_v,
            dim,
            coeffs: vec![0.0; (degree_u + 1) * (degree_v + 1) * dim],
            domain: Rect::unit(),
        }
    }

    pub fn degree_u(&self) -> usize {
        self.degree_u
    }

    pub fn degree_v(&self) -> usize {
        self.degree_v
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Rectangle of the original parameter space this net covers.
    pub fn domain(&self) -> Rect {
        self.domain
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize, j: usize) -> &[f64] {
        let start = (i * (self.degree_v + 1) + j) * self.dim;
        &self.coeffs[start..start + self.dim]
    }

    /// Iterator over the control points as `dim`-long slices.
    pub fn points(&self) -> core::slice::ChunksExact<'_, f64> {
        self.coeffs.chunks_exact(self.dim)
    }

    /// Largest absolute coefficient.
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |acc: f64, c| acc.max(c.abs()))
    }

    /// Writes `f(u, v)` into `out[..dim]`.
    pub fn eval_into(&self, u: f64, v: f64, out: &mut [f64]) {
        let (rows, cols, d) = (self.degree_u + 1, self.degree_v + 1, self.dim);
        let mut column = vec![0.0; rows * d];
        let mut row = vec![0.0; cols * d];
        for i in 0..rows {
            row.copy_from_slice(&self.coeffs[i * cols * d..(i + 1) * cols * d]);
            casteljau_in_place(&mut row, cols, d, v);
            column[i * d..(i + 1) * d].copy_from_slice(&row[..d]);
        }
        casteljau_in_place(&mut column, rows, d, u);
        out[..d].copy_from_slice(&column[..d]);
    }

    pub fn eval(&self, u: f64, v: f64) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        self.eval_into(u, v, &mut out);
        out
    }

    /// Partial derivative along `axis`. A degree-0 axis yields the zero net.
    pub fn derivative(&self, axis: Axis) -> ControlNet {
        let (m, n, d) = (self.degree_u, self.degree_v, self.dim);
        let mut out = match axis {
            Axis::U if m == 0 => ControlNet::zero(0, n, d),
            Axis::V if n == 0 => ControlNet::zero(m, 0, d),
            Axis::U => {
                let scale = m as f64;
                let mut coeffs = Vec::with_capacity(m * (n + 1) * d);
                for i in 0..m {
                    for j in 0..=n {
                        let (a, b) = (self.coeff(i, j), self.coeff(i + 1, j));
                        coeffs.extend(a.iter().zip(b).map(|(a, b)| scale * (b - a)));
                    }
                }
                ControlNet {
                    degree_u: m - 1,
                    degree_v: n,
                    dim: d,
                    coeffs,
                    domain: self.domain,
                }
            }
            Axis::V => {
                let scale = n as f64;
                let mut coeffs = Vec::with_capacity((m + 1) * n * d);
                for i in 0..=m {
                    for j in 0..n {
                        let (a, b) = (self.coeff(i, j), self.coeff(i, j + 1));
                        coeffs.extend(a.iter().zip(b).map(|(a, b)| scale * (b - a)));
                    }
                }
                ControlNet {
                    degree_u: m,
                    degree_v: n - 1,
                    dim: d,
                    coeffs,
                    domain: self.domain,
                }
            }
        };
        out.domain = self.domain;
        out
    }

    /// Same polynomial re-expressed over `target`, given in this net's own
    /// evaluation coordinates. `target` may extend outside `[0, 1]²`.
    pub fn reparametrize(&self, target: &Rect) -> Result<ControlNet, GeometryError> {
        let target = Rect::new(target.lo_u, target.hi_u, target.lo_v, target.hi_v)?;
        let (rows, cols, d) = (self.degree_u + 1, self.degree_v + 1, self.dim);
        let mut coeffs = self.coeffs.clone();

        if target.lo_u != 0.0 || target.hi_u != 1.0 {
            let mut line = vec![0.0; rows * d];
            for j in 0..cols {
                for i in 0..rows {
                    let src = (i * cols + j) * d;
                    line[i * d..(i + 1) * d].copy_from_slice(&coeffs[src..src + d]);
                }
                let restricted = restrict(&line, d, target.lo_u, target.hi_u);
                for i in 0..rows {
                    let dst = (i * cols + j) * d;
                    coeffs[dst..dst + d].copy_from_slice(&restricted[i * d..(i + 1) * d]);
                }
            }
        }
        if target.lo_v != 0.0 || target.hi_v != 1.0 {
            for i in 0..rows {
                let range = i * cols * d..(i + 1) * cols * d;
                let restricted = restrict(&coeffs[range.clone()], d, target.lo_v, target.hi_v);
                coeffs[range].copy_from_slice(&restricted);
            }
        }
        Ok(ControlNet {
            degree_u: self.degree_u,
            degree_v: self.degree_v,
            dim: d,
            coeffs,
            domain: self.domain.compose(&target),
        })
    }

    /// Keeps the listed coordinates, in order.
    pub fn select(&self, components: &[usize]) -> ControlNet {
        let coeffs = self
            .points()
            .flat_map(|p| components.iter().map(move |&k| p[k]))
            .collect();
        ControlNet {
            degree_u: self.degree_u,
            degree_v: self.degree_v,
            dim: components.len(),
            coeffs,
            domain: self.domain,
        }
    }

    /// Applies `A` (2×2, row-major) to every coefficient of a 2D net.
    pub(crate) fn premultiply2(&self, a: &[[f64; 2]; 2]) -> ControlNet {
        debug_assert_eq!(self.dim, 2);
        let coeffs = self
            .points()
            .flat_map(|p| {
                [
                    a[0][0] * p[0] + a[0][1] * p[1],
                    a[1][0] * p[0] + a[1][1] * p[1],
                ]
            })
            .collect();
        ControlNet {
            coeffs,
            ..self.clone()
        }
    }

    pub fn scaled(&self, factor: f64) -> ControlNet {
        ControlNet {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
            ..self.clone()
        }
    }
}

/// `b_ij = a_i - a'_j`; the net of `f(u, v) = c1(u) - c2(v)` over `[0, 1]²`.
pub fn difference_net(c1: &BezierCurve, c2: &BezierCurve) -> ControlNet {
    let (a, b) = (c1.control_points(), c2.control_points());
    let mut coeffs = Vec::with_capacity(a.len() * b.len() * 3);
    for p in a {
        for q in b {
            coeffs.extend_from_slice(&[p[0] - q[0], p[1] - q[1], p[2] - q[2]]);
        }
    }
    ControlNet {
        degree_u: c1.degree(),
        degree_v: c2.degree(),
        dim: 3,
        coeffs,
        domain: Rect::unit(),
    }
}

pub fn eval_net(net: &ControlNet, u: f64, v: f64) -> Vec<f64> {
    net.eval(u, v)
}

pub fn derivative_net(net: &ControlNet, axis: Axis) -> ControlNet {
    net.derivative(axis)
}

pub fn reparametrize(net: &ControlNet, target: &Rect) -> Result<ControlNet, GeometryError> {
    net.reparametrize(target)
}

/// `d × 2` Jacobian; row `k` is `(∂f_k/∂u, ∂f_k/∂v)`.
pub fn jacobian(net: &ControlNet, x: Point2) -> Vec<[f64; 2]> {
    Differentiated::new(net).jacobian(x)
}

/// The three coordinate pairs `{1,2}`, `{1,3}`, `{2,3}` in test order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pair {
    P12,
    P13,
    P23,
}

impl Pair {
    pub const ALL: [Pair; 3] = [Pair::P12, Pair::P13, Pair::P23];

    /// One-based indices as written in `{i,j}` notation.
    pub fn from_indices(i: usize, j: usize) -> Result<Pair, GeometryError> {
        match (i.min(j), i.max(j)) {
            (1, 2) => Ok(Pair::P12),
            (1, 3) => Ok(Pair::P13),
            (2, 3) => Ok(Pair::P23),
            _ => Err(GeometryError::InvalidPair(i, j)),
        }
    }

    /// Zero-based coordinate indices.
    pub fn components(self) -> [usize; 2] {
        match self {
            Pair::P12 => [0, 1],
            Pair::P13 => [0, 2],
            Pair::P23 => [1, 2],
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [i, j] = self.components();
        write!(f, "{{{},{}}}", i + 1, j + 1)
    }
}

/// `f_ij = (f_i, f_j)` from a 3D net.
pub fn extract_pair(net: &ControlNet, pair: Pair) -> Result<ControlNet, GeometryError> {
    if net.dim() != 3 {
        return Err(GeometryError::WrongDimension {
            expected: 3,
            found: net.dim(),
        });
    }
    Ok(net.select(&pair.components()))
}

/// A net together with its first and second partial derivative nets.
#[derive(Debug, Clone)]
pub struct Differentiated {
    pub net: ControlNet,
    pub du: ControlNet,
    pub dv: ControlNet,
    pub duu: ControlNet,
    pub duv: ControlNet,
    pub dvv: ControlNet,
}

impl Differentiated {
    pub fn new(net: &ControlNet) -> Self {
        let du = net.derivative(Axis::U);
        let dv = net.derivative(Axis::V);
        Differentiated {
            duu: du.derivative(Axis::U),
            duv: du.derivative(Axis::V),
            dvv: dv.derivative(Axis::V),
            net: net.clone(),
            du,
            dv,
        }
    }

    pub fn value(&self, x: Point2) -> Vec<f64> {
        self.net.eval(x[0], x[1])
    }

    pub fn jacobian(&self, x: Point2) -> Vec<[f64; 2]> {
        let fu = self.du.eval(x[0], x[1]);
        let fv = self.dv.eval(x[0], x[1]);
        fu.into_iter().zip(fv).map(|(a, b)| [a, b]).collect()
    }

    pub fn select(&self, components: &[usize]) -> Differentiated {
        Differentiated {
            net: self.net.select(components),
            du: self.du.select(components),
            dv: self.dv.select(components),
            duu: self.duu.select(components),
            duv: self.duv.select(components),
            dvv: self.dvv.select(components),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_net(rng: &mut ChaCha8Rng, m: usize, n: usize, d: usize) -> ControlNet {
        ControlNet::from_fn(m, n, d, |_, _, _| rng.gen_range(-1.0..1.0)).unwrap()
    }

    fn binom(n: usize, k: usize) -> f64 {
        (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
    }

    /// Power-basis coefficients of a Bernstein polynomial, by expanding
    /// `C(m,i) t^i (1-t)^(m-i)` binomially.
    fn to_monomial(bern: &[f64]) -> Vec<f64> {
        let m = bern.len() - 1;
        let mut mono = vec![0.0; m + 1];
        for (i, b) in bern.iter().enumerate() {
            for k in 0..=(m - i) {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                mono[i + k] += b * binom(m, i) * binom(m - i, k) * sign;
            }
        }
        mono
    }

    fn horner(mono: &[f64], t: f64) -> f64 {
        mono.iter().rev().fold(0.0, |acc, c| acc * t + c)
    }

    #[test]
    fn basis_values() {
        assert_eq!(bernstein_basis(0, 0, 0.7), 1.0);
        assert!((bernstein_basis(1, 2, 0.5) - 0.5).abs() < 1e-15);
        assert!((bernstein_basis(2, 3, 0.4) - 0.288).abs() < 1e-15);
        assert_eq!(bernstein_basis(3, 2, 0.4), 0.0);
    }

    #[test]
    fn partition_of_unity() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for m in 0..=20 {
            for _ in 0..100 {
                let t: f64 = rng.gen();
                let sum: f64 = (0..=m).map(|i| bernstein_basis(i, m, t)).sum();
                assert!((sum - 1.0).abs() <= 1e-12, "m={m} t={t} sum={sum}");
            }
        }
    }

    #[test]
    fn curve_eval_basics() {
        let seg = BezierCurve::new(vec![[0.0, 0.0, 0.0], [1.0, 1.0, 0.0]]).unwrap();
        assert_eq!(eval_curve(&seg, 0.5), [0.5, 0.5, 0.0]);
        let c = BezierCurve::new(vec![[1.0, 2.0, 3.0], [4.0, -1.0, 0.5], [2.0, 2.0, 2.0]]).unwrap();
        assert_eq!(c.eval(0.0), [1.0, 2.0, 3.0]);
        assert_eq!(c.eval(1.0), [2.0, 2.0, 2.0]);
    }

    #[test]
    fn curve_eval_matches_monomial_expansion() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let pts: Vec<Point3> = (0..8)
            .map(|_| {
                [
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.0..1.0),
                ]
            })
            .collect();
        let curve = BezierCurve::new(pts.clone()).unwrap();
        let value = curve.eval(0.3);
        for k in 0..3 {
            let coord: Vec<f64> = pts.iter().map(|p| p[k]).collect();
            let expected = horner(&to_monomial(&coord), 0.3);
            assert!((value[k] - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn curve_validation() {
        assert_eq!(BezierCurve::new(vec![]), Err(GeometryError::EmptyCurve));
        assert_eq!(
            BezierCurve::new(vec![[f64::NAN, 0.0, 0.0]]),
            Err(GeometryError::NonFinite)
        );
        assert_eq!(
            BezierCurve::with_degree(1, vec![[0.0; 3]; 3]),
            Err(GeometryError::ShapeMismatch {
                expected: 2,
                found: 3
            })
        );
    }

    #[test]
    fn difference_net_by_hand() {
        let p = BezierCurve::new(vec![[0.5, 0.5, 0.5]]).unwrap();
        let net = difference_net(&p, &p);
        assert_eq!((net.degree_u(), net.degree_v()), (0, 0));
        assert_eq!(net.coeffs(), &[0.0, 0.0, 0.0]);

        let c1 = BezierCurve::new(vec![[0.0, 0.0, 0.0], [1.0, 1.0, 0.0]]).unwrap();
        let c2 = BezierCurve::new(vec![[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]).unwrap();
        let net = difference_net(&c1, &c2);
        assert_eq!(net.coeff(0, 0), &[-1.0, 0.0, 0.0]);
        assert_eq!(net.coeff(0, 1), &[0.0, -1.0, 0.0]);
        assert_eq!(net.coeff(1, 0), &[0.0, 1.0, 0.0]);
        assert_eq!(net.coeff(1, 1), &[1.0, 0.0, 0.0]);
    }

    #[test]
    fn difference_net_evaluates_as_curve_difference() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut curve = |deg: usize| {
            BezierCurve::new(
                (0..=deg)
                    .map(|_| {
                        [
                            rng.gen_range(-2.0..2.0),
                            rng.gen_range(-2.0..2.0),
                            rng.gen_range(-2.0..2.0),
                        ]
                    })
                    .collect(),
            )
            .unwrap()
        };
        let (c1, c2) = (curve(5), curve(4));
        let net = difference_net(&c1, &c2);
        for _ in 0..100 {
            let (u, v): (f64, f64) = (rng.gen(), rng.gen());
            let (a, b, f) = (c1.eval(u), c2.eval(v), net.eval(u, v));
            for k in 0..3 {
                assert!((f[k] - (a[k] - b[k])).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn net_eval_corners_and_constants() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let net = random_net(&mut rng, 3, 4, 3);
        assert_eq!(net.eval(0.0, 0.0), net.coeff(0, 0));
        assert_eq!(net.eval(1.0, 1.0), net.coeff(3, 4));
        let constant = ControlNet::from_fn(4, 2, 3, |_, _, k| [0.25, -3.0, 7.5][k]).unwrap();
        let value = constant.eval(0.37, 0.81);
        for (got, want) in value.iter().zip([0.25, -3.0, 7.5]) {
            assert!((got - want).abs() < 1e-14);
        }
    }

    #[test]
    fn net_eval_matches_monomial_expansion() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let net = random_net(&mut rng, 3, 3, 1);
        let (u, v) = (0.25, 0.75);
        // Evaluate each row in v via power basis, then the column in u.
        let column: Vec<f64> = (0..=3)
            .map(|i| {
                let row: Vec<f64> = (0..=3).map(|j| net.coeff(i, j)[0]).collect();
                horner(&to_monomial(&row), v)
            })
            .collect();
        let expected = horner(&to_monomial(&column), u);
        assert!((net.eval(u, v)[0] - expected).abs() < 1e-12);
    }

    #[test]
    fn derivative_of_linear_and_constant() {
        let net = ControlNet::new(1, 0, 2, vec![1.0, 2.0, 4.0, -1.0], Rect::unit()).unwrap();
        let du = net.derivative(Axis::U);
        assert_eq!((du.degree_u(), du.degree_v()), (0, 0));
        assert_eq!(du.coeffs(), &[3.0, -3.0]);
        let dv = net.derivative(Axis::V);
        assert_eq!((dv.degree_u(), dv.degree_v()), (1, 0));
        assert!(dv.coeffs().iter().all(|&c| c == 0.0));

        let constant = ControlNet::from_fn(2, 2, 3, |_, _, _| 5.0).unwrap();
        assert!(constant
            .derivative(Axis::U)
            .coeffs()
            .iter()
            .all(|&c| c == 0.0));
    }

    #[test]
    fn derivative_matches_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let net = random_net(&mut rng, 4, 5, 3);
        let du = net.derivative(Axis::U);
        let dv = net.derivative(Axis::V);
        let h = 1e-6;
        for _ in 0..50 {
            let (u, v): (f64, f64) = (rng.gen_range(0.01..0.99), rng.gen_range(0.01..0.99));
            let (gu, gv) = (du.eval(u, v), dv.eval(u, v));
            let (up, um) = (net.eval(u + h, v), net.eval(u - h, v));
            let (vp, vm) = (net.eval(u, v + h), net.eval(u, v - h));
            for k in 0..3 {
                assert!((gu[k] - (up[k] - um[k]) / (2.0 * h)).abs() < 1e-6);
                assert!((gv[k] - (vp[k] - vm[k]) / (2.0 * h)).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn affine_net_jacobian_is_constant() {
        // f(u, v) = b + u g + v h as a (1,1) net.
        let (b, g, h) = ([1.0, -2.0, 0.5], [0.3, 2.0, -1.0], [4.0, 0.0, 1.5]);
        let net = ControlNet::from_fn(1, 1, 3, |i, j, k| b[k] + i as f64 * g[k] + j as f64 * h[k])
            .unwrap();
        for x in [[0.0, 0.0], [0.3, 0.9], [1.0, 0.2]] {
            let jac = jacobian(&net, x);
            for k in 0..3 {
                assert!((jac[k][0] - g[k]).abs() < 1e-14);
                assert!((jac[k][1] - h[k]).abs() < 1e-14);
            }
        }
        let zero = ControlNet::zero(3, 2, 3);
        assert!(jacobian(&zero, [0.4, 0.4])
            .iter()
            .flatten()
            .all(|&c| c == 0.0));
    }

    #[test]
    fn identity_reparametrization_is_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let net = random_net(&mut rng, 5, 3, 3);
        let same = net.reparametrize(&Rect::unit()).unwrap();
        assert_eq!(same.coeffs(), net.coeffs());
    }

    #[test]
    fn reparametrization_consistency() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let net = random_net(&mut rng, 8, 8, 3);
        let target = Rect::new(0.25, 0.5, 0.5, 0.75).unwrap();
        let sub = net.reparametrize(&target).unwrap();
        assert_eq!(sub.domain(), target);
        for _ in 0..100 {
            let (s, t): (f64, f64) = (rng.gen(), rng.gen());
            let [u, v] = target.map(s, t);
            let (a, b) = (sub.eval(s, t), net.eval(u, v));
            for k in 0..3 {
                assert!((a[k] - b[k]).abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn reparametrization_outside_unit_square() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let net = random_net(&mut rng, 6, 7, 2);
        for target in [
            Rect::new(-0.25, 1.25, -0.25, 1.25).unwrap(),
            Rect::new(-0.5, 0.0, 0.9, 1.6).unwrap(),
            Rect::new(0.0, 0.25, 1.0, 1.5).unwrap(),
        ] {
            let sub = net.reparametrize(&target).unwrap();
            for _ in 0..50 {
                let (s, t): (f64, f64) = (rng.gen(), rng.gen());
                let [u, v] = target.map(s, t);
                let (a, b) = (sub.eval(s, t), net.eval(u, v));
                for k in 0..2 {
                    assert!((a[k] - b[k]).abs() <= 1e-10, "{target:?}");
                }
            }
        }
    }

    #[test]
    fn affine_net_reparametrizes_to_corner_values() {
        let net =
            ControlNet::from_fn(1, 1, 1, |i, j, _| 2.0 + 3.0 * i as f64 - 1.0 * j as f64).unwrap();
        let target = Rect::new(0.2, 0.6, -0.5, 0.5).unwrap();
        let sub = net.reparametrize(&target).unwrap();
        for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let [u, v] = target.map(i as f64, j as f64);
            assert!((sub.coeff(i, j)[0] - net.eval(u, v)[0]).abs() < 1e-14);
        }
    }

    #[test]
    fn degenerate_target_rejected() {
        let net = ControlNet::zero(2, 2, 3);
        let flat = Rect {
            lo_u: 0.5,
            hi_u: 0.5,
            lo_v: 0.0,
            hi_v: 1.0,
        };
        assert_eq!(net.reparametrize(&flat), Err(GeometryError::DegenerateRect));
    }

    #[test]
    fn extract_pair_selects_coordinates() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let net = random_net(&mut rng, 2, 3, 3);
        let p13 = extract_pair(&net, Pair::P13).unwrap();
        assert_eq!(p13.dim(), 2);
        let (full, sub) = (net.eval(0.3, 0.6), p13.eval(0.3, 0.6));
        assert_eq!(sub, [full[0], full[2]]);

        let mut covered = [false; 3];
        for pair in Pair::ALL {
            let sub = extract_pair(&net, pair).unwrap();
            for (slot, &k) in pair.components().iter().enumerate() {
                assert_eq!(sub.coeff(1, 2)[slot], net.coeff(1, 2)[k]);
                covered[k] = true;
            }
        }
        assert_eq!(covered, [true; 3]);

        assert_eq!(Pair::from_indices(3, 1), Ok(Pair::P13));
        assert_eq!(
            Pair::from_indices(1, 1),
            Err(GeometryError::InvalidPair(1, 1))
        );
        assert!(extract_pair(&p13, Pair::P12).is_err());
    }

    #[test]
    fn pair_display() {
        assert_eq!(std::format!("{}", Pair::P23), "{2,3}");
    }
}
