//! Curve/curve intersection for 3D Bézier curves by Kantorovich-test
//! subdivision.
//!
//! Two curves `c1(u)` and `c2(v)` intersect where the tensor-product
//! polynomial `f(u, v) = c1(u) - c2(v)` vanishes on `[0, 1]²`. The solver in
//! [`engine`] walks a FIFO queue of squares in parameter space. Each square is
//! first checked with a convex-hull [`exclusion`] test; squares that survive
//! get a [`kantorovich`] convergence test on the three two-coordinate
//! sub-systems of `f`, and a pass hands the square centre to [`newton`].
//! Every confirmed zero carves out an explored region in which no other zero
//! can exist, so later squares falling inside it are dropped.
//!
//! Two flavours of the test-domain policy are supported:
//!
//! * **adaptive** – each pair's test domain multiplier grows or shrinks by a
//!   fixed step depending on why the parent square failed the test.
//! * **fixed** – the multiplier stays at a constant (1.5 by default).
//!
//! The crate is `no_std` and only needs `alloc`.
//!
//! ```
//! use cci_core::engine::{solve, SolverConfig};
//! use cci_core::geometry::BezierCurve;
//!
//! let c1 = BezierCurve::new(vec![[0.0, 0.0, 0.0], [1.0, 1.0, 0.0]]).unwrap();
//! let c2 = BezierCurve::new(vec![[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]).unwrap();
//! let report = solve(&c1, &c2, &SolverConfig::default());
//! assert_eq!(report.intersections.len(), 1);
//! assert_eq!(report.squares_examined, 5);
//! ```

#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod engine;
pub mod exclusion;
pub mod geometry;
pub mod kantorovich;
mod mat2;
pub mod newton;
pub mod oracle;

pub use engine::{solve, IntersectionRecord, Mode, SolveReport, SolverConfig, Square};
pub use geometry::{BezierCurve, ControlNet, GeometryError, Pair, Point2, Point3, Rect};
pub use kantorovich::{ExploredRegion, KantorovichOutcome, PairOutcome};
pub use newton::NewtonResult;
