//! Plot-ready CSV: sampled polylines of both curves and the intersection
//! points.

use std::io::Write;

use cci_core::engine::SolveReport;

use crate::problem::Problem;

/// `curve_id,t,x,y,z` rows, `samples` evenly spaced parameters per curve.
pub fn write_curves(mut out: impl Write, problem: &Problem, samples: usize) -> std::io::Result<()> {
    writeln!(out, "curve_id,t,x,y,z")?;
    for (id, curve) in [(1, &problem.c1), (2, &problem.c2)] {
        for k in 0..samples {
            let t = k as f64 / (samples - 1) as f64;
            let [x, y, z] = curve.eval(t);
            writeln!(out, "{id},{t},{x},{y},{z}")?;
        }
    }
    Ok(())
}

/// `u,v,x,y,z` rows, one per intersection, `(x, y, z) = c1(u)`.
pub fn write_intersections(mut out: impl Write, report: &SolveReport) -> std::io::Result<()> {
    writeln!(out, "u,v,x,y,z")?;
    for r in &report.intersections {
        let [x, y, z] = r.point;
        writeln!(out, "{},{},{x},{y},{z}", r.u, r.v)?;
    }
    Ok(())
}
