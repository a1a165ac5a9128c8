//! Problem files: two curves as degree + control points, JSON encoded.
//!
//! ```json
//! {
//!   "name": "crossing",
//!   "curve1": { "degree": 1, "control_points": [[0, 0, 0], [1, 1, 0]] },
//!   "curve2": { "degree": 1, "control_points": [[1, 0, 0], [0, 1, 0]] }
//! }
//! ```

use std::fmt;
use std::path::Path;

use cci_core::geometry::{BezierCurve, GeometryError};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveSpec {
    pub degree: usize,
    pub control_points: Vec<[f64; 3]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub curve1: CurveSpec,
    pub curve2: CurveSpec,
}

/// A validated problem ready for the solver.
#[derive(Debug, Clone)]
pub struct Problem {
    pub name: String,
    pub c1: BezierCurve,
    pub c2: BezierCurve,
}

#[derive(Debug)]
pub enum ProblemError {
    Io {
        path: String,
        source: std::io::Error,
    },
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    Invalid {
        path: String,
        line: usize,
        curve: &'static str,
        source: GeometryError,
    },
}

impl fmt::Display for ProblemError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProblemError::Io { path, source } => write!(f, "{path}: {source}"),
            ProblemError::Parse {
                path,
                line,
                column,
                message,
            } => write!(f, "{path}:{line}:{column}: {message}"),
            ProblemError::Invalid {
                path,
                line,
                curve,
                source: GeometryError::ShapeMismatch { expected, found },
            } => {
                write!(
                    f,
                    "{path}:{line}: {curve}: degree {} expects {expected} control points, found {found}",
                    expected - 1
                )
            }
            ProblemError::Invalid {
                path,
                line,
                curve,
                source,
            } => write!(f, "{path}:{line}: {curve}: {source}"),
        }
    }
}

impl std::error::Error for ProblemError {}

fn key_line(text: &str, key: &str) -> usize {
    let quoted = format!("\"{key}\"");
    text.lines()
        .position(|l| l.contains(&quoted))
        .map_or(1, |i| i + 1)
}

impl Problem {
    pub fn parse(text: &str, path: &str) -> Result<Problem, ProblemError> {
        let file: ProblemFile = serde_json::from_str(text).map_err(|e| ProblemError::Parse {
            path: path.to_owned(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let build = |spec: &CurveSpec, curve: &'static str| {
            BezierCurve::with_degree(spec.degree, spec.control_points.clone()).map_err(|source| {
                ProblemError::Invalid {
                    path: path.to_owned(),
                    line: key_line(text, curve),
                    curve,
                    source,
                }
            })
        };
        let c1 = build(&file.curve1, "curve1")?;
        let c2 = build(&file.curve2, "curve2")?;
        let name = file.name.unwrap_or_else(|| {
            Path::new(path)
                .file_stem()
                .map_or_else(|| path.to_owned(), |s| s.to_string_lossy().into_owned())
        });
        Ok(Problem { name, c1, c2 })
    }

    pub fn load(path: &Path) -> Result<Problem, ProblemError> {
        let display = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|source| ProblemError::Io {
            path: display.clone(),
            source,
        })?;
        Self::parse(&text, &display)
    }
}
