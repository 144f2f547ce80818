//! Solve configuration files (TOML).
//!
//! ```toml
//! dim = 2
//! resolution = 65            # or [65, 129] per axis
//! coefficients = [0.8, -0.1]
//! tol = 1e-9                 # optional; solver defaults otherwise
//! tol_res = 1e-6
//! max_iter = 10000
//!
//! [box]
//! lower = [0.0, 0.0]
//! upper = [1.0, 1.0]
//!
//! [F]
//! kind = "expression"
//! expression = ["x1^2/2", "(x1+x2)/3"]
//! # kind = "samples"
//! # samples = "f_target.csv"     (path relative to the config file)
//! ```

use std::fmt;
use std::path::{Path, PathBuf};

use latfix::box_lattice::BoxLattice;
use latfix::grid::{BoxGrid, GridMap};
use latfix::solver::{Coefficients, SolveOptions};
use serde::Deserialize;

use crate::expr::{parse_expr, Expr};
use crate::gridcsv;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    dim: usize,
    resolution: Option<Resolution>,
    coefficients: Vec<f64>,
    tol: Option<f64>,
    tol_res: Option<f64>,
    max_iter: Option<usize>,
    #[serde(rename = "box")]
    bounds: RawBox,
    #[serde(rename = "F")]
    f: RawTarget,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Resolution {
    Uniform(usize),
    PerAxis(Vec<usize>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBox {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTarget {
    kind: String,
    expression: Option<Vec<String>>,
    samples: Option<PathBuf>,
}

/// A parsed, validated solve configuration: a grid, the coefficient
/// vector, the right-hand side sampled as a `GridMap`, and options.
#[derive(Debug, Clone)]
pub struct SolveConfig {
    pub grid: BoxGrid,
    pub coefficients: Coefficients,
    pub target: GridMap,
    pub options: SolveOptions,
    /// Kept for reports: the expressions, when F was given that way.
    pub expressions: Option<Vec<Expr>>,
}

#[derive(Debug)]
pub enum ConfigError {
    Io { path: PathBuf, error: std::io::Error },
    Toml { path: PathBuf, error: toml::de::Error },
    Shape { message: String },
    Expr { component: usize, error: crate::expr::ExprError },
    /// F escaped the box or failed to be order-preserving, with the
    /// offending node, or a library-level construction error.
    Target { message: String },
    Csv { error: gridcsv::CsvError },
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::Io { path, error } => write!(f, "{}: {error}", path.display()),
            ConfigError::Toml { path, error } => write!(f, "{}: {error}", path.display()),
            ConfigError::Shape { message } => write!(f, "{message}"),
            ConfigError::Expr { component, error } => {
                write!(f, "F.expression[{component}]: {error}")
            }
            ConfigError::Target { message } => write!(f, "{message}"),
            ConfigError::Csv { error } => write!(f, "{error}"),
        }
    }
}

impl std::error::Error for ConfigError {}

impl From<gridcsv::CsvError> for ConfigError {
    fn from(error: gridcsv::CsvError) -> Self {
        ConfigError::Csv { error }
    }
}

fn shape(message: String) -> ConfigError {
    ConfigError::Shape { message }
}

/// Default grid sizes: fine enough that the worked examples meet their
/// residual targets in seconds.
fn default_resolution(dim: usize) -> Vec<usize> {
    if dim == 1 {
        vec![257]
    } else {
        vec![65; dim]
    }
}

pub fn load_config(path: &Path) -> Result<SolveConfig, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|error| ConfigError::Io { path: path.into(), error })?;
    let raw: RawConfig = toml::from_str(&text)
        .map_err(|error| ConfigError::Toml { path: path.into(), error })?;

    if raw.dim == 0 {
        return Err(shape("dim must be at least 1".into()));
    }
    if raw.bounds.lower.len() != raw.dim || raw.bounds.upper.len() != raw.dim {
        return Err(shape(format!(
            "box.lower and box.upper must each have dim = {} entries",
            raw.dim
        )));
    }
    let res = match raw.resolution {
        None => default_resolution(raw.dim),
        Some(Resolution::Uniform(r)) => vec![r; raw.dim],
        Some(Resolution::PerAxis(v)) => {
            if v.len() != raw.dim {
                return Err(shape(format!(
                    "resolution lists {} axes but dim = {}",
                    v.len(),
                    raw.dim
                )));
            }
            v
        }
    };

    let bounds = BoxLattice::new(raw.bounds.lower, raw.bounds.upper)
        .map_err(|e| shape(format!("box: {e}")))?;
    let grid = BoxGrid::new(bounds, res).map_err(|e| shape(format!("grid: {e}")))?;
    let coefficients = Coefficients::new(raw.coefficients)
        .map_err(|e| shape(format!("coefficients: {e}")))?;

    let mut options = SolveOptions::default();
    if let Some(t) = raw.tol {
        options.tol = t;
    }
    if let Some(t) = raw.tol_res {
        options.tol_res = t;
    }
    if let Some(m) = raw.max_iter {
        options.max_iter = m;
    }

    let (target, expressions) = match raw.f.kind.as_str() {
        "expression" => {
            let sources = raw
                .f
                .expression
                .ok_or_else(|| shape("F.kind = \"expression\" needs F.expression".into()))?;
            if sources.len() != raw.dim {
                return Err(shape(format!(
                    "F.expression has {} components but dim = {}",
                    sources.len(),
                    raw.dim
                )));
            }
            let mut asts = Vec::with_capacity(sources.len());
            for (component, src) in sources.iter().enumerate() {
                asts.push(
                    parse_expr(src, raw.dim)
                        .map_err(|error| ConfigError::Expr { component, error })?,
                );
            }
            (sample_target(&grid, &asts)?, Some(asts))
        }
        "samples" => {
            let rel = raw
                .f
                .samples
                .ok_or_else(|| shape("F.kind = \"samples\" needs F.samples".into()))?;
            let csv_path = path.parent().map_or_else(|| rel.clone(), |d| d.join(&rel));
            let map = gridcsv::read_grid_map(&csv_path)?;
            if map.grid() != &grid {
                return Err(ConfigError::Target {
                    message: format!(
                        "sample grid in {} does not match the configured grid",
                        csv_path.display()
                    ),
                });
            }
            check_target(&map)?;
            (map, None)
        }
        other => {
            return Err(shape(format!(
                "F.kind must be \"expression\" or \"samples\", not \"{other}\""
            )))
        }
    };

    Ok(SolveConfig { grid, coefficients, target, options, expressions })
}

/// Evaluates the per-component expressions at every node, then checks
/// the self-map and order-preservation requirements.
pub fn sample_target(grid: &BoxGrid, exprs: &[Expr]) -> Result<GridMap, ConfigError> {
    let mut values = Vec::with_capacity(grid.node_count() * grid.dim());
    for node in 0..grid.node_count() {
        let x = grid.node_coord(node);
        for (component, e) in exprs.iter().enumerate() {
            let v = e.eval(&x).map_err(|error| ConfigError::Expr { component, error })?;
            let (lo, hi) = (grid.bounds().lower()[component], grid.bounds().upper()[component]);
            if !(v >= lo && v <= hi) {
                return Err(ConfigError::Target {
                    message: format!(
                        "F component {} = {v} escapes [{lo}, {hi}] at node {node} (x = {x:?})",
                        component + 1
                    ),
                });
            }
            values.push(v);
        }
    }
    let map = GridMap::new(grid.clone(), values)
        .map_err(|e| ConfigError::Target { message: format!("F: {e}") })?;
    check_target(&map)?;
    Ok(map)
}

fn check_target(map: &GridMap) -> Result<(), ConfigError> {
    if let Some((lo, hi)) = map.monotone_witness() {
        return Err(ConfigError::Target {
            message: format!(
                "F is not order-preserving: nodes {lo} and {hi} are ordered but their images are not"
            ),
        });
    }
    Ok(())
}
