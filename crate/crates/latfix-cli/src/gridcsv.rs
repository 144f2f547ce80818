//! Grid-map CSV files.
//!
//! One header comment line carrying the grid geometry, then one row per
//! node in row-major order (last axis fastest), each row holding the
//! image components of that node:
//!
//! ```text
//! # dim=2 res=3,3 box=0,0:1,1
//! 0,0
//! 0,0.5
//! ...
//! ```
//!
//! Values are written with 17 significant digits, which round-trips
//! every finite `f64` exactly; the reader re-validates geometry and
//! in-box placement by rebuilding the `GridMap` through its checked
//! constructor.

use std::fmt;
use std::path::{Path, PathBuf};

use latfix::box_lattice::BoxLattice;
use latfix::grid::{BoxGrid, GridMap};

#[derive(Debug)]
pub enum CsvError {
    Io { path: PathBuf, error: std::io::Error },
    Header { path: PathBuf, message: String },
    Row { path: PathBuf, line: usize, message: String },
    Construct { path: PathBuf, message: String },
}

impl fmt::Display for CsvError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CsvError::Io { path, error } => write!(f, "{}: {error}", path.display()),
            CsvError::Header { path, message } => {
                write!(f, "{}: bad header: {message}", path.display())
            }
            CsvError::Row { path, line, message } => {
                write!(f, "{}:{line}: {message}", path.display())
            }
            CsvError::Construct { path, message } => {
                write!(f, "{}: {message}", path.display())
            }
        }
    }
}

impl std::error::Error for CsvError {}

fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn join_f64(vals: impl Iterator<Item = f64>) -> String {
    vals.map(fmt_f64).collect::<Vec<_>>().join(",")
}

pub fn write_grid_map(path: &Path, map: &GridMap) -> Result<(), CsvError> {
    let grid = map.grid();
    let mut out = String::new();
    out.push_str(&format!(
        "# dim={} res={} box={}:{}\n",
        grid.dim(),
        grid.res().iter().map(|r| r.to_string()).collect::<Vec<_>>().join(","),
        join_f64(grid.bounds().lower().iter().copied()),
        join_f64(grid.bounds().upper().iter().copied()),
    ));
    for node in 0..grid.node_count() {
        out.push_str(&join_f64(map.value(node).iter().copied()));
        out.push('\n');
    }
    std::fs::write(path, out).map_err(|error| CsvError::Io { path: path.into(), error })
}

/// A plot-ready companion file: node coordinates first, then the image
/// components of each supplied map, with a named column header.
pub fn write_plot_csv(path: &Path, maps: &[(&str, &GridMap)]) -> Result<(), CsvError> {
    let grid = maps[0].1.grid();
    let mut header: Vec<String> = (1..=grid.dim()).map(|i| format!("x{i}")).collect();
    for (name, _) in maps {
        for i in 1..=grid.dim() {
            header.push(format!("{name}{i}"));
        }
    }
    let mut out = header.join(",");
    out.push('\n');
    for node in 0..grid.node_count() {
        out.push_str(&join_f64(grid.node_coord(node).into_iter()));
        for (_, map) in maps {
            out.push(',');
            out.push_str(&join_f64(map.value(node).iter().copied()));
        }
        out.push('\n');
    }
    std::fs::write(path, out).map_err(|error| CsvError::Io { path: path.into(), error })
}

fn parse_f64_list(path: &Path, line: usize, text: &str) -> Result<Vec<f64>, CsvError> {
    text.split(',')
        .map(|s| {
            s.trim().parse::<f64>().map_err(|_| CsvError::Row {
                path: path.into(),
                line,
                message: format!("bad number `{}`", s.trim()),
            })
        })
        .collect()
}

pub fn read_grid_map(path: &Path) -> Result<GridMap, CsvError> {
    let text =
        std::fs::read_to_string(path).map_err(|error| CsvError::Io { path: path.into(), error })?;
    let mut lines = text.lines().enumerate();

    let header = loop {
        match lines.next() {
            Some((_, l)) if l.trim().is_empty() => continue,
            Some((_, l)) => break l,
            None => {
                return Err(CsvError::Header { path: path.into(), message: "empty file".into() })
            }
        }
    };
    let bad_header = |message: &str| CsvError::Header { path: path.into(), message: message.into() };
    let rest = header.strip_prefix('#').ok_or_else(|| bad_header("missing `#` line"))?;

    let mut dim = None;
    let mut res = None;
    let mut bounds = None;
    for field in rest.split_whitespace() {
        if let Some(v) = field.strip_prefix("dim=") {
            dim = Some(v.parse::<usize>().map_err(|_| bad_header("bad dim"))?);
        } else if let Some(v) = field.strip_prefix("res=") {
            res = Some(
                v.split(',')
                    .map(|s| s.parse::<usize>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| bad_header("bad res"))?,
            );
        } else if let Some(v) = field.strip_prefix("box=") {
            let (lo, hi) = v.split_once(':').ok_or_else(|| bad_header("box needs lo:hi"))?;
            bounds = Some((parse_f64_list(path, 1, lo)?, parse_f64_list(path, 1, hi)?));
        }
    }
    let dim = dim.ok_or_else(|| bad_header("missing dim="))?;
    let res = res.ok_or_else(|| bad_header("missing res="))?;
    let (lower, upper) = bounds.ok_or_else(|| bad_header("missing box="))?;

    let lattice = BoxLattice::new(lower, upper)
        .map_err(|e| CsvError::Construct { path: path.into(), message: e.to_string() })?;
    if lattice.dim() != dim || res.len() != dim {
        return Err(bad_header("dim, res and box disagree"));
    }
    let grid = BoxGrid::new(lattice, res)
        .map_err(|e| CsvError::Construct { path: path.into(), message: e.to_string() })?;

    let mut values = Vec::with_capacity(grid.node_count() * dim);
    let mut rows = 0usize;
    for (i, line) in lines {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row = parse_f64_list(path, i + 1, line)?;
        if row.len() != dim {
            return Err(CsvError::Row {
                path: path.into(),
                line: i + 1,
                message: format!("expected {dim} components, found {}", row.len()),
            });
        }
        values.extend(row);
        rows += 1;
    }
    if rows != grid.node_count() {
        return Err(CsvError::Construct {
            path: path.into(),
            message: format!("expected {} rows, found {rows}", grid.node_count()),
        });
    }
    GridMap::new(grid, values)
        .map_err(|e| CsvError::Construct { path: path.into(), message: e.to_string() })
}
