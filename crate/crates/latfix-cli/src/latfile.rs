//! Text formats for finite lattices and maps on them.
//!
//! Lattice file: one `elements:` line listing labels in any order, then
//! one `cover:` line per covering pair `lower upper`. Blank lines and
//! `#` comments are skipped.
//!
//! ```text
//! # the diamond
//! elements: a b c d
//! cover: a b
//! cover: a c
//! cover: b d
//! cover: c d
//! ```
//!
//! Map file: one `from -> to` line per element.

use std::fmt;
use std::path::{Path, PathBuf};

use latfix::engine::FiniteMonotoneMap;
use latfix::finite::FiniteLattice;

#[derive(Debug)]
pub enum LatFileError {
    Io { path: PathBuf, error: std::io::Error },
    Format { path: PathBuf, line: usize, message: String },
    Lattice { path: PathBuf, message: String },
}

impl fmt::Display for LatFileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatFileError::Io { path, error } => write!(f, "{}: {error}", path.display()),
            LatFileError::Format { path, line, message } => {
                write!(f, "{}:{line}: {message}", path.display())
            }
            LatFileError::Lattice { path, message } => {
                write!(f, "{}: {message}", path.display())
            }
        }
    }
}

impl std::error::Error for LatFileError {}

pub fn read_lattice(path: &Path) -> Result<FiniteLattice, LatFileError> {
    let text =
        std::fs::read_to_string(path).map_err(|error| LatFileError::Io { path: path.into(), error })?;
    let mut labels: Option<Vec<String>> = None;
    let mut covers: Vec<(String, String)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let at = i + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("elements:") {
            if labels.is_some() {
                return Err(LatFileError::Format {
                    path: path.into(),
                    line: at,
                    message: "duplicate elements: line".into(),
                });
            }
            labels = Some(rest.split_whitespace().map(String::from).collect());
        } else if let Some(rest) = line.strip_prefix("cover:") {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            if parts.len() != 2 {
                return Err(LatFileError::Format {
                    path: path.into(),
                    line: at,
                    message: "cover: expects exactly two labels, `lower upper`".into(),
                });
            }
            covers.push((parts[0].into(), parts[1].into()));
        } else {
            return Err(LatFileError::Format {
                path: path.into(),
                line: at,
                message: format!("expected elements: or cover:, found `{line}`"),
            });
        }
    }

    let labels = labels.ok_or_else(|| LatFileError::Format {
        path: path.into(),
        line: text.lines().count() + 1,
        message: "missing elements: line".into(),
    })?;
    let label_refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    let cover_refs: Vec<(&str, &str)> =
        covers.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    FiniteLattice::from_covers(&label_refs, &cover_refs)
        .map_err(|e| LatFileError::Lattice { path: path.into(), message: e.to_string() })
}

pub fn read_map(path: &Path, lattice: &FiniteLattice) -> Result<FiniteMonotoneMap, LatFileError> {
    let text =
        std::fs::read_to_string(path).map_err(|error| LatFileError::Io { path: path.into(), error })?;
    let mut pairs: Vec<(String, String)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (from, to) = line.split_once("->").ok_or_else(|| LatFileError::Format {
            path: path.into(),
            line: i + 1,
            message: format!("expected `from -> to`, found `{line}`"),
        })?;
        pairs.push((from.trim().into(), to.trim().into()));
    }
    let pair_refs: Vec<(&str, &str)> =
        pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    FiniteMonotoneMap::from_label_pairs(lattice.clone(), &pair_refs)
        .map_err(|e| LatFileError::Lattice { path: path.into(), message: e.to_string() })
}
