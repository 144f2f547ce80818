//! The four subcommands. Each returns the text to print plus an exit
//! code, or a `CliError` that maps to a documented code:
//!
//! | code | meaning                                             |
//! |------|-----------------------------------------------------|
//! | 0    | success                                             |
//! | 1    | unreadable/invalid configuration or I/O failure     |
//! | 2    | usage error (argument parsing)                      |
//! | 3    | coefficients outside the required regime            |
//! | 4    | (1/λ)·F escapes the box                             |
//! | 5    | iteration budget exhausted before convergence       |
//! | 6    | a map that must be order-preserving is not          |
//! | 7    | residual above tolerance                            |
//! | 8    | invalid lattice, map or CSV content                 |

use std::fmt;
use std::path::{Path, PathBuf};

use latfix::analysis::{p_integral, usc_report};
use latfix::engine::{
    check_iteration_laws, enumerate_monotone_maps, fixed_point_structure, fixed_points,
    kleene_ascent, kleene_descent, tarski_extremes, EngineError, LawCheckMode,
};
use latfix::solver::{compare_solutions, residual, solve, CompareVerdict, SolverError};

use crate::config::{load_config, ConfigError, SolveConfig};
use crate::examples_builtin::{examples_table, run_examples};
use crate::gridcsv::{read_grid_map, write_grid_map, write_plot_csv, CsvError};
use crate::latfile::{read_lattice, read_map, LatFileError};
use crate::report;

pub struct Output {
    pub text: String,
    pub code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

#[derive(Debug)]
pub enum CliError {
    Config(ConfigError),
    Csv(CsvError),
    LatFile(LatFileError),
    Solver(SolverError),
    Engine(EngineError),
    Write { path: PathBuf, error: std::io::Error },
    GridMismatch { message: String },
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(e) => write!(f, "config: {e}"),
            CliError::Csv(e) => write!(f, "{e}"),
            CliError::LatFile(e) => write!(f, "{e}"),
            CliError::Solver(e) => write!(f, "solver: {e}"),
            CliError::Engine(e) => write!(f, "{e}"),
            CliError::Write { path, error } => write!(f, "{}: {error}", path.display()),
            CliError::GridMismatch { message } => write!(f, "{message}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Config(e)
    }
}

impl From<CsvError> for CliError {
    fn from(e: CsvError) -> Self {
        CliError::Csv(e)
    }
}

impl From<LatFileError> for CliError {
    fn from(e: LatFileError) -> Self {
        CliError::LatFile(e)
    }
}

impl From<SolverError> for CliError {
    fn from(e: SolverError) -> Self {
        CliError::Solver(e)
    }
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        CliError::Engine(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Write { .. } => 1,
            CliError::Csv(_) | CliError::LatFile(_) | CliError::GridMismatch { .. } => 8,
            CliError::Solver(e) => match e {
                SolverError::Regime(_) | SolverError::UniquenessRegime(_) => 3,
                SolverError::RangeEscape { .. } => 4,
                SolverError::MaxIterExceeded { .. } => 5,
                SolverError::NotMonotone { .. } => 6,
                SolverError::NotASolution { .. } => 7,
                _ => 1,
            },
            CliError::Engine(e) => match e {
                EngineError::NotMonotone { .. } => 6,
                _ => 8,
            },
        }
    }
}

pub struct SolveFlags {
    pub tol: Option<f64>,
    pub tol_res: Option<f64>,
    pub max_iter: Option<usize>,
    pub out_dir: Option<PathBuf>,
}

fn apply_flags(cfg: &mut SolveConfig, flags: &SolveFlags) {
    if let Some(t) = flags.tol {
        cfg.options.tol = t;
    }
    if let Some(t) = flags.tol_res {
        cfg.options.tol_res = t;
    }
    if let Some(m) = flags.max_iter {
        cfg.options.max_iter = m;
    }
}

pub fn cmd_solve(config_path: &Path, flags: &SolveFlags) -> Result<Output, CliError> {
    let mut cfg = load_config(config_path)?;
    apply_flags(&mut cfg, flags);
    let r = solve(&cfg.target, &cfg.coefficients, &cfg.options)?;

    let stem = config_path
        .file_stem()
        .map_or_else(|| "solve".to_string(), |s| s.to_string_lossy().into_owned());
    let dir = flags.out_dir.clone().unwrap_or_else(|| PathBuf::from("."));
    if !dir.as_os_str().is_empty() && !dir.exists() {
        std::fs::create_dir_all(&dir)
            .map_err(|error| CliError::Write { path: dir.clone(), error })?;
    }
    write_grid_map(&dir.join(format!("{stem}_fmin.csv")), &r.f_min)?;
    write_grid_map(&dir.join(format!("{stem}_fmax.csv")), &r.f_max)?;
    write_plot_csv(
        &dir.join(format!("{stem}_plot.csv")),
        &[("fmin", &r.f_min), ("fmax", &r.f_max)],
    )?;

    let mut text = report::solve_report(&cfg, &r);
    let report_path = dir.join(format!("{stem}_report.txt"));
    std::fs::write(&report_path, &text)
        .map_err(|error| CliError::Write { path: report_path, error })?;
    text.push_str(&report::solve_diagnostics(&r));
    text.push_str(&format!("artifacts: {}/{{{stem}_fmin,{stem}_fmax,{stem}_plot}}.csv\n", dir.display()));
    Ok(Output::ok(text))
}

pub fn cmd_verify(
    csv: &Path,
    csv2: Option<&Path>,
    config_path: &Path,
    p: Option<f64>,
) -> Result<Output, CliError> {
    let cfg = load_config(config_path)?;
    let candidate = read_grid_map(csv)?;
    if candidate.grid() != &cfg.grid {
        return Err(CliError::GridMismatch {
            message: format!(
                "{} was sampled on a different grid than the configuration",
                csv.display()
            ),
        });
    }

    let mut text = String::from("== verify ==\n");
    let mut code = 0;

    let monotone = candidate.monotone_witness();
    match monotone {
        None => text.push_str("order-preserving: yes\n"),
        Some((lo, hi)) => {
            text.push_str(&format!(
                "order-preserving: NO (nodes {lo} and {hi} are ordered, their images are not)\n"
            ));
            code = 6;
        }
    }

    let res = residual(&candidate, &cfg.target, &cfg.coefficients)?;
    let pass = res <= cfg.options.tol_res;
    text.push_str(&format!(
        "residual: {} (tolerance {}): {}\n",
        report::num(res),
        report::num(cfg.options.tol_res),
        if pass { "pass" } else { "FAIL" }
    ));
    if !pass && code == 0 {
        code = 7;
    }

    let usc = usc_report(&candidate);
    text.push_str(&format!(
        "upper semicontinuous on the grid scale: {}\n",
        if usc.is_usc() { "yes" } else { "no" }
    ));

    if let Some(p) = p {
        match p_integral(&candidate, p) {
            Ok(v) => text.push_str(&format!("p-integral (p={p}): {}\n", report::num(v))),
            Err(e) => text.push_str(&format!("p-integral: {e}\n")),
        }
    }

    if let Some(other_path) = csv2 {
        let other = read_grid_map(other_path)?;
        if other.grid() != &cfg.grid {
            return Err(CliError::GridMismatch {
                message: format!(
                    "{} was sampled on a different grid than the configuration",
                    other_path.display()
                ),
            });
        }
        let verdict = compare_solutions(
            &candidate,
            &other,
            &cfg.target,
            &cfg.coefficients,
            cfg.options.tol_res,
            1e-8,
        )?;
        let line = match verdict {
            CompareVerdict::Equal { clause, distance } => format!(
                "comparison: equal (distance {}, via the {clause} clause)",
                report::num(distance)
            ),
            CompareVerdict::ClauseViolated { clause, distance } => format!(
                "comparison: DISTINCT solutions (distance {}) although the {clause} clause applies",
                report::num(distance)
            ),
            CompareVerdict::TheoremSilent { distance } => format!(
                "comparison: no uniqueness clause applies (distance {})",
                report::num(distance)
            ),
        };
        text.push_str(&line);
        text.push('\n');
    }

    Ok(Output { text, code })
}

pub fn cmd_tarski(
    lattice_path: &Path,
    map_path: Option<&Path>,
    all: bool,
    sample: Option<usize>,
    seed: Option<u64>,
) -> Result<Output, CliError> {
    let lattice = read_lattice(lattice_path)?;
    let mut text = String::new();
    text.push_str(&format!(
        "lattice: {} elements, bottom {}, top {}\n",
        lattice.len(),
        lattice.label(lattice.bottom()),
        lattice.label(lattice.top()),
    ));

    if all {
        // Exhaustive when the candidate count fits the budget; random
        // pairs otherwise.
        let (mode, mode_desc) = match enumerate_monotone_maps(&lattice) {
            Ok(_) => (LawCheckMode::Exhaustive, "exhaustive".to_string()),
            Err(EngineError::TooLarge { candidates, budget }) => {
                let pairs = sample.unwrap_or(200);
                let seed = seed.unwrap_or(42);
                text.push_str(&format!(
                    "{candidates} candidate maps exceed the enumeration budget {budget}; sampling\n"
                ));
                (
                    LawCheckMode::Sample { pairs, seed },
                    format!("{pairs} sampled pairs, seed {seed}"),
                )
            }
            Err(e) => return Err(e.into()),
        };
        let laws = check_iteration_laws(&lattice, mode)?;
        text.push_str(&report::law_report(&laws, &mode_desc));
        let code = if laws.all_hold() { 0 } else { 1 };
        return Ok(Output { text, code });
    }

    let map_path = map_path.ok_or_else(|| CliError::GridMismatch {
        message: "tarski needs either --map <file> or --all".into(),
    })?;
    let map = read_map(map_path, &lattice)?;
    let fixed = fixed_points(&map);
    let fixed_labels =
        fixed.iter().map(|&i| lattice.label(i).to_string()).collect::<Vec<_>>().join(" ");

    match map.monotone_witness() {
        Some((x, y)) => {
            // Tarski's guarantees are off; show the scan and say why.
            if fixed.is_empty() {
                text.push_str("no fixed points; map is not order-preserving\n");
            } else {
                text.push_str(&format!(
                    "fixed points: {{{fixed_labels}}}; map is not order-preserving\n"
                ));
            }
            text.push_str(&format!(
                "witness: {} below {} but images {} and {} are not ordered\n",
                lattice.label(x),
                lattice.label(y),
                lattice.label(map.image(x)),
                lattice.label(map.image(y)),
            ));
        }
        None => {
            text.push_str("map is order-preserving\n");
            let (least, greatest) = tarski_extremes(&map)?;
            text.push_str(&format!(
                "x_* = {}   x^* = {}\n",
                lattice.label(least),
                lattice.label(greatest)
            ));
            let trace = |t: Vec<usize>| {
                t.into_iter().map(|i| lattice.label(i).to_string()).collect::<Vec<_>>().join(" -> ")
            };
            text.push_str(&format!("ascent from bottom: {}\n", trace(kleene_ascent(&map)?)));
            text.push_str(&format!("descent from top:   {}\n", trace(kleene_descent(&map)?)));
            let structure = fixed_point_structure(&map)?;
            text.push_str(&report::structure_report(&lattice, &structure));
        }
    }
    Ok(Output::ok(text))
}

pub fn cmd_examples(resolution: Option<usize>) -> Result<Output, CliError> {
    let rows = run_examples(resolution)?;
    let all = rows.iter().all(|r| r.pass);
    Ok(Output { text: examples_table(&rows), code: if all { 0 } else { 7 } })
}
