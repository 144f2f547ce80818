//! Plain-text reports. Everything in the "comparable" sections is
//! deterministic — fixed float formatting, no timings, no paths — so a
//! byte diff of two runs on the same input is meaningful. Timings go in
//! a separate diagnostics block.

use latfix::engine::{LawReport, StructureReport, StructureWitness};
use latfix::finite::FiniteLattice;
use latfix::solver::{SideReport, SolveReport};

use crate::config::SolveConfig;

pub fn num(v: f64) -> String {
    format!("{v:.6e}")
}

fn list(vals: &[f64]) -> String {
    vals.iter().map(|&v| num(v)).collect::<Vec<_>>().join(", ")
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn side_lines(out: &mut String, r: &SideReport) {
    out.push_str(&format!(
        "{} solution: iterations={} residual={} last-change={} converged={}\n",
        r.side,
        r.iterations,
        num(r.residual),
        num(r.last_change),
        yes_no(r.converged),
    ));
    out.push_str(&format!(
        "  guards: order-dip absorbed={} monotone repair={}\n",
        num(r.guard_adjust),
        num(r.renorm_adjust),
    ));
}

/// The comparable part of a solve report.
pub fn solve_report(cfg: &SolveConfig, r: &SolveReport) -> String {
    let grid = cfg.grid.clone();
    let mut out = String::from("== solve report ==\n");
    out.push_str(&format!("dim: {}\n", grid.dim()));
    out.push_str(&format!(
        "box: [{}] .. [{}]\n",
        list(grid.bounds().lower()),
        list(grid.bounds().upper())
    ));
    out.push_str(&format!(
        "resolution: {}\n",
        grid.res().iter().map(|r| r.to_string()).collect::<Vec<_>>().join("x")
    ));
    out.push_str(&format!("coefficients: [{}]\n", list(cfg.coefficients.lambdas())));
    out.push_str(&format!("lambda: {}\n", num(cfg.coefficients.lambda())));
    if let Some(exprs) = &cfg.expressions {
        for (i, e) in exprs.iter().enumerate() {
            out.push_str(&format!("F{}: {e}\n", i + 1));
        }
    }
    out.push_str(&format!("contraction hint: {}\n", num(r.contraction_hint)));
    side_lines(&mut out, &r.min_report);
    side_lines(&mut out, &r.max_report);
    out.push_str(&format!(
        "order-preserving: minimal={} maximal={}\n",
        yes_no(r.monotone_min),
        yes_no(r.monotone_max)
    ));
    out.push_str(&format!("comparable (minimal below maximal): {}\n", yes_no(r.comparable)));
    out.push_str(&format!("solution gap (sup distance): {}\n", num(r.gap)));
    let pass = r.min_report.residual <= r.tol_res && r.max_report.residual <= r.tol_res;
    out.push_str(&format!(
        "residual tolerance {}: {}\n",
        num(r.tol_res),
        if pass { "pass" } else { "FAIL" }
    ));
    out
}

/// Timing block, separated so the comparable part stays byte-stable.
pub fn solve_diagnostics(r: &SolveReport) -> String {
    match r.wall_time {
        Some(t) => format!("-- diagnostics --\nwall time: {t:.3}s\n"),
        None => String::new(),
    }
}

pub fn structure_report(lattice: &FiniteLattice, s: &StructureReport) -> String {
    let labels =
        |ids: &[usize]| ids.iter().map(|&i| lattice.label(i).to_string()).collect::<Vec<_>>().join(" ");
    let mut out = String::new();
    out.push_str(&format!("fixed points: {{{}}}\n", labels(&s.fixed)));
    out.push_str(&format!(
        "fixed set complete in its induced order: {}\n",
        yes_no(s.induced_complete)
    ));
    out.push_str(&format!(
        "fixed set closed under ambient join/meet: {}\n",
        yes_no(s.sublattice_of_x)
    ));
    if let Some(w) = &s.witness {
        let line = match w {
            StructureWitness::SubsetWithoutBound { subset } => {
                format!("witness: subset {{{}}} has no bound inside the fixed set", labels(subset))
            }
            StructureWitness::JoinEscapes { a, b, join } => format!(
                "witness: join({}, {}) = {} lies outside the fixed set",
                lattice.label(*a),
                lattice.label(*b),
                lattice.label(*join)
            ),
            StructureWitness::MeetEscapes { a, b, meet } => format!(
                "witness: meet({}, {}) = {} lies outside the fixed set",
                lattice.label(*a),
                lattice.label(*b),
                lattice.label(*meet)
            ),
        };
        out.push_str(&line);
        out.push('\n');
    }
    out
}

pub fn law_report(r: &LawReport, mode: &str) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{} order-preserving self-maps on {} elements ({mode})\n",
        r.map_count, r.lattice_size
    ));
    out.push_str(&format!(
        "checked: {} pairs, {} ordered, {} subcommuting, {} pointwise comparisons, powers up to {}\n",
        r.pair_count, r.ordered_pairs, r.subcommuting_pairs, r.pointwise_checks, r.max_power
    ));
    if r.all_hold() {
        out.push_str("all iteration laws hold\n");
    } else {
        out.push_str(&format!("LAW VIOLATIONS: {}\n", r.violations.len()));
        for v in r.violations.iter().take(5) {
            out.push_str(&format!("  {v:?}\n"));
        }
    }
    out
}
