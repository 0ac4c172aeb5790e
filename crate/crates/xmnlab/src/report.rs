//! Report serialization: JSON for machines, a CSV flattening of the bound
//! checks for spreadsheets, and a text rendering for terminals. All outputs
//! are newline-terminated and depend only on the report contents.

use crate::verify::{format_float, GroupClassReport, Report};
use std::fmt::Write as _;

pub fn report_to_json(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

/// One CSV row per bound check; vacuous and skipped cells contribute none.
/// No field ever contains a comma, so no quoting is needed.
pub const CSV_HEADER: &str = "group,order,class,gamma,m,n_star,witness_M,bound,bound_float,\
holds,ineq1_printed,ineq1_corrected,ineq2,ineq3,ineq4";

pub fn report_to_csv(report: &Report) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in &report.rows {
        for entry in &row.checks {
            let Some(c) = &entry.check else { continue };
            let witness: Vec<String> = c.witness_m.iter().map(|i| i.to_string()).collect();
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                c.group,
                c.order,
                c.class,
                c.gamma,
                c.m,
                c.n_star,
                witness.join(";"),
                c.bound,
                format_float(c.bound_float),
                c.holds,
                c.chain.ineq1_printed.holds,
                c.chain.ineq1_corrected.holds,
                c.chain.ineq2.holds,
                c.chain.ineq3.holds,
                c.chain.ineq4.holds,
            );
        }
    }
    out
}

fn text_row(out: &mut String, row: &GroupClassReport) {
    if row.vacuous {
        let _ = writeln!(
            out,
            "{} / {}: in class, vacuous (p_X = {})",
            row.group, row.class, row.p_x
        );
        return;
    }
    let threshold = match row.threshold_holds {
        Some(true) => "<=",
        Some(false) => ">",
        None => "?",
    };
    let _ = writeln!(
        out,
        "{} / {}: p_X = {} ({}) {} gamma = {}, eta = {}, loops = {}",
        row.group,
        row.class,
        row.p_x,
        format_float(row.p_x_float),
        threshold,
        row.gamma,
        row.eta,
        row.loops
    );
    for entry in &row.checks {
        match &entry.check {
            Some(c) => {
                let verdict = if c.holds { "ok" } else { "VIOLATION" };
                let chain = &c.chain;
                let _ = write!(
                    out,
                    "  m = {}: n* = {}, |G| = {} vs bound {} ({}): {} \
                     [1p {} 1c {} 2 {} 3 {} 4 {}{}]",
                    c.m,
                    c.n_star,
                    c.order,
                    c.bound,
                    format_float(c.bound_float),
                    verdict,
                    pf(chain.ineq1_printed.holds),
                    pf(chain.ineq1_corrected.holds),
                    pf(chain.ineq2.holds),
                    pf(chain.ineq3.holds),
                    pf(chain.ineq4.holds),
                    if chain.ineq2.boundary { ", kst boundary" } else { "" },
                );
                match (&c.corollary_bound, c.corollary_holds) {
                    (Some(b), Some(h)) => {
                        let _ = writeln!(
                            out,
                            " universal bound {}: {}",
                            b,
                            if h { "ok" } else { "VIOLATION" }
                        );
                    }
                    _ => out.push('\n'),
                }
            }
            None => {
                let _ = writeln!(
                    out,
                    "  m = {}: {}{}",
                    entry.m,
                    entry.status,
                    entry
                        .note
                        .as_deref()
                        .map(|n| format!(" ({n})"))
                        .unwrap_or_default()
                );
            }
        }
    }
}

fn pf(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "fail"
    }
}

pub fn report_to_text(report: &Report) -> String {
    let mut out = String::new();
    let meta = &report.meta;
    let _ = writeln!(out, "{} {} {}", meta.tool, meta.version, meta.command);
    let _ = writeln!(
        out,
        "classes: {}; m range: {}; m cap: {}; order cap: {}{}{}",
        meta.classes.join(","),
        meta.m_range,
        meta.m_cap,
        meta.order_cap,
        meta.max_order
            .map(|m| format!("; max order: {m}"))
            .unwrap_or_default(),
        meta.seed
            .map(|s| format!("; seed: {s}"))
            .unwrap_or_default(),
    );
    let _ = writeln!(out, "conventions:");
    let c = &report.conventions;
    for (key, value) in [
        ("probability", c.probability),
        ("loops", c.loops),
        ("subsets", c.subsets),
        ("arithmetic", c.arithmetic),
    ] {
        let _ = writeln!(out, "  {key}: {value}");
    }
    let _ = writeln!(out, "registry:");
    for info in &report.registry {
        let _ = writeln!(
            out,
            "  {}: gamma = {}, bound base = {}, extension closed = {}",
            info.id, info.gamma, info.bound_base, info.extension_closed
        );
    }
    let _ = writeln!(out, "rows:");
    for row in &report.rows {
        text_row(&mut out, row);
    }
    for err in &report.errors {
        let _ = writeln!(out, "error: {err}");
    }
    let s = &report.summary;
    let _ = writeln!(
        out,
        "summary: {} groups, {} cells ({} vacuous, {} checked), {} bound checks, {} skipped",
        s.groups, s.cells, s.vacuous_cells, s.checked_cells, s.bound_checks, s.skipped_checks
    );
    let _ = writeln!(
        out,
        "violations: bound = {}, universal = {}, threshold = {}, probability one = {}, \
         chain = {}; kst boundary cases = {}",
        s.bound_violations,
        s.corollary_violations,
        s.threshold_violations,
        s.probability_one_mismatches,
        s.chain_anomalies,
        s.kst_boundary_cases
    );
    let _ = writeln!(
        out,
        "{}",
        if report.has_violations() {
            "result: VIOLATIONS FOUND"
        } else {
            "result: all checks passed"
        }
    );
    out
}
