//! Input language, evaluation and report rendering for `gradedk`.

pub mod ast;
pub mod parse;
pub mod session;

use std::fmt::Write;

use gradedk_core::error::Error;
use gradedk_core::ktheory::{BasisEntry, Report, Verdict};

pub use parse::parse;
pub use session::{Options, Session};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{line}:{col}: parse error: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: undefined name `{name}`")]
    Undefined { line: usize, col: usize, name: String },
    #[error("{line}:{col}: {msg}")]
    Arity { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: {source}")]
    Core { line: usize, col: usize, source: Error },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 1 for a violated invariant, 2 for input and configuration errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core {
                source: Error::Invariant(_) | Error::Internal(_),
                ..
            } => 1,
            _ => 2,
        }
    }
}

/// 0 when no report failed verification, 1 otherwise.
pub fn exit_code(reports: &[Report]) -> i32 {
    if reports.iter().any(|r| r.verdict == Verdict::Fail) {
        1
    } else {
        0
    }
}

fn verdict_word(v: &Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "FAIL",
        Verdict::HypothesisNotMet => "hypothesis not met",
    }
}

fn basis_lines(out: &mut String, side: &str, module: &Option<String>, basis: &[BasisEntry]) {
    if let Some(m) = module {
        let _ = writeln!(out, "  {side}: {m}");
    }
    for b in basis {
        let shifts: Vec<String> = b.shifts.iter().map(|d| d.to_string()).collect();
        let stab: Vec<String> = b.stabilizer.iter().map(|d| d.to_string()).collect();
        let size = b.orbit_size.map_or("infinite".to_string(), |n| n.to_string());
        let _ = writeln!(
            out,
            "    {:<4} shifts {:<20} stabilizer <{}>  orbit {size}",
            b.label,
            shifts.join(" "),
            stab.join(", ")
        );
    }
}

pub fn render_text(r: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}: {}", r.command, verdict_word(&r.verdict));
    for c in &r.hypothesis_checks {
        let mark = if c.passed { "ok" } else { "no" };
        let _ = writeln!(out, "  hypothesis [{mark}] {} {}", c.name, c.detail);
    }
    basis_lines(&mut out, "lhs", &r.lhs_module, &r.lhs_basis);
    basis_lines(&mut out, "rhs", &r.rhs_module, &r.rhs_basis);
    for c in &r.correspondence {
        let _ = writeln!(out, "  {} -> {}({})", c.lhs, c.rhs, c.shift);
    }
    for (k, v) in &r.data {
        let _ = writeln!(out, "  {k}: {v}");
    }
    for c in &r.checks {
        let mark = if c.passed { "ok" } else { "FAIL" };
        if c.detail.is_empty() {
            let _ = writeln!(out, "  [{mark}] {}", c.name);
        } else {
            let _ = writeln!(out, "  [{mark}] {} ({})", c.name, c.detail);
        }
    }
    for s in &r.stages {
        for line in render_text(s).lines() {
            let _ = writeln!(out, "  | {line}");
        }
    }
    out
}

pub fn render_json(reports: &[Report]) -> String {
    serde_json::to_string_pretty(reports).expect("reports serialize")
}
