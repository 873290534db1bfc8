//! Command implementations.
//!
//! Each command produces a [`RunReport`] plus a process exit code with the
//! stable meaning: 0 = success / all requested axioms pass, 1 = an axiom or
//! complex precondition failed, 2 = input error (reported via
//! [`CommandError`] instead of a report).

use crate::algebra_file;
use crate::report::{self, RunReport};
use kvp_core::classify;
use kvp_core::complex::ComplexError;
use kvp_core::exactla::parse_rat;
use kvp_core::suite;
use kvp_core::{ce, kv, Axiom, BilinearStructure};
use std::str::FromStr;

/// Exit code 0: success (and, for `check`, all requested axioms pass).
pub const EXIT_OK: i32 = 0;
/// Exit code 1: an axiom failed or a complex precondition was refused.
pub const EXIT_AXIOM_FAIL: i32 = 1;
/// Exit code 2: the input could not be used (parse error, bad flag value,
/// size guard).
pub const EXIT_INPUT_ERROR: i32 = 2;

/// Input-class failure: printed as a diagnostic, process exits with 2.
#[derive(Debug)]
pub struct CommandError(pub String);

impl std::fmt::Display for CommandError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for CommandError {}

fn input_err(msg: impl Into<String>) -> CommandError {
    CommandError(msg.into())
}

/// Which complex a cohomology run works with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComplexKind {
    /// Alternating cochains (adjoint action).
    Ce,
    /// Unrestricted multilinear cochains (KV bimodule action).
    Kv,
}

pub fn parse_axioms(names: &[String]) -> Result<Vec<Axiom>, CommandError> {
    let mut out = Vec::new();
    for name in names {
        for part in name.split(',').filter(|s| !s.trim().is_empty()) {
            let axiom = Axiom::from_str(part.trim()).map_err(input_err)?;
            if !out.contains(&axiom) {
                out.push(axiom);
            }
        }
    }
    Ok(out)
}

fn parse_structure(text: &str) -> Result<BilinearStructure, CommandError> {
    algebra_file::parse(text).map_err(|e| input_err(e.to_string()))
}

/// `check`: audit every axiom, gate the exit code on the requested ones.
pub fn cmd_check(text: &str, requested: &[Axiom]) -> Result<(RunReport, i32), CommandError> {
    let mu = parse_structure(text)?;
    let audit = mu.axiom_audit();
    let mut run = RunReport::new("check");
    run.input = Some(report::input_echo(&mu));
    let section = report::audit_section(&audit, requested);
    let code = if section.requested_pass { EXIT_OK } else { EXIT_AXIOM_FAIL };
    run.audit = Some(section);
    Ok((run, code))
}

/// `cohomology`: per-degree table of the chosen complex. A precondition
/// refusal exits 1 unless `force_matrices` asks for the raw coboundaries,
/// which are then emitted without betti numbers.
pub fn cmd_cohomology(
    text: &str,
    kind: ComplexKind,
    max_q: Option<usize>,
    force_matrices: bool,
) -> Result<(RunReport, i32), CommandError> {
    let mu = parse_structure(text)?;
    let mut run = RunReport::new("cohomology");
    run.input = Some(report::input_echo(&mu));

    let (name, max_q, result) = match kind {
        ComplexKind::Ce => {
            let q = max_q.unwrap_or(mu.dim());
            ("ce", q, ce::complex_report(&mu, q))
        }
        ComplexKind::Kv => {
            let q = max_q.unwrap_or(2);
            ("kv", q, kv::complex_report(&mu, q))
        }
    };

    match result {
        Ok(table) => {
            run.complex = Some(report::ComplexSection {
                complex: name.to_string(),
                max_q,
                refused: None,
                rows: Some(report::complex_rows(&table)),
                matrices: None,
            });
            Ok((run, EXIT_OK))
        }
        Err(e @ ComplexError::SizeGuard { .. }) => Err(input_err(e.to_string())),
        Err(refusal) => {
            let matrices = if force_matrices {
                Some(
                    (0..=max_q)
                        .map(|q| {
                            let m = match kind {
                                ComplexKind::Ce => ce::delta_matrix(&mu, q),
                                ComplexKind::Kv => kv::delta_matrix(&mu, q),
                            };
                            report::matrix_out(q, &m)
                        })
                        .collect(),
                )
            } else {
                None
            };
            let code = if force_matrices { EXIT_OK } else { EXIT_AXIOM_FAIL };
            run.complex = Some(report::ComplexSection {
                complex: name.to_string(),
                max_q,
                refused: Some(refusal.to_string()),
                rows: None,
                matrices,
            });
            Ok((run, code))
        }
    }
}

/// `classify`: constraint system, exact dim-2 variety (when dim = 2), and
/// optionally a grid scan with a pencil closure check over its survivors.
pub fn cmd_classify(
    dim: usize,
    axioms: &[Axiom],
    grid: Option<(i64, i64)>,
    pencil_trials: Option<usize>,
    seed: u64,
) -> Result<(RunReport, i32), CommandError> {
    let system = classify::constraint_system(dim, axioms).map_err(|e| input_err(e.to_string()))?;
    let solve = if dim == 2 {
        Some(classify::dim2_skew_solve(axioms).map_err(|e| input_err(e.to_string()))?)
    } else {
        None
    };

    let mut section = report::classify_section(dim, axioms, &system, solve.as_ref());

    if let Some((bound, denominator)) = grid {
        let survivors =
            classify::grid_scan(dim, bound, denominator, axioms).map_err(|e| input_err(e.to_string()))?;
        if let Some(trials) = pencil_trials {
            let pencil = classify::pencil_closure_check(&survivors, axioms, trials, seed)
                .map_err(|e| input_err(e.to_string()))?;
            section.pencil = Some(report::pencil_out(&pencil, seed));
        }
        section.grid = Some(report::grid_out(bound, denominator, &survivors));
    } else if pencil_trials.is_some() {
        return Err(input_err("--pencil requires --grid to supply the structures"));
    }

    let mut run = RunReport::new("classify");
    run.classify = Some(section);
    Ok((run, EXIT_OK))
}

/// `audit-family`: audit the (x0, y0) member of the dim-2 skew family and,
/// since the family is always a Lie bracket, its alternating-complex table.
pub fn cmd_audit_family(x0: &str, y0: &str) -> Result<(RunReport, i32), CommandError> {
    let x0 = parse_rat(x0).map_err(|e| input_err(format!("--x0: {e}")))?;
    let y0 = parse_rat(y0).map_err(|e| input_err(format!("--y0: {e}")))?;
    let mu = BilinearStructure::dim2_skew(x0, y0);
    let audit = mu.axiom_audit();

    let mut run = RunReport::new("audit-family");
    run.input = Some(report::input_echo(&mu));
    run.audit = Some(report::audit_section(&audit, &[]));
    if audit.passed(Axiom::Skew) && audit.passed(Axiom::Jacobi) {
        let table = ce::complex_report(&mu, 2).expect("skew + Jacobi in dim 2");
        run.complex = Some(report::ComplexSection {
            complex: "ce".to_string(),
            max_q: 2,
            refused: None,
            rows: Some(report::complex_rows(&table)),
            matrices: None,
        });
    }
    Ok((run, EXIT_OK))
}

/// `--paper-suite`: the built-in verification battery.
pub fn cmd_suite() -> (RunReport, i32) {
    let results = suite::run_all();
    let all_pass = results.iter().all(|r| r.passed);
    let mut run = RunReport::new("paper-suite");
    run.suite = Some(report::suite_lines(&results));
    (run, if all_pass { EXIT_OK } else { EXIT_AXIOM_FAIL })
}

/// Parses `B` or `B/D` grid syntax.
pub fn parse_grid(s: &str) -> Result<(i64, i64), CommandError> {
    let (b, d) = match s.split_once('/') {
        Some((b, d)) => (b, d),
        None => (s, "1"),
    };
    let bound: i64 = b
        .trim()
        .parse()
        .map_err(|_| input_err(format!("invalid grid bound `{b}`")))?;
    let den: i64 = d
        .trim()
        .parse()
        .map_err(|_| input_err(format!("invalid grid denominator `{d}`")))?;
    Ok((bound, den))
}
