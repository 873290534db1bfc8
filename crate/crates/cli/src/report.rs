//! The run report: one structured document per invocation, rendered either
//! as a plain-text page or as versioned JSON (`schema_version` 1). Both
//! renderings are produced from the same in-memory value, so every number
//! agrees between them, and all collections are ordered deterministically —
//! repeated runs over the same inputs emit byte-identical reports.

use kvp_core::algebra::{AuditReport, Witness};
use kvp_core::classify::{DiscrepancyFlag, PencilReport, SampleAudit, VarietyReport};
use kvp_core::complex::ComplexReport;
use kvp_core::exactla::{format_rat, Matrix};
use kvp_core::poly::Polynomial;
use kvp_core::suite::CriterionResult;
use kvp_core::{Axiom, BilinearStructure};
use serde::Serialize;
use std::fmt::Write as _;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<InputEcho>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub audit: Option<AuditSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub complex: Option<ComplexSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classify: Option<ClassifySection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suite: Option<Vec<SuiteLine>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct InputEcho {
    pub dim: usize,
    /// Canonical algebra-file text of the input.
    pub canonical: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessOut {
    pub tuple: Vec<usize>,
    pub residual: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerdictOut {
    pub axiom: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessOut>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditSection {
    pub verdicts: Vec<VerdictOut>,
    pub requested: Vec<String>,
    pub requested_pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DegreeRowOut {
    pub q: usize,
    pub dim: usize,
    pub rank: usize,
    pub kernel: usize,
    pub betti: i64,
    pub square_zero_next: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct MatrixOut {
    pub q: usize,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComplexSection {
    pub complex: String,
    pub max_q: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub refused: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rows: Option<Vec<DegreeRowOut>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrices: Option<Vec<MatrixOut>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SampleOut {
    pub x0: String,
    pub y0: String,
    pub in_variety: bool,
    pub passes_requested: bool,
    pub failing: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FlagOut {
    pub claim: String,
    pub computed: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<SampleOut>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GridOut {
    pub bound: i64,
    pub denominator: i64,
    pub survivor_count: usize,
    /// Canonical algebra-file text per survivor.
    pub survivors: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PencilOut {
    pub trials: usize,
    pub seed: u64,
    pub closed: bool,
    pub counterexamples: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassifySection {
    pub dim: usize,
    pub axioms: Vec<String>,
    pub system: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduced_system: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variety: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<Vec<SampleOut>>,
    pub flags: Vec<FlagOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pencil: Option<PencilOut>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteLine {
    pub id: usize,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            input: None,
            audit: None,
            complex: None,
            classify: None,
            suite: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "kvp report (schema {}) — {}", self.schema_version, self.command);
        if let Some(input) = &self.input {
            let _ = writeln!(out, "\ninput (dim {}):", input.dim);
            for line in input.canonical.lines() {
                let _ = writeln!(out, "  {line}");
            }
        }
        if let Some(audit) = &self.audit {
            let _ = writeln!(out, "\naxiom audit:");
            for v in &audit.verdicts {
                let mark = if v.passed { "pass" } else { "FAIL" };
                let _ = write!(out, "  {:<13} {mark}", v.axiom);
                if let Some(w) = &v.witness {
                    let tuple: Vec<String> = w.tuple.iter().map(|t| t.to_string()).collect();
                    let _ = write!(out, "  at ({}) residual ({})", tuple.join(","), w.residual.join(","));
                }
                let _ = writeln!(out);
            }
            if !audit.requested.is_empty() {
                let _ = writeln!(
                    out,
                    "  requested [{}]: {}",
                    audit.requested.join(", "),
                    if audit.requested_pass { "pass" } else { "FAIL" }
                );
            }
        }
        if let Some(complex) = &self.complex {
            let _ = writeln!(out, "\n{} complex (degrees 0..{}):", complex.complex, complex.max_q);
            if let Some(refused) = &complex.refused {
                let _ = writeln!(out, "  refused: {refused}");
            }
            if let Some(rows) = &complex.rows {
                let _ = writeln!(
                    out,
                    "  {:>3} {:>6} {:>6} {:>6} {:>6} {:>7}",
                    "q", "dim", "rank", "ker", "betti", "d.d=0"
                );
                for r in rows {
                    let _ = writeln!(
                        out,
                        "  {:>3} {:>6} {:>6} {:>6} {:>6} {:>7}",
                        r.q,
                        r.dim,
                        r.rank,
                        r.kernel,
                        r.betti,
                        if r.square_zero_next { "yes" } else { "NO" }
                    );
                }
            }
            if let Some(matrices) = &complex.matrices {
                for m in matrices {
                    let _ = writeln!(out, "  delta^{} ({}x{}):", m.q, m.rows, m.cols);
                    for row in &m.entries {
                        let _ = writeln!(out, "    [{}]", row.join(", "));
                    }
                }
            }
        }
        if let Some(classify) = &self.classify {
            let _ = writeln!(
                out,
                "\nclassification (dim {}, axioms [{}]):",
                classify.dim,
                classify.axioms.join(", ")
            );
            let _ = writeln!(out, "  constraint system ({} generators):", classify.system.len());
            for p in &classify.system {
                let _ = writeln!(out, "    {p} = 0");
            }
            if let Some(reduced) = &classify.reduced_system {
                let _ = writeln!(out, "  reduced to (x0, y0) = (v[1][2][1], v[1][2][2]):");
                if reduced.is_empty() {
                    let _ = writeln!(out, "    (no constraints)");
                }
                for p in reduced {
                    let _ = writeln!(out, "    {p} = 0");
                }
            }
            if let Some(variety) = &classify.variety {
                let _ = writeln!(out, "  solution set: {variety}");
            }
            if let Some(samples) = &classify.samples {
                let _ = writeln!(out, "  sample audits:");
                for s in samples {
                    let _ = writeln!(
                        out,
                        "    (x0,y0)=({},{}) in variety: {}; requested axioms: {}{}",
                        s.x0,
                        s.y0,
                        if s.in_variety { "yes" } else { "no" },
                        if s.passes_requested { "pass" } else { "FAIL" },
                        if s.failing.is_empty() {
                            String::new()
                        } else {
                            format!(" (failing: {})", s.failing.join(", "))
                        }
                    );
                }
            }
            for f in &classify.flags {
                let _ = writeln!(out, "  DISCREPANCY: claimed {} but computed {}", f.claim, f.computed);
                if let Some(w) = &f.witness {
                    let _ = writeln!(
                        out,
                        "    witness (x0,y0)=({},{}): in computed variety: {}, failing: [{}]",
                        w.x0,
                        w.y0,
                        if w.in_variety { "yes" } else { "no" },
                        w.failing.join(", ")
                    );
                }
            }
            if let Some(grid) = &classify.grid {
                let _ = writeln!(
                    out,
                    "  grid scan (bound {}, step 1/{}): {} survivor(s) up to scaling",
                    grid.bound, grid.denominator, grid.survivor_count
                );
                for s in &grid.survivors {
                    let one_line = s.trim_end().replace('\n', "; ");
                    let _ = writeln!(out, "    {one_line}");
                }
            }
            if let Some(pencil) = &classify.pencil {
                let _ = writeln!(
                    out,
                    "  pencil closure ({} trials, seed {}): {}",
                    pencil.trials,
                    pencil.seed,
                    if pencil.closed { "closed" } else { "NOT closed" }
                );
                for ce in &pencil.counterexamples {
                    let _ = writeln!(out, "    counterexample: {ce}");
                }
            }
        }
        if let Some(suite) = &self.suite {
            let _ = writeln!(out, "\nverification battery:");
            for line in suite {
                let _ = writeln!(
                    out,
                    "  criterion {}: {} — {} ({})",
                    line.id,
                    if line.passed { "PASS" } else { "FAIL" },
                    line.name,
                    line.detail
                );
            }
        }
        out
    }
}

pub fn input_echo(mu: &BilinearStructure) -> InputEcho {
    InputEcho {
        dim: mu.dim(),
        canonical: crate::algebra_file::print(mu),
    }
}

fn witness_out(w: &Witness) -> WitnessOut {
    WitnessOut {
        tuple: w.tuple.clone(),
        residual: w.residual.iter().map(format_rat).collect(),
    }
}

pub fn audit_section(report: &AuditReport, requested: &[Axiom]) -> AuditSection {
    AuditSection {
        verdicts: report
            .verdicts
            .iter()
            .map(|v| VerdictOut {
                axiom: v.axiom.to_string(),
                passed: v.passed,
                witness: v.witness.as_ref().map(witness_out),
            })
            .collect(),
        requested: requested.iter().map(|a| a.to_string()).collect(),
        requested_pass: report.passes_all(requested),
    }
}

pub fn complex_rows(report: &ComplexReport) -> Vec<DegreeRowOut> {
    report
        .rows
        .iter()
        .map(|r| DegreeRowOut {
            q: r.degree,
            dim: r.dim,
            rank: r.rank,
            kernel: r.kernel,
            betti: r.betti,
            square_zero_next: r.square_zero_next,
        })
        .collect()
}

pub fn matrix_out(q: usize, m: &Matrix) -> MatrixOut {
    MatrixOut {
        q,
        rows: m.rows(),
        cols: m.cols(),
        entries: (0..m.rows())
            .map(|r| (0..m.cols()).map(|c| format_rat(m.at(r, c))).collect())
            .collect(),
    }
}

fn sample_out(s: &SampleAudit) -> SampleOut {
    SampleOut {
        x0: format_rat(&s.x0),
        y0: format_rat(&s.y0),
        in_variety: s.in_variety,
        passes_requested: s.passes_requested,
        failing: s.failing.iter().map(|a| a.to_string()).collect(),
    }
}

fn flag_out(f: &DiscrepancyFlag) -> FlagOut {
    FlagOut {
        claim: f.claim.clone(),
        computed: f.computed.clone(),
        witness: f.witness.as_ref().map(sample_out),
    }
}

pub fn classify_section(
    dim: usize,
    axioms: &[Axiom],
    system: &[Polynomial],
    solve: Option<&VarietyReport>,
) -> ClassifySection {
    let named = |p: &Polynomial| p.to_string();
    ClassifySection {
        dim,
        axioms: axioms.iter().map(|a| a.to_string()).collect(),
        system: system.iter().map(named).collect(),
        reduced_system: solve.map(|r| {
            r.reduced_system
                .iter()
                .map(|p| {
                    p.display_named(&|v| {
                        if v == kvp_core::classify::var_x0() {
                            "x0".to_string()
                        } else if v == kvp_core::classify::var_y0() {
                            "y0".to_string()
                        } else {
                            v.to_string()
                        }
                    })
                })
                .collect()
        }),
        variety: solve.map(|r| r.variety.to_string()),
        samples: solve.map(|r| r.samples.iter().map(sample_out).collect()),
        flags: solve.map_or_else(Vec::new, |r| r.flags.iter().map(flag_out).collect()),
        grid: None,
        pencil: None,
    }
}

pub fn grid_out(bound: i64, denominator: i64, survivors: &[BilinearStructure]) -> GridOut {
    GridOut {
        bound,
        denominator,
        survivor_count: survivors.len(),
        survivors: survivors.iter().map(crate::algebra_file::print).collect(),
    }
}

pub fn pencil_out(report: &PencilReport, seed: u64) -> PencilOut {
    PencilOut {
        trials: report.trials,
        seed,
        closed: report.closed,
        counterexamples: report
            .counterexamples
            .iter()
            .map(|ce| {
                let failing: Vec<String> = ce.failing.iter().map(|a| a.to_string()).collect();
                format!(
                    "mu[{}] + ({})·mu[{}] fails [{}]",
                    ce.left,
                    format_rat(&ce.lambda),
                    ce.right,
                    failing.join(", ")
                )
            })
            .collect(),
    }
}

pub fn suite_lines(results: &[CriterionResult]) -> Vec<SuiteLine> {
    results
        .iter()
        .map(|r| SuiteLine {
            id: r.id,
            name: r.name.to_string(),
            passed: r.passed,
            detail: r.detail.clone(),
        })
        .collect()
}
