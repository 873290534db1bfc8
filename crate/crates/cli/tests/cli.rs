//! End-to-end tests of the `kvp` binary: exit-code contract, report
//! determinism, JSON schema, and the parse/print round-trip invariant.

use kvp_cli::algebra_file;
use kvp_cli::commands::{self, ComplexKind};
use kvp_core::exactla::Rat;
use kvp_core::{Axiom, BilinearStructure};
use proptest::prelude::*;
use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn kvp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kvp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

#[test]
fn check_zero_structure_passes_everything() {
    let out = kvp(&["check", fixture("zero.alg").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("kv-poisson    pass"), "{text}");
}

#[test]
fn check_family_member_fails_kv_poisson_with_witness() {
    let out = kvp(&[
        "check",
        fixture("family-1-0.alg").to_str().unwrap(),
        "--axioms",
        "kv-poisson",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("requested [kv-poisson]: FAIL"), "{text}");
    assert!(text.contains("kv            FAIL  at (1,2,2)"), "{text}");
}

#[test]
fn check_requested_axioms_that_pass_exit_zero() {
    let out = kvp(&[
        "check",
        fixture("family-1-0.alg").to_str().unwrap(),
        "--axioms",
        "skew,jacobi",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn malformed_file_exits_two_with_diagnostic() {
    let out = kvp(&["check", fixture("bad-index.alg").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2"), "{err}");
    assert!(err.contains("out of range"), "{err}");
}

#[test]
fn unknown_axiom_exits_two() {
    let out = kvp(&[
        "check",
        fixture("zero.alg").to_str().unwrap(),
        "--axioms",
        "associative",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cohomology_tables_for_the_family() {
    let out = kvp(&[
        "cohomology",
        fixture("family-1-0.alg").to_str().unwrap(),
        "--complex",
        "ce",
        "--max-q",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("0      2      2      0      0"), "{text}");

    let out = kvp(&[
        "cohomology",
        fixture("zero.alg").to_str().unwrap(),
        "--complex",
        "kv",
        "--max-q",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    // zero structure: betti = dims (2, 4, 8)
    assert!(text.contains("0      2      0      2      2"), "{text}");
    assert!(text.contains("2      8      0      8      8"), "{text}");
}

#[test]
fn kv_cohomology_refuses_non_kv_input_unless_forced() {
    let file = fixture("family-1-0.alg");
    let out = kvp(&["cohomology", file.to_str().unwrap(), "--complex", "kv"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("refused"), "{}", stdout(&out));

    let out = kvp(&[
        "cohomology",
        file.to_str().unwrap(),
        "--complex",
        "kv",
        "--force-matrices",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("delta^1"), "{text}");
    assert!(!text.contains("betti\n"), "forced output must omit the betti table");
}

#[test]
fn classify_reports_system_variety_and_flag() {
    let out = kvp(&["classify", "--dim", "2", "--axioms", "skew,nilpotent"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("x0^2 = 0"), "{text}");
    assert!(text.contains("x0*y0 = 0"), "{text}");
    assert!(text.contains("y0^2 = 0"), "{text}");
    assert!(text.contains("the origin (0,0) only"), "{text}");
    assert!(text.contains("DISCREPANCY"), "{text}");
}

#[test]
fn classify_dim1_grid_keeps_only_zero() {
    let out = kvp(&["classify", "--dim", "1", "--axioms", "skew", "--grid", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("1 survivor(s)"), "{text}");
}

#[test]
fn classify_grid_guard_exits_two() {
    let out = kvp(&["classify", "--dim", "2", "--axioms", "kv", "--grid", "2/2"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("grid enumeration"), "{err}");
}

#[test]
fn audit_family_prints_audit_and_betti() {
    let out = kvp(&["audit-family", "--x0", "0", "--y0", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("kv-poisson    pass"), "{text}");
    assert!(text.contains("0      2      0      2      2"), "{text}");

    let out = kvp(&["audit-family", "--x0", "2", "--y0", "3"]);
    let text = stdout(&out);
    assert!(text.contains("nilpotent     FAIL"), "{text}");
    // acyclic: betti column all zero
    assert!(text.contains("0      2      2      0      0"), "{text}");
}

#[test]
fn json_reports_are_versioned_and_deterministic() {
    let args = [
        "--json",
        "classify",
        "--dim",
        "2",
        "--axioms",
        "skew,nilpotent",
        "--grid",
        "1",
        "--pencil",
        "25",
    ];
    let first = kvp(&args);
    let second = kvp(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout, "reports must be byte-identical");

    let value: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(value["schema_version"], 1);
    assert_eq!(value["command"], "classify");
    assert_eq!(value["classify"]["variety"], "the origin (0,0) only");
    assert_eq!(value["classify"]["pencil"]["closed"], true);
    assert!(value["classify"]["flags"].as_array().is_some_and(|f| !f.is_empty()));
}

#[test]
fn json_and_text_agree_on_the_numbers() {
    let file = fixture("commutative-nilpotent.alg");
    let json_out = kvp(&["--json", "cohomology", file.to_str().unwrap(), "--complex", "kv"]);
    let text_out = kvp(&["cohomology", file.to_str().unwrap(), "--complex", "kv"]);
    assert_eq!(json_out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_slice(&json_out.stdout).unwrap();
    let rows = value["complex"]["rows"].as_array().unwrap();
    let betti: Vec<i64> = rows.iter().map(|r| r["betti"].as_i64().unwrap()).collect();
    assert_eq!(betti, vec![2, 2, 4]);
    let text = stdout(&text_out);
    for (q, b) in betti.iter().enumerate() {
        let needle = format!("{q} ");
        assert!(text.contains(&needle), "{text}");
        assert!(text.contains(&format!("{b}")), "{text}");
    }
}

#[test]
fn paper_suite_passes() {
    let out = kvp(&["--paper-suite"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for id in 1..=8 {
        assert!(text.contains(&format!("criterion {id}: PASS")), "{text}");
    }
}

#[test]
fn paper_suite_rejects_subcommand_combination() {
    let out = kvp(&["--paper-suite", "classify", "--dim", "1", "--axioms", "skew"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_subcommand_exits_two() {
    let out = kvp(&[]);
    assert_eq!(out.status.code(), Some(2));
}

// Library-level: command functions are the same code the binary runs.

#[test]
fn cmd_cohomology_default_max_q_follows_dim() {
    let text = std::fs::read_to_string(fixture("family-1-0.alg")).unwrap();
    let (report, code) = commands::cmd_cohomology(&text, ComplexKind::Ce, None, false).unwrap();
    assert_eq!(code, 0);
    let section = report.complex.unwrap();
    assert_eq!(section.max_q, 2);
    assert_eq!(section.rows.unwrap().len(), 3);
}

#[test]
fn cmd_check_axiom_parsing_accepts_spec_names() {
    let axioms = commands::parse_axioms(&["skew,leibniz-self".to_string(), "kv-poisson".to_string()])
        .unwrap();
    assert_eq!(axioms, vec![Axiom::Skew, Axiom::LeibnizSelf, Axiom::KvPoisson]);
    assert!(commands::parse_axioms(&["assoc".to_string()]).is_err());
}

proptest! {
    /// parse ∘ print is the identity on structures, and print ∘ parse is
    /// the identity on canonical files.
    #[test]
    fn parse_print_roundtrip(
        dim in 1usize..4,
        cells in proptest::collection::vec((-9i64..=9, 1i64..=4), 27),
    ) {
        let mut mu = BilinearStructure::zero(dim);
        let mut it = cells.iter();
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let (n, d) = it.next().unwrap();
                    mu.set_c(i, j, k, Rat::new((*n).into(), (*d).into()));
                }
            }
        }
        let text = algebra_file::print(&mu);
        let parsed = algebra_file::parse(&text).unwrap();
        prop_assert_eq!(&parsed, &mu);
        prop_assert_eq!(algebra_file::print(&parsed), text);
    }
}
