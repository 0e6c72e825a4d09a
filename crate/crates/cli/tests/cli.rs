//! End-to-end tests against the built binary: exit codes, byte determinism,
//! output formats and file ingestion.

use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sylowlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 output")
}

#[test]
fn prove_exits_zero_and_reports_the_contradiction() {
    let out = run(&["prove", "--p", "17", "--n", "35"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("595\tCONTRADICTION"));
    assert!(text.contains("overall: CONTRADICTION"));
}

#[test]
fn prove_handles_the_inapplicable_case() {
    let out = run(&["prove", "--p", "5", "--n", "6"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("overall: INAPPLICABLE"));
}

#[test]
fn sylow_report_row() {
    let out = run(&["sylow", "builtin:dodecahedral", "--p", "5", "--tsv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "group\tp\tsylow_order\tcount\tnormalizer_order\tp_core_order\taction_kernel_order"
    );
    assert_eq!(lines.next().unwrap(), "dodecahedral\t5\t5\t6\t20\t1\t2");
}

#[test]
fn scan_flags_35_for_p_17() {
    let out = run(&["scan", "--p", "17", "--max", "40", "--tsv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let pseudo: Vec<&str> = text
        .lines()
        .filter(|l| l.ends_with("pseudo-candidate"))
        .collect();
    assert_eq!(pseudo.len(), 1);
    assert!(pseudo[0].starts_with("35\t"));
}

#[test]
fn reports_are_byte_deterministic() {
    for args in [
        vec!["scan", "--p", "7", "--max", "50"],
        vec!["prove", "--p", "7", "--n", "15"],
        vec!["lemmas", "--suite", "centalt", "--tsv"],
        vec!["info", "builtin:symmetric(4)"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.status.code(), b.status.code());
        assert_eq!(a.stdout, b.stdout, "non-deterministic output for {args:?}");
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["scan", "--p", "9", "--max", "5"]).status.code(), Some(2));
    assert_eq!(run(&["sylow", "builtin:nonsense(3)", "--p", "2"]).status.code(), Some(2));
    assert_eq!(run(&["info", "unprefixed"]).status.code(), Some(2));
    assert_eq!(run(&["lemmas", "--suite", "bogus"]).status.code(), Some(2));
    assert_eq!(run(&["prove", "--p", "4", "--n", "5"]).status.code(), Some(2));
}

#[test]
fn help_exits_zero() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn file_catalog_groups_resolve() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("groups.cat");
    let mut file = std::fs::File::create(&path).unwrap();
    writeln!(
        file,
        "# test catalog\nD7 ; 7 ; (1 2 3 4 5 6 7) , (2 7)(3 6)(4 5) ; 14\nV4 ; 4 ; (1 2)(3 4) , (1 3)(2 4) ; 4"
    )
    .unwrap();
    drop(file);

    let reference = format!("file:{}:D7", path.display());
    let out = run(&["sylow", &reference, "--p", "2", "--tsv"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("D7\t2\t2\t7\t2"));

    let missing = format!("file:{}:Nope", path.display());
    assert_eq!(run(&["info", &missing]).status.code(), Some(2));
}

#[test]
fn bad_catalog_file_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.cat");
    std::fs::write(&path, "X ; 3 ; (1 2 3 4)\n").unwrap();
    let reference = format!("file:{}:X", path.display());
    let out = run(&["info", &reference]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 1"), "{err}");
}

#[test]
fn extra_file_feeds_the_scan() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("extra.txt");
    std::fs::write(&path, "# dodecahedral count\n6\n").unwrap();
    let out = run(&[
        "scan",
        "--p",
        "5",
        "--max",
        "6",
        "--extra",
        path.to_str().unwrap(),
        "--tsv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let six = text.lines().find(|l| l.starts_with("6\t")).unwrap();
    assert!(six.contains("product-attainable"), "{six}");

    let without = run(&["scan", "--p", "5", "--max", "6", "--tsv"]);
    assert!(!stdout(&without)
        .lines()
        .find(|l| l.starts_with("6\t"))
        .unwrap()
        .contains("product-attainable"));
}

#[test]
fn lemmas_all_passes() {
    let out = run(&["lemmas", "--max-order", "300", "--tsv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("0 failed"), "{text}");
}

#[test]
fn selftest_aggregates_every_suite() {
    let out = run(&["selftest", "--tsv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for suite in [
        "congruence",
        "dihedral",
        "centalt",
        "nc",
        "cyc2",
        "brodkey",
        "frobenius",
        "crossval",
        "soundness",
    ] {
        let line = text
            .lines()
            .find(|l| l.starts_with(suite))
            .unwrap_or_else(|| panic!("missing {suite} row in {text}"));
        let fields: Vec<&str> = line.split('\t').collect();
        assert_eq!(fields[2], "0", "suite {suite} reports failures: {line}");
    }
}
