use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn lcc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lcc"))
        .args(args)
        .current_dir(root())
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    fs::read_to_string(
        Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("tests/golden")
            .join(name),
    )
    .unwrap()
}

#[test]
fn pred_trace_matches_golden() {
    let o = lcc(&[
        "reduce",
        "corpus/terms/pred_s0.lct",
        "--rules",
        "lcminus",
        "--trace",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("pred_s0.trace"));
}

#[test]
fn array_trace_matches_golden() {
    let o = lcc(&["reduce", "corpus/terms/tab.lct", "--trace"]);
    assert_eq!(stdout(&o), golden("tab.trace"));
}

#[test]
fn traces_are_byte_identical_across_runs() {
    for file in ["pred_s0", "tab", "diverge", "omega"] {
        let path = format!("corpus/terms/{file}.lct");
        let args = [
            "reduce", &path, "--rules", "full", "--fuel", "40", "--trace",
        ];
        assert_eq!(lcc(&args).stdout, lcc(&args).stdout, "{file}");
    }
}

#[test]
fn divergence_exhausts_fuel_with_exit_zero() {
    let o = lcc(&[
        "reduce",
        "corpus/terms/diverge.lct",
        "--rules",
        "full",
        "--fuel",
        "100",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("fuel exhausted after 100 step(s)"));
}

#[test]
fn corpus_exit_codes() {
    for (dir, code) in [("positive", 0), ("negative", 1)] {
        let mut files: Vec<_> = fs::read_dir(root().join("corpus/scripts").join(dir))
            .unwrap()
            .map(|e| e.unwrap().path())
            .collect();
        files.sort();
        for f in files {
            let o = lcc(&["check", f.to_str().unwrap()]);
            assert_eq!(o.status.code(), Some(code), "{}", f.display());
        }
    }
}

#[test]
fn rejection_names_node_and_reason() {
    let o = lcc(&["check", "corpus/scripts/negative/cb_missing_branch.lcd"]);
    assert_eq!(
        stdout(&o).trim(),
        "rejected at node 1 (cb): branch index i0 = 2 out of range 1..=1"
    );
}

#[test]
fn parse_and_io_errors_exit_two() {
    assert_eq!(lcc(&["reduce", "no/such/file.lct"]).status.code(), Some(2));
    let dir = tempdir();
    let bad = dir.join("bad.lct");
    fs::write(&bad, r"\x. (x").unwrap();
    let o = lcc(&["nf", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("1:7"));
    let script = dir.join("bad.lcd");
    fs::write(&script, "(nonsense [C <= C])").unwrap();
    assert_eq!(
        lcc(&["check", script.to_str().unwrap()]).status.code(),
        Some(2)
    );
    assert_eq!(lcc(&["subtype", "C ->", "C"]).status.code(), Some(2));
}

fn tempdir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("lcc-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn normal_forms_and_classification() {
    assert_eq!(stdout(&lcc(&["nf", "corpus/terms/pred_s0.lct"])), "Zero\n");
    assert_eq!(
        stdout(&lcc(&["cnf", "corpus/terms/case_lambda_outer.lct"])),
        "\\x. {| C -> D |}. x\n"
    );
    assert_eq!(
        stdout(&lcc(&["classify", "corpus/terms/stuck.lct"])),
        "undefined (match failure at root)\n"
    );
    assert_eq!(
        stdout(&lcc(&["measure", "corpus/terms/omega.lct"])),
        "6 (nodes: 9)\n"
    );
}

#[test]
fn nf_without_normal_form_exits_one() {
    let o = lcc(&["nf", "corpus/terms/omega.lct", "--fuel", "10"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn graph_writes_dot() {
    let out = tempdir().join("diverge.dot");
    let o = lcc(&[
        "graph",
        "corpus/terms/diverge.lct",
        "--rules",
        "full",
        "--max-nodes",
        "50",
        "--dot",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("truncated"));
    let dot = fs::read_to_string(&out).unwrap();
    assert!(dot.starts_with("digraph") || dot.starts_with("// truncated"));
    assert!(dot.contains("->"));
}

#[test]
fn subtype_search() {
    let o = lcc(&["subtype", "forall $X. $X", "C -> D"]);
    assert_eq!(
        stdout(&o),
        "(forall-elim [forall $X. $X <= C -> D] inst={C -> D})\n"
    );
    let o = lcc(&["subtype", "C", "D"]);
    assert_eq!(stdout(&o), "not found (inconclusive)\n");
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn lab_report_and_exit_code() {
    let report = tempdir().join("report.json");
    let o = lcc(&[
        "lab",
        "com-normalization",
        "confluence",
        "--size",
        "4",
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let json = fs::read_to_string(&report).unwrap();
    assert!(json.contains("\"suite\""));
    let o = lcc(&["lab", "commutation-simulation", "--size", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(lcc(&["lab", "no-such-suite"]).status.code(), Some(2));
}
