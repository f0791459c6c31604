//! CLI behavior: golden reports, determinism, exit codes, atomic output,
//! and the parse-print round trip over the shipped corpus.

mod common;

use std::fs;

use pielift::dsl::{parse_files, parse_workspace, print, run_command};

use common::{corpus_dir, corpus_sources};

fn run(args: &[&str]) -> (i32, String) {
    let corpus = corpus_dir();
    let mut argv = vec!["--corpus".to_string(), corpus.to_str().unwrap().to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    run_command(argv)
}

#[test]
fn golden_reports_are_stable() {
    let golden_dir = corpus_dir().join("golden");
    let cases: &[(&str, &[&str])] = &[
        ("pie_check_product.json", &["pie-check", "prod_shape"]),
        ("pie_check_inserter.json", &["pie-check", "ins_shape"]),
        ("pie_check_equifier.json", &["pie-check", "eq_shape"]),
        ("pie_check_inverter.json", &["pie-check", "inv_shape"]),
        ("pie_check_cotensor.json", &["pie-check", "cot_shape"]),
        ("pie_check_comma.json", &["pie-check", "comma_shape"]),
        ("compare_d_ins1.json", &["compare", "d_ins1"]),
        ("limit_d_ins1_oplax.json", &["limit", "d_ins1", "--oplax"]),
        (
            "lift_alg_inserter_lax.json",
            &["lift", "alg_inserter_lax", "--monad", "pointed", "--omega", "l"],
        ),
    ];
    for (file, args) in cases {
        let golden = fs::read_to_string(golden_dir.join(file)).expect("golden file present");
        let (code, report) = run(args);
        assert_eq!(code, 0, "{args:?} exits 0");
        assert_eq!(report, golden, "{args:?} matches {file}");
    }
}

#[test]
fn reports_are_deterministic() {
    let (c1, r1) = run(&["check-all", corpus_dir().to_str().unwrap()]);
    let (c2, r2) = run(&["check-all", corpus_dir().to_str().unwrap()]);
    assert_eq!(c1, 0);
    assert_eq!(c2, 0);
    assert_eq!(r1, r2, "identical inputs must give byte-identical reports");
    let golden = fs::read_to_string(corpus_dir().join("golden/check_all.json")).unwrap();
    assert_eq!(r1, golden, "the full corpus run matches its pinned report");
}

#[test]
fn unknown_entity_is_an_input_error() {
    let (code, report) = run(&["limit", "nonexistent"]);
    assert_eq!(code, 2);
    assert!(report.contains("unknown diagram"));

    let (code, report) = run(&["validate", "two", "nonexistent"]);
    assert_eq!(code, 2);
    assert!(report.contains("unknown entity"));
}

#[test]
fn wrong_monad_flag_is_an_input_error() {
    let (code, report) = run(&["lift", "alg_inserter_lax", "--monad", "identity", "--omega", "l"]);
    assert_eq!(code, 2);
    assert!(report.contains("declared over the `pointed` monad"));
}

#[test]
fn rejected_diagram_reports_non_invertible_canonical() {
    let (code, report) = run(&["lift", "alg_inserter_rejected", "--monad", "pointed", "--omega", "l"]);
    assert_eq!(code, 2);
    assert!(report.contains("NonInvertibleCanonical"));
}

#[test]
fn not_pie_input_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cospan.2cat");
    fs::write(
        &path,
        "twocat cospan {\n  objects: A, A2, B;\n  onecells: f: A -> B, g: A2 -> B;\n  sigma: f, g;\n}\n",
    )
    .unwrap();
    let (code, report) = run(&["pie-check", path.to_str().unwrap()]);
    assert_eq!(code, 1, "a non-PIE pair is a failed verdict");
    assert!(report.contains("\"pie\": false"));
    assert!(report.contains("witness_component"));
}

#[test]
fn parse_error_exits_two_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.2cat");
    fs::write(&path, "category broken {\n  objects: 0, 1;\n  arrows: u: 0 -> 1;\n  compose: u.u = u;\n}\n").unwrap();
    let (code, report) = run(&["pie-check", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(report.contains("non-composable"));
    assert!(report.contains(":4:"), "error names the line of the bad entry: {report}");
}

#[test]
fn out_flag_writes_atomically_and_silently() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let corpus = corpus_dir();
    let mut argv: Vec<String> = vec![
        "--corpus".into(),
        corpus.to_str().unwrap().into(),
        "--out".into(),
        out.to_str().unwrap().into(),
        "pie-check".into(),
        "ins_shape".into(),
    ];
    let (code, stdout) = run_command(argv.drain(..));
    assert_eq!(code, 0);
    assert!(stdout.is_empty(), "report goes to the file, not stdout");
    let written = fs::read_to_string(&out).unwrap();
    let golden = fs::read_to_string(corpus.join("golden/pie_check_inserter.json")).unwrap();
    assert_eq!(written, golden);
    // No leftover temporary files.
    let leftovers: Vec<_> = fs::read_dir(dir.path())
        .unwrap()
        .filter_map(|e| e.ok())
        .filter(|e| e.file_name() != "report.json")
        .collect();
    assert!(leftovers.is_empty(), "no partial files: {leftovers:?}");
}

#[test]
fn corpus_round_trips_through_the_printer() {
    let ws = parse_files(&corpus_sources(), true).expect("corpus parses");
    let printed = print(&ws);
    let ws2 = parse_workspace(&printed).unwrap_or_else(|e| panic!("printed corpus reparses: {e}"));
    assert_eq!(ws, ws2);
    assert_eq!(printed, print(&ws2), "printing is a fixpoint");
}

#[test]
fn weighted_groth_and_pie_build_commands_pass() {
    let (code, report) = run(&["weighted", "w_ins", "d_ins1"]);
    assert_eq!(code, 0, "{report}");
    assert!(report.contains("\"conical_agrees\": true"));

    let (code, report) = run(&["groth", "w_ins"]);
    assert_eq!(code, 0, "{report}");
    assert!(report.contains("\"pie\": true"));

    let (code, report) = run(&["groth", "w_eqz", "--dual"]);
    assert_eq!(code, 0, "structurally valid even though not PIE: {report}");
    assert!(report.contains("\"pie\": false"));

    let (code, report) = run(&["pie-build", "d_comma1", "--oplax"]);
    assert_eq!(code, 0, "{report}");
    assert!(report.contains("\"iso\": true"));
    assert!(report.contains("sigma:g"));
}

#[test]
fn binary_honors_the_corpus_environment_variable() {
    let output = std::process::Command::new(env!("CARGO_BIN_EXE_pielift"))
        .env("PIE_LIFTER_CORPUS", corpus_dir())
        .args(["pie-check", "comma_shape"])
        .output()
        .expect("binary runs");
    assert!(output.status.success(), "{output:?}");
    let stdout = String::from_utf8(output.stdout).unwrap();
    let golden = fs::read_to_string(corpus_dir().join("golden/pie_check_comma.json")).unwrap();
    assert_eq!(stdout, golden);

    // Exit code 2 surfaces through the binary as well.
    let output = std::process::Command::new(env!("CARGO_BIN_EXE_pielift"))
        .env("PIE_LIFTER_CORPUS", corpus_dir())
        .args(["limit", "nonexistent"])
        .output()
        .expect("binary runs");
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn validate_command_reports_every_entity() {
    let (code, report) = run(&["validate"]);
    assert_eq!(code, 0);
    let value: serde_json::Value = serde_json::from_str(&report).unwrap();
    let entities = value["results"]["entities"].as_object().unwrap();
    assert!(entities.len() >= 50, "the corpus declares many entities");
    assert!(entities.values().all(|v| v.as_array().unwrap().is_empty()));
}
