use cover13::abelian13::SurfaceParams;
use cover13::exactring::FieldSpec;
use cover13::moduli::transform_params;
use serde_json::Value;
use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cover13")).args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf8"),
        String::from_utf8(out.stderr).expect("utf8"),
    )
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.push("--json");
    let (code, out, err) = run(&a);
    let v = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{args:?}: {e}\n{out}\n{err}"));
    (code, v)
}

fn validator() -> jsonschema::Validator {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/schema/report.schema.json")).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).expect("schema compiles")
}

#[test]
fn admissible_parameters_verify() {
    let (code, out, _) = run(&["ring", "verify", "--field", "fp:31", "--alpha", "0,1,1,0", "--beta", "0,1,1,0"]);
    assert_eq!(code, 0, "{out}");
    let (_, v) = run_json(&["ring", "verify", "--field", "fp:31", "--alpha", "0,1,1,0", "--beta", "0,1,1,0"]);
    assert_eq!(v["report"]["homogeneous"], true);
    assert!(v["report"]["equivariance"].as_array().unwrap().iter().all(|r| r["pass"] == true));
}

#[test]
fn moduli_violation_carries_the_residual() {
    let (code, v) = run_json(&["ring", "verify", "--field", "fp:31", "--alpha", "1,0,0,0", "--beta", "0,0,0,1"]);
    assert_eq!(code, 1);
    // 1/3 = 21 in F31
    assert_eq!(v["witness"], "moduli equation residual 21");
    let (code, v) = run_json(&["ring", "verify", "--field", "q", "--alpha", "1,0,0,0", "--beta", "0,0,0,1"]);
    assert_eq!(code, 1);
    assert_eq!(v["witness"], "moduli equation residual 1/3");
    let (code, _, _) = run(&["ring", "build", "--field", "fp:31", "--alpha", "1,0,0,0", "--beta", "0,0,0,1"]);
    assert_eq!(code, 1);
}

#[test]
fn build_prints_one_generator_per_line() {
    let (code, out, _) = run(&["ring", "build", "--field", "q", "--alpha", "2,3,3,5", "--beta", "0,1,1,0", "--chart", "u1"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 9);
    assert!(lines[0].split(" + ").any(|t| t == "y0^2"), "{}", lines[0]);
    assert!(lines[8].split(" + ").any(|t| t == "z2^2"), "{}", lines[8]);
    // chart u1 uses the basis y0, y2, z0, z2
}

#[test]
fn classification_has_nine_rows_in_the_printed_cases() {
    let (code, v) = run_json(&["classify", "twists", "--field", "fp:31"]);
    assert_eq!(code, 0);
    let rows = v["report"].as_array().unwrap();
    assert_eq!(rows.len(), 9);
    let r01 = rows.iter().find(|r| r["m"] == 0 && r["n"] == 1).unwrap();
    assert_eq!(r01["label"], "C0=C2=C3=0");
}

#[test]
fn invalid_input_exits_with_two() {
    for args in [
        vec!["ring", "build", "--bogus"],
        vec!["ring", "verify", "--field", "fp:33", "--alpha", "0,1,1,0", "--beta", "0,1,1,0"],
        vec!["ring", "verify", "--alpha", "0,1,1", "--beta", "0,1,1,0"],
        vec!["ring", "verify", "--alpha", "0,1,x,0", "--beta", "0,1,1,0"],
        vec!["ring", "build", "--alpha", "0,1,1,0", "--beta", "0,1,1,0", "--chart", "u3"],
        vec!["branch", "scan", "--field", "q", "--lambda", "2"],
        vec!["classify", "twists", "--field", "q"],
        vec!["selftest", "--only", "11"],
    ] {
        let (code, _, err) = run(&args);
        assert_eq!(code, 2, "{args:?}: {err}");
        assert!(!err.is_empty());
    }
}

#[test]
fn branch_scan_of_the_bl_family() {
    let (code, v) = run_json(&["branch", "scan", "--field", "fp:109", "--lambda", "2", "--line", "3,5,7;11,2,13"]);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["cube_check"]["cube_divides"], true);
    assert_eq!(v["report"]["alpha"][1], "106");
}

#[test]
fn normalization_over_the_rationals() {
    let base = SurfaceParams::from_i64(FieldSpec::Rationals, [2, 3, 3, 5], [0, 1, 1, 0]);
    let q = FieldSpec::Rationals;
    let g = [[q.from_i64(1), q.from_i64(2)], [q.from_i64(-1), q.from_i64(3)]];
    let moved = transform_params(&base, &g).unwrap();
    let (alpha, beta) = (moved.alpha_strings().join(","), moved.beta_strings().join(","));
    let (code, v) = run_json(&["moduli", "normalize", "--alpha", &alpha, "--beta", &beta]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["report"]["beta"], serde_json::json!(["0", "1", "1", "0"]));
    assert_eq!(v["report"]["substitution_matches"], true);
    // the result lies on the orbit of (2, 3, 5)
    let a3: Vec<&str> = v["report"]["alpha3"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    let (code, _, _) = run(&["moduli", "equivalent", "--a", "2,3,5", "--b", &a3.join(",")]);
    assert_eq!(code, 0);
}

#[test]
fn equivalence_exit_codes() {
    let (code, v) = run_json(&["moduli", "equivalent", "--a", "1,0,0", "--b", "0,0,1"]);
    assert_eq!(code, 0);
    assert!(v["report"]["witness"].is_string());
    let (code, _) = run_json(&["moduli", "equivalent", "--a", "1,0,0", "--b", "0,0,2"]);
    assert_eq!(code, 1);
}

#[test]
fn irregular_relation_violation_fails() {
    let (code, v) = run_json(&["irregular", "build", "--field", "fp:31", "--c1", "x2^2;0;0;0", "--c3", "0;0;0;x0^4"]);
    assert_eq!(code, 1);
    assert!(v["witness"].as_str().unwrap().contains("c13c30"));
    let (code, v) = run_json(&["irregular", "build", "--field", "fp:31", "--c1", "x2^2;0;0;0", "--c3", "0;0;0;0"]);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["degrees"], serde_json::json!([4, 4, 4, 5, 5, 5, 6, 6, 6]));
}

#[test]
fn output_is_reproducible_given_the_seed() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["fiber", "--field", "fp:31", "--alpha", "0,1,1,0", "--beta", "0,1,1,0", "--samples", "4", "--seed", "5"],
        vec!["branch", "scan", "--field", "fp:109", "--lambda", "2", "--seed", "9"],
        vec!["irregular", "build", "--field", "fp:31", "--seed", "3", "--json"],
        vec!["selftest", "--only", "1,5", "--json"],
    ];
    for args in cases {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a, b, "{args:?}");
        let mut threaded = args.clone();
        threaded.extend(["--jobs", "3"]);
        assert_eq!(run(&threaded).1, a.1, "{args:?} with --jobs 3");
    }
    let (_, x, _) = run(&["irregular", "build", "--field", "fp:31", "--seed", "3"]);
    let (_, y, _) = run(&["irregular", "build", "--field", "fp:31", "--seed", "4"]);
    assert_ne!(x, y);
}

#[test]
fn every_json_report_validates() {
    let v = validator();
    let cases: Vec<Vec<&str>> = vec![
        vec!["ring", "build", "--field", "fp:31", "--alpha", "0,1,1,0", "--beta", "0,1,1,0"],
        vec!["ring", "build", "--field", "fp:31", "--alpha", "1,0,0,0", "--beta", "0,0,0,1"],
        vec!["ring", "verify", "--field", "qw", "--alpha", "0,1+w,1+w,0", "--beta", "0,1,1,0", "--chart", "u0"],
        vec!["ring", "verify", "--field", "q", "--alpha", "0,1,1,0", "--beta", "0,1,1,0"],
        vec!["ring", "verify", "--field", "fp:31", "--alpha", "1,0,0,0", "--beta", "0,0,0,1"],
        vec!["fiber", "--field", "fp:31", "--alpha", "0,1,1,0", "--beta", "0,1,1,0", "--samples", "2"],
        vec!["fiber", "--field", "q", "--alpha", "0,1,1,0", "--beta", "0,1,1,0", "--point", "1,2,3"],
        vec!["branch", "scan", "--field", "fp:109", "--lambda", "2"],
        vec!["branch", "scan", "--field", "fp:109", "--alpha", "1,2,2,0", "--beta", "0,1,1,0"],
        vec!["moduli", "invariants", "--alpha", "1,2,3"],
        vec!["moduli", "invariants", "--alpha", "2,3,3,5", "--beta", "0,1,1,0"],
        vec!["moduli", "normalize", "--alpha", "2,3,3,5", "--beta", "0,1,1,0"],
        vec!["moduli", "normalize", "--alpha", "1,2,3,4", "--beta", "1,0,2,1"],
        vec!["moduli", "equivalent", "--a", "1,0,0", "--b", "0,0,1"],
        vec!["moduli", "equivalent", "--a", "1,0,0", "--b", "0,0,2"],
        vec!["classify", "twists", "--field", "qw"],
        vec!["irregular", "build", "--field", "fp:31"],
        vec!["irregular", "build", "--field", "fp:31", "--c1", "x2^2;0;0;0", "--c3", "0;0;0;x0^4"],
        vec!["selftest", "--only", "7,10", "--timings"],
    ];
    for args in cases {
        let (code, report) = run_json(&args);
        assert!(code == 0 || code == 1, "{args:?}: exit {code}");
        let errors: Vec<String> = v.iter_errors(&report).map(|e| format!("{e} at {}", e.instance_path())).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
    }
    // the schema is not vacuous
    let (_, mut report) = run_json(&["moduli", "invariants", "--alpha", "1,2,3"]);
    report["report"]["bielliptic"] = Value::String("no".into());
    assert!(!v.is_valid(&report));
    report["report"] = serde_json::json!({"alpha3": ["1"]});
    assert!(!v.is_valid(&report));
}

#[test]
fn selftest_subset() {
    let (code, out, _) = run(&["selftest", "--only", "1,10"]);
    assert_eq!(code, 0, "{out}");
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines.iter().all(|l| l.starts_with("PASS")));
}
