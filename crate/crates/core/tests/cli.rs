//! End-to-end checks of the CLI binary: schema-valid JSON, exit codes,
//! format handling and file output.

use std::path::PathBuf;
use std::process::{Command, Output};

fn hermicode(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hermicode"))
        .args(args)
        .output()
        .expect("binary spawns")
}

fn stdout_of(args: &[&str]) -> String {
    let out = hermicode(args);
    assert!(
        out.status.success(),
        "command {:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 stdout")
}

fn exit_code(args: &[&str]) -> (i32, String) {
    let out = hermicode(args);
    let code = out.status.code().expect("no signal");
    (code, String::from_utf8_lossy(&out.stderr).into_owned())
}

fn load_schema(name: &str) -> serde_json::Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("schemas")
        .join(name);
    let text = std::fs::read_to_string(&path).expect("schema file");
    serde_json::from_str(&text).expect("schema parses")
}

fn assert_valid(schema_name: &str, instance: &serde_json::Value) {
    let schema = load_schema(schema_name);
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    let errors: Vec<String> = validator
        .iter_errors(instance)
        .map(|e| e.to_string())
        .collect();
    assert!(
        errors.is_empty(),
        "schema {} violated: {:?}",
        schema_name,
        errors
    );
}

#[test]
fn json_outputs_validate_against_schemas() {
    let cases: &[(&[&str], &str)] = &[
        (&["zeta", "--q", "3", "--kmax", "4"], "zeta.schema.json"),
        (
            &[
                "code",
                "--q",
                "2",
                "--t",
                "5",
                "--exact-distance",
                "--matrix",
            ],
            "code.schema.json",
        ),
        (&["code", "--q", "3", "--t", "20"], "code.schema.json"),
        (&["code", "--q", "2", "--t", "0"], "code.schema.json"),
        (
            &["prospect", "--q", "8", "--criterion", "exact"],
            "prospect.schema.json",
        ),
        (
            &["prospect", "--q", "4", "--criterion", "prop23"],
            "prospect.schema.json",
        ),
        (
            &["verify-lemma", "--s", "2", "--m", "2"],
            "verify_lemma.schema.json",
        ),
        (
            &["verify-lemma", "--eval", "8", "--s", "1", "--m", "1"],
            "verify_lemma.schema.json",
        ),
        (&["asymptotic", "--q", "16"], "asymptotic.schema.json"),
    ];
    for (args, schema) in cases {
        let text = stdout_of(args);
        let value: serde_json::Value = serde_json::from_str(&text).expect("stdout is json");
        assert_valid(schema, &value);
        assert!(text.ends_with('\n'), "emission ends with a newline");
    }
}

#[test]
fn domain_and_range_errors_exit_2() {
    let cases: &[&[&str]] = &[
        &["zeta", "--q", "6"],
        &["code", "--q", "2", "--t", "8"],
        &["verify-lemma", "--q", "3", "--s", "1", "--m", "1"],
        &["verify-lemma", "--s", "4", "--m", "1"],
        &["verify-lemma", "--s", "2", "--m", "1"],
        &["asymptotic", "--q", "3"],
        &["zeta", "--q", "2", "--format", "yaml"],
        &["prospect", "--q", "2", "--criterion", "fancy"],
        &["prospect", "--q", "2", "--k-min", "0"],
        &["verify-lemma", "--s", "2", "--m", "2", "--format", "csv"],
        &[
            "code", "--q", "2", "--t", "3", "--matrix", "--format", "csv",
        ],
    ];
    for args in cases {
        let (code, stderr) = exit_code(args);
        assert_eq!(code, 2, "args {:?}, stderr: {}", args, stderr);
    }
}

#[test]
fn unknown_flags_are_hard_errors() {
    let (code, stderr) = exit_code(&["zeta", "--q", "2", "--bogus"]);
    assert_eq!(code, 2, "stderr: {}", stderr);
    let (code, _) = exit_code(&["spelunk", "--q", "2"]);
    assert_eq!(code, 2);
}

#[test]
fn size_guard_exits_3_and_names_the_override() {
    let (code, stderr) = exit_code(&["code", "--q", "3", "--t", "12", "--exact-distance"]);
    assert_eq!(code, 3, "stderr: {}", stderr);
    assert!(
        stderr.contains("--force-size"),
        "guard message names the flag: {}",
        stderr
    );
    let (code, stderr) = exit_code(&["prospect", "--q", "64"]);
    assert_eq!(code, 3);
    assert!(stderr.contains("--force-size"), "{}", stderr);
}

#[test]
fn out_flag_writes_the_same_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("zeta.json");
    let on_stdout = stdout_of(&["zeta", "--q", "2", "--kmax", "2"]);
    let out = hermicode(&[
        "zeta",
        "--q",
        "2",
        "--kmax",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty(), "--out silences stdout");
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, on_stdout);
}

#[test]
fn csv_emissions_have_expected_headers() {
    let zeta = stdout_of(&["zeta", "--q", "2", "--kmax", "2", "--format", "csv"]);
    assert_eq!(
        zeta.lines().next().unwrap(),
        "k,a_k,bound_num,bound_den,holds"
    );
    assert_eq!(zeta.lines().count(), 4);

    let code = stdout_of(&["code", "--q", "2", "--t", "5", "--format", "csv"]);
    assert_eq!(code.lines().nth(1).unwrap(), "2,5,8,5,1,3,3,5,,");

    let prospect = stdout_of(&["prospect", "--q", "2", "--format", "csv"]);
    assert_eq!(
        prospect.lines().next().unwrap(),
        "l,t,s,k,d_lower,goppa_d_lower,improvement,criterion"
    );
    assert_eq!(prospect.lines().nth(1).unwrap(), "1,0,1,1,8,7,1,exact");

    let asym = stdout_of(&["asymptotic", "--q", "4", "--format", "csv"]);
    assert!(asym.lines().nth(1).unwrap().starts_with("4,6,64,"));
}

#[test]
fn text_emissions_smoke() {
    let zeta = stdout_of(&["zeta", "--q", "2", "--kmax", "2", "--format", "text"]);
    assert!(zeta.contains("class number h = 9"));
    let prospect = stdout_of(&["prospect", "--q", "2", "--format", "text"]);
    assert!(prospect.contains("best improvement over the Goppa bound: 1"));
    let lemma = stdout_of(&["verify-lemma", "--s", "2", "--m", "2", "--format", "text"]);
    assert!(lemma.contains("PASS"));
}

#[test]
fn defaults_are_json_kmax_10_eval_4() {
    let zeta = stdout_of(&["zeta", "--q", "2"]);
    let v: serde_json::Value = serde_json::from_str(&zeta).unwrap();
    assert_eq!(v["a_table"].as_array().unwrap().len(), 11);
    let lemma = stdout_of(&["verify-lemma", "--s", "1", "--m", "1"]);
    let v: serde_json::Value = serde_json::from_str(&lemma).unwrap();
    assert_eq!(v["n"], 4);
    assert_eq!(v["passed"], true);
}
