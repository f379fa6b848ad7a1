use std::path::Path;
use std::process::{Command, Output};

use stringy_cli::{parse_rational_function, InstanceDocument};
use stringy_core::instances::{build_instance, build_series_library, InstanceId};
use stringy_core::{rat, RationalFunction};

fn stringy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stringy"))
        .args(args)
        .env_remove("STRINGY_BRUTEFORCE_PRIME")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn export(id: &str, dir: &Path) -> std::path::PathBuf {
    let path = dir.join(format!("{id}.json"));
    let o = stringy(&[
        "export",
        "--instance",
        id,
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    path
}

#[test]
fn verify_n_reports_euler_number() {
    let o = stringy(&["verify", "--instance", "N"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("euler = 784/25"), "{out}");
    assert!(
        out.ends_with("== PASS: 14 passed, 0 failed, 0 skipped\n"),
        "{out}"
    );
}

#[test]
fn verify_report_is_golden() {
    let out = stdout(&stringy(&["verify", "--instance", "N"]));
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/verify_n.txt");
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &out).unwrap();
    }
    assert_eq!(out, std::fs::read_to_string(&path).unwrap());
}

#[test]
fn verify_x_and_m() {
    for id in ["X", "M"] {
        let o = stringy(&["verify", "--instance", id]);
        assert_eq!(code(&o), 0, "{}", stdout(&o));
    }
}

#[test]
fn compute_plain_round_trips_through_the_parser() {
    let o = stringy(&["compute", "--instance", "N"]);
    assert_eq!(code(&o), 0);
    let parsed = parse_rational_function(stdout(&o).trim()).unwrap();
    assert!(parsed.rf_equal(&build_instance(InstanceId::N).unwrap().closed_form));
}

#[test]
fn compute_json_is_deterministic() {
    let a = stdout(&stringy(&["compute", "--instance", "N", "--json"]));
    let b = stdout(&stringy(&["compute", "--instance", "N", "--json"]));
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["variables"], serde_json::json!(["u", "v"]));
    assert_eq!(v["numerator"][0]["exponents"], serde_json::json!([15, 15]));
    let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
    assert_eq!(keys, ["denominator", "numerator", "variables"]);
    assert!(a.find("\"variables\"").unwrap() < a.find("\"numerator\"").unwrap());
}

#[test]
fn compute_latex() {
    let o = stringy(&["compute", "--instance", "N", "--latex"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("\\frac{u^{15}v^{15} + 4u^{14}v^{14}"));
}

#[test]
fn euler_subcommand() {
    assert_eq!(stdout(&stringy(&["euler", "--instance", "N"])), "784/25\n");
    assert_eq!(stdout(&stringy(&["euler", "--instance", "M"])), "0\n");
    assert_eq!(code(&stringy(&["euler", "--instance", "X"])), 2);
}

#[test]
fn exported_instance_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    for id in ["N", "M"] {
        let path = export(id, dir.path());
        let doc = InstanceDocument::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let res = doc.to_resolution().unwrap();
        let inst = build_instance(id.parse().unwrap()).unwrap();
        assert!(res
            .assemble()
            .unwrap()
            .rf_equal(&inst.resolution.assemble().unwrap()));

        let p = path.to_str().unwrap();
        let o = stringy(&["verify", "--file", p, "--check-duality"]);
        assert_eq!(code(&o), 0, "{}", stdout(&o));
        let from_file =
            parse_rational_function(stdout(&stringy(&["compute", "--file", p])).trim()).unwrap();
        assert!(from_file.rf_equal(&inst.closed_form));
    }
    let n = export("N", dir.path());
    assert_eq!(
        stdout(&stringy(&["euler", "--file", n.to_str().unwrap()])),
        "784/25\n"
    );
}

#[test]
fn exporting_x_is_refused() {
    let o = stringy(&["export", "--instance", "X"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("not expressible"));
}

#[test]
fn failing_mutant_exits_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let path = export("N", dir.path());
    let mut doc = InstanceDocument::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let deepest = doc
        .strata
        .iter_mut()
        .find(|s| s.divisors.len() == 3)
        .unwrap();
    deepest.e = format!("{} + q", deepest.e);
    let mutant = dir.path().join("mutant.json");
    std::fs::write(&mutant, doc.to_json()).unwrap();
    let o = stringy(&[
        "verify",
        "--file",
        mutant.to_str().unwrap(),
        "--check-duality",
    ]);
    assert_eq!(code(&o), 1, "{}", stdout(&o));
    assert!(stdout(&o).contains("[FAIL] Poincaré duality (d = 6)"));

    doc.divisors[0].discrepancy = "-1".into();
    std::fs::write(&mutant, doc.to_json()).unwrap();
    let o = stringy(&["verify", "--file", mutant.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("[FAIL]"));
    let o = stringy(&["compute", "--file", mutant.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("log-terminal D1"));
}

#[test]
fn invalid_documents_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{"dimension": 1, "divisors": [], "strata": [{"J": [], "E": "u^-1"}]}"#,
    )
    .unwrap();
    let o = stringy(&["compute", "--file", path.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8_lossy(&o.stderr).to_string();
    assert!(
        err.contains("strata[0].E") && err.contains("column 3"),
        "{err}"
    );

    let o = stringy(&[
        "compute",
        "--file",
        dir.path().join("missing.json").to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 2);
}

#[test]
fn chart_suite_with_explicit_prime() {
    let o = stringy(&["verify", "--charts", "--bruteforce-prime", "5"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("78125 points of F_5^n"), "{out}");
    assert!(!out.contains("2187 points"));
}

#[test]
fn bruteforce_prime_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_stringy"))
        .args(["verify", "--charts"])
        .env("STRINGY_BRUTEFORCE_PRIME", "3")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("2187 points of F_3^n"));
    assert!(!out.contains("78125"));
}

#[test]
fn bruteforce_prime_guards() {
    assert_eq!(
        code(&stringy(&["verify", "--charts", "--bruteforce-prime", "4"])),
        2
    );
    assert_eq!(
        code(&stringy(&[
            "verify",
            "--charts",
            "--bruteforce-prime",
            "11"
        ])),
        2
    );
}

#[test]
fn series_subcommand() {
    let o = stringy(&["series", "--name", "EQ14"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("224*t^6"));
    let o = stringy(&["series", "--name", "hodge-first-exceptional", "--json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(code(&stringy(&["series", "--name", "EQ99"])), 2);
    assert!(stdout(&stringy(&["series"])).contains("EQ18"));
}

#[test]
fn usage_errors() {
    assert_eq!(code(&stringy(&["verify", "--bogus"])), 2);
    assert_eq!(code(&stringy(&["compute"])), 2);
    assert_eq!(code(&stringy(&["compute", "--instance", "Q"])), 2);
    assert_eq!(
        code(&stringy(&[
            "compute",
            "--instance",
            "N",
            "--file",
            "x.json"
        ])),
        2
    );
}

#[test]
fn library_expressions_round_trip() {
    let lib = build_series_library();
    let mut checked = 0;
    for e in lib.entries() {
        let value = e.value.value();
        if value.support_vars().iter().any(|v| v != "u" && v != "v") {
            continue;
        }
        let parsed = parse_rational_function(&value.to_string()).unwrap();
        assert!(parsed.rf_equal(value), "{}", e.name);
        checked += 1;
    }
    assert!(checked >= 10);
    let half: RationalFunction = parse_rational_function("1/2").unwrap();
    assert!(half.rf_equal(&parse_rational_function(&half.to_string()).unwrap()));
    assert_eq!(half.eval(&[rat(0, 1), rat(0, 1)]).unwrap(), Some(rat(1, 2)));
}
