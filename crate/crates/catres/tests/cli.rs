//! The `catres` binary: outputs, exit codes and environment handling.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("corpus")
        .join(name)
}

fn catres(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_catres"))
        .args(args)
        .env_remove("CATRES_THREADS")
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)))
}

fn path(name: &str) -> String {
    corpus(name).display().to_string()
}

#[test]
fn analyze_reports_structure() {
    let out = catres(&["analyze", &path("gentle_f3.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["dim"], 5);
    assert_eq!(v["radical_dims"], serde_json::json!([3, 1, 0]));
    assert_eq!(v["projective_dims"], serde_json::json!([2, 3]));
    assert_eq!(v["primitive_idempotents"], 2);
    assert_eq!(v["self_injective"], false);
    assert_eq!(v["radical_source"], "arrow_ideal");
}

#[test]
fn gldim_of_emitted_auslander_algebra() {
    let out = catres(&[
        "--format",
        "text",
        "gldim",
        &path("auslander_of_x2_f5.json"),
    ]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "finite(2)\n");
    let v = json(&catres(&["gldim", &path("x2_f2.json")]));
    assert_eq!(v["global_dimension"]["verdict"], "infinite");
    assert_eq!(v["global_dimension"]["period"], 1);
}

#[test]
fn emitted_auslander_algebra_matches_the_corpus_copy() {
    let out = catres(&["auslander", "--emit-algebra", &path("x2_f5.json")]);
    assert_eq!(
        out.stdout,
        std::fs::read(corpus("auslander_of_x2_f5.json")).unwrap()
    );
}

#[test]
fn auslander_report() {
    let out = catres(&["auslander", &path("x3_f7.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(
        (
            v["n"].as_u64(),
            v["dim_m"].as_u64(),
            v["dim_tilde"].as_u64()
        ),
        (Some(3), Some(6), Some(14))
    );
    assert_eq!(v["corner_iso_ok"], true);
}

#[test]
fn hom_between_corpus_modules() {
    let v = json(&catres(&[
        "hom",
        &path("regular_x2_f5.json"),
        &path("simple_x2_f5.json"),
    ]));
    assert_eq!(v["dim"], 1);
    let v = json(&catres(&[
        "hom",
        &path("regular_x2_f5.json"),
        &path("regular_x2_f5.json"),
    ]));
    assert_eq!(v["dim"], 2);
}

#[test]
fn functors_compose_back() {
    let out = catres(&["functor", "theta", &path("hom_m_simple_x2_f5.json")]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let back = json(&out);
    let simple: Value =
        serde_json::from_str(&std::fs::read_to_string(corpus("simple_x2_f5.json")).unwrap())
            .unwrap();
    assert_eq!(back, simple);
    let lifted = json(&catres(&[
        "functor",
        "theta-lambda",
        &path("regular_x2_f5.json"),
    ]));
    assert_eq!(lifted["dim"], 3);
    assert_eq!(lifted["algebra"]["auslander_of"], "x2_f5.json");
    let out = catres(&["functor", "theta", &path("simple_x2_f5.json")]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn certify_exit_codes_follow_verdicts() {
    for (name, code, verdict) in [
        ("x2_f2.json", 0, "pass"),
        ("t2_q.json", 2, "degenerate"),
        ("kxk_f5.json", 2, "degenerate"),
    ] {
        let out = catres(&["certify", &path(name), "--seed", "7", "--samples", "10"]);
        assert_eq!(out.status.code(), Some(code), "{name}");
        let v = json(&out);
        assert_eq!(v["verdict"], verdict, "{name}");
        assert_eq!(v["config"]["seed"], 7);
        assert!(v["scope"].as_str().unwrap().contains("Verdier quotient"));
    }
}

#[test]
fn certify_text_summary() {
    let out = catres(&[
        "--format",
        "text",
        "certify",
        &path("x3_f3.json"),
        "--samples",
        "5",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[pass] weakly_crepant"), "{text}");
    assert!(text.ends_with("verdict: Pass\n"));
}

#[test]
fn certify_is_stable_across_thread_counts() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_catres"))
            .args([
                "certify",
                "--samples",
                "12",
                "--seed",
                "3",
                &path("gentle_f3.json"),
            ])
            .env("CATRES_THREADS", threads)
            .output()
            .unwrap()
    };
    let a = run("1");
    assert_eq!(a.stdout, run("3").stdout);
    assert_eq!(a.stdout, run("1").stdout);
    assert_eq!(run("0").status.code(), Some(64));
}

#[test]
fn input_errors_are_located() {
    let dir = std::env::temp_dir().join(format!("catres-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut v: Value =
        serde_json::from_str(&std::fs::read_to_string(corpus("x2_f5.json")).unwrap()).unwrap();
    v["mult"][1] = serde_json::json!([[0, 1]]);
    let bad = dir.join("bad.json");
    std::fs::write(&bad, v.to_string()).unwrap();
    let out = catres(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(65));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("at mult[1]:"), "{err}");

    let mut q: Value =
        serde_json::from_str(&std::fs::read_to_string(corpus("gentle_f3.json")).unwrap()).unwrap();
    q.as_object_mut().unwrap().remove("length_bound");
    std::fs::write(&bad, q.to_string()).unwrap();
    let err = String::from_utf8(catres(&["gldim", bad.to_str().unwrap()]).stderr).unwrap();
    assert!(err.contains("length_bound"), "{err}");

    let out = catres(&["analyze", dir.join("absent.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(65));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn usage_errors() {
    assert_eq!(catres(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(
        catres(&["certify", &path("x2_f2.json"), "--samples", "0"])
            .status
            .code(),
        Some(64)
    );
    assert_eq!(catres(&["--help"]).status.code(), Some(0));
}

#[test]
fn radical_annotation_required_in_small_characteristic() {
    let mut v: Value =
        serde_json::from_str(&std::fs::read_to_string(corpus("x2_f2.json")).unwrap()).unwrap();
    v.as_object_mut().unwrap().remove("radical");
    let e = catres::format::parse_algebra("x2", &v.to_string()).unwrap_err();
    assert!(e.to_string().contains("radical annotation"), "{e}");
}
