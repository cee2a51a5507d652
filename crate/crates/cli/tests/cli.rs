use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn slp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slp")).args(args).output().unwrap()
}

fn code(args: &[&str]) -> i32 {
    slp(args).status.code().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = slp(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap().trim_end().to_string()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = slp(&full);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    (out.status.code().unwrap(), v)
}

#[test]
fn verdict_exit_codes() {
    let f8 = fixture("f8.slp");
    assert_eq!(code(&["slp", "equal", &f8, &f8]), 0);
    assert_eq!(code(&["slp", "equal", &f8, &fixture("f8_flat.slp")]), 0);
    assert_eq!(code(&["slp", "equal", &f8, &fixture("trunc.slp")]), 1);
    assert_eq!(code(&["fg", "trivial", &fixture("cancel.slp")]), 0);
    assert_eq!(code(&["fg", "trivial", &fixture("conj_b.slp")]), 1);
    assert_eq!(code(&["aut", "trivial", "mul1,2"]), 1);
    assert_eq!(code(&["aut", "trivial", "mul1,2 mul1,2^-1"]), 0);
    assert_eq!(code(&["braid", "trivial", "--strands", "3", "s1 s2 s1 s2^-1 s1^-1 s2^-1"]), 0);
    assert_eq!(code(&["braid", "trivial", "--strands", "3", "s1"]), 1);
    assert_eq!(code(&["fbc", "trivial", "--phi", &fixture("phi.map"), "t a t' b'"]), 0);
    assert_eq!(code(&["fbc", "trivial", "--phi", &fixture("phi.map"), "t a t' a'"]), 1);
}

#[test]
fn usage_and_runtime_errors() {
    assert_eq!(code(&["slp", "frobnicate"]), 2);
    assert_eq!(code(&["braid", "trivial", "s1"]), 2);
    assert_eq!(code(&["slp", "length", "/nonexistent/file.slp"]), 3);
    assert_eq!(code(&["braid", "trivial", "--strands", "3", "s3"]), 3);
    assert_eq!(code(&["slp", "normalize", &fixture("trunc.slp")]), 3);
    assert_eq!(code(&["--max-decompress", "5", "slp", "decompress", &fixture("f8.slp")]), 3);
    assert_eq!(code(&["mcg", "handlebody", "--genus", "2", "Tb1"]), 3);
}

#[test]
fn queries() {
    let f8 = fixture("f8.slp");
    assert_eq!(stdout(&["slp", "length", &f8]), "21");
    assert_eq!(stdout(&["slp", "char-at", &f8, "1"]), "b");
    assert_eq!(stdout(&["slp", "char-at", &f8, "-1"]), "a");
    assert_eq!(stdout(&["slp", "substring", &f8, "2", "6"]), "a a b a");
    assert_eq!(stdout(&["slp", "substring", &f8, "-4", "-1"]), "b a b");
    assert_eq!(stdout(&["slp", "lcp", &f8, &fixture("trunc.slp")]), "0");
    assert_eq!(stdout(&["slp", "lcp", &f8, &fixture("f8_flat.slp")]), "21");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("image.slp");
    std::fs::write(&path, stdout(&["aut", "apply", "mul1,2 inv2", "a1 a2"])).unwrap();
    assert_eq!(stdout(&["slp", "decompress", &path.to_string_lossy()]), "a1 a2 a2'");
}

#[test]
fn printed_programs_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [&[&str]; 4] = [
        &["slp", "invert", &fixture("conj_a.slp")],
        &["slp", "normalize", "--eliminate-truncations", &fixture("trunc.slp")],
        &["slp", "project", "--keep", "b", &fixture("f8.slp")],
        &["fg", "reduce", &fixture("conj_a.slp")],
    ];
    let expect = ["b a b' b' a' a' b'", "b a b a a", "b b b b b b b b", "b a a b b a' b'"];
    for (args, want) in cases.iter().zip(expect) {
        let printed = stdout(args);
        let path = dir.path().join("out.slp");
        std::fs::write(&path, &printed).unwrap();
        let p = path.to_string_lossy();
        assert_eq!(stdout(&["slp", "decompress", &p]), want, "{args:?}");
        let reprinted = stdout(&["slp", "normalize", &p]);
        std::fs::write(&path, &reprinted).unwrap();
        assert_eq!(stdout(&["slp", "decompress", &p]), want);
    }
}

#[test]
fn cyclic_reduction_prints_both_programs() {
    let out = stdout(&["fg", "cyclic-reduce", &fixture("conj_a.slp")]);
    assert!(out.starts_with("# conjugator\n"));
    assert!(out.contains("\n# core\n"));
    let (c, v) = json(&["fg", "cyclic-reduce", &fixture("conj_a.slp")]);
    assert_eq!(c, 0);
    assert_eq!(v["stats"]["k"], "2");
    assert_eq!(v["stats"]["core_length"], "3");
}

#[test]
fn json_schema_is_stable() {
    let f8 = fixture("f8.slp");
    let runs: [(&[&str], i32); 7] = [
        (&["slp", "equal", &f8, &f8], 0),
        (&["slp", "length", &f8], 0),
        (&["slp", "invert", &fixture("conj_a.slp")], 0),
        (&["fg", "trivial", &fixture("cancel.slp")], 0),
        (&["fg", "conjugate", &fixture("conj_a.slp"), &fixture("conj_b.slp")], 0),
        (&["aut", "trivial", "mul1,2"], 1),
        (&["aut", "inn", "mul1,2 mul2,1^-1 inv2 mul1,2^-1 inv2"], 1),
    ];
    for (args, want) in runs {
        let (c, v) = json(args);
        assert_eq!(c, want, "{args:?}");
        let obj = v.as_object().unwrap();
        let keys: Vec<&str> = obj.keys().map(String::as_str).collect();
        assert_eq!(keys, ["verdict", "witness", "stats"], "{args:?}");
        assert!(v["verdict"].is_boolean() || v["verdict"].is_null());
        assert!(v["witness"].is_string() || v["witness"].is_null());
        assert!(v["stats"].is_object());
    }
}

#[test]
fn json_golden() {
    let f8 = fixture("f8.slp");
    let out = slp(&["--json", "slp", "length", &f8]);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "{\"verdict\":null,\"witness\":null,\"stats\":{\"value\":\"21\"}}\n"
    );
    let out = slp(&["--json", "fg", "trivial", &fixture("cancel.slp")]);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "{\"verdict\":true,\"witness\":null,\"stats\":{}}\n"
    );
    let (_, v) = json(&["fg", "conjugate", &fixture("conj_a.slp"), &fixture("conj_b.slp")]);
    assert_eq!(v["verdict"], true);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("u.slp");
    std::fs::write(&path, v["witness"].as_str().unwrap()).unwrap();
    assert_eq!(stdout(&["slp", "decompress", &path.to_string_lossy()]), "b a b'");
}

#[test]
fn trace_goes_to_stderr_or_stats() {
    let f8 = fixture("f8.slp");
    let flat = fixture("f8_flat.slp");
    let out = slp(&["--trace", "slp", "equal", &f8, &flat]);
    assert_eq!(out.status.code(), Some(0));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.lines().next().unwrap().starts_with("round 1: o="));
    let (_, v) = json(&["--trace", "slp", "equal", &f8, &flat]);
    let lines = v["stats"]["trace"].as_array().unwrap();
    assert!(!lines.is_empty());
    assert!(lines.iter().all(|l| l.as_str().unwrap().contains("|Γ|=")));
    assert_eq!(v["stats"]["size_bound_holds"], true);
}

#[test]
fn mapping_class_verbs() {
    let table = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", "genus2_humphries.map"]
        .iter()
        .collect::<PathBuf>();
    let t = table.to_string_lossy();
    assert_eq!(code(&["mcg", "handlebody", "--genus", "2", "--actions", &t, "Tb1"]), 0);
    assert_eq!(code(&["mcg", "handlebody", "--genus", "2", "--actions", &t, "Ta1"]), 1);
    assert_eq!(code(&["mcg", "handlebody", "--genus", "2", "--actions", &t, "Ta1 Ta1^-1"]), 0);
    assert_eq!(code(&["mcg", "heegaard", "--genus", "2", "--actions", &t, "Tb1"]), 1);
    assert_eq!(code(&["mcg", "punctured-disk", "mul1,2"]), 1);
    assert_eq!(code(&["mcg", "punctured-disk", "inv1 inv1"]), 0);
}
