use std::process::Command;

fn statecheck(args: &[&str]) -> (i32, serde_json::Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_statecheck"))
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .args(args)
        .arg("--json")
        .output()
        .expect("binary runs");
    let report = serde_json::from_slice(&out.stdout).expect("json on stdout");
    (out.status.code().unwrap(), report)
}

#[test]
fn check_accepts_and_rejects() {
    let (code, r) = statecheck(&["check", "corpus/eq-2.6d"]);
    assert_eq!((code, r["status"].as_str()), (0, Some("accepted")));
    let (code, r) = statecheck(&["check", "tests/fixtures/eq-2.1d-modifier"]);
    assert_eq!(code, 1);
    assert_eq!(r["kernel"]["failing_step"], 6);
    assert_eq!(r["erased"]["accepted"], true);
}

#[test]
fn verify_distinguishes_strengths() {
    let (code, r) = statecheck(&["verify", "comp(l[i], u[i]) ~~ id[V[i]]", "--model", "i:3"]);
    assert_eq!((code, r["holds"].as_bool()), (0, Some(true)));
    let (code, r) = statecheck(&["verify", "comp(l[i], u[i]) == id[V[i]]", "--model", "i:2,j:2"]);
    assert_eq!((code, r["holds"].as_bool()), (1, Some(false)));
    assert_ne!(r["counterexample"]["lhs"], r["counterexample"]["rhs"]);
}

#[test]
fn expand_and_erase() {
    let (code, r) = statecheck(&["expand", "comp(l[j], u[i])", "--locations", "i,j", "--simplify"]);
    assert_eq!(code, 0);
    assert_eq!(r["arrow"], "(V[i]*S) -> (V[j]*S)");
    let (code, r) = statecheck(&["erase", "comp(l[i], u[i]) ~~ id[V[i]]"]);
    assert_eq!(code, 0);
    assert_eq!(r["apparent"], "comp(l[i], u[i]) = id[V[i]] : V[i] -> V[i]");
}

#[test]
fn usage_errors_and_cap() {
    let (code, r) = statecheck(&["verify", "l[i"]);
    assert_eq!((code, r["status"].as_str()), (2, Some("error")));
    let (code, _) = statecheck(&["verify", "comp(l[i], u[i]) == id[V[i]]", "--model", "i:3,j:3", "--cap", "2"]);
    assert_eq!(code, 3);
}

#[test]
fn corpus_sweep() {
    let (code, r) = statecheck(&["corpus", "--model-grid", "2x3"]);
    assert_eq!((code, r["status"].as_str()), (0, Some("ok")));
}
