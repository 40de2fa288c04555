use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(format!("{name}.toml"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cmfree"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn classify_ringel_665() {
    let out = run(&["classify", path(&fixture("ringel-665")), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["report"]["cmFinite"], true);
    assert_eq!(v["report"]["gorenstein"], false);
    assert_eq!(v["report"]["cmFree"], false);
}

#[test]
fn classify_a2_text_and_json() {
    let out = run(&["classify", path(&fixture("a2"))]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("CM-free     true"), "{text}");
    let v = json(&run(&["classify", path(&fixture("a2")), "--json"]));
    assert_eq!(v["report"]["glDim"], serde_json::json!({"finite": 1}));
}

#[test]
fn input_errors_exit_one() {
    let out = run(&["classify", path(&fixture("bad-sequence"))]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("invalid admissible sequence"));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "kind = \"nakayama-cyclic\"\nvalues = [2]\nextra = true\n").unwrap();
    let out = run(&["classify", path(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("extra") && err.contains("line"), "{err}");

    assert_eq!(run(&["classify", "/nonexistent.toml"]).status.code(), Some(1));
    assert_eq!(
        run(&["classify", path(&fixture("a2")), "--char", "100"]).status.code(),
        Some(1)
    );
}

#[test]
fn reports_are_deterministic() {
    let file = fixture("ringel-8887");
    let args = ["classify", path(&file), "--json", "--certificates"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["certificates"].as_array().unwrap().len(), 10);
    assert!(v.get("timingMs").is_none());
}

#[test]
fn timing_and_characteristic_flags() {
    let v = json(&run(&[
        "classify",
        path(&fixture("dual-numbers")),
        "--json",
        "--timing",
        "--char",
        "101",
    ]));
    assert!(v["timingMs"].is_u64());
    assert_eq!(v["characteristic"], 101);
}

#[test]
fn every_theorem_suite_passes_on_ringel_665() {
    for t in ["free", "exp", "yoneda", "stability", "dif"] {
        let out = run(&["verify", path(&fixture("ringel-665")), "--theorem", t, "--json"]);
        assert_eq!(out.status.code(), Some(0), "{t}");
        let v = json(&out);
        assert_eq!(v["report"]["passed"], true, "{t}");
        assert_eq!(v["report"]["contradiction"], false, "{t}");
    }
}

#[test]
fn verify_free_on_8887_and_dif_on_dual_numbers() {
    let v = json(&run(&[
        "verify",
        path(&fixture("ringel-8887")),
        "--theorem",
        "free",
        "--json",
    ]));
    assert_eq!(v["report"]["passed"], true);
    let v = json(&run(&[
        "verify",
        path(&fixture("dual-numbers")),
        "--theorem",
        "dif",
        "--json",
    ]));
    assert_eq!(v["report"]["passed"], true);
}

#[test]
fn aus_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    // A2 is CM-free, so Aus(A2) has the same Cartan data and is again CM-free
    let once = dir.path().join("aus-a2.toml");
    assert_eq!(
        run(&["aus", path(&fixture("a2")), "--emit", path(&once)]).status.code(),
        Some(0)
    );
    let twice = dir.path().join("aus-aus-a2.toml");
    assert_eq!(
        run(&["aus", path(&once), "--emit", path(&twice)]).status.code(),
        Some(0)
    );
    let v1 = json(&run(&["classify", path(&once), "--json"]));
    let v2 = json(&run(&["classify", path(&twice), "--json"]));
    assert_eq!(v1["report"]["cmFree"], true);
    assert_eq!(
        v1["report"]["ausSummary"]["cartan"],
        v2["report"]["ausSummary"]["cartan"]
    );

    let k = dir.path().join("aus-k.toml");
    run(&["aus", path(&fixture("dual-numbers")), "--emit", path(&k)]);
    let v = json(&run(&["classify", path(&k), "--json"]));
    assert_eq!(v["report"]["glDim"], serde_json::json!({"finite": 2}));

    let r = dir.path().join("aus-665.toml");
    run(&["aus", path(&fixture("ringel-665")), "--emit", path(&r)]);
    let v = json(&run(&["classify", path(&r), "--json"]));
    assert_eq!(v["report"]["cmFreeRefutationEmpty"], true);
}

#[test]
fn aus_of_non_enumerable_algebra_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let r = dir.path().join("aus-665.toml");
    run(&["aus", path(&fixture("ringel-665")), "--emit", path(&r)]);
    let out = run(&["aus", path(&r), "--emit", path(&dir.path().join("x.toml"))]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cannot be enumerated"));
}
