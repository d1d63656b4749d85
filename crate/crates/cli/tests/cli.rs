use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn isets(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isets"))
        .args(args)
        .env_remove("SE_DISCOVERY_JOBS")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_reports_a_witness() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "p.lp", "a | c.\nb.\n");
    let q = write(&dir, "q.lp", "a | b | c.\na | c :- b.\nb :- a, c.\n");
    for engine in ["auto", "exhaustive", "symbolic"] {
        let o = isets(&[
            "check",
            s(&p),
            s(&q),
            "--semantics",
            "lpmln",
            "--engine",
            engine,
        ]);
        assert_eq!(o.status.code(), Some(1), "{engine}");
        let text = stdout(&o);
        assert!(text.contains("not equivalent (lpmln)"), "{text}");
        if engine != "symbolic" {
            assert!(
                text.contains("witness: ({a}, {a, b}) is an HT-model of Q only"),
                "{text}"
            );
        }
    }
    let o = isets(&["check", s(&p), s(&p)]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn check_distinguishes_semantics() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "p.lp", "a :- not a.\n");
    let empty = write(&dir, "empty.lp", "");
    assert_eq!(
        isets(&["check", s(&p), s(&empty), "--semantics", "lpmln"])
            .status
            .code(),
        Some(0)
    );
    let o = isets(&["check", s(&p), s(&empty), "--semantics", "asp"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("is an HT-model of Q only"));
}

#[test]
fn errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.lp", "a :- .\nb |\n");
    let o = isets(&["check", s(&bad), s(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error: "), "{}", stderr(&o));
    let missing = dir.path().join("missing.lp");
    assert_eq!(
        isets(&["check", s(&missing), s(&missing)]).status.code(),
        Some(2)
    );
    assert_eq!(isets(&["check", s(&bad)]).status.code(), Some(2));
}

#[test]
fn discover_prints_summaries() {
    let o = isets(&["discover", "0", "1", "0"]);
    assert!(o.status.success());
    let summary = stderr(&o);
    assert!(
        summary.contains("|MGIC|=120") && summary.contains("|MNSE|=1") && summary.contains("TR=7"),
        "{summary}"
    );
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["shape"], serde_json::json!([0, 1, 0]));
    assert_eq!(report["mode"], "sound");

    let dir = TempDir::new().unwrap();
    let out = dir.path().join("011.json");
    let o = isets(&["discover", "0", "1", "1", "--out", s(&out)]);
    assert!(o.status.success());
    let summary = stdout(&o);
    for part in ["|IS′|=24", "|IS″|=16", "|MGIC|=32", "|MNSE|=18", "TR=7"] {
        assert!(summary.contains(part), "{summary}");
    }
    assert!(out.exists());

    let o = isets(&["discover", "0", "0", "0"]);
    assert!(o.status.success());
    assert!(stderr(&o).contains("|MGIC|=1"));
}

#[test]
fn discover_partial_and_jobs_from_environment() {
    let o = isets(&["discover", "1", "1", "0", "--max-layer", "2"]);
    assert!(stderr(&o).contains("(partial)"), "{}", stderr(&o));
    let one = isets(&["discover", "0", "1", "1", "--jobs", "1"]);
    let env = Command::new(env!("CARGO_BIN_EXE_isets"))
        .args(["discover", "0", "1", "1"])
        .env("SE_DISCOVERY_JOBS", "3")
        .output()
        .unwrap();
    assert!(env.status.success());
    assert_eq!(one.stdout, env.stdout);
    let bad = Command::new(env!("CARGO_BIN_EXE_isets"))
        .args(["discover", "0", "1", "1"])
        .env("SE_DISCOVERY_JOBS", "0")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn discover_resumes_from_a_checkpoint() {
    let dir = TempDir::new().unwrap();
    let cp = dir.path().join("run.jsonl");
    let partial = isets(&[
        "discover",
        "0",
        "1",
        "1",
        "--max-layer",
        "2",
        "--checkpoint",
        s(&cp),
    ]);
    assert!(partial.status.success());
    let resumed = isets(&["discover", "0", "1", "1", "--checkpoint", s(&cp)]);
    let fresh = isets(&["discover", "0", "1", "1"]);
    assert_eq!(resumed.stdout, fresh.stdout);
    let other = isets(&[
        "discover",
        "0",
        "1",
        "1",
        "--mode",
        "conjectural",
        "--checkpoint",
        s(&cp),
    ]);
    assert_eq!(other.status.code(), Some(2));
}

#[test]
fn simplify_prints_formulas() {
    let dir = TempDir::new().unwrap();
    for (shape, expected) in [
        (["0", "1", "0"], "I_4 = ∅ ∨ I_3 ≠ ∅ ∨ I_6 ≠ ∅ ∨ I_7 ≠ ∅\n"),
        (
            ["0", "1", "1"],
            "I_36 ≠ ∅ ∧ I_k = ∅ for k ∉ {9, 13, 18, 36, 41, 45}\n",
        ),
    ] {
        let report = dir.path().join(format!("{}.json", shape.join("")));
        assert!(isets(&[
            "discover",
            shape[0],
            shape[1],
            shape[2],
            "--out",
            s(&report)
        ])
        .status
        .success());
        let o = isets(&["simplify", s(&report)]);
        assert!(o.status.success());
        assert_eq!(stdout(&o), expected);
        let json: serde_json::Value = serde_json::from_str(&stdout(&isets(&[
            "simplify",
            s(&report),
            "--format",
            "json",
        ])))
        .unwrap();
        assert!(json["disjuncts"].is_array());
    }
    let empty = write(
        &dir,
        "empty.json",
        r#"{"shape":[0,1,0],"mode":"sound","algorithm":"basic","mgic":[],"mnse":[],"tr":0,"max_nse":0,"partial":false,
            "stats":{"names":7,"base_names":null,"viable_names":null,"verified":0,"layers":[]}}"#,
    );
    let o = isets(&["simplify", s(&empty)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "");
    let junk = write(&dir, "junk.json", "{}");
    assert_eq!(isets(&["simplify", s(&junk)]).status.code(), Some(2));
}

#[test]
fn transform_edits_a_tuple() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "p.lp", "a | c.\nb.\n");
    let q = write(&dir, "q.lp", "a | b | c.\na | c :- b.\nb :- a, c.\n");
    let o = isets(&[
        "transform",
        s(&p),
        s(&q),
        "--op",
        "s-rd",
        "--iset",
        "I_16674",
        "--atom",
        "c",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(
        stdout(&o),
        format!(
            "% {}\na.\nb.\n% {}\na | b.\na :- b.\nb :- a.\n",
            p.display(),
            q.display()
        )
    );

    let r = write(&dir, "r.lp", "a | c :- b, c.\n");
    let o = isets(&[
        "transform",
        s(&r),
        "--op",
        "s-rd",
        "--iset",
        "6",
        "--atom",
        "c",
    ]);
    assert_eq!(stdout(&o), "a :- b.\n");
    let o = isets(&[
        "transform",
        s(&r),
        "--op",
        "s-ex",
        "--iset",
        "6",
        "--fresh",
        "d",
    ]);
    assert_eq!(stdout(&o), "a | c | d :- c, b, d.\n");
    let o = isets(&["transform", s(&r), "--op", "s-ex", "--iset", "6"]);
    assert_eq!(stdout(&o), "a | c | x0 :- c, b, x0.\n");

    assert_eq!(
        isets(&[
            "transform",
            s(&r),
            "--op",
            "s-rd",
            "--iset",
            "6",
            "--atom",
            "z"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        isets(&[
            "transform",
            s(&r),
            "--op",
            "s-ex",
            "--iset",
            "6",
            "--fresh",
            "a"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        isets(&[
            "transform",
            s(&r),
            "--op",
            "s-rd",
            "--iset",
            "9",
            "--atom",
            "c"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn regress_fast_suite_passes() {
    let o = isets(&["regress", "--suite", "fast"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 4);
    assert!(text.lines().all(|l| l.starts_with("PASS ")), "{text}");
}
