use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn scripts() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scripts")
}

fn gradedk(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_gradedk"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut input = child.stdin.take().unwrap();
    input.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(input);
    child.wait_with_output().unwrap()
}

fn script(name: &str) -> String {
    scripts().join(name).to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn m5_script_passes() {
    let o = gradedk(&["run", &script("m5.gk")], None);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("k0(zero_part(A)): pass\n  rhs: Z^4"));
    assert!(out.contains("k0(A): pass\n  rhs: free of rank 1 over Z[Z]"));
    assert!(out.contains("k0(forget(A)): pass\n  rhs: Z^1"));
    assert!(out.contains("dade(A): hypothesis not met"));
}

#[test]
fn field_override() {
    let o = gradedk(&["--field", "fp:2", "--json", "run", &script("m5.gk")], None);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[1]["rhs_module"], "free of rank 1 over Z[Z]");
    let o = gradedk(&["--field", "fp:4", "run", &script("m5.gk")], None);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn golden_reports() {
    for name in ["m5", "dade", "theorem1", "swan"] {
        let o = gradedk(&["--json", "--seed", "7", "run", &script(&format!("{name}.gk"))], None);
        let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("tests/golden/{name}.json"));
        let got = stdout(&o);
        if std::env::var_os("GRADEDK_BLESS").is_some() {
            std::fs::write(&path, &got).unwrap();
        }
        let want = std::fs::read_to_string(&path).unwrap();
        assert_eq!(got, want, "golden mismatch for {name}");
    }
}

#[test]
fn reports_are_deterministic() {
    let a = gradedk(&["--json", "--seed", "3", "run", &script("swan.gk")], None);
    let b = gradedk(&["--json", "--seed", "3", "run", &script("swan.gk")], None);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn json_schema_fields() {
    let o = gradedk(&["--json", "theorem1", "--name", "B1", &script("theorem1.gk")], None);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let r = &v[0];
    for key in [
        "command",
        "hypothesis_checks",
        "lhs_basis",
        "rhs_basis",
        "correspondence",
        "verdict",
        "seed",
        "version",
    ] {
        assert!(r.get(key).is_some(), "missing {key}");
    }
    assert_eq!(r["verdict"], "pass");
    assert_eq!(r["command"], "theorem1(B1)");
}

#[test]
fn exit_codes() {
    let o = gradedk(&["run", &script("corrupted.gk")], None);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("not idempotent"));

    let o = gradedk(&["run"], Some("k0(C)\n"));
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("1:4: undefined name `C`"));

    let o = gradedk(&["run"], Some("A = matrix(Q, [0, 1]\n"));
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("parse error"));

    let o = gradedk(&["run"], Some("A = poly(Q)\n"));
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("takes 2 arguments, got 1"));
}

#[test]
fn subcommands_read_stdin() {
    let o = gradedk(&["filtration"], Some("A = poly(Q, deg=[1])\nP = free(A, shifts=[0, -2])\n"));
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("jumps: [0,2]"));
    let o = gradedk(&["lemma", "--group", "Z^2"], Some("A = groupalg(Q, Z2)\n"));
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = gradedk(&["nakayama"], Some("P = free(groupalg(Q, Z))\n"));
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("hypothesis not met"));
}
