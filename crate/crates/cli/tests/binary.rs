use std::io::Write;
use std::process::{Command, Stdio};

fn bookcoh(args: &[&str], input: &str) -> (i32, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_bookcoh"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn exit_codes() {
    assert_eq!(bookcoh(&["dims", "--n", "2"], "").0, 0);
    assert_eq!(bookcoh(&["dims", "--n", "x"], "").0, 2);
    assert_eq!(bookcoh(&["classify", "--n", "2"], "du1 +").0, 2);
}

#[test]
fn classify_pipe() {
    let (code, out) = bookcoh(&["classify", "--n", "2"], "3*dt + u1*du1");
    assert_eq!(code, 0);
    assert_eq!(out, "dt^(|): 3\n");
}

#[test]
fn dims_json_file() {
    let path = std::env::temp_dir().join(format!("bookcoh-dims-{}.json", std::process::id()));
    let (code, _) = bookcoh(&["dims", "--n", "3", "--json", path.to_str().unwrap()], "");
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["totals"], serde_json::json!([1, 4, 3, 0]));
    std::fs::remove_file(path).unwrap();
}
