use std::io::Write;
use std::process::{Command, Output, Stdio};

use sepkit::{emit_graph6, families, gen};

fn sepkit(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_sepkit"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

#[test]
fn usage_errors_exit_with_2() {
    assert_eq!(sepkit(&["no-such-command"], "").status.code(), Some(2));
    assert_eq!(sepkit(&["tk5", "--budget", "lots"], "").status.code(), Some(2));
}

#[test]
fn empty_stream_is_clean() {
    let out = sepkit(&["apex-side"], "");
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
}

#[test]
fn records_round_trip_through_validate() {
    let (g, _) = gen::k4_free_gadget(2);
    let input = format!("{}\n{}\nnot-graph6\n", emit_graph6(&g), emit_graph6(&families::complete(6)));
    let dir = std::env::temp_dir().join(format!("sepkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let certs = dir.join("certs.jsonl");
    let out = sepkit(&["apex-side", "--jobs", "2", "--certificates", certs.to_str().unwrap()], &input);
    assert_eq!(out.status.code(), Some(0));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("holds/iii"), "{stderr}");
    assert!(stderr.contains("line 3"), "{stderr}");
    let text = std::fs::read_to_string(&certs).unwrap();
    assert_eq!(text.lines().count(), 2);
    let check = sepkit(&["validate", certs.to_str().unwrap()], "");
    assert_eq!(check.status.code(), Some(0), "{}", String::from_utf8_lossy(&check.stderr));
    let broken = text.replacen("\"kind\":\"gadget_separation\",\"a\":", "\"kind\":\"gadget_separation\",\"a\":1", 1);
    assert_ne!(broken, text);
    let bad = sepkit(&["validate"], &broken);
    assert_eq!(bad.status.code(), Some(1));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn output_is_byte_identical_across_thread_counts() {
    let input: String = [families::complete(5), families::petersen(), families::icosahedron()]
        .iter()
        .map(|g| emit_graph6(g) + "\n")
        .collect();
    let one = sepkit(&["tk5", "--jobs", "1"], &input);
    let four = sepkit(&["tk5", "--jobs", "4"], &input);
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(String::from_utf8_lossy(&one.stdout).lines().count(), 3);
}
