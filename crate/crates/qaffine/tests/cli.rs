use std::path::PathBuf;
use std::process::{Command, Output};

fn dir(sub: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join(sub)
}

fn data(name: &str) -> String {
    dir("data").join(name).to_string_lossy().into_owned()
}

fn qaffine(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qaffine")).args(args).output().unwrap()
}

fn stdout_ok(args: &[&str]) -> String {
    let out = qaffine(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn golden(name: &str, args: &[&str]) {
    let want = std::fs::read_to_string(dir("golden").join(name)).unwrap();
    assert_eq!(stdout_ok(args), want, "{name}");
}

#[test]
fn qchar_goldens() {
    golden("qchar_sl2.txt", &["qchar", &data("sl2.toml"), "--oracle"]);
    for n in ["1", "2"] {
        let seed = format!("{n}:0");
        golden(&format!("qchar_a2_{n}.txt"), &["qchar", &data("a2.toml"), "--seed", &seed, "--oracle"]);
        golden(&format!("qchar_b2_{n}.txt"), &["qchar", &data("b2.toml"), "--seed", &seed, "--oracle"]);
    }
}

#[test]
fn cartan_and_fusion_goldens() {
    golden("cartan_b2.txt", &["cartan", &data("b2.toml")]);
    golden("fuse_sl2_q2.txt", &["fuse", &data("sl2.toml"), "--seed2", "1:-2"]);
}

#[test]
fn tensor_generic_golden() {
    golden("tensor_generic.txt", &["tensor"]);
}

#[test]
fn tensor_special_ratios() {
    let plus = stdout_ok(&["tensor", "--ab-qpow", "2"]);
    assert!(plus.lines().any(|l| l.starts_with("simplicity\ta=q^2b") && l.contains("submodule")));
    let minus = stdout_ok(&["tensor", "--ab-qpow", "-2"]);
    assert!(minus.contains("q^2 - 1"));
}

#[test]
fn corrupted_tensor_lists_failures() {
    let out = stdout_ok(&["tensor", "--corrupt"]);
    assert!(out.lines().any(|l| l.starts_with("relations\tcorrupted\tFAIL")), "{out}");
}

#[test]
fn identities_report() {
    let out = stdout_ok(&["identities", "--max-s", "3"]);
    assert!(out.lines().all(|l| l.ends_with("pass")));
    assert!(out.lines().any(|l| l.starts_with("jing\ts=3")));
    assert_eq!(qaffine(&["identities", "--max-s", "9"]).status.code(), Some(2));
}

#[test]
fn json_output_parses() {
    let s = stdout_ok(&["qchar", &data("a2.toml"), "--seed", "1:0", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&s).unwrap();
    assert!(v.is_object());
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("qaffine-cli-{}.txt", std::process::id()));
    let p = path.to_string_lossy().into_owned();
    stdout_ok(&["-o", &p, "cartan", &data("b2.toml")]);
    let want = std::fs::read_to_string(dir("golden").join("cartan_b2.txt")).unwrap();
    assert_eq!(std::fs::read_to_string(&path).unwrap(), want);
    std::fs::remove_file(path).unwrap();
}

#[test]
fn exit_codes() {
    let bad = qaffine(&["qchar", &data("bad_seed.toml")]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("config:2:"));
    assert_eq!(qaffine(&["qchar", &data("missing.toml")]).status.code(), Some(2));
    assert_eq!(qaffine(&["qchar", &data("affine_a1.toml"), "--seed", "1:0"]).status.code(), Some(3));
    assert_eq!(qaffine(&["qchar", &data("a2.toml"), "--seed", "x"]).status.code(), Some(2));
}
