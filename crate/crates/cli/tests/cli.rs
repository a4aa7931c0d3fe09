use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn revsynth(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_revsynth"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn scratch(name: &str, contents: &str) -> String {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

const FREDKIN: &str = "000 000\n001 001\n010 010\n011 011\n100 100\n101 110\n110 101\n111 111\n";

#[test]
fn odd_input_to_even_backend_exits_2() {
    let spec = scratch("odd.perm", "perm 3\n1 0 2 3 4 5 6 7\n");
    let o = revsynth(&["synth", "--even", &spec]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("permutation is odd"), "{}", stderr(&o));
}

#[test]
fn general_backend_adds_one_borrowed_line() {
    let spec = scratch("general.perm", "perm 3\n3 5 7 6 1 0 2 4\n");
    let out = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("general.net");
    let o = revsynth(&["synth", "--general", &spec, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report = stdout(&o);
    assert!(report.contains("backend: general"));
    assert!(report.contains("width: 4"));
    assert!(report.contains("verdict: pass"));
    let netlist = fs::read_to_string(&out).unwrap();
    assert!(netlist.starts_with("lines 4\n"));
    assert!(netlist.contains("role 4 borrowed\n"));
}

#[test]
fn conservative_backend_on_fredkin_table() {
    let spec = scratch("fredkin.tt", FREDKIN);
    let o = revsynth(&["synth", "--conservative", &spec]);
    assert_eq!(o.status.code(), Some(0));
    // netlist on stdout, report on stderr
    assert!(stdout(&o).starts_with("lines 4\n"));
    assert!(stdout(&o).contains("role 4 ancilla0"));
    assert!(stderr(&o).contains("roles: data=3 ancilla0=1 ancilla1=0 borrowed=0"));
    assert!(stderr(&o).contains("verdict: pass"));
}

#[test]
fn non_conservative_input_exits_2() {
    let spec = scratch("nonconservative.perm", "perm 3\n1 0 2 3 4 5 6 7\n");
    let o = revsynth(&["synth", "--conservative", &spec]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not conservative"));
}

#[test]
fn json_report_mirrors_text() {
    let spec = scratch("json.perm", "perm 3\n0 1 2 3 4 5 7 6\n");
    let o = revsynth(&["synth", "--even", &spec, "--json"]);
    assert_eq!(o.status.code(), Some(2), "a single swap is odd");
    let spec = scratch("json_even.perm", "perm 3\n1 0 3 2 4 5 6 7\n");
    let o = revsynth(&["synth", "--even", &spec, "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stderr(&o)).unwrap();
    assert_eq!(v["backend"], "even");
    assert_eq!(v["width"], 3);
    assert_eq!(v["verdict"]["status"], "pass");
}

#[test]
fn verify_reports_deleted_gate() {
    let spec = scratch("verify.perm", "perm 3\n3 5 7 6 1 0 2 4\n");
    let good = revsynth(&["synth", "--general", &spec]);
    let netlist = stdout(&good);
    let good_path = scratch("verify_good.net", &netlist);
    let o = revsynth(&["verify", &good_path, &spec]);
    assert_eq!(o.status.code(), Some(0));

    let mut lines: Vec<&str> = netlist.lines().collect();
    let first_gate = lines.iter().position(|l| l.starts_with("VTOF")).unwrap();
    lines.remove(first_gate);
    let bad_path = scratch("verify_bad.net", &(lines.join("\n") + "\n"));
    let o = revsynth(&["verify", &bad_path, &spec]);
    assert_eq!(o.status.code(), Some(1));
    assert!(
        stdout(&o).contains("verdict: fail (input"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn verify_width_mismatch_exits_2() {
    let spec = scratch("mismatch.perm", "perm 2\n1 0 2 3\n");
    let net = scratch("mismatch.net", "lines 3\nFRED 1 2 3\n");
    let o = revsynth(&["verify", &net, &spec]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn parse_errors_exit_2() {
    let spec = scratch("broken.perm", "perm 2\n0 1 2\n");
    let o = revsynth(&["synth", "--general", &spec]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line"));
}

#[test]
fn analyze_outputs() {
    let o = revsynth(&["analyze", "independence", "--k", "2", "--m", "6"]);
    assert_eq!(stdout(&o).lines().next(), Some("independent"));
    let o = revsynth(&["analyze", "parity-vector", "--gate", "swap", "--m", "4"]);
    assert_eq!(stdout(&o), "0 1 0 1 0\n");
    let o = revsynth(&[
        "analyze",
        "parity-vector",
        "--gate",
        "cswap",
        "--m",
        "4",
        "--formula",
    ]);
    assert_eq!(stdout(&o), "0 0 1 1 0\n");
    let o = revsynth(&["analyze", "embedded-parity", "--n", "5"]);
    assert_eq!(stdout(&o), "all even\n");
    let o = revsynth(&["analyze", "independence", "--k", "5", "--m", "6"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sample_is_reproducible() {
    let a = revsynth(&[
        "sample",
        "--n",
        "4",
        "--seed",
        "9",
        "--kind",
        "conservative",
    ]);
    let b = revsynth(&[
        "sample",
        "--n",
        "4",
        "--seed",
        "9",
        "--kind",
        "conservative",
    ]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).starts_with("perm 4\n"));
}

#[test]
fn missing_backend_flag_is_usage_error() {
    let spec = scratch("nobackend.perm", "perm 2\n0 1 2 3\n");
    let o = revsynth(&["synth", &spec]);
    assert_eq!(o.status.code(), Some(2));
}
