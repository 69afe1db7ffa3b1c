use std::process::{Command, Output};

use serde_json::Value;

const J1: &str = "x3^2, x3*x2, x2^3";
const J3: &str = "x3^2, x3*x2, x3*x1, x2^5, x2^4*x1";
const J4: &str = "x3, x2^5, x2^4*x1^2";

fn marked(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_marked")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = marked(args);
    assert!(o.status.success(), "{}", stderr(&o));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn analyze_reports_the_invariants() {
    let o = marked(&["analyze", J1]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("reg=3, \u{3c3}=3, \u{3c1}\u{2212}1=-1, p(t)=4t, Gotzmann=6, bound=36, |C\u{303}|=28"));
    let v = json(&["analyze", J4, "--format", "json"]);
    assert_eq!(v["regularity"], 6);
    assert_eq!(v["stable_level"], 5);
    assert_eq!(v["bound"], "72");
    assert_eq!(v["reduced_params"], 64);
}

#[test]
fn domain_errors_exit_with_one() {
    let o = marked(&["check-basis", "x1", "--nvars", "3", "--set", "x1 ="]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("not strongly stable: e+ move x1\u{2192}x2 of x1 leaves the ideal"));
    // strongly stable but not a truncation of its saturation
    let o = marked(&["scheme", "x2, x1^3, x1^2*x0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("not an m-truncation"));
}

#[test]
fn usage_errors_exit_with_two() {
    let o = marked(&["analyze", "x3, x2^"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 1, column 8"));
    assert_eq!(marked(&["scheme", J1, "--pairs", "bogus"]).status.code(), Some(2));
    assert_eq!(marked(&["analyze"]).status.code(), Some(2));
    let o = marked(&["scheme", J3, "--m", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--extended"));
    assert_eq!(marked(&["analyze", "@/nonexistent/ideal.txt"]).status.code(), Some(2));
}

#[test]
fn scheme_json_schema() {
    let v = json(&["scheme", "x3, x2^2", "--m", "2", "--format", "json"]);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["equations", "ideal", "m", "parameters", "stats"]);
    assert_eq!(v["m"], 2);
    assert_eq!(v["ideal"].as_array().unwrap().len(), 5);
    assert_eq!(v["parameters"].as_array().unwrap().len(), 10);
    assert_eq!(v["parameters"][0], "C[x3*x0, x2*x1]");
    let stats = v["stats"].as_object().unwrap();
    let keys: Vec<&str> = stats.keys().map(String::as_str).collect();
    assert_eq!(keys, ["elapsed_ms", "n_equations", "n_pairs", "n_params"]);
    assert_eq!(stats["n_params"], 10);
    assert_eq!(stats["n_equations"].as_u64().unwrap() as usize, v["equations"].as_array().unwrap().len());
}

#[test]
fn scheme_output_is_reproducible() {
    let args = ["scheme", "x3^2, x3*x2, x3*x1^2, x2^4", "--m", "2", "--format", "json", "--no-timing", "--verify", "4"];
    let a = marked(&[&["--threads", "1"][..], &args[..]].concat());
    let b = marked(&[&["--threads", "4"][..], &args[..]].concat());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["stats"]["n_params"], 44);
    assert_eq!(v["stats"]["n_equations"], 64);
    assert_eq!(v["verification"]["disagreements"].as_array().unwrap().len(), 0);
}

#[test]
fn check_basis_reports_the_failing_pair() {
    let o = marked(&["check-basis", "x3, x2^2", "--m", "2", "--set", "x3*x0 = -x1^2", "--oracle"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("verdict: not a marked basis"));
    assert!(out.contains("mode: sm-L1L2"));
    assert!(out.contains("failing pair: L2 ("));
    assert!(out.contains("oracle agrees: true"));
    let v =
        json(&["check-basis", "x3, x2^2", "--m", "2", "--set", "x3*x0 = -x1^2", "--all-failures", "--format", "json"]);
    assert!(v["failures"].as_array().unwrap().iter().any(|f| f["residual"].as_str().unwrap().contains("x1^3")));
    let v = json(&[
        "check-basis",
        "x2, x1^2",
        "--nvars",
        "3",
        "--set",
        "x2 = 2*x1 - x0; x1^2 = 3/2*x1*x0",
        "--mode",
        "v-ek",
        "--format",
        "json",
    ]);
    assert_eq!(v["is_basis"], true);
    assert_eq!(v["mode"], "V-EK");
}

#[test]
fn reduce_prints_the_trace() {
    let o = marked(&["reduce", "x3, x2^2", "--m", "2", "--set", "x3*x0 = -x1^2; x2^2 = x1*x0", "--trace", "x3*x2"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("x3*x2*x0 => x3*x0 * x2  (lift x0^1)"));
    assert!(out.contains("t = 1"));
    assert!(out.contains("reduced = -x2*x1^2"));
    let o = marked(&["reduce", "x3, x2^2", "--m", "2", "--set", "x3*x0 =", "--mode", "v", "--trace", "x3*x2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn compare_truncations_levels() {
    let v = json(&["compare-truncations", J4, "--from", "4", "--to", "7", "--format", "json"]);
    assert_eq!(v["stable_level"], 5);
    let iso: Vec<bool> = v["levels"].as_array().unwrap().iter().map(|l| l["isomorphism"].as_bool().unwrap()).collect();
    assert_eq!(iso, [true, false, true, true]);
    let l6 = &v["levels"][2];
    assert_eq!(l6["identified"].as_array().unwrap().len(), 64);
}

#[test]
fn inputs_from_files() {
    let dir = std::env::temp_dir().join(format!("marked-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let ideal = dir.join("ideal.txt");
    let set = dir.join("set.txt");
    std::fs::write(&ideal, "x3, x2^2\n").unwrap();
    std::fs::write(&set, "# one tail\nx3*x0 = -x1^2\n\nx2^2 =\n").unwrap();
    let o =
        marked(&["check-basis", &format!("@{}", ideal.display()), "--m", "2", "--set", &format!("@{}", set.display())]);
    assert!(stdout(&o).contains("not a marked basis"), "{}", stderr(&o));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn superminimal_reduction_is_guarded() {
    let nt = "x2^3, x2^2*x1, x2*x1^2, x2^2*x0, x2*x1*x0, x1^4, x1^3*x0, x1^2*x0^2";
    let set = "x2*x1*x0 = x1^3; x1^2*x0^2 = x2*x0^3";
    let o = marked(&["reduce", nt, "--set", set, "x2*x1*x0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("not an m-truncation"));
    let o = marked(&["reduce", nt, "--set", set, "x2*x1*x0", "--no-guard", "--max-steps", "1000"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("did not terminate within 1000 steps"));
}
