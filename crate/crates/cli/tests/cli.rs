use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use superglinf::extension::ExtendedElement;
use superglinf::invariants::SpectrumEstimate;
use superglinf::matrix::SuperMatrix;

struct Output {
    stdout: String,
    stderr: String,
    code: i32,
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn run_with_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_superglinf"));
    cmd.args(args).current_dir(golden_dir().join("inputs")).env_remove("SUPERGLINF_SEED");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    Output {
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
        code: out.status.code().unwrap_or(-1),
    }
}

fn run(args: &[&str]) -> Output {
    run_with_env(args, &[])
}

/// Compares against `tests/golden/<name>`; set `UPDATE_GOLDEN=1` to rewrite.
fn golden(name: &str, actual: &str) {
    let path = golden_dir().join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {name}"));
    assert_eq!(actual, expected, "output differs from {name}");
}

fn parse(out: &Output) -> Value {
    let v: Value = serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", out.stdout));
    // what we print is exactly what re-serializing the parsed value gives
    assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", out.stdout);
    v
}

#[test]
fn classify_builtin_and_file() {
    let named = run(&["parity-classify", "p_st"]);
    assert_eq!(named.code, 0);
    let v = parse(&named);
    assert_eq!(v["class"], "Inf");
    assert_eq!(v["counts"]["odd_neg"], "inf");
    let file = run(&["parity-classify", "p_st.json"]);
    assert_eq!(file.stdout, named.stdout);
    golden("classify_p_st.json", &file.stdout);
}

#[test]
fn bases_as_dot_json_and_ascii() {
    let dot = run(&["weyl-bases", "--m", "3", "--n", "3", "--dot"]);
    assert_eq!(dot.code, 0);
    assert!(dot.stdout.starts_with("graph bases_gl_3_3 {"));
    let nodes = dot.stdout.lines().filter(|l| l.contains("[label=") && !l.contains(" -- ")).count();
    assert_eq!(nodes, 20);
    golden("bases_3_3.dot", &dot.stdout);

    for (m, n, count) in [(1, 1, 2), (2, 1, 3), (2, 2, 6), (3, 2, 10), (4, 0, 1)] {
        let out = run(&["weyl-bases", "--m", &m.to_string(), "--n", &n.to_string()]);
        let v = parse(&out);
        assert_eq!(v["count"], count, "gl({m}|{n})");
        assert_eq!(v["connected"], true);
    }
    golden("bases_2_1.txt", &run(&["weyl-bases", "--m", "2", "--n", "1", "--ascii"]).stdout);
}

#[test]
fn spectrum_csv_and_json() {
    let csv = run(&["parity-spectrum", "blocks.json", "--side", "right", "--csv"]);
    assert_eq!(csv.code, 0);
    let lines: Vec<&str> = csv.stdout.lines().collect();
    assert_eq!(lines[0], "lo,hi,density,density_f64");
    assert_eq!(lines.len(), 1 + 14 + 1);
    assert!(lines.last().unwrap().starts_with("# estimate side=right"));
    golden("spectrum_blocks_right.csv", &csv.stdout);

    let json = run(&["parity-spectrum", "p_st", "--side", "left"]);
    let v = parse(&json);
    assert_eq!(v["lower"], "1/2");
    assert_eq!(v["exact"], true);
    let typed: SpectrumEstimate = serde_json::from_str(&json.stdout).unwrap();
    assert_eq!(serde_json::to_string_pretty(&typed).unwrap() + "\n", json.stdout);
}

#[test]
fn equivalence_replays() {
    let out = run(&["parity-equiv", "p_st.json", "shifted.json", "--group", "Sg"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v = parse(&out);
    assert_eq!(v["equivalent"], true);
    assert_eq!(v["replay_verified"], true);
    golden("equiv_p_st_shifted.json", &out.stdout);

    let no = run(&["parity-equiv", "p_st", "p_plus"]);
    assert_eq!(no.code, 0);
    let v = parse(&no);
    assert_eq!(v["equivalent"], false);
    assert_eq!(v["replay_verified"], Value::Null);
}

#[test]
fn bracket_cocycle_and_phi() {
    let c = run(&["cocycle", "e_m10.json", "e_0m1.json"]);
    assert_eq!(c.code, 0);
    assert_eq!(parse(&c)["cocycle"], "-2");

    let b = run(&["bracket", "e_m10.json", "e_0m1.json"]);
    let m: SuperMatrix = serde_json::from_str(&b.stdout).unwrap();
    assert_eq!(serde_json::to_string_pretty(&m).unwrap() + "\n", b.stdout);
    golden("bracket_units.json", &b.stdout);

    let ext = run(&["bracket", "--extended", "e_m10.json", "e_0m1.json"]);
    assert_eq!(parse(&ext)["z"], "-2");

    let there = run(&["phi", "shift:3", "extended.json"]);
    assert_eq!(there.code, 0, "{}", there.stderr);
    golden("phi_shift3.json", &there.stdout);
    let back = run(&["phi", "shift:-3", there.stdout.trim()]);
    let original: ExtendedElement = serde_json::from_str(&std::fs::read_to_string(golden_dir().join("inputs/extended.json")).unwrap()).unwrap();
    let returned: ExtendedElement = serde_json::from_str(&back.stdout).unwrap();
    assert_eq!(returned, original);
}

#[test]
fn coxeter_exit_codes() {
    let ok = run(&["weyl-coxeter", "--m", "2", "--n", "2", "--d-max", "4"]);
    assert_eq!(ok.code, 0);
    assert_eq!(parse(&ok)["pass"], true);
    golden("coxeter_2_2_d4.json", &ok.stdout);

    let red = run(&["weyl-coxeter", "--m", "2", "--n", "1", "--ascii"]);
    assert_eq!(red.code, 1);
    assert!(red.stdout.ends_with("verdict: FAIL\n"));
    golden("coxeter_2_1.txt", &red.stdout);

    let bad = run(&["weyl-coxeter", "--m", "5", "--n", "5"]);
    assert_eq!(bad.code, 2);
    assert!(bad.stderr.contains("size bound"), "{}", bad.stderr);
}

#[test]
fn loop_check_pair_and_trials() {
    let pair = run(&["loop-check", "loop_x.json", "loop_y.json"]);
    assert_eq!(pair.code, 0);
    let v = parse(&pair);
    assert_eq!(v["superdimension"], serde_json::json!([1, 1]));
    assert!(v["checks"].as_object().unwrap().values().all(|c| c == true));
    golden("loop_pair.json", &pair.stdout);
    golden("loop_pair.txt", &run(&["loop-check", "loop_x.json", "loop_y.json", "--ascii"]).stdout);

    let flag = run(&["loop-check", "--trials", "25", "--seed", "11"]);
    let env = run_with_env(&["loop-check", "--trials", "25"], &[("SUPERGLINF_SEED", "11")]);
    assert_eq!(flag.code, 0);
    assert_eq!(flag.stdout, env.stdout);
    assert_eq!(parse(&flag)["failures"], serde_json::json!([]));
    golden("loop_trials_seed11.json", &flag.stdout);

    let lonely = run(&["loop-check", "loop_x.json"]);
    assert_eq!(lonely.code, 2);
}

#[test]
fn subalgebra_checks() {
    for kind in ["b", "d", "pe", "q", "q:1"] {
        let out = run_with_env(&["subalg-check", "--kind", kind, "--trials", "30"], &[("SUPERGLINF_SEED", "5")]);
        assert_eq!(out.code, 0, "{kind}: {}", out.stdout);
        assert_eq!(parse(&out)["seed"], 5);
    }
    let explicit = run(&["subalg-check", "--kind", "b", "e_m10.json", "e_0m1.json"]);
    assert_eq!(explicit.code, 0, "{}", explicit.stderr);
    let v = parse(&explicit);
    assert_eq!(v["a_member"], false);
    assert_eq!(v["checks"]["closure"], true);
    golden("subalg_b_units.json", &explicit.stdout);

    let wrong = run(&["subalg-check", "--kind", "d", "e_m10.json"]);
    assert_eq!(wrong.code, 2);
    assert!(wrong.stderr.contains("incompatible parity function"), "{}", wrong.stderr);
}

#[test]
fn parse_errors_carry_positions() {
    let out = run(&["parity-classify", "{\n  \"window_lo\": 0,\n  \"window\": 7\n}"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("line 3"), "{}", out.stderr);
    let missing = run(&["parity-classify", "absent.json"]);
    assert_eq!(missing.code, 2);
    assert!(missing.stderr.contains("no such file"));
}

#[test]
fn output_is_deterministic() {
    let args = ["subalg-check", "--kind", "pe", "--trials", "20", "--seed", "9"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["parity-equiv", "shifted.json", "p_st.json"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}
