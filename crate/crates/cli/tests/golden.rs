//! Runs the binary on the fixture files and compares stdout with the
//! committed outputs in `fixtures/golden`. Set `TROPCALC_BLESS=1` to rewrite.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tropcalc"))
        .args(args)
        .current_dir(fixtures())
        .env_remove("TROPCALC_CAPS")
        .output()
        .expect("binary runs")
}

fn phi(n: u32) -> String {
    (0..=n).map(|i| format!("{i}:1/{}", 1u64 << i)).collect::<Vec<_>>().join(",")
}

fn cases() -> Vec<(&'static str, Vec<String>)> {
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    vec![
        ("roots_phi4.json", s(&["roots", "--coeffs", &phi(4)])),
        ("truncate_phi20.json", s(&["truncate", "--coeffs", &phi(20), "--eps", "1/4"])),
        ("eval_truncated.json", s(&["eval", "--series", "min{1, x+1/2}", "--params", "x=3/4"])),
        ("check_id.json", s(&["check", "--dialect", "stlc", "id.lam"])),
        ("check_graded.json", s(&["check", "--dialect", "bstlc", "graded.lam", "--ctx", "z:!1 o -o !1 o -o o"])),
        ("interpret_zxx.json", s(&["interpret", "zxx.lam", "--ctx", "x:o, z:o->o->o", "--kmax", "2"])),
        ("interpret_two_paths.json", s(&["interpret", "--dialect", "pcfl", "two_paths.lam"])),
        ("interpret_double.json", s(&["interpret", "--dialect", "pcfl", "double.lam"])),
        ("taylor_zxx.json", s(&["taylor", "zxx.lam", "--ctx", "x:o, z:o->o->o", "--degree", "2"])),
        ("lipschitz_worked.json", s(&["lipschitz", "--series", "3x+z", "--params", "x=1,z=5", "--delta", "1", "--seed", "1"])),
        ("bestcase_nondet.json", s(&["bestcase", "nondet.lam", "--depth", "12"])),
        ("bestcase_prob_false.json", s(&["bestcase", "prob.lam", "--target", "1", "--depth", "20"])),
        ("adequacy_collapse.json", s(&["adequacy", "collapse.lam", "--fixmax", "4", "--depth", "20"])),
        ("mle_rll.json", s(&["mle", "--series", "2a+b"])),
        ("plot_phi4.tsv", s(&["plot", "--coeffs", &phi(4), "--lo", "0", "--hi", "1", "--step", "1/16", "--format", "tsv"])),
    ]
}

#[test]
fn golden_outputs() {
    let bless = std::env::var_os("TROPCALC_BLESS").is_some();
    let mut failures = Vec::new();
    for (name, args) in cases() {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = run(&args);
        assert!(out.status.success(), "{name}: {}", String::from_utf8_lossy(&out.stderr));
        let path = fixtures().join("golden").join(name);
        if bless {
            std::fs::write(&path, &out.stdout).unwrap();
            continue;
        }
        let want = std::fs::read(&path).unwrap_or_else(|_| panic!("missing golden file {name}"));
        if want != out.stdout {
            failures.push(name);
        }
    }
    assert!(failures.is_empty(), "outputs differ from golden files: {failures:?}");
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn worked_values() {
    let roots = run(&["roots", "--coeffs", &phi(4), "--format", "text"]);
    assert_eq!(String::from_utf8_lossy(&roots.stdout).trim(), "1/2 1/4 1/8 1/16");

    assert_eq!(json(&["truncate", "--coeffs", &phi(20), "--eps", "1/4"])["truncated"], "min{1, x+1/2}");
    assert_eq!(json(&["check", "--dialect", "stlc", "id.lam"])["type"], "o -> o");
    assert_eq!(json(&["check", "--dialect", "bstlc", "graded.lam", "--ctx", "z:!1 o -o !1 o -o o"])["type"], "!2 o -o o");

    let p = json(&["mle", "--series", "2a+b"])["p"].as_f64().unwrap();
    assert!((p - 2.0 / 3.0).abs() < 1e-4);

    let l = json(&["lipschitz", "--series", "3x+z", "--params", "x=1,z=5", "--delta", "1", "--seed", "1"]);
    assert_eq!(l["K"], "20");
    let two = json(&["lipschitz", "--series", "3x+z", "--params", "x=1,z=5", "--delta", "1", "--radius", "2"]);
    assert_eq!(two["K"], "16");

    let nd = json(&["bestcase", "nondet.lam", "--depth", "12"]);
    assert_eq!(nd["truncated"], "min{2a+b, 3a}");
    assert_eq!(nd["upper_bound"], false);

    let adequate = json(&["adequacy", "collapse.lam", "--fixmax", "4", "--depth", "20"]);
    assert_eq!((adequate["denotational"].as_str(), adequate["equal"].as_bool()), (Some("a"), Some(true)));

    assert_eq!(json(&["interpret", "--dialect", "pcfl", "double.lam"])["matrix"]["entries"][0]["point"], 6);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["check", "missing.lam"]).status.code(), Some(1));
    assert_eq!(run(&["check", "--dialect", "stlc", "two_paths.lam"]).status.code(), Some(1));
    assert_eq!(run(&["eval", "--series", "x+y", "--params", "x=1"]).status.code(), Some(1));
    assert_eq!(run(&["roots", "--nonsense"]).status.code(), Some(1));
    assert_eq!(run(&["truncate", "--coeffs", "0:1", "--eps", "0"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn seed_fixes_sampling() {
    let args = ["lipschitz", "--series", "min{2x+1, y+3}", "--params", "x=2,y=2", "--seed", "7"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn caps_from_environment() {
    let cmd = |env: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_tropcalc"));
        c.args(["interpret", "zxx.lam", "--ctx", "x:o, z:o->o->o"]).current_dir(fixtures());
        match env {
            Some(v) => c.env("TROPCALC_CAPS", v),
            None => c.env_remove("TROPCALC_CAPS"),
        };
        let out = c.output().unwrap();
        serde_json::from_slice::<Value>(&out.stdout).unwrap()["matrix"]["entries"].as_array().unwrap().len()
    };
    let small = cmd(Some("kmax=1"));
    assert!(small < cmd(None));
    let mut c = Command::new(env!("CARGO_BIN_EXE_tropcalc"));
    let out = c.args(["check", "id.lam"]).env("TROPCALC_CAPS", "kmax=zero").current_dir(fixtures()).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}
