use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;
use slicesyl::{DomainMode, SliceFn};
use slicesyl_cli::parse;

fn slicesyl(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_slicesyl")).args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let (code, out, err) = slicesyl(&all);
    let v: Value = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out} {err}"));
    assert_eq!(v["exit_code"], code);
    (code, v)
}

fn elem(v: &Value, mode: DomainMode) -> SliceFn {
    parse(v.as_str().expect("string"), mode).unwrap()
}

fn temp_file(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("slicesyl-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn classify_rank3_product_example() {
    let (code, v) = json(&["classify", "J*i", "1 + 2*J*k", "--mode", "product"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["rank"], 3);
    let cp: Vec<String> = v["result"]["char_poly"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_str().unwrap().replace("/(1)", "").replace(['(', ')'], ""))
        .collect();
    assert_eq!(cp, ["0", "16", "-4", "-4", "1"]);
}

#[test]
fn solve_rank4_example_in_both_modes() {
    for (flag, mode) in [("product", DomainMode::Product), ("slice", DomainMode::Slice)] {
        let (code, v) = json(&["solve", "i", "2*j", "1", "--mode", flag]);
        assert_eq!(code, 0);
        let want = parse("(i - 2*j)/3", mode).unwrap();
        assert_eq!(elem(&v["result"]["chi"], mode), want);
        assert_eq!(v["provenance"]["chi"], "closed-form");
    }
}

#[test]
fn solve_reports_obstruction_with_exit_one() {
    let (code, v) = json(&["solve", "(1-J*i)/2", "-(1-J*i)/2", "1", "--mode", "product"]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "no_solution");
    assert!(v["result"]["obstruction"].is_object());
}

#[test]
fn equiv_idempotents_with_verified_witness() {
    let (f, g) = ("(1-J*i)/2", "(1-J*k)/2");
    let (code, v) = json(&["equiv", f, g, "--mode", "product"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["equivalent"], true);
    let m = DomainMode::Product;
    let (f, g) = (parse(f, m).unwrap(), parse(g, m).unwrap());
    let h = elem(&v["result"]["conjugator"], m);
    assert_eq!(&(&h.star_inverse().unwrap() * &f) * &h, g);
    let sigma = elem(&v["result"]["zero_divisor_intertwiner"], m);
    assert!(sigma.is_zero_divisor());
    assert_eq!(&f * &sigma, &sigma * &g);
}

#[test]
fn equiv_negative_exits_one() {
    let (code, v) = json(&["equiv", "i", "2*j", "--mode", "slice"]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["equivalent"], false);
}

#[test]
fn kernel_tags_zero_divisors() {
    let (code, v) = json(&["kernel", "J*i", "1 + 2*J*k", "--mode", "product"]);
    assert_eq!(code, 0);
    let basis = v["result"]["basis"].as_array().unwrap();
    assert_eq!(basis.len(), 1);
    assert_eq!(basis[0]["zero_divisor"], true);
}

#[test]
fn idem_analyze_verdicts() {
    let (code, _) = json(&["idem-analyze", "(1-J*i)/2", "(1+J*i)/2", "--which", "left", "--mode", "product"]);
    assert_eq!(code, 0);
    let (code, v) = json(&["idem-analyze", "(1-J*i)/2", "(1-J*i)/2", "--which", "ssand", "--mode", "product"]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "condition_fails");
}

#[test]
fn lfg_solve_from_tuple_files() {
    let fs = temp_file("fs", "i\n# comment\n1 + x\n");
    let gs = temp_file("gs", "j\n2\n");
    let (code, v) = json(&["lfg-solve", fs.to_str().unwrap(), gs.to_str().unwrap(), "k", "--mode", "slice"]);
    assert_eq!(code, 0);
    let m = DomainMode::Slice;
    let chi = elem(&v["result"]["chi"], m);
    let lhs = &(&(&SliceFn::i(m) * &chi) * &SliceFn::j(m)) + &(&parse("2 + 2*x", m).unwrap() * &chi);
    assert_eq!(lhs, SliceFn::k(m));

    let bad = temp_file("bad", "i\n(1 +\n");
    let (code, v) = json(&["lfg-solve", bad.to_str().unwrap(), gs.to_str().unwrap(), "k", "--mode", "slice"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["line"], 2);
}

#[test]
fn bad_input_exits_two_with_position() {
    let (code, out, err) = slicesyl(&["classify", "J", "i", "--mode", "slice"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("J is not available"), "{err}");

    let (code, v) = json(&["solve", "i", "j", "(1 +", "--mode", "slice"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "parse");
    assert_eq!(v["error"]["operand"], "b");
    assert_eq!(v["error"]["column"], 5);

    let (code, _, _) = slicesyl(&["classify", "i", "j"]);
    assert_eq!(code, 2);
}

#[test]
fn seeded_json_is_stable() {
    let args = ["oracle-check", "--mode", "product", "--seed", "11", "--pairs", "10", "--points", "5"];
    let (code, a) = json(&args);
    let (_, b) = json(&args);
    assert_eq!(code, 0);
    assert_eq!(a, b);
    assert_eq!(a["seed"], 11);
    assert_eq!(a["result"]["failures"].as_array().unwrap().len(), 0);
}

#[test]
fn envelope_has_fixed_keys() {
    let (_, v) = json(&["classify", "x + i", "j", "--mode", "slice"]);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["command", "exit_code", "inputs", "mode", "provenance", "result", "seed", "status"]);
}
