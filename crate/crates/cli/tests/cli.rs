//! End-to-end checks of the binary: golden outputs, reproducibility and
//! exit codes.

use std::process::{Command, Output};

fn ramdyn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ramdyn"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn example_q1_golden() {
    let out = ramdyn(&["example", "q1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for line in [
        "i0_reduced=2",
        "i1_reduced=17",
        "v_lambda=1",
        "bound=1/5",
        "valuation=1/5 count=5",
        "three_ramified_reduction=false",
        "all_on_sphere=true",
        "verdict=pass",
    ] {
        assert!(text.contains(line), "missing {line:?} in:\n{text}");
    }
}

#[test]
fn example_q2_golden() {
    let out = ramdyn(&["example", "q2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("i1_reduced=27"));
    assert!(text.contains("all_on_sphere=false"));
    assert!(text.contains("verdict=pass"));
}

#[test]
fn ramify_p3_sequence() {
    let out = ramdyn(&["ramify", "--p", "3", "--f", "z+z^3+z^4", "--depth", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("n=0 i_n=2 mu_n=1"));
    assert!(text.contains("n=1 i_n=8 mu_n=1"));
    assert!(text.contains("n=2 i_n=26 mu_n=1"));
}

#[test]
fn lemmas_verdict_pass() {
    let out = ramdyn(&["lemmas", "--p", "7"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).ends_with("verdict=pass\n"));
}

#[test]
fn identical_jobs_are_byte_identical() {
    let a = ramdyn(&["fuzz", "--p", "5", "--fuzz", "25", "--seed", "42"]);
    let b = ramdyn(&["fuzz", "--p", "5", "--fuzz", "25", "--seed", "42"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("failures=0"));
    let c = ramdyn(&["lemmas", "--p", "11", "--seed", "9"]);
    let d = ramdyn(&["lemmas", "--p", "11", "--seed", "9"]);
    assert_eq!(c.stdout, d.stdout);
}

#[test]
fn usage_errors_exit_one() {
    // parse error with position
    let out = ramdyn(&["ramify", "--p", "5", "--f", "z + t*z^3"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("parse error at byte 4"), "{err}");

    // p must be an odd prime
    let out = ramdyn(&["ramify", "--p", "4", "--f", "z+z^2"]);
    assert_eq!(out.status.code(), Some(1));

    // unknown example name
    let out = ramdyn(&["example", "q9"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn budget_env_var_is_honored() {
    // p^n = 25 compositions exceed a budget of 10
    let out = Command::new(env!("CARGO_BIN_EXE_ramdyn"))
        .args(["ramify", "--p", "5", "--f", "z+z^3", "--depth", "2"])
        .env("RAMDYN_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("composition budget"), "{err}");

    // an explicit flag overrides the environment
    let out = Command::new(env!("CARGO_BIN_EXE_ramdyn"))
        .args(["ramify", "--p", "5", "--f", "z+z^3", "--depth", "2", "--budget", "1000"])
        .env("RAMDYN_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn newton_fp_ring_reports_trivial_valuations() {
    let out = ramdyn(&["newton", "--p", "5", "--f", "z+z^3", "--n", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("no periodic points of positive valuation"), "{text}");
}

#[test]
fn thmb_matches_iteration() {
    let out = ramdyn(&["thmb", "--p", "7", "--f", "z+2*z^3+3*z^4+z^6", "--n", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("iterate_matches=true"));
    assert!(text.contains("verdict=pass"));
}

#[test]
fn mainlemma_symbolic_prints_polynomials() {
    let out = ramdyn(&["mainlemma", "--p", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    // C_3 = x1(x2^2 - x1x3) over F_3
    assert!(text.contains("c_p=x1*x2^2 + 2*x1^2*x3"), "{text}");
}

#[test]
fn lemmas_family_filter() {
    let out = ramdyn(&["lemmas", "--p", "11", "--family", "shat"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.lines().filter(|l| l.starts_with("check=")).count() >= 3);
    assert!(text
        .lines()
        .filter(|l| l.starts_with("check="))
        .all(|l| l.starts_with("check=SHat")));

    let out = ramdyn(&["lemmas", "--p", "11", "--family", "nosuch"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn classify_machine_readable_shape() {
    let out = ramdyn(&["classify", "--p", "3", "--f", "z+z^3+z^4", "--depth", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("classification=b_ramified"));
    assert!(text.contains("b=2"));
    assert!(text.contains("up_to_depth=2"));
    assert!(text.contains("sen_congruence=pass"));
}

#[test]
fn thmb_level_two() {
    let out = ramdyn(&["thmb", "--p", "3", "--f", "z+z^3+z^4", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("d=4"));
    assert!(text.contains("iterate_matches=true"));
}
