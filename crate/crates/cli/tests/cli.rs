use std::path::PathBuf;

use derizero_cli::corpus::default_dir;
use derizero_cli::report::parse_result;
use derizero_cli::{run, Output};

fn corpus(name: &str) -> String {
    default_dir().join(name).display().to_string()
}

fn cli(args: &[&str]) -> Output {
    let mut v = vec!["derizero"];
    v.extend_from_slice(args);
    run(v)
}

fn result(out: &Output) -> Vec<(String, String)> {
    parse_result(&out.stdout)
}

fn get(out: &Output, key: &str) -> String {
    result(out).into_iter().find(|(k, _)| k == key).map(|(_, v)| v).unwrap_or_default()
}

#[test]
fn decide_ka2_is_zero() {
    let out = cli(&["derdim", "decide", &corpus("ka2.alg")]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(get(&out, "verdict"), "Zero");
    assert_eq!(get(&out, "certificate_size"), "3");
    assert_eq!(get(&out, "scope"), "at recorded budgets");
    assert_eq!(get(&out, "census_field"), "GF(2)");
}

#[test]
fn decide_exit_codes() {
    let out = cli(&["derdim", "decide", &corpus("dualnumbers.alg")]);
    assert_eq!((out.code, get(&out, "reason").as_str()), (1, "InfiniteGlobalDimension"));
    let out = cli(&["derdim", "decide", &corpus("ka3_rad2.alg")]);
    assert_eq!((out.code, get(&out, "verdict").as_str()), (2, "Unknown"));
    let out = cli(&["derdim", "decide", &corpus("ka2.alg"), "--width-cap", "1"]);
    assert_eq!(out.code, 64);
}

#[test]
fn sglobal_dual_numbers() {
    let out = cli(&["sglobal", &corpus("dualnumbers.alg"), "--width-cap", "5"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("lower bound 5"));
    assert_eq!(get(&out, "gldim"), "infinite");
    assert_eq!(get(&out, "sgldim"), "infinite");
    let out = cli(&["sglobal", &corpus("ka2.alg")]);
    assert_eq!(get(&out, "sgldim"), "2");
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(cli(&["frobnicate"]).code, 64);
    assert_eq!(cli(&["census"]).code, 64);
    assert_eq!(cli(&["algebra", "/nonexistent/file.alg"]).code, 64);
    assert_eq!(cli(&["census", &corpus("ka2.alg"), "--census-field", "4"]).code, 64);
    let help = cli(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("derdim"));
}

#[test]
fn budget_exit_65() {
    let out = cli(&["census", &corpus("ka3.alg"), "--budget", "10"]);
    assert_eq!(out.code, 65, "{}", out.stderr);
    assert!(out.stderr.contains("budget"));
    let out = cli(&["graded", "census", &corpus("ka2.alg"), "--trivext", "--dim-cap", "4", "--budget", "3"]);
    assert_eq!(out.code, 65);
}

#[test]
fn compute_errors_exit_70() {
    let out = cli(&["derdim", "crosscheck", &corpus("dualnumbers.alg")]);
    assert_eq!(out.code, 70);
    assert!(out.stderr.contains("global dimension"));
}

#[test]
fn deterministic_reports() {
    for args in [
        vec!["decompose", "--seed", "3"],
        vec!["minimize"],
    ] {
        for file in ["ka2_arrow.cpx", "dualnumbers_cone.cpx"] {
            let mut a = args.clone();
            let f = corpus(file);
            a.push(&f);
            let x = cli(&a);
            let y = cli(&a);
            assert_eq!(x, y);
            assert_eq!(x.code, 0, "{}", x.stderr);
        }
    }
    let a = cli(&["census", &corpus("ka2.alg"), "--threads", "2"]);
    let b = cli(&["census", &corpus("ka2.alg")]);
    assert_eq!(a, b);
    assert_eq!(get(&a, "count"), "3");
}

#[test]
fn module_and_graded_commands() {
    let out = cli(&["module", &corpus("ka2_sum.mod")]);
    assert_eq!(get(&out, "summands"), "2");
    assert_eq!(get(&out, "projective_dimension"), "1");
    let out = cli(&["graded", "orbit", &corpus("tka2_s1.mod")]);
    assert_eq!(get(&out, "first_escape"), "2");
    assert_eq!(get(&out, "escape_bound_holds"), "holds");
    assert_eq!(get(&out, "tight_bound_holds"), "violated");
    let out = cli(&["graded", "orbit", &corpus("k.alg"), "--simple", "1", "--trivext"]);
    assert_eq!(get(&out, "first_escape"), "1");
    let out = cli(&["graded", "census", &corpus("k.alg"), "--trivext", "--dim-cap", "3"]);
    assert_eq!((get(&out, "count").as_str(), get(&out, "saturated").as_str()), ("3", "true"));
    let out = cli(&["graded", "orbit", &corpus("ka2_p1.mod")]);
    assert_eq!(out.code, 70);
}

#[test]
fn trivext_dump_is_the_shipped_file() {
    let out = cli(&["trivext", &corpus("ka2.alg")]);
    assert_eq!(out.code, 0);
    let shipped = std::fs::read_to_string(PathBuf::from(corpus("tka2.dump"))).unwrap();
    assert_eq!(out.stdout, shipped);
    let out = cli(&["algebra", &corpus("tka2.dump")]);
    assert_eq!(get(&out, "dim"), "6");
    assert_eq!(get(&out, "gldim"), "infinite");
    let out = cli(&["trivext", "--report", &corpus("d4.alg")]);
    for key in ["pairing", "self_injective", "degree0_matches"] {
        assert_eq!(get(&out, key), "true", "{key}");
    }
}

#[test]
fn minimize_output_parses_back() {
    let out = cli(&["minimize", &corpus("dualnumbers_cone.cpx")]);
    assert_eq!(get(&out, "contractible_pairs"), "1");
    let text: String = out.stdout.lines().skip_while(|l| !l.starts_with("COMPLEX")).take_while(|l| !l.is_empty()).map(|l| format!("{l}\n")).collect();
    let dir = tempfile::tempdir().unwrap();
    std::fs::copy(corpus("dualnumbers.alg"), dir.path().join("dualnumbers.alg")).unwrap();
    let p = dir.path().join("m.cpx");
    std::fs::write(&p, text).unwrap();
    let again = cli(&["minimize", p.to_str().unwrap()]);
    assert_eq!(get(&again, "minimal"), "true");
    assert_eq!(get(&again, "contractible_pairs"), "0");
}
