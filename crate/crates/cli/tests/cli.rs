use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("unicusp").chain(args.iter().copied());
    let code = unicusp::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn payload(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema_version"], "1");
    v["payload"].clone()
}

const COMMANDS: &[&[&str]] = &[
    &["semigroup", "-a", "4", "-b", "7", "--query", "gamma", "--arg", "4"],
    &["semigroup", "-a", "3", "-b", "28", "--query", "R", "--arg", "-5"],
    &["check", "--genus", "1", "-a", "3", "-b", "28", "-d", "9"],
    &["check", "--genus", "1", "--pairs", "2,3;2,3", "-d", "4"],
    &["enumerate", "--genus", "1", "--dmax", "25", "--allow-smooth"],
    &["pell", "--n", "209"],
    &["pell", "--n", "-11"],
    &["pell", "--genus", "3", "--orbit", "-4:6"],
    &["families", "--k", "3", "--i", "2"],
    &["families", "--k", "2", "--j", "1"],
    &["sectors", "--genus", "2", "--lmax", "6"],
    &["germ", "--node", "6", "--order", "24"],
    &["germ", "--flex", "5", "--order", "20"],
    &["identities", "--lmax", "40"],
];

#[test]
fn check_accepts_the_nine_l_plus_one_member() {
    let p = payload(&["check", "--genus", "1", "-a", "3", "-b", "28", "-d", "9"]);
    assert_eq!(p["admissible"], true);
    assert_eq!(p["witness"], Value::Null);
    // The degree is solved when omitted.
    assert_eq!(payload(&["check", "--genus", "1", "-a", "3", "-b", "28"])["degree"], 9);
}

#[test]
fn check_reports_an_obstruction_with_exit_one() {
    let (code, out, _) = run(&["check", "--genus", "1", "-a", "5", "-b", "8", "-d", "7"]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    let w = &v["payload"]["witness"];
    assert_eq!((w["j"].as_i64(), w["k"].as_u64(), w["side"].as_str()), (Some(1), Some(0), Some("lower")));
}

#[test]
fn genus_two_is_unsolvable() {
    let p = payload(&["pell", "--genus", "2"]);
    assert_eq!(p["solvable"], false);
    assert_eq!(p["n"], 12);
    assert_eq!(p["coprime"], Value::Null);
}

#[test]
fn genus_one_orbit_reaches_one_eight() {
    let p = payload(&["pell", "--genus", "1", "--orbit", "0:6"]);
    let members = p["orbit"]["members"].as_array().unwrap();
    let first = &members[0];
    assert_eq!((first["a"].as_u64(), first["b"].as_u64(), first["d"].as_u64()), (Some(1), Some(8), Some(3)));
    assert_eq!(first["element"]["value"], "18+8√5");
    assert!(members.iter().any(|m| m["a"] == 8 && m["b"] == 55 && m["d"] == 21));
}

#[test]
fn enumerate_tsv_table() {
    let (code, out, _) = run(&["enumerate", "--genus", "1", "--dmax", "25", "--format", "tsv", "--allow-smooth"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("a\tb\td\tadmissible\ton_3d_line\tfamily"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split('\t').collect()).collect();
    assert!(rows.iter().all(|r| r.len() == 6));
    let has = |a: &str, b: &str, d: &str| rows.iter().any(|r| r[0] == a && r[1] == b && r[2] == d);
    assert!(has("1", "8", "3"));
    assert!(has("8", "55", "21"));
    let (_, without, _) = run(&["enumerate", "--genus", "1", "--dmax", "25", "--format", "tsv"]);
    assert!(!without.lines().any(|l| l.starts_with("1\t8\t3\t")));
}

#[test]
fn jobs_do_not_change_output() {
    for format in ["json", "tsv"] {
        let base = ["enumerate", "--genus", "2", "--dmax", "60", "--allow-smooth", "--format", format];
        let (_, one, _) = run(&base);
        for jobs in ["2", "3", "7"] {
            let mut args = base.to_vec();
            args.extend(["--jobs", jobs]);
            assert_eq!(run(&args).1, one, "jobs={jobs} format={format}");
        }
    }
}

#[test]
fn reruns_are_byte_identical() {
    for args in COMMANDS {
        let first = run(args);
        assert_eq!(first.0, 0, "{args:?}: {}", first.2);
        assert_eq!(run(args), first, "{args:?}");
    }
}

#[test]
fn json_round_trips_through_a_generic_parser() {
    for args in COMMANDS {
        let (_, out, _) = run(args);
        let v: Value = serde_json::from_str(&out).unwrap();
        let again = serde_json::to_string_pretty(&v).unwrap() + "\n";
        assert_eq!(again, out, "{args:?}");
        assert_eq!(serde_json::from_str::<Value>(&again).unwrap(), v);
    }
}

#[test]
fn exact_values_are_strings() {
    let p = payload(&["sectors", "--genus", "1", "--lmax", "3"]);
    let s = &p["sectors"][0];
    assert_eq!(s["low"]["exact"], "25/4");
    assert!(s["low"]["approx"].as_str().unwrap().ends_with('~'));
    assert_eq!(s["a_bound"], "12");
    assert_eq!(p["sectors"][1]["a_bound"], "28");
    let ids = payload(&["identities", "--lmax", "40"]);
    assert_eq!(ids["all_hold"], true);
    assert!(ids["lim1_gap"]["approx"].as_str().unwrap().ends_with('~'));
}

#[test]
fn families_and_germs() {
    let f = payload(&["families", "--k", "3", "--i", "2"]);
    assert_eq!((f["a"].as_u64(), f["b"].as_u64(), f["d"].as_u64(), f["genus"].as_u64()), (Some(11), Some(76), Some(29), Some(3)));
    let g = payload(&["germ", "--node", "5", "--order", "18"]);
    let germs = g["germs"].as_array().unwrap();
    assert_eq!(germs.len(), 5);
    assert!(germs.iter().all(|r| r["support_ok"] == true));
    assert_eq!(payload(&["germ", "--flex", "4", "--order", "17"])["valuation"], 12);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["bogus"][..],
        &["check", "--genus", "1", "-a", "3"],
        &["check", "--genus", "1", "-a", "3", "-b", "28", "-d", "10"],
        &["check", "--genus", "1", "--pairs", "2,3;x"],
        &["pell", "--n", "0"],
        &["pell", "--n", "5", "--orbit", "0:3"],
        &["pell", "--genus", "1", "--orbit", "5:1"],
        &["families", "--k", "3"],
        &["germ", "--node", "12", "--order", "20"],
        &["enumerate", "--genus", "1", "--dmax", "2"],
        &["enumerate", "--genus", "1", "--dmax", "9", "--jobs", "0"],
        &["semigroup", "-a", "4", "-b", "6"],
    ] {
        let (code, out, err) = run(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(out.is_empty(), "{args:?}");
        assert!(!err.is_empty(), "{args:?}");
    }
}

#[test]
fn binary_maps_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_unicusp");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(status(&["check", "--genus", "1", "-a", "3", "-b", "28", "-d", "9"]), Some(0));
    assert_eq!(status(&["check", "--genus", "1", "-a", "5", "-b", "8", "-d", "7"]), Some(1));
    assert_eq!(status(&["check", "--genus", "1"]), Some(2));
    let help = Command::new(bin).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&help.stdout).contains("enumerate"));
}
