use std::io::Write;

use abelian_hnp::cli::{run, Cli};
use clap::Parser;

fn call(args: &[&str]) -> (i32, String) {
    let cli = Cli::try_parse_from(std::iter::once("abelian-hnp").chain(args.iter().copied())).unwrap();
    let mut out = Vec::new();
    let code = run(cli, &mut out).unwrap();
    (code, String::from_utf8(out).unwrap())
}

fn temp_file(name: &str, text: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("abelian-hnp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::File::create(&path).unwrap().write_all(text.as_bytes()).unwrap();
    path
}

#[test]
fn count_and_enumerate() {
    assert_eq!(call(&["count", "--group", "2", "--bound", "10"]), (0, "6\n".to_string()));
    let (code, out) = call(&["enumerate", "--group", "2,2", "--bound", "200"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 6);
    let v: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
    assert_eq!(v["disc"], "144");
    assert_eq!(v["surjective"], true);

    let (_, csv) = call(&["enumerate", "--group", "2", "--bound", "10^1", "--format", "csv"]);
    assert_eq!(csv, "disc,primes\n3,3\n4,2\n5,5\n7,7\n8,2\n8,2\n");

    let (_, streamed) = call(&["enumerate", "--group", "2,2", "--bound", "10^4", "--stream", "--threads", "1"]);
    let (_, sorted) = call(&["enumerate", "--group", "2,2", "--bound", "10^4"]);
    let mut a: Vec<&str> = streamed.lines().collect();
    let mut b: Vec<&str> = sorted.lines().collect();
    a.sort_unstable();
    b.sort_unstable();
    assert_eq!(a, b);
}

#[test]
fn survey_csv() {
    let (code, out) = call(&["survey", "--group", "2,2", "--bounds", "10^4,10^6"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "B,N,N_fail_hnp,N_fail_wa,sha_histogram\n10000,282,30,252,1:252;2:30\n1000000,6084,714,5370,1:5370;2:714\n"
    );
}

#[test]
fn test_subcommand() {
    let (_, out) = call(&["test", "--biquadratic", "13,17"]);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["hnp"], false);
    assert_eq!(v["sha_order"], "2");
    assert_eq!(v["wa"], true);
    assert_eq!(v["legendre_criterion_fails"], true);

    let path = temp_file("ext.json", r#"[{"p": 13, "gamma": [1, 0]}, {"p": 17, "gamma": [0, 1]}]"#);
    let (_, out) = call(&["test", "--group", "2,2", "--components", path.to_str().unwrap(), "--verbose"]);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["disc"], "48841");
    assert_eq!(v["all_decomposition_cyclic"], true);
}

#[test]
fn bad_inputs_are_errors() {
    let one = temp_file("one.json", r#"[{"p": 13, "gamma": [1, 0]}]"#);
    let cli = Cli::try_parse_from(["abelian-hnp", "test", "--group", "2,2", "--components", one.to_str().unwrap()]).unwrap();
    let err = run(cli, &mut Vec::new()).unwrap_err();
    assert!(err.to_string().contains("not surjective"), "{err}");

    let cli = Cli::try_parse_from(["abelian-hnp", "count", "--group", "2", "--bound", "lots"]).unwrap();
    assert!(run(cli, &mut Vec::new()).is_err());
    assert!(Cli::try_parse_from(["abelian-hnp", "count", "--group", "2,3", "--bound", "10"]).is_err());
    let cli = Cli::try_parse_from(["abelian-hnp", "preset", "nonsense"]).unwrap();
    assert!(run(cli, &mut Vec::new()).is_err());
}

#[test]
fn conditions_file() {
    let path = temp_file("cond.json", r#"[{"default": "any"}, {"p": 3, "rule": "unramified"}]"#);
    let (_, out) = call(&["count", "--group", "2,2", "--bound", "10^6", "--conditions", path.to_str().unwrap()]);
    let n: u64 = out.trim().parse().unwrap();
    assert!(n > 0 && n < 6084);
}

#[test]
fn fit_from_survey_table() {
    let (_, table) = call(&["survey", "--group", "2", "--bounds", "10^5,10^6,10^7"]);
    let path = temp_file("counts.csv", &table);
    let (_, out) = call(&["fit", "--group", "2", "--counts", path.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    let slope = v["slope"].as_f64().unwrap();
    assert!((slope - 1.0).abs() < 0.01, "{slope}");
}

#[test]
fn small_presets() {
    let dir = std::env::temp_dir().join(format!("abelian-hnp-presets-{}", std::process::id()));
    let (code, out) = call(&["preset", "analytic", "--out", dir.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    assert!(out.ends_with("analytic: all checks passed\n"), "{out}");
}
