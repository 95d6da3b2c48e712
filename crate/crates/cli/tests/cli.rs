use std::process::Command;

use berger_rank::galois_cert::GaloisError;
use berger_rank::jacobian_invariants::InvariantError;
use berger_rank::modp_factor::DegreePattern;
use berger_rank_cli::{run, CliError, OutputEnvelope};
use proptest::prelude::*;
use serde_json::Value;

struct Ran {
    code: i32,
    out: String,
    err: String,
}

fn cli(args: &[&str]) -> Ran {
    let mut argv = vec!["berger-rank"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut out, &mut err);
    Ran {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn json(args: &[&str]) -> OutputEnvelope {
    let mut v = args.to_vec();
    v.push("--json");
    let r = cli(&v);
    assert_eq!(r.code, 0, "stderr: {}", r.err);
    serde_json::from_str(&r.out).unwrap()
}

#[test]
fn rank_example_as_json() {
    let env = json(&["rank", "-f", "x^5-x-1", "-g", "y^2-1", "-p", "7", "-r", "2"]);
    assert_eq!(env.schema_version, "1");
    assert_eq!(env.command, "rank");
    assert_eq!(env.result["kind"], "ExactRank");
    assert_eq!(env.result["rank"], 4);
    assert_eq!(env.result["trace_Kd_zero"], true);
}

#[test]
fn poly_disc_prints_the_discriminant() {
    let r = cli(&["poly-disc", "x^4-x-1"]);
    assert_eq!(r.code, 0);
    assert!(r
        .out
        .lines()
        .any(|l| l.split_whitespace().last() == Some("-283")));
    let env = json(&["poly-disc", "x^4-x+2"]);
    assert_eq!(env.result["discriminant"], "2021");
    assert_eq!(env.result["prime_factors"], serde_json::json!(["43", "47"]));
}

#[test]
fn galois_example_as_json() {
    let env = json(&["galois", "x^4-x+2", "--prime-bound", "5"]);
    assert_eq!(env.result["verdict"], "ProvenSymmetric");
    let primes: Vec<u64> = env.result["observations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|o| o["p"].as_u64().unwrap())
        .collect();
    assert_eq!(primes, vec![2, 3, 5]);
}

#[test]
fn same_variable_is_invalid_input() {
    let r = cli(&["rank", "-f", "x^5-x-1", "-g", "x^2-1", "-p", "7", "-r", "1"]);
    assert_eq!(r.code, 1);
    assert!(r.err.contains("distinct variables"), "{}", r.err);
    assert!(r.out.is_empty());
}

#[test]
fn invalid_inputs_exit_with_one() {
    let cases: &[&[&str]] = &[
        &["poly-disc", "x^^2"],
        &["poly-disc", "x*y"],
        &["galois", "(x-1)^2*(x+1)"],
        &["rank", "-f", "x^5-x-1", "-g", "y^2-1", "-p", "9", "-r", "1"],
        &[
            "rank", "-f", "x^5-x-1", "-g", "(y-1)^2", "-p", "3", "-r", "1",
        ],
        &["genus", "-m", "1", "-n", "3"],
        &["dims", "-m", "5", "-q", "0"],
        &["decomp", "-m", "5", "-p", "4", "-r", "2"],
        &["scan", "x^5-x", "--c-range", "3..-3"],
        &["scan", "x^5-x", "--c-range", "oops"],
        &["morse", "x"],
        &["galois", "x^4-x+2", "--prime-bound", "1"],
        &["galois", "x^4-x+2", "--jobs", "0"],
        &["no-such-command"],
        &["rank", "-f", "x^5-x-1"],
    ];
    for args in cases {
        let r = cli(args);
        assert_eq!(r.code, 1, "{args:?}: {}", r.err);
        assert!(!r.err.is_empty(), "{args:?} printed no diagnostic");
    }
}

#[test]
fn help_exits_zero() {
    let r = cli(&["--help"]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("rank-table"));
    assert!(!r.out.contains("reference-examples"));
}

#[test]
fn internal_errors_map_to_two() {
    let faults = [
        CliError::from(InvariantError::ParityBug {
            formula: "berger_genus",
            numerator: 3,
        }),
        CliError::from(InvariantError::DimensionSumMismatch { rows: 1, total: 2 }),
        CliError::from(GaloisError::DiscSquareInconsistency {
            p: 3,
            pattern: DegreePattern::new(vec![1, 2]),
        }),
    ];
    for f in faults {
        assert_eq!(f.exit_code(), 2, "{f}");
    }
    assert_eq!(
        CliError::from(InvariantError::InvalidArgument("x".into())).exit_code(),
        1
    );
    assert_eq!(CliError::from(GaloisError::NotSquarefree).exit_code(), 1);
}

#[test]
fn envelopes_round_trip() {
    for args in [
        &[
            "rank-table",
            "-f",
            "x^5-x-1",
            "-g",
            "y^3-1",
            "-p",
            "3",
            "--max-r",
            "2",
        ][..],
        &["scan", "x^5-x", "--c-range", "-2..2"],
        &["morse", "x^5-x"],
        &["decomp", "-m", "4", "-p", "2", "-r", "3"],
    ] {
        let env = json(args);
        let text = serde_json::to_string(&env).unwrap();
        let back: OutputEnvelope = serde_json::from_str(&text).unwrap();
        assert_eq!(back, env);
        let again: Value =
            serde_json::from_str(&serde_json::to_string(&back.result).unwrap()).unwrap();
        assert_eq!(again, env.result);
    }
}

#[test]
fn rank_table_matches_json() {
    let args = [
        "rank-table",
        "-f",
        "x^5-x-1",
        "-g",
        "y^5-1",
        "-p",
        "5",
        "--max-r",
        "2",
    ];
    let table = cli(&args);
    assert_eq!(table.code, 0);
    let env = json(&args);
    let rows = env.result.as_array().unwrap();
    let lines: Vec<&str> = table.out.lines().skip(1).take(rows.len()).collect();
    assert_eq!(lines.len(), rows.len());
    for (line, row) in lines.iter().zip(rows) {
        let cells: Vec<&str> = line.split_whitespace().collect();
        assert_eq!(cells[0], row["layer"]["r"].to_string());
        assert_eq!(cells[1], row["layer"]["q"].to_string());
        assert_eq!(cells[2], row["kind"].as_str().unwrap());
        assert_eq!(cells[3], row["rank"].to_string());
        assert_eq!(cells[4], row["c2_value"].to_string());
    }
    let ranks: Vec<u64> = rows.iter().map(|r| r["rank"].as_u64().unwrap()).collect();
    assert_eq!(ranks, vec![16, 20, 20]);
}

#[test]
fn scan_rows_are_ordered_and_match_table() {
    let args = ["scan", "x^5-x", "--c-range", "-3..3"];
    let env = json(&args);
    let rows = env.result["rows"].as_array().unwrap();
    let cs: Vec<i64> = rows.iter().map(|r| r["c"].as_i64().unwrap()).collect();
    assert_eq!(cs, (-3..=3).collect::<Vec<_>>());
    assert_eq!(rows[4]["in_A_h"], true);
    assert_eq!(rows[3]["in_A_h"], false);
    let table = cli(&args);
    for (line, row) in table.out.lines().skip(1).zip(rows) {
        let cells: Vec<&str> = line.split_whitespace().collect();
        assert_eq!(cells[0], row["c"].to_string());
        assert_eq!(cells[1], row["in_A_h"].to_string());
        assert_eq!(cells[3], row["quad_tag"].as_str().unwrap());
    }
}

#[test]
fn jobs_do_not_change_output() {
    let args = ["scan", "x^5-x", "--c-range", "-4..4"];
    let base = cli(&args).out;
    let mut with_jobs = args.to_vec();
    with_jobs.extend(["--jobs", "3"]);
    assert_eq!(cli(&with_jobs).out, base);
}

#[test]
fn reference_examples_pass() {
    let r = cli(&["reference-examples"]);
    assert_eq!(r.code, 0, "{}", r.out);
    assert!(r.out.contains(" 0 failed"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_berger-rank");
    let ok = Command::new(bin)
        .args(["genus", "-m", "5", "-n", "2"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("genus  2"));
    let bad = Command::new(bin)
        .args(["rank", "-f", "x^5-x-1", "-g", "x^2-1", "-p", "7", "-r", "1"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
    assert!(bad.stdout.is_empty());
    let env = Command::new(bin)
        .args(["scan", "x^5-x", "--c-range", "0..2"])
        .env("BERGER_RANK_JOBS", "2")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(0));
    let bad_env = Command::new(bin)
        .args(["genus", "-m", "5", "-n", "2"])
        .env("BERGER_RANK_JOBS", "many")
        .output()
        .unwrap();
    assert_eq!(bad_env.status.code(), Some(1));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn invariant_commands_agree_across_renderings(m in 2u64..40, n in 2u64..40, pi in 0usize..4, r in 0u32..4) {
        let p = [2u64, 3, 5, 7][pi];
        let (ms, ns, ps, rs) = (m.to_string(), n.to_string(), p.to_string(), r.to_string());
        let g = json(&["genus", "-m", &ms, "-n", &ns]);
        let t = cli(&["genus", "-m", &ms, "-n", &ns]);
        let last = t.out.lines().last().unwrap().split_whitespace().last().unwrap().to_string();
        prop_assert_eq!(last, g.result["genus"].to_string());

        let d = json(&["decomp", "-m", &ms, "-p", &ps, "-r", &rs]);
        let t = cli(&["decomp", "-m", &ms, "-p", &ps, "-r", &rs]);
        let total = t.out.lines().last().unwrap().trim_start_matches("total ").to_string();
        prop_assert_eq!(total, d.result["total"].to_string());
    }
}
