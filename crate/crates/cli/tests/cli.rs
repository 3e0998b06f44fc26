use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lehmer-ff"))
        .args(args)
        .env_remove("LEHMER_FF_WORKERS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn ternary_lehmer_table_has_six_rows() {
    let o = run(&["lehmer", "--q", "3", "--max-degree", "8", "--expand-units"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(2).filter(|l| l.starts_with(['x', '2'])).collect();
    assert_eq!(rows.len(), 6, "{text}");
    for p in ["x^2+2 ", "x^2+x ", "x^2+2*x ", "2*x^2+1 ", "2*x^2+x ", "2*x^2+2*x "] {
        assert!(rows.iter().any(|r| r.starts_with(p)), "{p} missing from\n{text}");
    }
}

#[test]
fn constrained_partition_suite_verifies() {
    let o = run(&["verify", "--suite", "prop36", "--n-max", "30"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS"));
}

#[test]
fn zsigmondy_reports_the_n6_exception() {
    let o = run(&["zsigmondy", "--a", "2", "--b", "1", "--n", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("N6"));
    let o = run(&["--format", "json", "zsigmondy", "--a", "2", "--b", "1", "--n", "6"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["exception"], "N6");
    assert_eq!(v["primitive_primes"].as_array().unwrap().len(), 0);
    assert_eq!(v["schema"], 1);
}

#[test]
fn json_round_trips_byte_identically() {
    let commands: [&[&str]; 7] = [
        &["totient", "x^4+x", "--q", "2"],
        &["totient", "(t+1)*x^2+t*x+1", "--p", "2", "--k", "2"],
        &["lehmer", "--q", "2", "--max-degree", "7"],
        &["cyclotomic", "--n", "30", "--eval", "-3"],
        &["zsigmondy", "--a", "10", "--b", "3", "--n", "12"],
        &["partitions", "--a", "2", "--n-max", "8", "--dividing-only"],
        &["verify", "--suite", "prop31", "--a-max", "5", "--n-max", "6"],
    ];
    for args in commands {
        let mut full = vec!["--format", "json"];
        full.extend_from_slice(args);
        let o = run(&full);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        let text = stdout(&o);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        let again = serde_json::to_string_pretty(&v).unwrap() + "\n";
        assert_eq!(text, again, "{args:?}");
    }
}

#[test]
fn csv_has_a_header_row() {
    let o = run(&["--format", "csv", "candidates", "--n-max", "60"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("set,size,degrees"));
    assert!(lines.next().unwrap().starts_with("coarse,"));
    assert!(lines.next().unwrap().starts_with("refined,"));
}

#[test]
fn verify_output_is_independent_of_worker_count() {
    for suite in ["main-theorem", "oracle", "cyclo-lemmas"] {
        let mut outputs = Vec::new();
        for workers in ["1", "3", "8"] {
            let mut args = vec!["--format", "json", "--workers", workers, "verify", "--suite", suite];
            if suite == "main-theorem" {
                args.extend(["--q", "3", "--max-degree", "6"]);
            }
            let o = run(&args);
            assert_eq!(o.status.code(), Some(0), "{suite} with {workers} workers");
            outputs.push(o.stdout);
        }
        assert!(outputs.windows(2).all(|w| w[0] == w[1]), "{suite}");
    }
}

#[test]
fn workers_can_come_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_lehmer-ff"))
        .args(["lehmer", "--q", "2", "--max-degree", "4"])
        .env("LEHMER_FF_WORKERS", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let o = Command::new(env!("CARGO_BIN_EXE_lehmer-ff"))
        .args(["lehmer", "--q", "2", "--max-degree", "4"])
        .env("LEHMER_FF_WORKERS", "0")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn failed_verification_exits_one_with_a_diff() {
    let o = run(&["verify", "--suite", "bounds", "--n-max", "100"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("FAIL"));
    assert!(text.contains("unexpected n=3"));
}

#[test]
fn usage_errors_exit_two() {
    let cases: [&[&str]; 9] = [
        &[],
        &["bogus"],
        &["totient", "x^2+", "--q", "3"],
        &["totient", "x", "--q", "6"],
        &["totient", "x", "--q", "2", "--p", "2", "--k", "1"],
        &["totient", "1", "--q", "2"],
        &["verify", "--suite", "nope"],
        &["--format", "xml", "lehmer", "--q", "2", "--max-degree", "3"],
        &["zsigmondy", "--a", "4", "--b", "2", "--n", "3"],
    ];
    for args in cases {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn resource_errors_exit_three() {
    let o = run(&["zsigmondy", "--a", "3", "--b", "1", "--n", "700", "--factoring-budget", "100"]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["totient", "x^13+x+1", "--q", "4", "--bruteforce"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
}

#[test]
fn totient_brute_force_agrees() {
    let o = run(&["--format", "json", "totient", "x^3+x+1", "--q", "3", "--bruteforce"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["phi"], v["phi_counted"]);
}
