//! End-to-end checks of the binary: flag handling, exit codes, file
//! formats, and the wiring between subcommands.

use std::fs;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_circopula"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).unwrap()
}

#[test]
fn eval_prints_reference_values() {
    for (args, want) in [
        (vec!["eval", "--copula", "M_a", "--a", "0.7", "0.2", "0.9"], "0.2"),
        (vec!["eval", "--copula", "Pi", "1", "0.3"], "0.3"),
        (vec!["eval", "--copula", "mardia", "--gamma", "0", "0.5", "0.5"], "0.25"),
        (vec!["eval", "--copula", "W", "0.3", "0.5"], "0"),
        (vec!["eval", "--copula", "M", "0.3", "0.5"], "0.3"),
        (vec!["eval", "--copula", "W_a", "--a", "0.4", "0.2", "0.9"], "0.2"),
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", stderr_of(&out));
        assert_eq!(stdout_of(&out).trim(), want, "{args:?}");
    }
}

#[test]
fn eval_rejects_bad_input() {
    let out = run(&["eval", "--copula", "M_a", "--a", "0.7", "1.5", "0.9"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("u must lie in [0, 1]"));

    let out = run(&["eval", "--copula", "M_a", "0.2", "0.9"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("--a"));

    let out = run(&["eval", "--copula", "gauss", "0.2", "0.9"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("unknown copula"));

    let out = run(&["eval", "--copula", "mardia", "--gamma", "2", "0.5", "0.5"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("--gamma"));
}

#[test]
fn simulate_writes_reparseable_rows() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.csv");
    let out = run(&["simulate", "--n", "40", "--seed", "9", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr_of(&out));

    let text = fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    let meta = lines.next().unwrap();
    assert!(meta.starts_with("# meta: "));
    for key in ["gamma=", "a=", "b=", "rho_theta=", "mu_theta=", "rho_phi=", "mu_phi=", "n=40", "seed=9"] {
        assert!(meta.contains(key), "meta line missing {key}: {meta}");
    }
    assert_eq!(lines.next().unwrap(), "theta,phi");

    let mut rows = 0;
    for line in lines {
        let (t, p) = line.split_once(',').unwrap();
        // 17 significant digits reproduce the stored doubles exactly, so
        // re-rendering the parsed values must give back the same text.
        assert_eq!(format!("{:.16e}", t.parse::<f64>().unwrap()), t);
        assert_eq!(format!("{:.16e}", p.parse::<f64>().unwrap()), p);
        rows += 1;
    }
    assert_eq!(rows, 40);
    assert!(!text.contains('\r'));
}

#[test]
fn simulate_empty_run_keeps_header() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.csv");
    let out = run(&["simulate", "--n", "0", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("# meta: "));
    assert_eq!(lines[1], "theta,phi");
}

#[test]
fn simulate_flags_control_exit_codes() {
    let out = run(&["simulate", "--gamma", "1.5", "--output", "/dev/null"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("--gamma"));

    let out = run(&["simulate", "--rho-phi", "0.6", "--output", "/dev/null"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("--rho-phi"));

    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("no-such-dir").join("out.csv");
    let out = run(&["simulate", "--n", "3", "--output", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let out = bin().args(["simulate", "--n"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn simulate_distinct_seeds_differ() {
    let dir = tempfile::tempdir().unwrap();
    let one = dir.path().join("one.csv");
    let two = dir.path().join("two.csv");
    run(&["simulate", "--seed", "1", "--n", "50", "--output", one.to_str().unwrap()]);
    run(&["simulate", "--seed", "2", "--n", "50", "--output", two.to_str().unwrap()]);
    assert_ne!(fs::read(one).unwrap(), fs::read(two).unwrap());
}

#[test]
fn default_output_honors_directory_override() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["simulate", "--n", "5"])
        .env("CIRCOPULA_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stderr_of(&out));
    assert!(dir.path().join("simulate.csv").exists());
}

#[test]
fn pi_tokens_reach_the_model() {
    let dir = tempfile::tempdir().unwrap();
    let with_token = dir.path().join("token.csv");
    let with_decimal = dir.path().join("decimal.csv");
    run(&[
        "simulate", "--n", "20", "--mu-theta", "pi/2", "--output",
        with_token.to_str().unwrap(),
    ]);
    run(&[
        "simulate", "--n", "20", "--mu-theta", "1.5707963267948966", "--output",
        with_decimal.to_str().unwrap(),
    ]);
    assert_eq!(fs::read(with_token).unwrap(), fs::read(with_decimal).unwrap());

    let out = run(&["simulate", "--mu-theta", "pie", "--output", "/dev/null"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_shift_reports_identity_and_moved_cuts() {
    let out = run(&["verify-shift"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr_of(&out));
    let text = stdout_of(&out);
    assert!(text.contains("derived a 1"), "{text}");
    let deviation: f64 = text
        .lines()
        .next()
        .unwrap()
        .strip_prefix("max deviation ")
        .unwrap()
        .parse()
        .unwrap();
    assert!(deviation < 1e-12, "identity shift deviated by {deviation}");

    let out = run(&["verify-shift", "--alpha", "5pi/4", "--beta", "pi/8"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr_of(&out));
    assert!(stdout_of(&out).starts_with("max deviation "));

    let out = run(&["verify-shift", "--grid", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn check_monotone_verdicts_and_codes() {
    let dir = tempfile::tempdir().unwrap();

    let rising = dir.path().join("rising.csv");
    run(&["simulate", "--gamma", "1", "--n", "80", "--seed", "4", "--output", rising.to_str().unwrap()]);
    let out = run(&["check-monotone", rising.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).starts_with("nondecreasing at cut alpha="));
    let out = run(&["check-monotone", "--direction", "nonincreasing", rising.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));

    let falling = dir.path().join("falling.csv");
    run(&["simulate", "--gamma", "-1", "--n", "80", "--seed", "4", "--output", falling.to_str().unwrap()]);
    let out = run(&["check-monotone", "--direction", "nonincreasing", falling.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).starts_with("nonincreasing at cut alpha="));

    let scatter = dir.path().join("scatter.csv");
    run(&["simulate", "--gamma", "0", "--n", "120", "--seed", "4", "--output", scatter.to_str().unwrap()]);
    let out = run(&["check-monotone", scatter.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(stdout_of(&out).trim(), "neither");

    let single = dir.path().join("single.csv");
    fs::write(&single, "theta,phi\n1.0,2.0\n").unwrap();
    for direction in ["nondecreasing", "nonincreasing", "any"] {
        let out = run(&["check-monotone", "--direction", direction, single.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "direction {direction}");
        assert!(stdout_of(&out).starts_with("both directions at cut"));
    }
}

#[test]
fn check_monotone_snap_merges_jitter() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("jitter.csv");
    fs::write(&path, "theta,phi\n0.0,0.5\n2.0,3.0\n2.0000000000001,2.5\n4.0,5.0\n").unwrap();
    let out = run(&["check-monotone", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["check-monotone", "--snap", "1e-9", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).starts_with("nondecreasing"));
}

#[test]
fn malformed_input_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.csv");
    for body in ["theta,phi\n1.0\n", "theta,phi\n1.0,x\n", "theta,phi\n1.0,2.0,3.0\n", "theta,phi\ninf,1.0\n"] {
        fs::write(&path, body).unwrap();
        for subcommand in ["check-monotone", "plot"] {
            let out = run(&[subcommand, path.to_str().unwrap()]);
            assert_eq!(out.status.code(), Some(1), "{subcommand} on {body:?}");
        }
    }

    let missing = dir.path().join("absent.csv");
    let out = run(&["check-monotone", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let empty = dir.path().join("empty.csv");
    fs::write(&empty, "theta,phi\n").unwrap();
    let out = run(&["check-monotone", empty.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn plot_counts_points_as_circles() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("pts.csv");
    let svg = dir.path().join("pts.svg");
    run(&["simulate", "--n", "137", "--seed", "6", "--output", csv.to_str().unwrap()]);
    let out = run(&["plot", csv.to_str().unwrap(), "--output", svg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr_of(&out));
    let body = fs::read_to_string(&svg).unwrap();
    assert_eq!(body.matches("<circle").count(), 137);
    for label in [">0<", ">\u{3c0}/2<", ">\u{3c0}<", ">3\u{3c0}/2<", ">2\u{3c0}<"] {
        assert!(body.contains(label), "missing tick label {label}");
    }

    let empty_csv = dir.path().join("none.csv");
    let empty_svg = dir.path().join("none.svg");
    fs::write(&empty_csv, "theta,phi\n").unwrap();
    let out = run(&["plot", empty_csv.to_str().unwrap(), "--output", empty_svg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let body = fs::read_to_string(&empty_svg).unwrap();
    assert_eq!(body.matches("<circle").count(), 0);
    assert!(body.contains("<rect"));

    let out = run(&["plot", csv.to_str().unwrap(), "--output", "/no-such-dir/x.svg"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn round_trip_through_check_and_plot_loses_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("chain.csv");
    run(&["simulate", "--gamma", "1", "--n", "200", "--seed", "12", "--output", csv.to_str().unwrap()]);
    // The monotone verdict depends on exact coordinate order, so a
    // passing check on the re-read file exercises the full precision
    // of the round trip.
    let out = run(&["check-monotone", "--direction", "nondecreasing", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr_of(&out));
}

#[test]
fn usage_errors_exit_one_and_help_exits_zero() {
    let out = run(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["simulate", "--bogus-flag", "1", "--output", "/dev/null"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("simulate"));

    let out = run(&["--version"]);
    assert_eq!(out.status.code(), Some(0));
}

