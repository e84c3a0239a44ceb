//! End-to-end tests of the `vsys` binary: flag plumbing, config-file
//! precedence, output formats agreeing on their numeric content, and the
//! documented exit codes.

use std::path::Path;
use std::process::{Command, Output};

fn vsys(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vsys"))
        .args(args)
        .output()
        .expect("failed to spawn vsys")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

/// `key = value` lines -> lookup of the parsed float.
fn text_field(text: &str, key: &str) -> f64 {
    text.lines()
        .find_map(|line| {
            let (k, v) = line.split_once('=')?;
            (k.trim() == key).then(|| v.trim().parse().unwrap())
        })
        .unwrap_or_else(|| panic!("field `{key}` missing in:\n{text}"))
}

#[test]
fn steady_reports_the_symmetric_unit_point() {
    let out = vsys(&["steady", "--nbar", "1", "--delta", "1"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert_eq!(text_field(&text, "re_ab"), 1.0 / 7.0);
    assert_eq!(text_field(&text, "im_ab"), -1.0 / 14.0);
    assert_eq!(text_field(&text, "rho_aa"), 3.0 / 14.0);
    assert_eq!(text_field(&text, "canonical_rho_aa"), 0.25);
    assert!(text.contains("method = closed-form"));
}

#[test]
fn degenerate_strong_pumping_exits_singular() {
    let out = vsys(&["steady", "--nbar", "1e6", "--delta", "0"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(
        stderr(&out).contains("population-locked"),
        "stderr: {}",
        stderr(&out)
    );
}

#[test]
fn invalid_parameters_exit_2() {
    let out = vsys(&["steady", "--nbar=-1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("nbar"));

    let out = vsys(&["evolve", "--t-end", "0"]);
    assert_eq!(out.status.code(), Some(2), "stderr: {}", stderr(&out));

    let out = vsys(&["sweep", "--axis", "bogus:1:2:linear:3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(
        stderr(&out).contains("unknown sweep axis"),
        "stderr: {}",
        stderr(&out)
    );

    let out = vsys(&["figures", "--id", "fig9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unwritable_output_exits_4() {
    // A path that descends through a regular file fails with NotADirectory
    // on every platform, even when the test runs with root privileges.
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("blocker");
    std::fs::write(&blocker, "").unwrap();
    let target = blocker.join("steady.txt");
    let out = vsys(&["steady", "--output", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    let msg = stderr(&out);
    assert!(
        msg.contains("blocker"),
        "stderr should name the path: {msg}"
    );
}

#[test]
fn json_and_csv_carry_identical_values() {
    let args = [
        "steady",
        "--nbar",
        "3.5",
        "--delta",
        "0.7",
        "--gamma-d",
        "0.2",
    ];
    let json = vsys(&[&args[..], &["--format", "json"]].concat());
    let csv = vsys(&[&args[..], &["--format", "csv"]].concat());
    assert!(json.status.success() && csv.status.success());

    let record: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    let text = stdout(&csv);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with('#'));
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    for (name, cell) in header.iter().zip(&row) {
        if *name == "method" {
            assert_eq!(record["method"].as_str().unwrap(), *cell);
            continue;
        }
        let from_csv: f64 = cell
            .parse()
            .unwrap_or_else(|_| panic!("cell {name}={cell}"));
        let from_json = record[*name]
            .as_f64()
            .unwrap_or_else(|| panic!("field {name}"));
        assert_eq!(from_csv, from_json, "{name} differs between CSV and JSON");
    }
}

#[test]
fn config_file_fills_gaps_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.conf");
    std::fs::write(
        &path,
        "# experiment manifest\nnbar = 2\ndelta = 5 # overridden\n",
    )
    .unwrap();
    let out = vsys(&["steady", "--config", path.to_str().unwrap(), "--delta", "1"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert_eq!(text_field(&text, "nbar"), 2.0);
    assert_eq!(text_field(&text, "delta"), 1.0);

    // Unknown keys are parameter errors, a missing file is an I/O failure.
    std::fs::write(&path, "nbar = 2\nfrobnicate = 1\n").unwrap();
    let out = vsys(&["steady", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("frobnicate"));
    let out = vsys(&[
        "steady",
        "--config",
        dir.path().join("absent.conf").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn evolve_emits_the_requested_samples() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trace.csv");
    let out = vsys(&[
        "evolve",
        "--nbar",
        "1",
        "--delta",
        "1",
        "--t-end",
        "10",
        "--n-points",
        "11",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# gamma_a=1,"));
    assert_eq!(lines.next().unwrap(), "t,rho_gg,rho_aa,rho_bb,re_ab,im_ab");
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 11);
    assert_eq!(
        rows[0], "0,1,0,0,0,0",
        "propagation must start from the ground state"
    );
}

#[test]
fn sweep_output_is_deterministic_across_modes() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    let base = [
        "sweep",
        "--axis",
        "nbar:1e-2:1e2:log:9",
        "--axis",
        "delta:0.1:10:log:5",
        "--observables",
        "re_ab,c_ratio,rho_aa",
    ];
    let run = |extra: &[&str], path: &Path| {
        let mut args = base.to_vec();
        args.extend_from_slice(extra);
        args.extend_from_slice(&["--output", path.to_str().unwrap()]);
        let out = vsys(&args);
        assert!(out.status.success(), "stderr: {}", stderr(&out));
    };
    run(&[], &a);
    run(&["--serial"], &b);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let text = std::fs::read_to_string(&a).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with('#'));
    assert_eq!(lines.next().unwrap(), "nbar,delta,re_ab,c_ratio,rho_aa");
    assert_eq!(lines.count(), 45);
}

#[test]
fn transport_equivalence_is_exact_and_flux_matches() {
    let out = vsys(&[
        "transport",
        "--nbar",
        "1",
        "--delta",
        "1",
        "--check-equivalence",
    ]);
    assert!(out.status.success());
    assert_eq!(text_field(&stdout(&out), "max_generator_deviation"), 0.0);

    let out = vsys(&[
        "transport",
        "--nbar",
        "1",
        "--delta",
        "1",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let record: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let flux = record["heat_flux"].as_f64().unwrap();
    assert!((flux - (-1.0 / 7.0)).abs() <= 1e-12, "flux {flux}");

    // The transport map is defined for radiative-only parameters.
    let out = vsys(&["transport", "--nbar", "1", "--delta", "1", "--gamma-d", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn figures_exports_panels_and_lists_them() {
    let dir = tempfile::tempdir().unwrap();
    let out = vsys(&[
        "figures",
        "--id",
        "fig2a",
        "--outdir",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let listed = stdout(&out);
    let path = dir.path().join("fig2a.csv");
    assert!(listed.trim().ends_with("fig2a.csv"), "stdout: {listed}");
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.lines().nth(1).unwrap().starts_with("t,rho_aa,"));
}
