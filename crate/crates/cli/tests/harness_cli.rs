//! End-to-end tests of the command-line harness: scenario files in, exit
//! codes and artifacts out.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run_tool(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_velarde"))
        .args(args)
        .output()
        .expect("binary launches")
}

fn write_config(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).expect("config written");
    path.to_string_lossy().into_owned()
}

const CERTIFY_SMALL: &str = "\
[scenario]
kind = certify

[certify]
n_max = 2
s = 1
log2_eta_sq = 43
gamma1 = 98304
gamma2 = -1
samples = 9

[output]
dir = OUTDIR
";

const SIMULATE_SMALL: &str = "\
[scenario]
kind = simulate

[grid]
n_modes = 64
half_width = 16pi

[model]
alpha = 1
gamma1 = 1
gamma2 = -1

[sim]
eta = 1
t_end = 0.02
dt = 0.001

[output]
dir = OUTDIR
";

#[test]
fn certify_scenario_emits_report_csv_plot_and_passes() {
    let dir = tempfile::tempdir().expect("temp dir");
    let out = dir.path().join("out");
    let cfg = write_config(
        dir.path(),
        "certify.cfg",
        &CERTIFY_SMALL.replace("OUTDIR", &out.to_string_lossy()),
    );
    let result = run_tool(&["certify", "--config", &cfg, "--quiet"]);
    assert!(
        result.status.success(),
        "exit 0, stderr: {}",
        String::from_utf8_lossy(&result.stderr)
    );
    let csv = fs::read_to_string(out.join("certificate.csv")).expect("csv exists");
    assert!(
        csv.starts_with("check,n,value,slack_log2,verdict\n"),
        "frozen header, got: {}",
        csv.lines().next().unwrap_or("")
    );
    let report = fs::read_to_string(out.join("report.txt")).expect("report exists");
    assert!(
        report.contains("CHECK induction_step n=2"),
        "induction lines present"
    );
    assert!(
        report.contains("CHECK series_divergence"),
        "series line present"
    );
    assert!(report.trim_end().ends_with("RESULT valid"), "verdict line");
    let svg = fs::read_to_string(out.join("slack.svg")).expect("plot exists");
    assert_eq!(
        svg.matches("class=\"bar\"").count(),
        2,
        "one slack bar per induction level"
    );
    let record = fs::read_to_string(out.join("record.txt")).expect("record exists");
    assert!(record.contains("scenario_hash = "), "hash recorded");
    assert!(record.contains("file = certificate.csv"), "artifacts listed");
}

#[test]
fn repeated_certify_runs_are_byte_identical() {
    let dir = tempfile::tempdir().expect("temp dir");
    let out_a = dir.path().join("a");
    let out_b = dir.path().join("b");
    let cfg = write_config(
        dir.path(),
        "certify.cfg",
        &CERTIFY_SMALL.replace("OUTDIR", "placeholder"),
    );
    for out in [&out_a, &out_b] {
        let result = run_tool(&[
            "certify",
            "--config",
            &cfg,
            "--out",
            &out.to_string_lossy(),
            "--quiet",
        ]);
        assert!(result.status.success(), "run succeeds");
    }
    for artifact in ["certificate.csv", "report.txt", "slack.svg"] {
        let a = fs::read(out_a.join(artifact)).expect("first copy");
        let b = fs::read(out_b.join(artifact)).expect("second copy");
        assert_eq!(a, b, "{artifact} is byte-identical across runs");
    }
}

#[test]
fn unknown_key_reports_line_number_and_exits_two() {
    let dir = tempfile::tempdir().expect("temp dir");
    let cfg = write_config(
        dir.path(),
        "bad.cfg",
        &CERTIFY_SMALL.replace("samples = 9", "smaples = 9"),
    );
    let result = run_tool(&["certify", "--config", &cfg]);
    assert_eq!(result.status.code(), Some(2), "config errors exit 2");
    let stderr = String::from_utf8_lossy(&result.stderr);
    assert!(stderr.contains("line 10"), "line number in: {stderr}");
    assert!(stderr.contains("smaples"), "offending key in: {stderr}");
}

#[test]
fn scenario_kind_must_match_the_subcommand() {
    let dir = tempfile::tempdir().expect("temp dir");
    let out = dir.path().join("out");
    let cfg = write_config(
        dir.path(),
        "sim.cfg",
        &SIMULATE_SMALL.replace("OUTDIR", &out.to_string_lossy()),
    );
    let result = run_tool(&["certify", "--config", &cfg]);
    assert_eq!(result.status.code(), Some(2), "mismatch exits 2");
    let stderr = String::from_utf8_lossy(&result.stderr);
    assert!(
        stderr.contains("does not match subcommand"),
        "mismatch named in: {stderr}"
    );
}

#[test]
fn certify_below_threshold_reports_violation_and_exits_one() {
    let dir = tempfile::tempdir().expect("temp dir");
    let out = dir.path().join("out");
    let cfg = write_config(
        dir.path(),
        "low.cfg",
        &CERTIFY_SMALL
            .replace("OUTDIR", &out.to_string_lossy())
            .replace("log2_eta_sq = 43", "log2_eta_sq = 41"),
    );
    let result = run_tool(&["certify", "--config", &cfg, "--quiet"]);
    assert_eq!(result.status.code(), Some(1), "violated check exits 1");
    let report = fs::read_to_string(out.join("report.txt")).expect("report exists");
    assert!(
        report.contains("CHECK series_divergence") && report.contains("verdict=FAIL"),
        "failing series line present"
    );
    assert!(report.trim_end().ends_with("RESULT violated"), "verdict line");
}

#[test]
fn simulate_emits_full_trajectory_table() {
    let dir = tempfile::tempdir().expect("temp dir");
    let out = dir.path().join("out");
    let cfg = write_config(
        dir.path(),
        "sim.cfg",
        &SIMULATE_SMALL.replace("OUTDIR", &out.to_string_lossy()),
    );
    let result = run_tool(&["simulate", "--config", &cfg, "--quiet"]);
    assert!(result.status.success(), "simulate exits 0");
    let csv = fs::read_to_string(out.join("trajectory.csv")).expect("table exists");
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("t,l2,hs,hdot,xs,fourier_min"),
        "frozen trajectory header"
    );
    assert_eq!(lines.count(), 21, "t = 0 plus 20 steps");
    let svg = fs::read_to_string(out.join("norms.svg")).expect("plot exists");
    assert!(svg.contains("<polyline"), "trajectories drawn");
}

#[test]
fn sweep_rows_are_sorted_by_axis_value() {
    let dir = tempfile::tempdir().expect("temp dir");
    let out = dir.path().join("out");
    let text = SIMULATE_SMALL
        .replace("kind = simulate", "kind = sweep")
        .replace(
            "[output]",
            "[sweep]\nparam = eta\nvalues = 4, 1\n\n[output]",
        )
        .replace("OUTDIR", &out.to_string_lossy());
    let cfg = write_config(dir.path(), "sweep.cfg", &text);
    let result = run_tool(&["sweep", "--config", &cfg, "--quiet"]);
    assert!(result.status.success(), "sweep exits 0");
    let csv = fs::read_to_string(out.join("sweep.csv")).expect("table exists");
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(
        rows[0], "param,value,blew_up,t_escape,steps,l2_final",
        "frozen sweep header"
    );
    assert!(rows[1].starts_with("eta,1,"), "smaller value first: {}", rows[1]);
    assert!(rows[2].starts_with("eta,4,"), "larger value second: {}", rows[2]);
}

#[test]
fn shipped_default_certificate_runs_clean() {
    let dir = tempfile::tempdir().expect("temp dir");
    let cfg = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs/certify.cfg");
    let result = run_tool(&[
        "certify",
        "--config",
        &cfg.to_string_lossy(),
        "--out",
        &dir.path().join("out").to_string_lossy(),
        "--quiet",
    ]);
    assert!(
        result.status.success(),
        "shipped default certificate passes, stderr: {}",
        String::from_utf8_lossy(&result.stderr)
    );
    let report =
        fs::read_to_string(dir.path().join("out/report.txt")).expect("report exists");
    assert!(
        report.contains("CHECK induction_step n=4"),
        "default depth reaches level 4"
    );
}

#[test]
fn regress_envelope_holds_in_the_damped_regime() {
    let dir = tempfile::tempdir().expect("temp dir");
    let out = dir.path().join("out");
    let text = SIMULATE_SMALL
        .replace("kind = simulate", "kind = regress_global")
        .replace("gamma1 = 1", "gamma1 = 2")
        .replace("gamma2 = -1", "gamma2 = 1")
        .replace("t_end = 0.02", "t_end = 0.05")
        .replace("OUTDIR", &out.to_string_lossy());
    let cfg = write_config(dir.path(), "regress.cfg", &text);
    let result = run_tool(&["regress", "--config", &cfg, "--quiet"]);
    assert!(
        result.status.success(),
        "bound holds so regress exits 0, stderr: {}",
        String::from_utf8_lossy(&result.stderr)
    );
    let csv = fs::read_to_string(out.join("regress.csv")).expect("table exists");
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("t,l2_sq,bound,margin"), "frozen header");
    for line in lines {
        let margin: f64 = line
            .rsplit(',')
            .next()
            .expect("margin column")
            .parse()
            .expect("margin is a number");
        assert!(margin >= 0.0, "margin stays non-negative in row: {line}");
    }
}
