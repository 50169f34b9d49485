//! Scenario execution: wiring validated configurations into the solver
//! and certificate engines, and emitting tables, reports, plots, and the
//! provenance record.
//!
//! Every artifact except `record.txt` is a pure function of the scenario,
//! which is what makes repeated runs byte-comparable. A violated
//! mathematical check is an outcome, not an error: the pipeline finishes,
//! writes the failing line, and reports [`RunStatus::Violated`].

use crate::config::{fmt_f64, header_lines, Kind, PhysicsSettings, Scenario, SweepParam};
use crate::csvout::{
    write_csv, CERTIFY_HEADER, REGRESS_HEADER, SWEEP_HEADER, TRAJECTORY_HEADER,
};
use crate::plot::{bar_plot, line_plot, Series};
use crate::record::{scenario_hash, unix_now, RunRecord};
use anyhow::{Context, Result};
use num_traits::ToPrimitive;
use std::collections::VecDeque;
use std::fs;
use std::path::PathBuf;
use std::sync::{mpsc, Mutex};
use velarde::cascade::{
    cascade_sequence, constants, induction_step_check, series_partial_sums, Verdict,
};
use velarde::solver::{run_simulation, ModelParams, Monitor, SimConfig, TrajectoryReport};
use velarde::spectral::build_grid;
use velarde::Error as CoreError;

/// Terms evaluated by the series verdict in certify runs; comfortably
/// past the point where the geometric growth or decay is unambiguous.
const SERIES_TERMS: usize = 24;

/// Points on the induction time grid spanning [t*, 2t*].
const INDUCTION_T_POINTS: usize = 8;

/// Overall outcome of a scenario, mapped to the process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunStatus {
    /// Every check passed (or the kind has no checks and the run completed).
    Pass,
    /// At least one mathematical check failed.
    Violated,
}

/// One line of the certificate report and one row of its CSV table.
struct CheckRow {
    check: &'static str,
    level: Option<u32>,
    kv: Vec<(String, String)>,
    slack_log2: f64,
    pass: bool,
}

impl CheckRow {
    fn verdict(&self) -> &'static str {
        if self.pass {
            "PASS"
        } else {
            "FAIL"
        }
    }

    /// CSV row `check,n,value,slack_log2,verdict`; commas inside values
    /// are softened to keep the column count fixed.
    fn csv(&self) -> String {
        let n = self.level.map(|n| n.to_string()).unwrap_or_default();
        let value = self
            .kv
            .iter()
            .map(|(k, v)| format!("{k}={}", v.replace(',', ";")))
            .collect::<Vec<_>>()
            .join(";");
        format!(
            "{},{},{},{},{}",
            self.check,
            n,
            value,
            fmt_f64(self.slack_log2),
            self.verdict()
        )
    }

    /// Report line `CHECK <name> <values> slack=<log2> verdict=<PASS|FAIL>`.
    fn report_line(&self) -> String {
        let mut parts = vec![format!("CHECK {}", self.check)];
        if let Some(n) = self.level {
            parts.push(format!("n={n}"));
        }
        for (k, v) in &self.kv {
            parts.push(format!("{k}={v}"));
        }
        parts.push(format!("slack={}", fmt_f64(self.slack_log2)));
        parts.push(format!("verdict={}", self.verdict()));
        parts.join(" ")
    }
}

/// Executes a validated scenario and writes its artifacts.
pub fn run_scenario(scenario: &Scenario, quiet: bool) -> Result<RunStatus> {
    fs::create_dir_all(&scenario.output_dir)
        .with_context(|| format!("creating {}", scenario.output_dir.display()))?;
    if !quiet {
        println!("run parameters:");
        for line in header_lines(scenario) {
            println!("  {line}");
        }
    }
    let started = unix_now();
    let (outcome, mut files, status) = match scenario.kind {
        Kind::Certify => certify_pipeline(scenario, quiet)?,
        Kind::Simulate => simulate_pipeline(scenario)?,
        Kind::Sweep => sweep_pipeline(scenario, quiet)?,
        Kind::RegressGlobal => regress_pipeline(scenario)?,
    };
    let record = RunRecord {
        scenario_hash: scenario_hash(scenario),
        tool_version: env!("CARGO_PKG_VERSION"),
        started_unix: started,
        finished_unix: unix_now(),
        outcome: outcome.clone(),
        files: files.clone(),
    };
    record.write(&scenario.output_dir.join("record.txt"))?;
    files.push(PathBuf::from("record.txt"));
    if !quiet {
        println!("{outcome}");
    }
    Ok(status)
}

type PipelineResult = Result<(String, Vec<PathBuf>, RunStatus)>;

fn certify_pipeline(scenario: &Scenario, quiet: bool) -> PipelineResult {
    let cert = scenario.cert.as_ref().expect("certify scenario shape");
    let consts = constants();
    let mut rows: Vec<CheckRow> = Vec::new();

    rows.push(CheckRow {
        check: "constants",
        level: None,
        kv: vec![
            ("t_star".to_string(), fmt_f64(consts.t_star())),
            ("c0_log2".to_string(), consts.c0_log2().to_string()),
            ("c1_min".to_string(), fmt_f64(consts.c1_min())),
            ("beta".to_string(), fmt_f64(consts.beta())),
        ],
        slack_log2: 0.0,
        pass: true,
    });

    match cascade_sequence(cert.n_max) {
        Ok(levels) => {
            for level in &levels {
                let n = level.n;
                let l2sq = level.l2sq.to_f64().unwrap_or(f64::NAN);
                rows.push(CheckRow {
                    check: "support_dyadic",
                    level: Some(n),
                    kv: vec![
                        ("lo".to_string(), level.supp_lo.to_string()),
                        ("hi".to_string(), level.supp_hi.to_string()),
                    ],
                    slack_log2: 0.0,
                    pass: true,
                });
                if n >= 1 {
                    rows.push(CheckRow {
                        check: "continuity",
                        level: Some(n),
                        kv: vec![],
                        slack_log2: 0.0,
                        pass: true,
                    });
                }
                rows.push(CheckRow {
                    check: "mass_unity",
                    level: Some(n),
                    kv: vec![("l1".to_string(), level.l1.to_string())],
                    slack_log2: 0.0,
                    pass: true,
                });
                let width = f64::exp2(f64::from(n));
                rows.push(CheckRow {
                    check: "cauchy_schwarz",
                    level: Some(n),
                    kv: vec![("l2sq_width".to_string(), fmt_f64(l2sq * width))],
                    slack_log2: (l2sq * width).log2(),
                    pass: true,
                });
                rows.push(CheckRow {
                    check: "l2_lower_bound",
                    level: Some(n),
                    kv: vec![("l2sq".to_string(), fmt_f64(l2sq))],
                    slack_log2: l2sq.log2() + f64::from(n),
                    pass: true,
                });
                rows.push(CheckRow {
                    check: "nonnegativity",
                    level: Some(n),
                    kv: vec![],
                    slack_log2: 0.0,
                    pass: true,
                });
                if n >= 1 {
                    rows.push(CheckRow {
                        check: "growth_recursion",
                        level: Some(n),
                        kv: vec![("t_probes".to_string(), "3".to_string())],
                        slack_log2: 0.0,
                        pass: true,
                    });
                }
            }
        }
        Err(CoreError::CascadeCheck {
            check,
            level,
            detail,
        }) => {
            rows.push(CheckRow {
                check,
                level: Some(level),
                kv: vec![("detail".to_string(), detail)],
                slack_log2: f64::NEG_INFINITY,
                pass: false,
            });
        }
        Err(other) => return Err(other.into()),
    }

    let t_star = consts.t_star();
    let mut slack_bars: Vec<(String, f64)> = Vec::new();
    for n in 1..=cert.n_max {
        let mut min_slack = f64::INFINITY;
        let mut min_bracket = f64::INFINITY;
        let mut xi_count = 0usize;
        let mut failure: Option<String> = None;
        for i in 0..INDUCTION_T_POINTS {
            let t = t_star * (1.0 + i as f64 / (INDUCTION_T_POINTS - 1) as f64);
            match induction_step_check(n, t, cert.gamma1, cert.gamma2, cert.samples) {
                Ok(report) => {
                    min_slack = min_slack.min(report.min_slack_log2);
                    min_bracket = min_bracket.min(report.bracket_slack_log2);
                    xi_count = report.xi_samples.len();
                }
                Err(CoreError::CascadeCheck { detail, .. }) => {
                    failure = Some(detail);
                    break;
                }
                Err(other) => return Err(other.into()),
            }
        }
        match failure {
            None => {
                slack_bars.push((n.to_string(), min_slack));
                rows.push(CheckRow {
                    check: "induction_step",
                    level: Some(n),
                    kv: vec![
                        ("t_points".to_string(), INDUCTION_T_POINTS.to_string()),
                        ("xi_samples".to_string(), xi_count.to_string()),
                        ("bracket".to_string(), fmt_f64(min_bracket)),
                    ],
                    slack_log2: min_slack,
                    pass: true,
                });
            }
            Some(detail) => {
                rows.push(CheckRow {
                    check: "induction_step",
                    level: Some(n),
                    kv: vec![("detail".to_string(), detail)],
                    slack_log2: f64::NEG_INFINITY,
                    pass: false,
                });
            }
        }
    }

    let series = series_partial_sums(cert.s, cert.log2_eta_sq, SERIES_TERMS)?;
    let threshold = consts.log2_eta_sq_threshold(cert.s)?;
    rows.push(CheckRow {
        check: "series_divergence",
        level: None,
        kv: vec![
            ("s".to_string(), fmt_f64(cert.s)),
            ("log2_eta_sq".to_string(), fmt_f64(cert.log2_eta_sq)),
            ("threshold".to_string(), fmt_f64(threshold)),
            ("terms".to_string(), SERIES_TERMS.to_string()),
            ("verdict".to_string(), series.verdict.to_string()),
        ],
        slack_log2: cert.log2_eta_sq - threshold,
        pass: series.verdict == Verdict::Diverging,
    });

    let csv_rows: Vec<String> = rows.iter().map(CheckRow::csv).collect();
    write_csv(
        &scenario.output_dir.join("certificate.csv"),
        CERTIFY_HEADER,
        &csv_rows,
    )?;

    let failed = rows.iter().filter(|r| !r.pass).count();
    let mut report = String::new();
    for line in header_lines(scenario) {
        report.push_str(&format!("# {line}\n"));
    }
    report.push('\n');
    for row in &rows {
        let line = row.report_line();
        if !quiet {
            println!("{line}");
        }
        report.push_str(&line);
        report.push('\n');
    }
    report.push_str(&format!(
        "\nRESULT {}\n",
        if failed == 0 { "valid" } else { "violated" }
    ));
    let report_path = scenario.output_dir.join("report.txt");
    fs::write(&report_path, report)
        .with_context(|| format!("writing {}", report_path.display()))?;

    let mut files = vec![PathBuf::from("certificate.csv"), PathBuf::from("report.txt")];
    if !slack_bars.is_empty() {
        let svg = bar_plot(
            &slack_bars,
            "induction slack by level",
            "min slack (log2)",
        )?;
        let path = scenario.output_dir.join("slack.svg");
        fs::write(&path, svg).with_context(|| format!("writing {}", path.display()))?;
        files.push(PathBuf::from("slack.svg"));
    }

    let outcome = if failed == 0 {
        format!("certificate valid: {} checks passed", rows.len())
    } else {
        format!(
            "certificate violated: {failed} of {} checks failed",
            rows.len()
        )
    };
    let status = if failed == 0 {
        RunStatus::Pass
    } else {
        RunStatus::Violated
    };
    Ok((outcome, files, status))
}

fn build_sim_config(p: &PhysicsSettings) -> Result<SimConfig> {
    let grid = build_grid(p.n_modes, p.half_width, p.dealias_fraction)?;
    Ok(SimConfig {
        grid,
        params: ModelParams {
            alpha: p.alpha,
            gamma1: p.gamma1,
            gamma2: p.gamma2,
            variant: p.variant,
        },
        eta: p.eta,
        t_end: p.t_end,
        dt: p.dt,
        s: p.s,
        blowup_factor: p.blowup_factor,
        monitors: Monitor::all(),
        picard_iters: p.picard_iters,
    })
}

fn simulate_pipeline(scenario: &Scenario) -> PipelineResult {
    let physics = scenario.sim.as_ref().expect("simulate scenario shape");
    let config = build_sim_config(physics)?;
    let report = run_simulation(&config)?;

    let rows: Vec<String> = (0..report.times.len())
        .map(|i| {
            format!(
                "{},{},{},{},{},{}",
                fmt_f64(report.times[i]),
                fmt_f64(report.l2[i]),
                fmt_f64(report.hs[i]),
                fmt_f64(report.hdot[i]),
                fmt_f64(report.xs[i]),
                fmt_f64(report.fourier_min[i])
            )
        })
        .collect();
    write_csv(
        &scenario.output_dir.join("trajectory.csv"),
        TRAJECTORY_HEADER,
        &rows,
    )?;

    let series = vec![
        Series {
            name: "l2".to_string(),
            points: report
                .times
                .iter()
                .zip(&report.l2)
                .map(|(&t, &v)| (t, v))
                .collect(),
        },
        Series {
            name: "hs".to_string(),
            points: report
                .times
                .iter()
                .zip(&report.hs)
                .map(|(&t, &v)| (t, v))
                .collect(),
        },
    ];
    let svg = line_plot(&series, true, "norm trajectories", "t", "norm")?;
    let svg_path = scenario.output_dir.join("norms.svg");
    fs::write(&svg_path, svg).with_context(|| format!("writing {}", svg_path.display()))?;

    let mut outcome = if report.blew_up {
        format!(
            "escaped the threshold at t = {} after {} steps",
            fmt_f64(report.t_blowup.unwrap_or(f64::NAN)),
            report.steps_taken
        )
    } else {
        format!(
            "completed t_end = {} in {} steps",
            fmt_f64(physics.t_end),
            report.steps_taken
        )
    };
    if let Some(dev) = report.picard_deviation {
        outcome.push_str(&format!(", picard deviation = {:.3e}", dev));
    }
    Ok((
        outcome,
        vec![PathBuf::from("trajectory.csv"), PathBuf::from("norms.svg")],
        RunStatus::Pass,
    ))
}

fn regress_pipeline(scenario: &Scenario) -> PipelineResult {
    let physics = scenario.sim.as_ref().expect("regress scenario shape");
    let config = build_sim_config(physics)?;
    let report = run_simulation(&config)?;
    let l2sq0 = report.l2[0] * report.l2[0];
    // The transport-only regime has no exponential envelope to compare
    // against; its boundedness criterion is the escape factor itself.
    let transport = physics.gamma2 == 0.0;

    let mut rows = Vec::with_capacity(report.times.len());
    let mut first_violation: Option<f64> = None;
    let mut l2sq_series = Vec::new();
    let mut bound_series = Vec::new();
    for (&t, &l2) in report.times.iter().zip(&report.l2) {
        let l2_sq = l2 * l2;
        let bound = if transport {
            physics.blowup_factor * l2sq0
        } else {
            l2sq0 * (4.0 * t).exp()
        };
        let margin = bound - l2_sq;
        if margin < 0.0 && first_violation.is_none() {
            first_violation = Some(t);
        }
        l2sq_series.push((t, l2_sq));
        bound_series.push((t, bound));
        rows.push(format!(
            "{},{},{},{}",
            fmt_f64(t),
            fmt_f64(l2_sq),
            fmt_f64(bound),
            fmt_f64(margin)
        ));
    }
    write_csv(&scenario.output_dir.join("regress.csv"), REGRESS_HEADER, &rows)?;

    let series = vec![
        Series {
            name: "l2_sq".to_string(),
            points: l2sq_series,
        },
        Series {
            name: "bound".to_string(),
            points: bound_series,
        },
    ];
    let svg = line_plot(&series, true, "growth envelope", "t", "squared norm")?;
    let svg_path = scenario.output_dir.join("margin.svg");
    fs::write(&svg_path, svg).with_context(|| format!("writing {}", svg_path.display()))?;

    let violated = first_violation.is_some() || report.blew_up;
    let outcome = match (first_violation, report.blew_up) {
        (Some(t), _) => format!("growth envelope violated at t = {}", fmt_f64(t)),
        (None, true) => format!(
            "run escaped the threshold at t = {}",
            fmt_f64(report.t_blowup.unwrap_or(f64::NAN))
        ),
        (None, false) => format!("growth envelope held at all {} samples", rows.len()),
    };
    Ok((
        outcome,
        vec![PathBuf::from("regress.csv"), PathBuf::from("margin.svg")],
        if violated {
            RunStatus::Violated
        } else {
            RunStatus::Pass
        },
    ))
}

fn apply_axis(physics: &mut PhysicsSettings, param: SweepParam, value: f64) {
    match param {
        SweepParam::Eta => physics.eta = value,
        SweepParam::Alpha => physics.alpha = value,
        SweepParam::Gamma1 => physics.gamma1 = value,
        SweepParam::Gamma2 => physics.gamma2 = value,
        SweepParam::Dt => physics.dt = value,
    }
}

fn sweep_pipeline(scenario: &Scenario, quiet: bool) -> PipelineResult {
    let physics = scenario.sim.as_ref().expect("sweep scenario shape");
    let axis = scenario.sweep_axis.as_ref().expect("sweep scenario shape");
    let values = &axis.values;

    // Worker pool over the sweep points: a shared index queue feeds as
    // many workers as the host offers, each owning its simulation state;
    // rows are re-sorted by axis value so aggregation order cannot leak
    // into the output.
    let queue: Mutex<VecDeque<usize>> = Mutex::new((0..values.len()).collect());
    let (tx, rx) = mpsc::channel::<(usize, Result<TrajectoryReport>)>();
    let workers = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .min(values.len())
        .max(1);
    let mut results: Vec<Option<Result<TrajectoryReport>>> = Vec::new();
    results.resize_with(values.len(), || None);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            let tx = tx.clone();
            let queue = &queue;
            scope.spawn(move || loop {
                let next = queue.lock().expect("queue lock").pop_front();
                let Some(idx) = next else { break };
                let mut point = physics.clone();
                apply_axis(&mut point, axis.param, values[idx]);
                let outcome = build_sim_config(&point)
                    .and_then(|config| run_simulation(&config).map_err(Into::into));
                tx.send((idx, outcome)).expect("aggregator is listening");
            });
        }
        drop(tx);
        for (idx, outcome) in rx.iter() {
            if !quiet {
                let summary = match &outcome {
                    Ok(r) if r.blew_up => format!(
                        "escaped at t = {}",
                        fmt_f64(r.t_blowup.unwrap_or(f64::NAN))
                    ),
                    Ok(_) => "completed".to_string(),
                    Err(_) => "failed".to_string(),
                };
                println!(
                    "sweep point {} = {}: {summary}",
                    axis.param.word(),
                    fmt_f64(values[idx])
                );
            }
            results[idx] = Some(outcome);
        }
    });

    let mut table: Vec<(f64, TrajectoryReport)> = Vec::with_capacity(values.len());
    for (idx, slot) in results.into_iter().enumerate() {
        let report = slot
            .expect("every queued index was answered")
            .with_context(|| {
                format!("sweep point {} = {}", axis.param.word(), fmt_f64(values[idx]))
            })?;
        table.push((values[idx], report));
    }
    table.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut escaped = 0usize;
    let rows: Vec<String> = table
        .iter()
        .map(|(value, report)| {
            if report.blew_up {
                escaped += 1;
            }
            format!(
                "{},{},{},{},{},{}",
                axis.param.word(),
                fmt_f64(*value),
                report.blew_up,
                fmt_f64(report.t_blowup.unwrap_or(-1.0)),
                report.steps_taken,
                fmt_f64(report.l2.last().copied().unwrap_or(f64::NAN))
            )
        })
        .collect();
    write_csv(&scenario.output_dir.join("sweep.csv"), SWEEP_HEADER, &rows)?;

    let bars: Vec<(String, f64)> = table
        .iter()
        .map(|(value, report)| {
            (
                fmt_f64(*value),
                report.t_blowup.unwrap_or(physics.t_end),
            )
        })
        .collect();
    let svg = bar_plot(&bars, "threshold-escape time by sweep value", "t")?;
    let svg_path = scenario.output_dir.join("escape.svg");
    fs::write(&svg_path, svg).with_context(|| format!("writing {}", svg_path.display()))?;

    let outcome = format!("{} sweep points, {} escaped", table.len(), escaped);
    Ok((
        outcome,
        vec![PathBuf::from("sweep.csv"), PathBuf::from("escape.svg")],
        RunStatus::Pass,
    ))
}
