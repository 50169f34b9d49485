//! Trajectory driver: stepping, monitors, blow-up sentinel.

use super::datum::initial_datum;
use super::etd::EtdStepper;
use super::picard::picard_iterate;
use super::ModelParams;
use crate::spectral::{fourier_min, sobolev_norm, GridSpec, SpectralField};
use crate::Error;

/// Quantities recorded along a trajectory. `Hs`, `Hdot`, and `Xs` use the
/// Sobolev index stored in the config.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monitor {
    /// L² norm. Always computed internally (the escape test needs it);
    /// the monitor controls whether the series is recorded.
    L2,
    /// Inhomogeneous Sobolev norm at the configured index.
    Hs,
    /// Homogeneous Sobolev norm at the configured index.
    Hdot,
    /// Running well-posedness-space combination, see
    /// [`super::xs_norm_diagnostic`].
    Xs,
    /// Smallest real part over all Fourier coefficients.
    FourierMin,
    /// Arms the escape test: crossing the threshold ends the run with the
    /// blow-up sentinel set. Non-finite values always end the run.
    Blowup,
}

impl Monitor {
    /// Every monitor, the default set.
    pub fn all() -> Vec<Monitor> {
        vec![
            Monitor::L2,
            Monitor::Hs,
            Monitor::Hdot,
            Monitor::Xs,
            Monitor::FourierMin,
            Monitor::Blowup,
        ]
    }
}

/// Full description of one simulation run.
#[derive(Debug, Clone)]
pub struct SimConfig {
    /// Spectral grid for the run.
    pub grid: GridSpec,
    /// Model coefficients and variant.
    pub params: ModelParams,
    /// Datum amplitude η.
    pub eta: f64,
    /// Final time.
    pub t_end: f64,
    /// Step size; the last step is shortened when t_end is not a multiple.
    pub dt: f64,
    /// Sobolev index for the Hs/Hdot/Xs monitors, in (-1, 1].
    pub s: f64,
    /// Escape threshold as a multiple of the initial L² norm; must exceed 1.
    pub blowup_factor: f64,
    /// Which series to record.
    pub monitors: Vec<Monitor>,
    /// When positive, run this many Picard sweeps on a short horizon and
    /// record the sup-mode deviation from the exponential stepper.
    pub picard_iters: usize,
}

impl SimConfig {
    fn has(&self, m: Monitor) -> bool {
        self.monitors.contains(&m)
    }

    /// Structural validation; every violated constraint is named.
    pub fn validate(&self) -> Result<(), Error> {
        self.params.validate()?;
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(Error::BadSimConfig(format!(
                "time step must satisfy 0 < dt, got {}",
                self.dt
            )));
        }
        if !(self.t_end.is_finite() && self.t_end > self.dt) {
            return Err(Error::BadSimConfig(format!(
                "horizon must satisfy dt < t_end, got dt = {}, t_end = {}",
                self.dt, self.t_end
            )));
        }
        if !(self.blowup_factor.is_finite() && self.blowup_factor > 1.0) {
            return Err(Error::BadSimConfig(format!(
                "escape threshold factor must exceed 1, got {}",
                self.blowup_factor
            )));
        }
        if !(self.s.is_finite() && self.s > -1.0 && self.s <= 1.0) {
            return Err(Error::SobolevIndexRange {
                s: self.s,
                range: "(-1, 1]",
                context: "simulation monitors",
            });
        }
        if !(self.eta.is_finite() && self.eta > 0.0) {
            return Err(Error::BadEta(self.eta));
        }
        Ok(())
    }
}

/// Recorded series of one run. Series for monitors that were not requested
/// stay empty; all recorded series share the length of `times`.
#[derive(Debug, Clone)]
pub struct TrajectoryReport {
    /// Sobolev index the Hs/Hdot/Xs series were recorded at.
    pub s: f64,
    /// Sample times, starting at 0.
    pub times: Vec<f64>,
    /// L² norms.
    pub l2: Vec<f64>,
    /// Inhomogeneous H^s norms.
    pub hs: Vec<f64>,
    /// Homogeneous Ḣ^s norms.
    pub hdot: Vec<f64>,
    /// Running X^s combination over samples in (0, t].
    pub xs: Vec<f64>,
    /// ‖∂_x u‖_{L²} (the Ḣ¹ ingredient of X^s); recorded with Xs.
    pub dx_l2: Vec<f64>,
    /// Smallest real part over all coefficients.
    pub fourier_min: Vec<f64>,
    /// Whether the run ended at the escape threshold or on non-finite data.
    pub blew_up: bool,
    /// First time at or past the escape; `None` when the run completed.
    pub t_blowup: Option<f64>,
    /// Number of completed steps.
    pub steps_taken: usize,
    /// State at the last recorded sample (finite by construction).
    pub final_state: SpectralField,
    /// Sup-mode ETD-vs-Picard deviation when the cross-check ran.
    pub picard_deviation: Option<f64>,
}

impl TrajectoryReport {
    /// Escape time with the no-escape sentinel: runs that never crossed the
    /// threshold report their horizon, which keeps escape times well ordered
    /// in parameter sweeps.
    pub fn escape_time_or_horizon(&self, horizon: f64) -> f64 {
        self.t_blowup.unwrap_or(horizon)
    }
}

struct RunningXs {
    sup_hs: f64,
    sup_weighted_l2: f64,
    sup_weighted_dx: f64,
}

impl RunningXs {
    fn new() -> Self {
        RunningXs {
            sup_hs: 0.0,
            sup_weighted_l2: 0.0,
            sup_weighted_dx: 0.0,
        }
    }

    /// Folds one sample at t > 0 into the three running suprema.
    fn absorb(&mut self, s: f64, t: f64, hs: f64, l2: f64, dx_l2: f64) {
        self.sup_hs = self.sup_hs.max(hs);
        self.sup_weighted_l2 = self.sup_weighted_l2.max(t.powf(s.abs() / 4.0) * l2);
        self.sup_weighted_dx = self
            .sup_weighted_dx
            .max(t.powf((s.abs() + 1.0) / 4.0) * dx_l2);
    }

    fn total(&self) -> f64 {
        self.sup_hs + self.sup_weighted_l2 + self.sup_weighted_dx
    }
}

/// Runs the exponential stepper from the band datum and records monitors.
///
/// Escape (threshold crossing) and loss of finiteness both set the blow-up
/// sentinel instead of erroring: those runs answer the question the blow-up
/// scenarios ask. Every recorded sample is finite; a non-finite state ends
/// the run without recording the poisoned sample.
pub fn run_simulation(config: &SimConfig) -> Result<TrajectoryReport, Error> {
    config.validate()?;
    let u0 = initial_datum(config.grid, config.eta)?;
    let l2_initial = sobolev_norm(&u0, 0.0, false)?;
    let threshold = config.blowup_factor * l2_initial;

    let stepper = EtdStepper::new(config.grid, &config.params, config.dt)?;
    let n_full = ((config.t_end + 1e-12 * config.dt) / config.dt).floor() as usize;
    let remainder = config.t_end - n_full as f64 * config.dt;
    let tail_stepper = if remainder > 1e-9 * config.dt {
        Some(EtdStepper::new(config.grid, &config.params, remainder)?)
    } else {
        None
    };

    let mut report = TrajectoryReport {
        s: config.s,
        times: Vec::new(),
        l2: Vec::new(),
        hs: Vec::new(),
        hdot: Vec::new(),
        xs: Vec::new(),
        dx_l2: Vec::new(),
        fourier_min: Vec::new(),
        blew_up: false,
        t_blowup: None,
        steps_taken: 0,
        final_state: u0.clone(),
        picard_deviation: None,
    };
    let mut running = RunningXs::new();

    let record =
        |report: &mut TrajectoryReport, running: &mut RunningXs, t: f64, state: &SpectralField| -> Result<bool, Error> {
            if !state.is_finite() {
                report.blew_up = true;
                report.t_blowup = Some(t);
                return Ok(false);
            }
            let l2 = sobolev_norm(state, 0.0, false)?;
            let needs_hs = config.has(Monitor::Hs) || config.has(Monitor::Xs);
            let hs = if needs_hs {
                sobolev_norm(state, config.s, false)?
            } else {
                0.0
            };
            let needs_dx = config.has(Monitor::Xs);
            let dx = if needs_dx {
                sobolev_norm(state, 1.0, true)?
            } else {
                0.0
            };

            report.times.push(t);
            if config.has(Monitor::L2) {
                report.l2.push(l2);
            }
            if config.has(Monitor::Hs) {
                report.hs.push(hs);
            }
            if config.has(Monitor::Hdot) {
                report.hdot.push(sobolev_norm(state, config.s, true)?);
            }
            if config.has(Monitor::Xs) {
                if t > 0.0 {
                    running.absorb(config.s, t, hs, l2, dx);
                }
                report.xs.push(running.total());
                report.dx_l2.push(dx);
            }
            if config.has(Monitor::FourierMin) {
                report.fourier_min.push(fourier_min(state));
            }
            report.final_state = state.clone();

            if config.has(Monitor::Blowup) && l2 > threshold {
                report.blew_up = true;
                report.t_blowup = Some(t);
                return Ok(false);
            }
            Ok(true)
        };

    let mut state = u0.clone();
    let mut keep_going = record(&mut report, &mut running, 0.0, &state)?;
    let mut step_index = 0usize;
    while keep_going && step_index < n_full {
        state = stepper.step(&state)?;
        step_index += 1;
        report.steps_taken = step_index;
        let t = step_index as f64 * config.dt;
        keep_going = record(&mut report, &mut running, t, &state)?;
    }
    if keep_going {
        if let Some(tail) = &tail_stepper {
            state = tail.step(&state)?;
            report.steps_taken += 1;
            record(&mut report, &mut running, config.t_end, &state)?;
        }
    }

    if config.picard_iters > 0 {
        report.picard_deviation = Some(picard_cross_check(config, &u0)?);
    }
    Ok(report)
}

/// Short-horizon two-route check: integrate with both the exponential
/// stepper and the Picard map on a shared node grid and return the largest
/// sup-mode deviation over the nodes.
fn picard_cross_check(config: &SimConfig, u0: &SpectralField) -> Result<f64, Error> {
    let horizon = config.t_end.min(0.01);
    let n_quad = 33usize;
    let run = picard_iterate(u0, &config.params, horizon, config.picard_iters, n_quad)?;
    let h = horizon / (n_quad - 1) as f64;
    let stepper = EtdStepper::new(config.grid, &config.params, h)?;
    let last = run.iterates.last().expect("picard returns the seed at least");
    let mut state = u0.clone();
    let mut dev = 0.0f64;
    for node in last.iter().skip(1) {
        state = stepper.step(&state)?;
        dev = dev.max(state.sup_mode_distance(node)?);
    }
    Ok(dev)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{build_grid, ModelVariant};
    use std::f64::consts::PI;

    fn base_config() -> SimConfig {
        SimConfig {
            grid: build_grid(256, 8.0 * PI, 2.0 / 3.0).unwrap(),
            params: ModelParams {
                alpha: 1.0,
                gamma1: 1.0,
                gamma2: -1.0,
                variant: ModelVariant::Nonlocal,
            },
            eta: 1.0,
            t_end: 0.05,
            dt: 1e-3,
            s: 1.0,
            blowup_factor: 1e12,
            monitors: Monitor::all(),
            picard_iters: 0,
        }
    }

    #[test]
    fn completed_run_records_every_sample_and_no_sentinel() {
        let report = run_simulation(&base_config()).unwrap();
        assert!(!report.blew_up, "benign run must not flag blow-up");
        assert_eq!(report.t_blowup, None);
        assert_eq!(report.times.len(), 51, "t = 0 plus 50 steps");
        assert_eq!(report.l2.len(), report.times.len());
        assert_eq!(report.fourier_min.len(), report.times.len());
        assert!((report.times.last().unwrap() - 0.05).abs() < 1e-12);
        assert!(
            report.l2.iter().all(|v| v.is_finite()),
            "recorded norms must be finite"
        );
    }

    #[test]
    fn large_amplitude_run_trips_the_escape_sentinel() {
        let mut config = base_config();
        config.eta = 16.0;
        config.t_end = 1.0;
        let report = run_simulation(&config).unwrap();
        assert!(report.blew_up, "eta = 16 focusing run must escape");
        let t_esc = report.t_blowup.expect("escape time set");
        assert!(t_esc < 0.1, "escape expected early, got {t_esc}");
        assert!(
            report.l2.iter().all(|v| v.is_finite()),
            "all recorded samples stay finite"
        );
        assert!(
            report.times.len() < 120,
            "run must stop at escape, recorded {} samples",
            report.times.len()
        );
    }

    #[test]
    fn xs_series_is_monotone_and_starts_at_zero() {
        let report = run_simulation(&base_config()).unwrap();
        assert_eq!(report.xs[0], 0.0, "no samples in (0, 0]");
        for w in report.xs.windows(2) {
            assert!(w[1] >= w[0], "running sup combination must not decrease");
        }
    }

    #[test]
    fn unrequested_monitors_leave_their_series_empty() {
        let mut config = base_config();
        config.monitors = vec![Monitor::L2, Monitor::Blowup];
        let report = run_simulation(&config).unwrap();
        assert!(!report.l2.is_empty());
        assert!(report.hs.is_empty(), "Hs was not requested");
        assert!(report.xs.is_empty(), "Xs was not requested");
        assert!(report.fourier_min.is_empty(), "FourierMin was not requested");
    }

    #[test]
    fn non_multiple_horizon_ends_exactly_at_t_end() {
        let mut config = base_config();
        config.t_end = 0.0105;
        let report = run_simulation(&config).unwrap();
        let last = *report.times.last().unwrap();
        assert!(
            (last - 0.0105).abs() < 1e-12,
            "tail step must land on t_end, got {last}"
        );
    }

    #[test]
    fn picard_cross_check_reports_small_deviation_for_small_data() {
        let mut config = base_config();
        config.eta = 0.1;
        config.picard_iters = 4;
        config.t_end = 0.02;
        let report = run_simulation(&config).unwrap();
        let dev = report.picard_deviation.expect("cross-check requested");
        assert!(
            dev < 1e-6,
            "two independent integrators disagree by {dev}"
        );
    }

    #[test]
    fn config_validation_names_the_violated_constraint() {
        let mut config = base_config();
        config.dt = 0.1;
        config.t_end = 0.05;
        let err = run_simulation(&config).unwrap_err();
        assert!(
            err.to_string().contains("dt < t_end"),
            "error should cite the ordering constraint, got: {err}"
        );

        let mut config = base_config();
        config.blowup_factor = 0.5;
        let err = run_simulation(&config).unwrap_err();
        assert!(
            err.to_string().contains("exceed 1"),
            "error should cite the threshold factor constraint, got: {err}"
        );

        let mut config = base_config();
        config.s = 1.5;
        assert!(matches!(
            run_simulation(&config),
            Err(Error::SobolevIndexRange { .. })
        ));
    }
}
