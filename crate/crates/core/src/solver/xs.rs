//! The well-posedness space diagnostic.
//!
//! Local existence for rough data lives in the weighted space
//!
//! ```text
//! ‖u‖_{X^s(T)} = sup_{0<t≤T} ‖u(t)‖_{H^s}
//!              + sup_{0<t≤T} t^{|s|/4} ‖u(t)‖_{L²}
//!              + sup_{0<t≤T} t^{(|s|+1)/4} ‖∂_x u(t)‖_{L²},
//! ```
//!
//! the powers of t reflecting the fourth-order smoothing rate t^{-1/4} per
//! derivative. This module recomputes the combination from a recorded
//! trajectory, restricted to an arbitrary horizon T ≤ t_end, so tests can
//! compare the stepper's running value against an after-the-fact evaluation.

use super::sim::TrajectoryReport;
use crate::Error;

/// Parameters of one X^s evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XsNormSpec {
    /// Sobolev index, restricted to (-1, 1] like the underlying theory.
    pub s: f64,
    /// Horizon T: the suprema run over recorded samples with 0 < t ≤ T.
    pub t0: f64,
}

/// Evaluates ‖·‖_{X^s(T)} from a recorded trajectory.
///
/// The report must have been recorded at the same Sobolev index (the H^s
/// series cannot be reweighted after the fact) and must cover the horizon.
pub fn xs_norm_diagnostic(report: &TrajectoryReport, spec: &XsNormSpec) -> Result<f64, Error> {
    if !(spec.s.is_finite() && spec.s > -1.0 && spec.s <= 1.0) {
        return Err(Error::SobolevIndexRange {
            s: spec.s,
            range: "(-1, 1]",
            context: "Xs diagnostic",
        });
    }
    if (spec.s - report.s).abs() > 1e-12 {
        return Err(Error::SobolevIndexMismatch {
            have: report.s,
            want: spec.s,
        });
    }
    if report.times.is_empty() {
        return Err(Error::EmptyTrajectory);
    }
    if report.hs.len() != report.times.len()
        || report.l2.len() != report.times.len()
        || report.dx_l2.len() != report.times.len()
    {
        return Err(Error::BadSimConfig(
            "Xs diagnostic needs the l2, hs, and xs monitors recorded".into(),
        ));
    }
    let t_max = *report.times.last().expect("nonempty");
    if !(spec.t0.is_finite() && spec.t0 > 0.0) {
        return Err(Error::BadTime(spec.t0));
    }
    if spec.t0 > t_max * (1.0 + 1e-12) {
        return Err(Error::HorizonNotCovered {
            have: t_max,
            want: spec.t0,
        });
    }

    let mut sup_hs = 0.0f64;
    let mut sup_l2 = 0.0f64;
    let mut sup_dx = 0.0f64;
    let mut samples_in_window = 0usize;
    for (i, &t) in report.times.iter().enumerate() {
        if t <= 0.0 || t > spec.t0 * (1.0 + 1e-12) {
            continue;
        }
        samples_in_window += 1;
        sup_hs = sup_hs.max(report.hs[i]);
        sup_l2 = sup_l2.max(t.powf(spec.s.abs() / 4.0) * report.l2[i]);
        sup_dx = sup_dx.max(t.powf((spec.s.abs() + 1.0) / 4.0) * report.dx_l2[i]);
    }
    if samples_in_window == 0 {
        return Err(Error::EmptyTrajectory);
    }
    Ok(sup_hs + sup_l2 + sup_dx)
}
