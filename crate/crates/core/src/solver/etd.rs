//! Two-stage exponential time differencing.
//!
//! With L = -m the scheme reads
//!
//! ```text
//! a    = e^{hL} u + h φ₁(hL) N(u)
//! u⁺   = a + h φ₂(hL) (N(a) - N(u))
//! ```
//!
//! It reproduces the linear flow exactly (N ≡ 0 collapses the update to the
//! semigroup) and is second order in the nonlinearity, stiffly accurate for
//! the diagonal linear part. The stiff fourth-order symbol makes classical
//! explicit steppers useless at these resolutions; the exponential stepper
//! has no linear stability restriction at all.

use super::nonlinearity::nonlinearity;
use super::ModelParams;
use crate::phi::{phi1, phi2};
use crate::spectral::{build_symbols, GridSpec, SpectralField};
use crate::Error;
use num_complex::Complex64;

/// Precomputed per-mode tables for a fixed (grid, params, dt) triple.
///
/// `run_simulation` builds one stepper per step size; the one-shot
/// [`step_etd`] builds a throwaway. Both go through [`EtdStepper::step`],
/// so there is a single code path for the update formula.
#[derive(Debug, Clone)]
pub struct EtdStepper {
    grid: GridSpec,
    params: ModelParams,
    dt: f64,
    exp_factor: Vec<Complex64>,
    h_phi1: Vec<Complex64>,
    h_phi2: Vec<Complex64>,
}

impl EtdStepper {
    /// Tabulates e^{hL}, h φ₁(hL), h φ₂(hL) for L = -m on the grid.
    pub fn new(grid: GridSpec, params: &ModelParams, dt: f64) -> Result<Self, Error> {
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::BadSimConfig(format!(
                "time step must be positive and finite, got {dt}"
            )));
        }
        params.validate()?;
        let symbols = build_symbols(grid, params.alpha, params.variant)?;
        let mut exp_factor = Vec::with_capacity(grid.n_modes());
        let mut h_phi1 = Vec::with_capacity(grid.n_modes());
        let mut h_phi2 = Vec::with_capacity(grid.n_modes());
        for m in symbols.values() {
            let z = -dt * m;
            exp_factor.push(z.exp());
            h_phi1.push(dt * phi1(z));
            h_phi2.push(dt * phi2(z));
        }
        Ok(EtdStepper {
            grid,
            params: *params,
            dt,
            exp_factor,
            h_phi1,
            h_phi2,
        })
    }

    /// Step size h.
    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// Advances one step. Overflow or NaN in the state propagates through
    /// to the returned field so the caller's monitors can flag blow-up; it
    /// is not an error here.
    pub fn step(&self, state: &SpectralField) -> Result<SpectralField, Error> {
        if state.grid() != self.grid {
            return Err(Error::GridMismatch);
        }
        let n_u = nonlinearity(state, &self.params)?;
        let mut stage = state.clone();
        stage.apply_multiplier(|idx| self.exp_factor[idx]);
        for (idx, c) in stage.coeffs_mut().iter_mut().enumerate() {
            *c += self.h_phi1[idx] * n_u.coeffs()[idx];
        }
        let n_a = nonlinearity(&stage, &self.params)?;
        let mut out = stage;
        for (idx, c) in out.coeffs_mut().iter_mut().enumerate() {
            *c += self.h_phi2[idx] * (n_a.coeffs()[idx] - n_u.coeffs()[idx]);
        }
        Ok(out)
    }
}

/// One exponential step of size `dt` from `state`.
pub fn step_etd(
    state: &SpectralField,
    params: &ModelParams,
    dt: f64,
) -> Result<SpectralField, Error> {
    EtdStepper::new(state.grid(), params, dt)?.step(state)
}
