//! Mild-formulation time integration and trajectory diagnostics.
//!
//! The equation is advanced in its Duhamel form
//!
//! ```text
//! û(t) = e^{-t m} û₀ + ∫₀ᵗ e^{-(t-τ) m} N̂(û(τ)) dτ,
//! N̂(û) = γ₁ (Λu)²^ + γ₂ (u ∂_x² u)^,     Λ = (-∂_x²)^{1/2},
//! ```
//!
//! by two independent routes that cross-validate each other:
//!
//! * [`step_etd`]: a two-stage exponential integrator (exact on the linear
//!   flow, second order in the nonlinearity) used for production runs;
//! * [`picard_iterate`]: the contraction-mapping iteration underlying the
//!   local well-posedness proof, discretised with trapezoidal quadrature.
//!
//! [`run_simulation`] drives the exponential stepper, records the requested
//! norm monitors, and converts overflow or NaN into an explicit blow-up
//! sentinel instead of an error, because hitting the escape threshold is a
//! legitimate outcome for the blow-up scenarios this crate exists to study.

mod datum;
mod etd;
mod nonlinearity;
mod picard;
mod sim;
mod xs;

pub use datum::initial_datum;
pub use etd::{step_etd, EtdStepper};
pub use nonlinearity::nonlinearity;
pub use picard::{picard_iterate, PicardRun};
pub use sim::{run_simulation, Monitor, SimConfig, TrajectoryReport};
pub use xs::{xs_norm_diagnostic, XsNormSpec};

use crate::spectral::ModelVariant;
use crate::Error;

/// Physical parameters of one model instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Strength of the third-order operator (dissipative or dispersive).
    pub alpha: f64,
    /// Coefficient of the squared half-derivative (Λu)².
    pub gamma1: f64,
    /// Coefficient of the Hessian-type term u ∂_x² u.
    pub gamma2: f64,
    /// Which third-order operator the linear part carries.
    pub variant: ModelVariant,
}

impl ModelParams {
    /// Checks finiteness of every coefficient and α ≥ 0.
    pub fn validate(&self) -> Result<(), Error> {
        if !(self.alpha.is_finite() && self.alpha >= 0.0) {
            return Err(Error::BadAlpha(self.alpha));
        }
        if !self.gamma1.is_finite() || !self.gamma2.is_finite() {
            return Err(Error::BadSimConfig(format!(
                "nonlinearity coefficients must be finite, got gamma1 = {}, gamma2 = {}",
                self.gamma1, self.gamma2
            )));
        }
        Ok(())
    }
}
