//! The quadratic right-hand side in spectral form.
//!
//! N(u) = γ₁ (Λu)² + γ₂ u ∂_x² u with Λ = (-∂_x²)^{1/2}. On the Fourier
//! side each product is the dealiased Δξ-weighted convolution, so
//!
//! ```text
//! N̂(û)_k = γ₁ Σ_m |ξ_m| c_m |ξ_{k-m}| c_{k-m} Δξ
//!         - γ₂ Σ_m c_m ξ_{k-m}² c_{k-m} Δξ.
//! ```
//!
//! For γ₂ < 0 < γ₁ every kernel weight on the right is nonnegative, which
//! is the discrete heart of the Fourier-positivity argument: nonnegative
//! coefficient vectors stay (numerically) nonnegative along the flow.

use super::ModelParams;
use crate::spectral::{
    fractional_derivative, pointwise_product, second_derivative, SpectralField,
};
use crate::Error;

/// Evaluates N̂(û) for the given parameters.
pub fn nonlinearity(state: &SpectralField, params: &ModelParams) -> Result<SpectralField, Error> {
    params.validate()?;
    let mut out = SpectralField::zero(state.grid());
    if params.gamma1 != 0.0 {
        let lam = fractional_derivative(state, 1.0)?;
        let sq = pointwise_product(&lam, &lam)?;
        out.scaled_add(params.gamma1.into(), &sq);
    }
    if params.gamma2 != 0.0 {
        let hess = pointwise_product(state, &second_derivative(state))?;
        out.scaled_add(params.gamma2.into(), &hess);
    }
    Ok(out)
}
