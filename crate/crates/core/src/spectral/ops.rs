//! Fourier-multiplier operators and the dealiased product.
//!
//! All linear operators here are diagonal in frequency; the only genuinely
//! nonlinear ingredient is [`pointwise_product`], which hops to collocation
//! space, multiplies, and hops back. With the Δξ-weighted transform pair the
//! result is exactly the truncated convolution
//!
//! ```text
//! (u v)^_k = Σ_m c_m d_{k-m} Δξ      (both factors inside the dealias band)
//! ```
//!
//! with no wrap-around terms: both operands are projected onto the dealias
//! band first, and under the 2/3 rule no aliased image of a retained pair
//! lands back inside the band.

use super::field::SpectralField;
use super::symbol::SymbolSet;
use crate::Error;
use num_complex::Complex64;

/// Relative Hermitian defect below which a field is treated as the
/// coefficient vector of a real physical field.
const HERMITIAN_TOL: f64 = 1e-8;

/// Semigroup multiplier e^{-t m(ξ_k)} in storage order.
///
/// With Re m ≥ -1/4 the modulus never exceeds e^{t/4}; the mean mode factor
/// is exactly 1 because m(0) = 0.
pub fn semigroup_factor(symbols: &SymbolSet, t: f64) -> Result<Vec<Complex64>, Error> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::BadTime(t));
    }
    Ok(symbols
        .values()
        .iter()
        .map(|m| (-t * m).exp())
        .collect())
}

/// Applies the semigroup e^{-t m} to a field.
pub fn apply_semigroup(
    field: &SpectralField,
    symbols: &SymbolSet,
    t: f64,
) -> Result<SpectralField, Error> {
    if field.grid() != symbols.grid() {
        return Err(Error::GridMismatch);
    }
    let factor = semigroup_factor(symbols, t)?;
    let mut out = field.clone();
    out.apply_multiplier(|idx| factor[idx]);
    Ok(out)
}

/// Fractional derivative Λ^σ = (-∂_x²)^{σ/2}, the multiplier |ξ|^σ.
///
/// For σ > 0 the mean mode is annihilated; σ = 0 is the identity. For
/// σ < 0 the operator divides by |ξ|^{|σ|}, which is only meaningful on
/// mean-free fields: a mean mode above the rounding floor is an error.
pub fn fractional_derivative(field: &SpectralField, order: f64) -> Result<SpectralField, Error> {
    if !order.is_finite() {
        return Err(Error::BadSimConfig(format!(
            "fractional derivative order must be finite, got {order}"
        )));
    }
    if order < 0.0 {
        let mean_abs = field.coeffs()[0].norm();
        if mean_abs > 1e-12 * field.max_abs().max(1e-300) {
            return Err(Error::NegativeOrderMean { order, mean_abs });
        }
    }
    let grid = field.grid();
    let mut out = field.clone();
    out.apply_multiplier(|idx| {
        let xi = grid.xi(idx);
        if xi == 0.0 {
            // |0|^0 = 1 keeps σ = 0 the identity; any other order kills the
            // mean mode (for σ < 0 it was already checked to be negligible).
            if order == 0.0 {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        } else {
            Complex64::new(xi.abs().powf(order), 0.0)
        }
    });
    Ok(out)
}

/// Second derivative ∂_x², the multiplier -ξ².
pub fn second_derivative(field: &SpectralField) -> SpectralField {
    let grid = field.grid();
    let mut out = field.clone();
    out.apply_multiplier(|idx| {
        let xi = grid.xi(idx);
        Complex64::new(-xi * xi, 0.0)
    });
    out
}

/// Dealiased physical-space product of two fields on the same grid.
///
/// Both operands are truncated to the dealias band before transforming, so
/// the output is the exact Δξ-weighted convolution of the truncated inputs
/// restricted to the band. When both inputs are Hermitian (real physical
/// fields) the output is re-projected onto the Hermitian subspace to stop
/// rounding noise from accumulating a spurious imaginary part.
pub fn pointwise_product(a: &SpectralField, b: &SpectralField) -> Result<SpectralField, Error> {
    let grid = a.grid();
    if grid != b.grid() {
        return Err(Error::GridMismatch);
    }
    let both_hermitian =
        a.hermitian_defect() <= HERMITIAN_TOL && b.hermitian_defect() <= HERMITIAN_TOL;

    let mut ta = a.clone();
    ta.apply_multiplier(|idx| {
        if grid.keeps_mode(idx) {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let mut tb = b.clone();
    tb.apply_multiplier(|idx| {
        if grid.keeps_mode(idx) {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });

    let pa = ta.to_physical();
    let pb = tb.to_physical();
    let prod: Vec<Complex64> = pa.iter().zip(&pb).map(|(x, y)| x * y).collect();
    let mut out = SpectralField::from_physical(grid, &prod)?;
    out.apply_multiplier(|idx| {
        if grid.keeps_mode(idx) {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    if both_hermitian {
        out.symmetrize_hermitian();
    }
    Ok(out)
}
