//! The frequency-band seed datum.
//!
//! Blow-up scenarios start from û₀ = η · 1_{(1,2)}(|ξ|): every mode whose
//! frequency magnitude lies strictly inside the band (1, 2) gets amplitude
//! η, all others vanish. Keeping both half-axes makes the physical field
//! real and even. The band edges are excluded (the certificate's cascade
//! supports are open intervals, and the discrete datum follows suit), so
//! with Δξ = 1/16 exactly the 15 modes ξ = 17/16, …, 31/16 are populated
//! on the positive side.

use crate::spectral::{GridSpec, SpectralField};
use crate::Error;
use num_complex::Complex64;

/// Largest frequency spacing that still resolves the seed band: at least
/// eight lattice points inside an interval of unit length.
const MAX_DELTA_XI: f64 = 0.125;

/// Builds û₀ = η · 1_{(1,2)}(|ξ|) on the given grid.
///
/// Errors when η is not a positive finite number or when the grid spacing
/// exceeds 1/8 (the band would degenerate to a handful of modes and the
/// discrete norms would no longer track their continuum values).
pub fn initial_datum(grid: GridSpec, eta: f64) -> Result<SpectralField, Error> {
    if !(eta.is_finite() && eta > 0.0) {
        return Err(Error::BadEta(eta));
    }
    let dxi = grid.delta_xi();
    if dxi > MAX_DELTA_XI {
        return Err(Error::GridTooCoarse { delta_xi: dxi });
    }
    let mut field = SpectralField::zero(grid);
    for idx in 0..grid.n_modes() {
        let a = grid.xi(idx).abs();
        if a > 1.0 && a < 2.0 {
            field.coeffs_mut()[idx] = Complex64::new(eta, 0.0);
        }
    }
    Ok(field)
}
