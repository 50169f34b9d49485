//! Sobolev norms under the line-transform quadrature.
//!
//! All spectral norms are Δξ-weighted Riemann sums of the continuum
//! integrals:
//!
//! ```text
//! ‖u‖²_{H^s}  = Σ_k (1 + ξ_k²)^s |c_k|² Δξ        (inhomogeneous)
//! ‖u‖²_{Ḣ^s} = Σ_k |ξ_k|^{2s} |c_k|² Δξ          (homogeneous, ξ = 0 dropped)
//! ```
//!
//! The physical-space counterpart carries the 2π of the convention
//! (Σ_j |u_j|² Δx = 2π Σ_k |c_k|² Δξ), so [`l2_physical`] divides it back
//! out and agrees with `sobolev_norm(·, 0, _)` to rounding accuracy.

use super::field::SpectralField;
use crate::Error;
use std::f64::consts::PI;

/// Sobolev norm of order `s`, homogeneous or inhomogeneous weight.
///
/// For the homogeneous family the ξ = 0 term is excluded when s ≠ 0 (for
/// s > 0 its weight vanishes anyway; for s < 0 it would be infinite, and
/// dropping it matches restricting to mean-free fields). Non-finite
/// coefficients surface as the blow-up sentinel error rather than a NaN
/// that would poison comparisons silently.
pub fn sobolev_norm(field: &SpectralField, s: f64, homogeneous: bool) -> Result<f64, Error> {
    if !s.is_finite() {
        return Err(Error::SobolevIndexRange {
            s,
            range: "finite",
            context: "sobolev_norm",
        });
    }
    if !field.is_finite() {
        return Err(Error::NonFiniteField);
    }
    let grid = field.grid();
    let mut acc = 0.0f64;
    for (idx, c) in field.coeffs().iter().enumerate() {
        let xi = grid.xi(idx);
        let w = if homogeneous {
            if xi == 0.0 {
                if s == 0.0 {
                    1.0
                } else {
                    0.0
                }
            } else {
                xi.abs().powf(2.0 * s)
            }
        } else {
            (1.0 + xi * xi).powf(s)
        };
        acc += w * c.norm_sqr();
    }
    Ok((acc * grid.delta_xi()).sqrt())
}

/// L² norm, the s = 0 member of either family.
pub fn l2_norm(field: &SpectralField) -> Result<f64, Error> {
    sobolev_norm(field, 0.0, false)
}

/// Physical-space L² quadrature sqrt(Σ_j |u_j|² Δx / 2π).
///
/// The 1/(2π) is the Parseval constant of the line-transform convention;
/// with it, this quadrature equals [`l2_norm`] up to rounding.
pub fn l2_physical(field: &SpectralField) -> Result<f64, Error> {
    if !field.is_finite() {
        return Err(Error::NonFiniteField);
    }
    let samples = field.to_physical();
    let dx = field.grid().delta_x();
    let sum: f64 = samples.iter().map(|v| v.norm_sqr()).sum();
    Ok((sum * dx / (2.0 * PI)).sqrt())
}

/// Smallest real part over all coefficients: the positivity monitor.
/// Returns NaN if any coefficient is NaN; callers treat that as blow-up.
pub fn fourier_min(field: &SpectralField) -> f64 {
    let mut min = f64::INFINITY;
    for c in field.coeffs() {
        if c.re.is_nan() {
            return f64::NAN;
        }
        min = min.min(c.re);
    }
    min
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::build_grid;
    use num_complex::Complex64;

    fn pseudo_random_hermitian(grid: crate::GridSpec, seed: u64) -> SpectralField {
        let mut coeffs = Vec::with_capacity(grid.n_modes());
        let mut state = seed | 1;
        for _ in 0..grid.n_modes() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let re = ((state >> 11) as f64 / (1u64 << 53) as f64) - 0.5;
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let im = ((state >> 11) as f64 / (1u64 << 53) as f64) - 0.5;
            coeffs.push(Complex64::new(re, im));
        }
        let mut f = SpectralField::from_coeffs(grid, coeffs).unwrap();
        f.symmetrize_hermitian();
        f
    }

    #[test]
    fn physical_quadrature_agrees_with_the_spectral_l2_norm() {
        for (n, half_width) in [(32usize, 2.0), (64, 16.0 * PI), (128, 7.3)] {
            let grid = build_grid(n, half_width, 2.0 / 3.0).unwrap();
            let f = pseudo_random_hermitian(grid, 11 + n as u64);
            let spec = l2_norm(&f).unwrap();
            let phys = l2_physical(&f).unwrap();
            assert!(
                (spec - phys).abs() <= 1e-12 * spec.max(1e-30),
                "Parseval mismatch on N = {n}: spectral {spec} vs physical {phys}"
            );
        }
    }

    #[test]
    fn single_mode_norms_match_hand_computation() {
        // One conjugate pair at |ξ| = 3Δξ with amplitude a: the norm² is
        // 2 a² w(ξ) Δξ for weight w.
        let grid = build_grid(32, 4.0, 0.5).unwrap();
        let dxi = grid.delta_xi();
        let a = 1.75f64;
        let mut f = SpectralField::zero(grid);
        f.coeffs_mut()[3] = Complex64::new(a, 0.0);
        f.coeffs_mut()[32 - 3] = Complex64::new(a, 0.0);
        let xi = 3.0 * dxi;

        let l2 = l2_norm(&f).unwrap();
        assert!(
            (l2 - (2.0 * a * a * dxi).sqrt()).abs() < 1e-14,
            "L2 norm off for a single pair"
        );

        let h1 = sobolev_norm(&f, 1.0, false).unwrap();
        let expect = (2.0 * a * a * (1.0 + xi * xi) * dxi).sqrt();
        assert!((h1 - expect).abs() < 1e-14, "H1 norm off: {h1} vs {expect}");

        let hdot_half = sobolev_norm(&f, 0.5, true).unwrap();
        let expect = (2.0 * a * a * xi * dxi).sqrt();
        assert!(
            (hdot_half - expect).abs() < 1e-14,
            "homogeneous half norm off: {hdot_half} vs {expect}"
        );
    }

    #[test]
    fn homogeneous_negative_order_ignores_the_mean_mode() {
        let grid = build_grid(32, 4.0, 0.5).unwrap();
        let mut f = SpectralField::zero(grid);
        f.coeffs_mut()[0] = Complex64::new(5.0, 0.0);
        let n = sobolev_norm(&f, -0.5, true).unwrap();
        assert_eq!(n, 0.0, "mean mode must not contribute to negative orders");
    }

    #[test]
    fn norms_flag_non_finite_fields_as_blow_up() {
        let grid = build_grid(32, 4.0, 0.5).unwrap();
        let mut f = SpectralField::zero(grid);
        f.coeffs_mut()[5] = Complex64::new(f64::NAN, 0.0);
        assert!(matches!(l2_norm(&f), Err(Error::NonFiniteField)));
        assert!(matches!(l2_physical(&f), Err(Error::NonFiniteField)));
        assert!(fourier_min(&f).is_nan(), "fourier_min should propagate NaN");
    }

    #[test]
    fn fourier_min_finds_the_most_negative_real_part() {
        let grid = build_grid(32, 4.0, 0.5).unwrap();
        let mut f = SpectralField::zero(grid);
        f.coeffs_mut()[4] = Complex64::new(-0.3, 9.0);
        f.coeffs_mut()[7] = Complex64::new(0.8, 0.0);
        assert_eq!(fourier_min(&f), -0.3);
    }
}
