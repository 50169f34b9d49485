//! Grid geometry: mode bookkeeping, frequency lattice, dealias band.

use crate::Error;
use std::f64::consts::PI;

/// A validated spectral grid: N retained modes on a 2L-periodic box.
///
/// The struct is plain data (cheap to copy and embed in every field); FFT
/// plans are cached process-wide keyed by N. Construct through
/// [`build_grid`] so the invariants hold by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    n_modes: usize,
    half_width: f64,
    dealias_fraction: f64,
}

/// Validates and assembles a [`GridSpec`].
///
/// Requirements: `n_modes` even and at least 16 (conjugate pairs plus the
/// Nyquist slot), `half_width` positive and finite, `dealias_fraction` in
/// (0, 1]. The classical choice 2/3 makes quadratic products alias-free.
pub fn build_grid(n_modes: usize, half_width: f64, dealias_fraction: f64) -> Result<GridSpec, Error> {
    if n_modes < 16 || n_modes % 2 != 0 {
        return Err(Error::BadModeCount(n_modes));
    }
    if !(half_width.is_finite() && half_width > 0.0) {
        return Err(Error::BadHalfWidth(half_width));
    }
    if !(dealias_fraction.is_finite() && dealias_fraction > 0.0 && dealias_fraction <= 1.0) {
        return Err(Error::BadDealiasFraction(dealias_fraction));
    }
    Ok(GridSpec {
        n_modes,
        half_width,
        dealias_fraction,
    })
}

impl GridSpec {
    /// Number of retained Fourier modes N.
    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    /// Spatial half-width L; the box is [0, 2L).
    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    /// Fraction of the Nyquist band kept by dealiased products.
    pub fn dealias_fraction(&self) -> f64 {
        self.dealias_fraction
    }

    /// Frequency spacing Δξ = π / L.
    pub fn delta_xi(&self) -> f64 {
        PI / self.half_width
    }

    /// Collocation spacing Δx = 2L / N.
    pub fn delta_x(&self) -> f64 {
        2.0 * self.half_width / self.n_modes as f64
    }

    /// Signed wavenumber for a storage index: 0..N/2 map to 0..N/2-1,
    /// N/2..N map to -N/2..-1.
    pub fn signed_index(&self, idx: usize) -> i64 {
        debug_assert!(idx < self.n_modes);
        if idx < self.n_modes / 2 {
            idx as i64
        } else {
            idx as i64 - self.n_modes as i64
        }
    }

    /// Storage index of a signed wavenumber in -N/2..N/2-1.
    pub fn storage_index(&self, k: i64) -> usize {
        let n = self.n_modes as i64;
        debug_assert!(k >= -n / 2 && k < n / 2);
        k.rem_euclid(n) as usize
    }

    /// Frequency ξ_k = k Δξ at a storage index.
    pub fn xi(&self, idx: usize) -> f64 {
        self.signed_index(idx) as f64 * self.delta_xi()
    }

    /// All frequencies in storage order.
    pub fn frequencies(&self) -> Vec<f64> {
        (0..self.n_modes).map(|i| self.xi(i)).collect()
    }

    /// Storage index of the (negative) Nyquist mode k = -N/2.
    pub fn nyquist_index(&self) -> usize {
        self.n_modes / 2
    }

    /// Whether products retain this mode. The cut is |k| < f·N/2 with a
    /// strict inequality, so the Nyquist mode is always dropped and the
    /// retained band stays alias-free under the 2/3 rule even when f·N/2
    /// is an integer.
    pub fn keeps_mode(&self, idx: usize) -> bool {
        let k = self.signed_index(idx).unsigned_abs() as f64;
        k < self.dealias_fraction * (self.n_modes as f64 / 2.0)
    }

    /// Dealias mask in storage order.
    pub fn dealias_mask(&self) -> Vec<bool> {
        (0..self.n_modes).map(|i| self.keeps_mode(i)).collect()
    }

    /// Collocation nodes x_j = j Δx on [0, 2L).
    pub fn physical_nodes(&self) -> Vec<f64> {
        let dx = self.delta_x();
        (0..self.n_modes).map(|j| j as f64 * dx).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_grid_rejects_odd_and_tiny_mode_counts() {
        assert!(matches!(build_grid(15, 1.0, 0.5), Err(Error::BadModeCount(15))));
        assert!(matches!(build_grid(8, 1.0, 0.5), Err(Error::BadModeCount(8))));
        assert!(build_grid(16, 1.0, 0.5).is_ok());
    }

    #[test]
    fn build_grid_rejects_bad_half_width_and_fraction() {
        assert!(matches!(
            build_grid(32, 0.0, 0.5),
            Err(Error::BadHalfWidth(_))
        ));
        assert!(matches!(
            build_grid(32, f64::INFINITY, 0.5),
            Err(Error::BadHalfWidth(_))
        ));
        assert!(matches!(
            build_grid(32, 1.0, 0.0),
            Err(Error::BadDealiasFraction(_))
        ));
        assert!(matches!(
            build_grid(32, 1.0, 1.5),
            Err(Error::BadDealiasFraction(_))
        ));
        assert!(build_grid(32, 1.0, 1.0).is_ok());
    }

    #[test]
    fn frequency_lattice_follows_fft_storage_order() {
        let g = build_grid(16, PI, 1.0).unwrap();
        // Δξ = π/π = 1, so ξ equals the signed index.
        let f = g.frequencies();
        assert_eq!(f[0], 0.0, "mean mode sits at index 0");
        assert_eq!(f[7], 7.0, "last positive mode");
        assert_eq!(f[8], -8.0, "Nyquist mode is the most negative");
        assert_eq!(f[15], -1.0, "index N-1 holds k = -1");
    }

    #[test]
    fn storage_and_signed_index_are_inverse_maps() {
        let g = build_grid(64, 2.0, 0.7).unwrap();
        for idx in 0..64 {
            assert_eq!(
                g.storage_index(g.signed_index(idx)),
                idx,
                "round-trip failed at storage index {idx}"
            );
        }
    }

    #[test]
    fn dealias_mask_drops_nyquist_even_at_full_fraction() {
        let g = build_grid(32, 1.0, 1.0).unwrap();
        let mask = g.dealias_mask();
        assert!(
            !mask[g.nyquist_index()],
            "Nyquist mode must never survive a product"
        );
        assert!(mask[0] && mask[1] && mask[15], "interior modes survive at f = 1");
    }

    #[test]
    fn two_thirds_mask_is_alias_free_for_quadratic_products() {
        // Kept modes |k| <= K must satisfy 3K < N so that wrapped images of
        // k1 + k2 never land back inside the kept band.
        for n in [24usize, 32, 48, 512, 768] {
            let g = build_grid(n, 1.0, 2.0 / 3.0).unwrap();
            let kmax = (0..n)
                .filter(|&i| g.keeps_mode(i))
                .map(|i| g.signed_index(i).unsigned_abs())
                .max()
                .unwrap();
            assert!(
                3 * kmax < n as u64,
                "2/3 mask keeps |k| up to {kmax} of N = {n}, aliasing possible"
            );
        }
    }
}
