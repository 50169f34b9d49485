//! Spectral fields: coefficient storage plus the transform pair.
//!
//! `to_physical` evaluates u_j = Δξ Σ_k c_k e^{2πijk/N} (an unnormalised
//! inverse DFT scaled by Δξ); `from_physical` inverts it exactly. The Δξ
//! weight is what makes physical products come back as Δξ-weighted spectral
//! convolutions, matching the line-transform convention of the model.

use super::grid::GridSpec;
use crate::Error;
use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::collections::HashMap;
use std::ops::{Add, Mul, Sub};
use std::sync::{Arc, Mutex, OnceLock};

type PlanPair = (Arc<dyn Fft<f64>>, Arc<dyn Fft<f64>>);

fn plans(n: usize) -> PlanPair {
    static CACHE: OnceLock<Mutex<HashMap<usize, PlanPair>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("FFT plan cache poisoned");
    guard
        .entry(n)
        .or_insert_with(|| {
            let mut planner = FftPlanner::new();
            (planner.plan_fft_forward(n), planner.plan_fft_inverse(n))
        })
        .clone()
}

/// A field known through its Fourier coefficients on a fixed grid.
///
/// Coefficients live in FFT storage order (see [`GridSpec::signed_index`]).
/// Real-valued physical fields correspond to Hermitian coefficient vectors
/// c_{-k} = conj(c_k); nothing enforces that globally, but the product
/// operator restores it when both operands carry it.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField {
    grid: GridSpec,
    coeffs: Vec<Complex64>,
}

impl SpectralField {
    /// The zero field.
    pub fn zero(grid: GridSpec) -> Self {
        SpectralField {
            grid,
            coeffs: vec![Complex64::new(0.0, 0.0); grid.n_modes()],
        }
    }

    /// Wraps a coefficient vector, checking the length against the grid.
    pub fn from_coeffs(grid: GridSpec, coeffs: Vec<Complex64>) -> Result<Self, Error> {
        if coeffs.len() != grid.n_modes() {
            return Err(Error::BadCoeffCount {
                got: coeffs.len(),
                want: grid.n_modes(),
            });
        }
        Ok(SpectralField { grid, coeffs })
    }

    /// The grid this field lives on.
    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    /// Coefficients in storage order.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Mutable access for in-place operators.
    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    /// Coefficient of the signed wavenumber `k`.
    pub fn coeff_at(&self, k: i64) -> Complex64 {
        self.coeffs[self.grid.storage_index(k)]
    }

    /// True when every coefficient is finite.
    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// Largest absolute coefficient component, 0 for the zero field.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Sup-mode distance to another field on the same grid.
    pub fn sup_mode_distance(&self, other: &SpectralField) -> Result<f64, Error> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Max deviation from Hermitian symmetry |c_k - conj(c_{-k})|, scaled by
    /// the largest coefficient. Zero for fields with a real physical trace.
    pub fn hermitian_defect(&self) -> f64 {
        let n = self.grid.n_modes();
        let scale = self.max_abs();
        if scale == 0.0 {
            return 0.0;
        }
        let mut worst: f64 = self.coeffs[0].im.abs();
        for k in 1..n {
            let pair = (n - k) % n;
            worst = worst.max((self.coeffs[k] - self.coeffs[pair].conj()).norm());
        }
        worst / scale
    }

    /// Projects onto the Hermitian subspace: c_k ← (c_k + conj(c_{-k}))/2.
    /// Leaves Hermitian fields untouched up to rounding.
    pub fn symmetrize_hermitian(&mut self) {
        let n = self.grid.n_modes();
        self.coeffs[0].im = 0.0;
        let ny = self.grid.nyquist_index();
        self.coeffs[ny].im = 0.0;
        for k in 1..ny {
            let pair = n - k;
            let avg = 0.5 * (self.coeffs[k] + self.coeffs[pair].conj());
            self.coeffs[k] = avg;
            self.coeffs[pair] = avg.conj();
        }
    }

    /// Collocation samples u_j = Δξ Σ_k c_k e^{2πijk/N}.
    pub fn to_physical(&self) -> Vec<Complex64> {
        let (_, inverse) = plans(self.grid.n_modes());
        let mut buf = self.coeffs.clone();
        inverse.process(&mut buf);
        let dxi = self.grid.delta_xi();
        for v in &mut buf {
            *v *= dxi;
        }
        buf
    }

    /// Recovers coefficients from collocation samples; exact inverse of
    /// [`Self::to_physical`] up to rounding.
    pub fn from_physical(grid: GridSpec, samples: &[Complex64]) -> Result<Self, Error> {
        if samples.len() != grid.n_modes() {
            return Err(Error::BadCoeffCount {
                got: samples.len(),
                want: grid.n_modes(),
            });
        }
        let (forward, _) = plans(grid.n_modes());
        let mut buf = samples.to_vec();
        forward.process(&mut buf);
        let scale = 1.0 / (grid.n_modes() as f64 * grid.delta_xi());
        for v in &mut buf {
            *v *= scale;
        }
        Ok(SpectralField { grid, coeffs: buf })
    }

    /// In-place `self += a * other`. Panics on grid mismatch: mixing grids
    /// in a linear combination is a programming error, not a runtime state.
    pub fn scaled_add(&mut self, a: Complex64, other: &SpectralField) {
        assert_eq!(self.grid, other.grid, "scaled_add across different grids");
        for (s, o) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *s += a * o;
        }
    }

    /// Applies a diagonal (Fourier-multiplier) weight in place.
    pub(crate) fn apply_multiplier<F: FnMut(usize) -> Complex64>(&mut self, mut weight: F) {
        for (idx, c) in self.coeffs.iter_mut().enumerate() {
            *c *= weight(idx);
        }
    }
}

impl Add for &SpectralField {
    type Output = SpectralField;
    fn add(self, rhs: &SpectralField) -> SpectralField {
        assert_eq!(self.grid, rhs.grid, "adding fields on different grids");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        SpectralField {
            grid: self.grid,
            coeffs,
        }
    }
}

impl Sub for &SpectralField {
    type Output = SpectralField;
    fn sub(self, rhs: &SpectralField) -> SpectralField {
        assert_eq!(self.grid, rhs.grid, "subtracting fields on different grids");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        SpectralField {
            grid: self.grid,
            coeffs,
        }
    }
}

impl Mul<f64> for &SpectralField {
    type Output = SpectralField;
    fn mul(self, rhs: f64) -> SpectralField {
        let coeffs = self.coeffs.iter().map(|c| c * rhs).collect();
        SpectralField {
            grid: self.grid,
            coeffs,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::build_grid;

    fn complex(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Direct O(N²) evaluation of u_j = Δξ Σ_k c_k e^{i ξ_k x_j}: the
    /// transform oracle, written straight from the definition.
    fn direct_synthesis(grid: GridSpec, coeffs: &[Complex64]) -> Vec<Complex64> {
        let xs = grid.physical_nodes();
        xs.iter()
            .map(|&x| {
                let mut acc = Complex64::new(0.0, 0.0);
                for idx in 0..grid.n_modes() {
                    let xi = grid.xi(idx);
                    acc += coeffs[idx] * Complex64::new(0.0, xi * x).exp();
                }
                acc * grid.delta_xi()
            })
            .collect()
    }

    fn test_field(grid: GridSpec) -> SpectralField {
        // Deterministic pseudo-random Hermitian-free coefficients.
        let mut coeffs = Vec::with_capacity(grid.n_modes());
        let mut state = 0x9e3779b97f4a7c15u64;
        for _ in 0..grid.n_modes() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let re = ((state >> 11) as f64 / (1u64 << 53) as f64) - 0.5;
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let im = ((state >> 11) as f64 / (1u64 << 53) as f64) - 0.5;
            coeffs.push(complex(re, im));
        }
        SpectralField::from_coeffs(grid, coeffs).unwrap()
    }

    #[test]
    fn to_physical_matches_the_direct_synthesis_oracle() {
        let grid = build_grid(32, 2.5, 1.0).unwrap();
        let f = test_field(grid);
        let fast = f.to_physical();
        let slow = direct_synthesis(grid, f.coeffs());
        for (j, (a, b)) in fast.iter().zip(&slow).enumerate() {
            assert!(
                (a - b).norm() < 1e-12,
                "synthesis mismatch at node {j}: {a} vs {b}"
            );
        }
    }

    #[test]
    fn physical_round_trip_recovers_coefficients() {
        let grid = build_grid(64, 7.0, 0.9).unwrap();
        let f = test_field(grid);
        let back = SpectralField::from_physical(grid, &f.to_physical()).unwrap();
        assert!(
            f.sup_mode_distance(&back).unwrap() < 1e-13,
            "round trip drifted by {}",
            f.sup_mode_distance(&back).unwrap()
        );
    }

    #[test]
    fn hermitian_fields_synthesise_to_real_samples() {
        let grid = build_grid(32, 3.0, 1.0).unwrap();
        let mut f = test_field(grid);
        f.symmetrize_hermitian();
        assert!(f.hermitian_defect() < 1e-15, "symmetrize left a defect");
        let phys = f.to_physical();
        let max_im = phys.iter().map(|v| v.im.abs()).fold(0.0, f64::max);
        let max_re = phys.iter().map(|v| v.re.abs()).fold(0.0, f64::max);
        assert!(
            max_im < 1e-13 * max_re.max(1.0),
            "Hermitian field produced imaginary samples up to {max_im}"
        );
    }

    #[test]
    fn from_coeffs_rejects_wrong_lengths() {
        let grid = build_grid(32, 1.0, 0.5).unwrap();
        let err = SpectralField::from_coeffs(grid, vec![complex(1.0, 0.0); 31]);
        assert!(matches!(
            err,
            Err(Error::BadCoeffCount { got: 31, want: 32 })
        ));
    }

    #[test]
    fn sup_mode_distance_requires_matching_grids() {
        let a = SpectralField::zero(build_grid(32, 1.0, 0.5).unwrap());
        let b = SpectralField::zero(build_grid(64, 1.0, 0.5).unwrap());
        assert!(matches!(a.sup_mode_distance(&b), Err(Error::GridMismatch)));
    }
}
