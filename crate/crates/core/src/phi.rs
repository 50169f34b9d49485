//! The φ functions of exponential integrators.
//!
//! For the scalar linear part u' = z u + N, the exact variation-of-constants
//! update involves
//!
//! ```text
//! φ₀(z) = e^z,    φ₁(z) = (e^z - 1)/z,    φ₂(z) = (e^z - 1 - z)/z².
//! ```
//!
//! The direct quotients lose all relative accuracy near z = 0, so below a
//! cutoff we switch to the Taylor series. Both definitions agree to machine
//! precision in a neighbourhood of the cutoff; tests cover the seam.
//!
//! These helpers serve two independent clients: the exponential time stepper
//! and the closed-form Duhamel integral inside the certificate's induction
//! check. Keeping them here avoids the certificate depending on the solver.

use num_complex::Complex64;

/// Magnitude below which the Taylor expansions take over. The degree-10
/// truncations leave relative remainders around |z|¹¹/12! ≈ 2e-20 at the
/// cutoff, far below the f64 noise floor; the quotients are accurate to a
/// few ulps just above it.
const TAYLOR_CUTOFF: f64 = 0.1;

/// φ₁(z) = (e^z - 1)/z, continuously extended by φ₁(0) = 1.
pub fn phi1(z: Complex64) -> Complex64 {
    if z.norm() < TAYLOR_CUTOFF {
        // Σ_{k=0}^{10} z^k / (k+1)! by Horner.
        let mut acc = Complex64::new(1.0 / 39916800.0, 0.0);
        for div in [
            3628800.0, 362880.0, 40320.0, 5040.0, 720.0, 120.0, 24.0, 6.0, 2.0, 1.0,
        ] {
            acc = acc * z + Complex64::new(1.0 / div, 0.0);
        }
        acc
    } else {
        (z.exp() - 1.0) / z
    }
}

/// φ₂(z) = (e^z - 1 - z)/z², continuously extended by φ₂(0) = 1/2.
pub fn phi2(z: Complex64) -> Complex64 {
    if z.norm() < TAYLOR_CUTOFF {
        // Σ_{k=0}^{10} z^k / (k+2)! by Horner.
        let mut acc = Complex64::new(1.0 / 479001600.0, 0.0);
        for div in [
            39916800.0, 3628800.0, 362880.0, 40320.0, 5040.0, 720.0, 120.0, 24.0, 6.0, 2.0,
        ] {
            acc = acc * z + Complex64::new(1.0 / div, 0.0);
        }
        acc
    } else {
        (z.exp() - 1.0 - z) / (z * z)
    }
}

/// Real-argument φ₁, used by the certificate where every quantity is real.
pub fn phi1_real(z: f64) -> f64 {
    phi1(Complex64::new(z, 0.0)).re
}
