//! Fourier collocation layer: grids, fields, symbols, operators, norms.
//!
//! Everything downstream fixes one transform convention and sticks to it.
//! A 2L-periodic field is expanded as
//!
//! ```text
//! u(x) = Σ_k c_k e^{i ξ_k x},   ξ_k = k Δξ,   Δξ = π / L,
//! ```
//!
//! and the stored coefficients `c_k` are read as samples of a line-transform
//! density: sums over modes approximate ∫ dξ through the factor Δξ. Two
//! consequences worth internalising once:
//!
//! * products in physical space realise the Δξ-weighted convolution
//!   `(u v)^_k = Σ_m c_m d_{k-m} Δξ`, the discrete form of
//!   (uv)^ = û * v̂ under the convention û(ξ) = (2π)⁻¹ ∫ u e^{-iξx} dx;
//! * Parseval picks up a 2π: Σ_j |u_j|² Δx = 2π Σ_k |c_k|² Δξ, so the
//!   physical-space L² quadrature carries an explicit 1/(2π) to agree with
//!   the spectral norms (see [`l2_physical`]).
//!
//! Coefficients are stored in FFT layout: indices 0..N/2 hold k = 0..N/2-1,
//! indices N/2..N hold k = -N/2..-1.

mod field;
mod grid;
mod norm;
mod ops;
mod symbol;

pub use field::SpectralField;
pub use grid::{build_grid, GridSpec};
pub use norm::{fourier_min, l2_norm, l2_physical, sobolev_norm};
pub use ops::{
    apply_semigroup, fractional_derivative, pointwise_product, second_derivative, semigroup_factor,
};
pub use symbol::{build_symbols, ModelVariant, SymbolSet};
