//! Spectral simulation and exact blow-up certification for a fourth-order
//! dissipative-dispersive model equation.
//!
//! The equation under study is the non-local dispersive Kuramoto-Velarde
//! equation on the line,
//!
//! ```text
//! ∂_t u + ∂_x² u + α (-∂_x²)^{3/2} u + ∂_x⁴ u
//!     = γ₁ ((-∂_x²)^{1/2} u)² + γ₂ u ∂_x² u,
//! ```
//!
//! together with a local-dispersive variant in which the half-Laplacian cube
//! is replaced by `α ∂_x³`. The crate has two halves that deliberately share
//! almost no machinery:
//!
//! * [`spectral`] and [`solver`] discretise the mild (Duhamel) formulation
//!   with a Fourier collocation grid, an exponential two-stage integrator,
//!   and a Picard iteration used as an independent cross-check.
//! * [`cascade`] builds the frequency-cascade certificate behind the
//!   finite-time blow-up result: an exact piecewise-polynomial engine over
//!   arbitrary-precision rationals, growth bookkeeping in the log₂ domain,
//!   and machine-checked inequalities for the induction step.
//!
//! Floating point enters only where it must (time stepping, norms, the
//! log-domain growth ledger); every structural fact about the cascade is
//! established in exact arithmetic.

pub mod cascade;
pub mod phi;
pub mod solver;
pub mod spectral;

pub use cascade::{
    cascade_sequence, constants, g0, induction_step_check, log2_f, series_partial_sums,
    CascadeLevel, CertificateConstants, InductionReport, Log2F, PiecewisePolynomial,
    SeriesReport, Verdict,
};
pub use solver::{
    initial_datum, picard_iterate, run_simulation, step_etd, xs_norm_diagnostic, Monitor,
    PicardRun, SimConfig, TrajectoryReport, XsNormSpec,
};
pub use spectral::{
    build_grid, build_symbols, fractional_derivative, l2_physical, pointwise_product,
    second_derivative, semigroup_factor, sobolev_norm, GridSpec, ModelVariant, SpectralField,
    SymbolSet,
};

/// Unified error type for grid construction, solver runs, and certificate
/// checks. Variants carry enough context to name the violated constraint.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Mode counts must be even (conjugate pairing plus one Nyquist slot) and
    /// large enough to hold a usable dealias band.
    #[error("mode count must be an even number >= 16, got {0}")]
    BadModeCount(usize),
    /// The spatial half-width fixes the frequency spacing Δξ = π/L.
    #[error("domain half-width must be positive and finite, got {0}")]
    BadHalfWidth(f64),
    /// Fraction of the Nyquist band retained by products.
    #[error("dealias fraction must lie in (0, 1], got {0}")]
    BadDealiasFraction(f64),
    /// Binary operations require both operands on the same grid.
    #[error("fields live on different grids")]
    GridMismatch,
    /// Coefficient vectors must match the grid they claim to live on.
    #[error("coefficient count {got} does not match grid mode count {want}")]
    BadCoeffCount { got: usize, want: usize },
    /// The dissipation strength multiplies |ξ|³ and must not change sign.
    #[error("dissipation strength alpha must be nonnegative and finite, got {0}")]
    BadAlpha(f64),
    /// Semigroup factors are only defined forward in time.
    #[error("semigroup time must be nonnegative and finite, got {0}")]
    BadTime(f64),
    /// Negative-order fractional derivatives divide by |ξ| and need a
    /// vanishing mean mode.
    #[error(
        "fractional derivative of order {order} needs a vanishing mean mode, |c_0| = {mean_abs:.3e}"
    )]
    NegativeOrderMean { order: f64, mean_abs: f64 },
    /// A norm or diagnostic met NaN or infinity: the blow-up sentinel.
    #[error("field contains non-finite coefficients (blow-up sentinel)")]
    NonFiniteField,
    /// Sobolev indices are restricted to the range the well-posedness theory
    /// covers.
    #[error("Sobolev index s = {s} outside the supported range {range} for {context}")]
    SobolevIndexRange {
        s: f64,
        range: &'static str,
        context: &'static str,
    },
    /// Datum amplitudes scale the frequency-band indicator and must be
    /// positive.
    #[error("datum amplitude eta must be positive and finite, got {0}")]
    BadEta(f64),
    /// The seed datum occupies ξ ∈ (1, 2); the grid must resolve that band.
    #[error("frequency spacing {delta_xi} too coarse to resolve the unit band, need at most 1/8")]
    GridTooCoarse { delta_xi: f64 },
    /// Simulation configuration violated a structural constraint.
    #[error("simulation config invalid: {0}")]
    BadSimConfig(String),
    /// Trajectory-level diagnostics need at least one recorded sample.
    #[error("trajectory holds no samples")]
    EmptyTrajectory,
    /// A diagnostic asked for data past the end of the recorded trajectory.
    #[error("trajectory ends at t = {have} before the requested horizon {want}")]
    HorizonNotCovered { have: f64, want: f64 },
    /// A diagnostic was asked to reuse norms recorded at a different index.
    #[error("report recorded Sobolev norms at s = {have}, diagnostic requested s = {want}")]
    SobolevIndexMismatch { have: f64, want: f64 },
    /// The Duhamel quadrature needs at least two nodes.
    #[error("picard iteration needs at least 2 quadrature nodes, got {0}")]
    TooFewQuadNodes(usize),
    /// Exact cascade construction is budgeted; deeper levels exhaust memory
    /// and time without adding certificate value.
    #[error("cascade depth {requested} above the exact-arithmetic budget {budget}")]
    CascadeDepth { requested: u32, budget: u32 },
    /// Structural validation of a piecewise polynomial failed.
    #[error("piecewise polynomial invalid: {0}")]
    BadPiecewise(String),
    /// An exact cascade invariant failed; names the violated check.
    #[error("cascade check '{check}' failed at level {level}: {detail}")]
    CascadeCheck {
        check: &'static str,
        level: u32,
        detail: String,
    },
    /// The induction inequality is only meaningful under its preconditions.
    #[error("induction check precondition violated: {0}")]
    BadInductionArgs(String),
    /// Series verdicts need enough terms to trust the tail pattern.
    #[error("series needs at least {min} terms, got {got}")]
    TooFewTerms { min: usize, got: usize },
}
