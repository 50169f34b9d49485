//! Exact frequency-cascade certificate.
//!
//! Everything in this module is exact or log-carried: piecewise
//! polynomials over arbitrary-precision rationals, convolutions as
//! closed-form integrals, nonnegativity through Bernstein certificates,
//! and growth factors split into an exact power-of-two ledger plus a
//! floating exponential that is never exponentiated.
//!
//! The chain starts from the spectral profile of the band datum, the
//! indicator of (1, 2), and squares it repeatedly under convolution:
//! level n lives on the dyadic annulus (2ⁿ, 2ⁿ⁺¹) and is a translated
//! B-spline. The quantities the blow-up argument needs (mass, quadratic
//! mass, positivity, the induction inequality, the series verdict) are
//! computed and certified level by level on top of the exact polynomial
//! engine.

mod certificate;
mod growth;
mod level;
mod poly;

pub use certificate::{
    constants, induction_step_check, series_partial_sums, CertificateConstants, InductionReport,
    SeriesReport, Verdict,
};
pub use growth::{log2_f, Log2F, MAX_LOG2F_LEVEL};
pub use level::{cascade_sequence, g0, CascadeLevel, CASCADE_BUDGET};
pub use poly::PiecewisePolynomial;
