//! The finite-time blow-up certificate: constants, the per-level
//! induction inequality, and the norm-series verdict.
//!
//! The argument being machine-checked runs on three rails.
//!
//! 1. **Constants.** The critical time t* = 2ln2/3 is where the
//!    exponential decay e^{-(3/2)t·2⁵} crosses 2⁻³², turning the series
//!    base into the clean power 2⁻⁴² = 1/c₀. The coupling gap γ₁ - γ₂
//!    must be at least c₁/2 with c₁ = (3/2)·2¹⁶, the smallest constant
//!    whose normalized product with (2/3)·2⁻¹⁶ reaches 1.
//! 2. **Induction step.** Level n's time factor must be dominated by the
//!    gain the quadratic interaction extracts from level n-1 through the
//!    Duhamel integral ∫₀ᵗ e^{-(3/2)(t-τ)ξ⁴} f²ₙ₋₁(τ) dτ. Since
//!    f²ₙ₋₁(τ) = A·e^{-Bτ} is a pure exponential, the integral is
//!    elementary and the whole inequality collapses, in base-2 logs, to
//!    slack(t,ξ) = log₂(γ₁-γ₂) + 7(n-1) + log₂(t·φ₁((B - (3/2)ξ⁴)t)),
//!    where the dominant exponentials on both sides cancel exactly
//!    (both are e^{-(3/2)t·2ⁿ⁺⁴}) and the power-of-two ledgers combine
//!    to the integer 7(n-1). The check samples ξ across the level's
//!    dyadic annulus at Chebyshev nodes plus near-endpoint probes and
//!    requires every slack to be nonnegative up to a float-rounding pad.
//! 3. **Series verdict.** The Ḣˢ mass of the minorant at level n
//!    contributes log₂termₙ = n(2s-1) + 2ⁿ(log₂η² - 42). The verdict
//!    compares log₂η² against the s-adjusted threshold and reports the
//!    partial sums in log domain; nothing is ever exponentiated.

use crate::cascade::growth::{log2_f, MAX_LOG2F_LEVEL};
use crate::phi::phi1_real;
use crate::Error;

/// Slightly-below-one factor tolerating float rounding in caller-supplied
/// times that are meant to equal the critical time exactly.
const T_STAR_SLOP: f64 = 1.0 - 1e-15;

/// The fixed constants of the blow-up certificate.
#[derive(Debug, Clone, Copy)]
pub struct CertificateConstants {
    t_star: f64,
    c0_log2: u32,
    c1_min: f64,
    beta: f64,
}

impl CertificateConstants {
    /// The critical time t* = 2·ln2/3.
    pub fn t_star(&self) -> f64 {
        self.t_star
    }

    /// log₂ of the series constant c₀ = 2⁴²; kept as the exact exponent.
    pub fn c0_log2(&self) -> u32 {
        self.c0_log2
    }

    /// Smallest admissible coupling constant c₁ = (3/2)·2¹⁶ = 98304; the
    /// gap γ₁ - γ₂ must reach c₁/2.
    pub fn c1_min(&self) -> f64 {
        self.c1_min
    }

    /// The free exponent fixed to 3 inside the induction argument;
    /// read-only because every other constant above is derived under it.
    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// log₂ of the η² threshold above which the series verdict is
    /// "diverging": 42 for s ≥ 1/2, and 42 + (1 - 2s) below (the weaker
    /// annulus weight for small s costs an extra factor 2^{1-2s}).
    ///
    /// Carried in log₂ because 2^{1-2s} is irrational for generic s; the
    /// value is exact whenever 1 - 2s is an integer.
    pub fn log2_eta_sq_threshold(&self, s: f64) -> Result<f64, Error> {
        check_series_index(s)?;
        Ok(f64::from(self.c0_log2) + (1.0 - 2.0 * s).max(0.0))
    }
}

/// The certificate constants; every field is fixed by the construction.
pub fn constants() -> CertificateConstants {
    CertificateConstants {
        t_star: 2.0 * std::f64::consts::LN_2 / 3.0,
        c0_log2: 42,
        c1_min: 98304.0,
        beta: 3.0,
    }
}

fn check_series_index(s: f64) -> Result<(), Error> {
    if !s.is_finite() || s <= -1.0 || s > 1.0 {
        return Err(Error::SobolevIndexRange {
            s,
            range: "(-1, 1]",
            context: "series threshold",
        });
    }
    Ok(())
}

/// Outcome of one induction-step verification at a fixed (n, t).
#[derive(Debug, Clone)]
pub struct InductionReport {
    /// Cascade level whose time factor was dominated.
    pub n: u32,
    /// Time at which the inequality was checked; at least t*.
    pub t: f64,
    /// log₂(γ₁ - γ₂).
    pub gamma_gap_log2: f64,
    /// The hardcoded free exponent (always 3).
    pub beta: f64,
    /// Frequency samples across the annulus (2ⁿ, 2ⁿ⁺¹).
    pub xi_samples: Vec<f64>,
    /// Per-sample slack log₂(RHS/LHS); all nonnegative on success.
    pub slacks_log2: Vec<f64>,
    /// Smallest sampled slack.
    pub min_slack_log2: f64,
    /// Slack of the residual-factor bound (1 - e^{-(3/2)t·2^{4(n+1)}}) ≥ 1/2,
    /// expressed as (3/2)t·2^{4(n+1)}·log₂e - 1 ≥ 0.
    pub bracket_slack_log2: f64,
}

/// Chebyshev-distributed samples on the open annulus (2ⁿ, 2ⁿ⁺¹) plus two
/// near-endpoint probes; the slack is smooth in ξ and extremal toward the
/// endpoints, so the probes sit within 2⁻²⁰ of them.
fn annulus_samples(n: u32, samples: usize) -> Vec<f64> {
    let lo = f64::exp2(f64::from(n));
    let hi = 2.0 * lo;
    let interior = samples - 2;
    let mut xs = Vec::with_capacity(samples);
    let edge = f64::exp2(-20.0);
    xs.push(lo * (1.0 + edge));
    for i in 0..interior {
        let theta = std::f64::consts::PI * (2.0 * i as f64 + 1.0) / (2.0 * interior as f64);
        // Map cosθ ∈ (-1, 1) to the annulus: ξ = 2ⁿ(3/2 + cosθ/2).
        xs.push(lo * (1.5 + 0.5 * theta.cos()));
    }
    xs.push(hi * (1.0 - edge));
    xs.sort_by(|a, b| a.partial_cmp(b).expect("finite samples"));
    xs
}

/// Verifies the level-n induction inequality at time t: the minorant's
/// time factor fₙ(t) is dominated by (γ₁-γ₂)·2^{2(n-1)} times the
/// closed-form Duhamel integral of f²ₙ₋₁ against the heat factor
/// e^{-(3/2)(t-τ)ξ⁴}, at every sampled ξ in the level's annulus. η-free:
/// both sides of the original inequality carry η^{2ⁿ}·ĝₙ(ξ) ≥ 0, which
/// cancels.
///
/// A violated sample aborts with the (t, ξ, n) witness; the returned
/// report therefore always describes a fully passed check.
pub fn induction_step_check(
    n: u32,
    t: f64,
    gamma1: f64,
    gamma2: f64,
    samples: usize,
) -> Result<InductionReport, Error> {
    let consts = constants();
    if n < 1 {
        return Err(Error::BadInductionArgs(
            "induction starts at level 1; level 0 is the seed".into(),
        ));
    }
    if n > MAX_LOG2F_LEVEL {
        return Err(Error::CascadeDepth {
            requested: n,
            budget: MAX_LOG2F_LEVEL,
        });
    }
    if !t.is_finite() || t < consts.t_star() * T_STAR_SLOP {
        return Err(Error::BadInductionArgs(format!(
            "time {t} is below the critical time {}",
            consts.t_star()
        )));
    }
    if !(gamma2 < 0.0 && 0.0 < gamma1) {
        return Err(Error::BadInductionArgs(format!(
            "need gamma2 < 0 < gamma1, got gamma1 = {gamma1}, gamma2 = {gamma2}"
        )));
    }
    let gap = gamma1 - gamma2;
    if gap < consts.c1_min() / 2.0 {
        return Err(Error::BadInductionArgs(format!(
            "coupling gap {gap} is below c1_min/2 = {}",
            consts.c1_min() / 2.0
        )));
    }
    if samples < 3 {
        return Err(Error::BadInductionArgs(format!(
            "need at least 3 frequency samples, got {samples}"
        )));
    }

    // Shared exponential decay: fₙ(t) carries e^{-(3/2)t·2ⁿ⁺⁴} and the
    // right-hand side carries A·e^{-Bt} with B = (3/2)·2ⁿ⁺³·2 = the same
    // rate, so the floating exponentials cancel exactly and the
    // power-of-two ledgers combine to the integer 7(n-1):
    //   slack(t,ξ) = log₂(γ₁-γ₂) + 7(n-1) + log₂(t·φ₁((B - (3/2)ξ⁴)t)).
    // The defensive assertion below pins the cancellation to the actual
    // log2_f ledger rather than trusting the algebra note.
    let lhs = log2_f(n, t)?;
    let prev = log2_f(n - 1, t)?;
    let a_pow2 = 2 * prev.pow2;
    debug_assert_eq!(2.0 * prev.expo_log2, lhs.expo_log2);
    let combined_pow2 = 2 * i64::from(n - 1) + a_pow2 - lhs.pow2;
    debug_assert_eq!(combined_pow2, 7 * (i64::from(n) - 1));

    let half_beta = consts.beta() / 2.0;
    let b_rate = consts.beta() * f64::exp2(f64::from(n) + 3.0);
    let gap_log2 = gap.log2();
    let xi_samples = annulus_samples(n, samples);
    let mut slacks = Vec::with_capacity(xi_samples.len());
    let mut min_slack = f64::INFINITY;
    for &xi in &xi_samples {
        let d_rate = b_rate - half_beta * xi.powi(4);
        let tphi = t * phi1_real(d_rate * t);
        let tphi_log2 = tphi.log2();
        let slack = gap_log2 + combined_pow2 as f64 + tphi_log2;
        let pad = 64.0
            * f64::EPSILON
            * f64::max(
                1.0,
                gap_log2.abs() + combined_pow2.unsigned_abs() as f64 + tphi_log2.abs(),
            );
        if !slack.is_finite() || slack < -pad {
            return Err(Error::CascadeCheck {
                check: "induction_step",
                level: n,
                detail: format!("slack {slack} at t = {t}, xi = {xi}"),
            });
        }
        if slack < min_slack {
            min_slack = slack;
        }
        slacks.push(slack);
    }

    // Residual factor of the closed-form integral: 1 - e^{-(3/2)t·2^{4(n+1)}}
    // must reach 1/2, i.e. the exponent must reach ln2. Checked in log
    // domain so deep levels cannot hide behind float underflow.
    let bracket_exp = half_beta * t * f64::exp2(4.0 * (f64::from(n) + 1.0));
    let bracket_slack = bracket_exp * std::f64::consts::LOG2_E - 1.0;
    if bracket_slack < -64.0 * f64::EPSILON * bracket_exp.abs().max(1.0) {
        return Err(Error::CascadeCheck {
            check: "integral_residual",
            level: n,
            detail: format!(
                "residual lower bound fails at t = {t}: exponent {bracket_exp} below ln2"
            ),
        });
    }

    Ok(InductionReport {
        n,
        t,
        gamma_gap_log2: gap_log2,
        beta: consts.beta(),
        xi_samples,
        slacks_log2: slacks,
        min_slack_log2: min_slack,
        bracket_slack_log2: bracket_slack,
    })
}

/// Verdict of the norm-series analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// log₂η² clears the s-adjusted threshold: the series grows without
    /// bound, certifying the infinite norm.
    Diverging,
    /// The terms decay: the series converges and certifies nothing.
    Converging,
    /// Neither criterion applies (at or marginally above the threshold);
    /// the certificate makes no claim.
    Undetermined,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Diverging => "diverging",
            Verdict::Converging => "converging",
            Verdict::Undetermined => "undetermined",
        })
    }
}

/// Log-domain partial sums of the Ḣˢ norm series of the minorant.
#[derive(Debug, Clone)]
pub struct SeriesReport {
    /// Sobolev index the mass is measured in.
    pub s: f64,
    /// log₂ of the datum amplitude squared.
    pub log2_eta_sq: f64,
    /// log₂ of the per-level terms, n = 1..n_terms.
    pub terms_log2: Vec<f64>,
    /// log₂ of the running partial sums, same indexing.
    pub partial_sums_log2: Vec<f64>,
    /// Whether the computed terms are monotone (non-strict) from the
    /// first index on, confirming clean growth or decay numerically.
    pub monotone: bool,
    /// The threshold comparison's outcome.
    pub verdict: Verdict,
}

/// log₂(2ᵃ + 2ᵇ) without leaving log domain.
fn logaddexp2(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp2().ln_1p() * std::f64::consts::LOG2_E
}

/// Computes the series termₙ = 2^{n(2s-1)}·(η²/2⁴²)^{2ⁿ} in log domain
/// for n = 1..=n_terms, with partial sums and the threshold verdict.
///
/// In log₂: termₙ = n(2s-1) + 2ⁿ·(log₂η² - 42). The verdict is
/// "diverging" when log₂η² exceeds the s-adjusted threshold of
/// [`CertificateConstants::log2_eta_sq_threshold`], "converging" when the
/// inner base is genuinely below 1 (or equal to 1 with decaying annulus
/// weights), and "undetermined" in the sliver between, where the series
/// may diverge but the criterion is silent.
pub fn series_partial_sums(
    s: f64,
    log2_eta_sq: f64,
    n_terms: usize,
) -> Result<SeriesReport, Error> {
    check_series_index(s)?;
    if n_terms < 4 {
        return Err(Error::TooFewTerms {
            min: 4,
            got: n_terms,
        });
    }
    if !log2_eta_sq.is_finite() {
        return Err(Error::BadEta(log2_eta_sq));
    }
    let consts = constants();
    let base = log2_eta_sq - f64::from(consts.c0_log2());
    let weight = 2.0 * s - 1.0;

    let mut terms = Vec::with_capacity(n_terms);
    let mut sums = Vec::with_capacity(n_terms);
    let mut running = f64::NEG_INFINITY;
    for n in 1..=n_terms {
        let term = n as f64 * weight + f64::exp2(n as f64) * base;
        running = logaddexp2(running, term);
        terms.push(term);
        sums.push(running);
    }
    let monotone = terms.windows(2).all(|w| w[1] >= w[0])
        || terms.windows(2).all(|w| w[1] <= w[0]);

    let threshold = consts.log2_eta_sq_threshold(s)?;
    let verdict = if log2_eta_sq > threshold {
        Verdict::Diverging
    } else if base < 0.0 || (base == 0.0 && weight < 0.0) {
        Verdict::Converging
    } else {
        Verdict::Undetermined
    };

    Ok(SeriesReport {
        s,
        log2_eta_sq,
        terms_log2: terms,
        partial_sums_log2: sums,
        monotone,
        verdict,
    })
}
