//! The convolution cascade and its per-level exact checks.
//!
//! Level 0 is the indicator of the band (1, 2); level n is the exact
//! self-convolution of level n-1. Each level is verified on the spot:
//!
//! * `support_dyadic` - the support is exactly the dyadic annulus
//!   (2ⁿ, 2ⁿ⁺¹), and equals the doubled support of the previous level
//!   (the Minkowski-sum law of convolution, at machine-checkable
//!   strength).
//! * `continuity` - levels past the indicator are continuous across
//!   every interior knot, as convolutions of integrable compactly
//!   supported functions must be.
//! * `mass_unity` - ‖ĝₙ‖_{L¹} = 1 exactly; mass is multiplicative under
//!   convolution and the seed has mass 1.
//! * `cauchy_schwarz` - ∫ĝₙ² · |supp| ≥ (∫ĝₙ)², the inequality that
//!   converts the mass identity into an L² lower bound.
//! * `l2_lower_bound` - ∫ĝₙ² ≥ 2⁻ⁿ, the previous line specialized to
//!   the annulus width 2ⁿ.
//! * `nonnegativity` - a Bernstein certificate per piece; values at
//!   breakpoints and at interior extrema are covered by the same
//!   certificate.
//! * `growth_recursion` - the level's log-domain time factor satisfies
//!   the doubling identity against level n-1 with an exact integer
//!   defect of 5 - 5n and bit-exact floating parts.
//!
//! A failed check aborts the sequence with the check's name, the level,
//! and a witness detail; checks are never demoted to warnings.

use crate::cascade::growth::{log2_f, Log2F};
use crate::cascade::poly::PiecewisePolynomial;
use crate::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

/// Deepest level the exact-arithmetic engine will build: level n carries
/// 2ⁿ pieces of degree 2ⁿ - 1, and 8 keeps the full verification suite
/// in tens of seconds. Deeper growth data is available in closed form
/// through [`log2_f`] without constructing the polynomials.
pub const CASCADE_BUDGET: u32 = 8;

/// One fully verified cascade level.
#[derive(Debug, Clone)]
pub struct CascadeLevel {
    /// Level index; the function lives on the annulus (2ⁿ, 2ⁿ⁺¹).
    pub n: u32,
    /// The exact spectral profile ĝₙ.
    pub g: PiecewisePolynomial,
    /// Lower support endpoint, exactly 2ⁿ.
    pub supp_lo: BigRational,
    /// Upper support endpoint, exactly 2ⁿ⁺¹.
    pub supp_hi: BigRational,
    /// ∫ĝₙ, exactly 1.
    pub l1: BigRational,
    /// ∫ĝₙ², exactly computed; at least 2⁻ⁿ.
    pub l2sq: BigRational,
}

impl CascadeLevel {
    /// The level's log-domain time factor log₂fₙ(t).
    pub fn log2_f_at(&self, t: f64) -> Result<Log2F, Error> {
        log2_f(self.n, t)
    }
}

/// The seed profile: the indicator of the open band (1, 2).
pub fn g0() -> PiecewisePolynomial {
    PiecewisePolynomial::indicator(
        BigRational::from_integer(BigInt::from(1)),
        BigRational::from_integer(BigInt::from(2)),
    )
    .expect("static bounds are valid")
}

fn pow2_rational(e: u32) -> BigRational {
    BigRational::from_integer(BigInt::from(1) << e)
}

fn check(ok: bool, name: &'static str, level: u32, detail: impl FnOnce() -> String)
    -> Result<(), Error>
{
    if ok {
        Ok(())
    } else {
        Err(Error::CascadeCheck {
            check: name,
            level,
            detail: detail(),
        })
    }
}

/// Builds and exactly verifies cascade levels 0..=n_max.
///
/// Every level is checked as described in the module docs before the
/// next one is built; the first violated check aborts with its name and
/// witness. Levels beyond [`CASCADE_BUDGET`] are refused up front.
pub fn cascade_sequence(n_max: u32) -> Result<Vec<CascadeLevel>, Error> {
    if n_max > CASCADE_BUDGET {
        return Err(Error::CascadeDepth {
            requested: n_max,
            budget: CASCADE_BUDGET,
        });
    }
    let t_probes = [0.0, 2.0 * std::f64::consts::LN_2 / 3.0, 1.0];
    let mut levels: Vec<CascadeLevel> = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        let g = match levels.last() {
            None => g0(),
            Some(prev) => prev.g.self_convolve()?,
        };

        let (lo, hi) = {
            let (a, b) = g.support();
            (a.clone(), b.clone())
        };
        let want_lo = pow2_rational(n);
        let want_hi = pow2_rational(n + 1);
        check(lo == want_lo && hi == want_hi, "support_dyadic", n, || {
            format!("support ({lo}, {hi}) is not the annulus ({want_lo}, {want_hi})")
        })?;
        if let Some(prev) = levels.last() {
            let doubled_lo = &prev.supp_lo + &prev.supp_lo;
            let doubled_hi = &prev.supp_hi + &prev.supp_hi;
            check(
                lo == doubled_lo && hi == doubled_hi,
                "support_dyadic",
                n,
                || format!("support ({lo}, {hi}) does not double the previous level"),
            )?;
        }

        if n >= 1 {
            if let Err(detail) = g.certify_continuity() {
                return Err(Error::CascadeCheck {
                    check: "continuity",
                    level: n,
                    detail,
                });
            }
        }

        let l1 = g.integral();
        check(l1 == BigRational::one(), "mass_unity", n, || {
            format!("mass is {l1}, not 1")
        })?;

        let l2sq = g.l2_squared();
        let width = &hi - &lo;
        let cs_left = &l2sq * &width;
        let cs_right = &l1 * &l1;
        check(cs_left >= cs_right, "cauchy_schwarz", n, || {
            format!("l2sq·width = {cs_left} fails to dominate l1² = {cs_right}")
        })?;
        let bound = pow2_rational(n).recip();
        check(l2sq >= bound, "l2_lower_bound", n, || {
            format!("l2sq = {l2sq} is below 2^-{n}")
        })?;

        if let Err(detail) = g.certify_nonnegative() {
            return Err(Error::CascadeCheck {
                check: "nonnegativity",
                level: n,
                detail,
            });
        }

        if n >= 1 {
            for &t in &t_probes {
                let prev = log2_f(n - 1, t)?;
                let cur = log2_f(n, t)?;
                let defect_pow2 = cur.pow2 - 2 * prev.pow2;
                let defect_expo = cur.expo_log2 - 2.0 * prev.expo_log2;
                check(
                    defect_pow2 == 5 - 5 * i64::from(n) && defect_expo == 0.0,
                    "growth_recursion",
                    n,
                    || {
                        format!(
                            "doubling defect ({defect_pow2}, {defect_expo}) at t = {t}, \
                             expected ({}, 0)",
                            5 - 5 * i64::from(n)
                        )
                    },
                )?;
            }
        }

        levels.push(CascadeLevel {
            n,
            g,
            supp_lo: lo,
            supp_hi: hi,
            l1,
            l2sq,
        });
    }
    Ok(levels)
}
