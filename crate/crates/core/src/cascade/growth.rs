//! Log-domain growth envelopes for the cascade.
//!
//! The minorant at level n carries the time factor
//!
//! ```text
//! f_n(t) = e^{-(3/2) t 2^{n+4}} · 2^{-5(2^n - 1)} · 2^{5n},
//! ```
//!
//! whose magnitude swings across thousands of binary orders long before
//! the levels of interest: at n = 8 the power-of-two part alone is
//! 2^{-1235}. No quantity of this shape is ever exponentiated here;
//! everything is carried in base-2 logarithms, split into an exact
//! integer power-of-two ledger and a floating contribution from the
//! genuine exponential. The split makes the level-doubling identity
//!
//! ```text
//! log2 f_n(t) = 2 · log2 f_{n-1}(t) + (5 - 5n)
//! ```
//!
//! checkable with a zero-error integer part: the exponential halves are
//! exact binary rescalings of each other, so even the floating parts
//! cancel bit for bit.

use crate::Error;

/// Deepest level accepted by the exact integer ledger; 5·(2⁵⁸ − 1) still
/// fits an i64 with room for the defect arithmetic.
pub const MAX_LOG2F_LEVEL: u32 = 58;

/// Base-2 logarithm split into an exact power-of-two part and a floating
/// part contributed by the real exponential.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Log2F {
    /// Exact integer summand: −5(2ⁿ − 1) + 5n.
    pub pow2: i64,
    /// Floating summand: −(3/2)·t·2ⁿ⁺⁴·log₂e.
    pub expo_log2: f64,
}

impl Log2F {
    /// The combined value log₂fₙ(t) as a float.
    pub fn total(&self) -> f64 {
        self.pow2 as f64 + self.expo_log2
    }
}

/// log₂ of the level-n time factor fₙ(t), exact in its power-of-two part.
///
/// The identity log2_f(n,t) = 2·log2_f(n−1,t) + (5 − 5n) holds with zero
/// error in `pow2` and bit-exactly in `expo_log2` (the exponent scale
/// 2ⁿ⁺⁴ doubles, and doubling is exact in binary floating point).
pub fn log2_f(n: u32, t: f64) -> Result<Log2F, Error> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::BadTime(t));
    }
    if n > MAX_LOG2F_LEVEL {
        return Err(Error::CascadeDepth {
            requested: n,
            budget: MAX_LOG2F_LEVEL,
        });
    }
    let pow2 = 5 * i64::from(n) - 5 * ((1i64 << n) - 1);
    let scale = (n + 4) as i32;
    let expo_log2 = -1.5 * t * f64::exp2(f64::from(scale)) * std::f64::consts::LOG2_E;
    Ok(Log2F { pow2, expo_log2 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t_star() -> f64 {
        2.0 * std::f64::consts::LN_2 / 3.0
    }

    #[test]
    fn level_zero_at_time_zero_is_exactly_one() {
        let v = log2_f(0, 0.0).expect("valid arguments");
        assert_eq!(v.pow2, 0, "no power-of-two factors at level 0");
        assert_eq!(v.total(), 0.0, "f_0(0) = 1 so its log2 vanishes");
    }

    #[test]
    fn level_zero_at_the_critical_time_is_two_to_the_minus_sixteen() {
        // (3/2)·(2 ln2 / 3)·2⁴ = 16·ln2, so the exponential contributes
        // exactly −16 binary orders.
        let v = log2_f(0, t_star()).expect("valid arguments");
        assert_eq!(v.pow2, 0);
        assert!(
            (v.total() + 16.0).abs() < 1e-12,
            "log2 f_0(T*) should be -16, got {}",
            v.total()
        );
    }

    #[test]
    fn doubling_identity_has_exact_integer_defect_and_zero_float_defect() {
        for n in 1..=12u32 {
            for &t in &[0.0, t_star(), 1.0] {
                let lo = log2_f(n - 1, t).expect("valid arguments");
                let hi = log2_f(n, t).expect("valid arguments");
                assert_eq!(
                    hi.pow2 - 2 * lo.pow2,
                    5 - 5 * i64::from(n),
                    "power-of-two ledger defect at n = {n}"
                );
                assert_eq!(
                    hi.expo_log2,
                    2.0 * lo.expo_log2,
                    "exponential halves must be exact binary rescalings at n = {n}, t = {t}"
                );
            }
        }
    }

    #[test]
    fn negative_or_non_finite_times_are_rejected() {
        assert!(matches!(log2_f(1, -0.25), Err(Error::BadTime(_))));
        assert!(matches!(log2_f(1, f64::NAN), Err(Error::BadTime(_))));
        assert!(matches!(log2_f(1, f64::INFINITY), Err(Error::BadTime(_))));
    }

    #[test]
    fn levels_beyond_the_integer_ledger_are_refused() {
        assert!(log2_f(MAX_LOG2F_LEVEL, 1.0).is_ok());
        assert!(matches!(
            log2_f(MAX_LOG2F_LEVEL + 1, 1.0),
            Err(Error::CascadeDepth { .. })
        ));
    }
}
