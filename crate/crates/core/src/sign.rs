//! Sign classification under an exact or float policy.
//!
//! Difference-type measures classify against 0 and ratio-type measures
//! (odds ratio, Bayes factor, likelihood-ratio quotient) against 1, so one
//! predicate covers both families. Exact policy compares rationals exactly;
//! float policy maps values within `zero_band` of the reference to `Zero`.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::scalar::{ExtScalar, Scalar};

/// Default width of the float-mode zero band.
pub const DEFAULT_ZERO_BAND: f64 = 1e-12;

/// Qualitative regime of an association measure.
///
/// The derived order is `Negative < Zero < Positive`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn from_ordering(ord: Ordering) -> Self {
        match ord {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Positive,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    pub fn word(self) -> &'static str {
        match self {
            Sign::Negative => "negative",
            Sign::Zero => "zero",
            Sign::Positive => "positive",
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.word())
    }
}

/// Governs how sign classifications are made.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SignPolicy {
    /// Exact rational comparison; only valid on exact-rational values.
    Exact,
    /// Float comparison with `|value - reference| <= zero_band` mapping to
    /// [`Sign::Zero`].
    Float { zero_band: f64 },
}

impl SignPolicy {
    /// Float policy with an explicit band width; `zero_band` must be
    /// nonnegative and finite.
    pub fn float(zero_band: f64) -> Self {
        assert!(
            zero_band >= 0.0 && zero_band.is_finite(),
            "zero band must be a nonnegative finite width"
        );
        SignPolicy::Float { zero_band }
    }

    /// Float policy with the default `1e-12` band.
    pub fn float_default() -> Self {
        SignPolicy::Float {
            zero_band: DEFAULT_ZERO_BAND,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, SignPolicy::Exact)
    }
}

/// Reference point a measure is classified against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reference {
    Zero,
    One,
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum SignError {
    #[error("exact sign policy requires exact-rational values")]
    ExactPolicyOnFloat,
    #[error("cannot classify an indeterminate value")]
    IndeterminateInput,
}

/// Classifies a finite scalar against a reference under the policy.
pub fn classify_scalar<S: Scalar>(
    value: &S,
    policy: &SignPolicy,
    reference: Reference,
) -> Result<Sign, SignError> {
    match policy {
        SignPolicy::Exact => {
            if !S::EXACT {
                return Err(SignError::ExactPolicyOnFloat);
            }
            let reference = match reference {
                Reference::Zero => S::zero(),
                Reference::One => S::one(),
            };
            let ord = value
                .partial_cmp(&reference)
                .ok_or(SignError::IndeterminateInput)?;
            Ok(Sign::from_ordering(ord))
        }
        SignPolicy::Float { zero_band } => classify_f64(value.to_f64(), *zero_band, reference),
    }
}

/// Classifies an extended scalar; infinities are `Positive`/`Negative`
/// against either reference.
pub fn classify_ext<S: Scalar>(
    value: &ExtScalar<S>,
    policy: &SignPolicy,
    reference: Reference,
) -> Result<Sign, SignError> {
    match value {
        ExtScalar::Finite(v) => classify_scalar(v, policy, reference),
        ExtScalar::PosInf => Ok(Sign::Positive),
        ExtScalar::NegInf => Ok(Sign::Negative),
    }
}

/// Float-mode classification of a raw `f64` (used for log-scale measures,
/// which are float-valued in both table modes).
pub fn classify_f64(value: f64, zero_band: f64, reference: Reference) -> Result<Sign, SignError> {
    if value.is_nan() {
        return Err(SignError::IndeterminateInput);
    }
    let reference = match reference {
        Reference::Zero => 0.0,
        Reference::One => 1.0,
    };
    if (value - reference).abs() <= zero_band {
        Ok(Sign::Zero)
    } else if value > reference {
        Ok(Sign::Positive)
    } else {
        Ok(Sign::Negative)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    #[test]
    fn exact_classification_of_a_rational() {
        let policy = SignPolicy::Exact;
        assert_eq!(
            classify_scalar(&ratio(1, 10), &policy, Reference::Zero),
            Ok(Sign::Positive)
        );
        assert_eq!(
            classify_scalar(&ratio(1, 1), &policy, Reference::One),
            Ok(Sign::Zero)
        );
    }

    #[test]
    fn exact_policy_rejects_floats() {
        assert_eq!(
            classify_scalar(&0.5_f64, &SignPolicy::Exact, Reference::Zero),
            Err(SignError::ExactPolicyOnFloat)
        );
    }

    #[test]
    fn zero_band_absorbs_near_reference_values() {
        let policy = SignPolicy::float(1e-12);
        assert_eq!(
            classify_scalar(&6.0_f64, &policy, Reference::One),
            Ok(Sign::Positive)
        );
        assert_eq!(
            classify_scalar(&(1.0 + 1e-15_f64), &policy, Reference::One),
            Ok(Sign::Zero)
        );
        assert_eq!(
            classify_scalar(&(-3e-13_f64), &policy, Reference::Zero),
            Ok(Sign::Zero)
        );
    }

    #[test]
    fn infinities_classify_by_direction() {
        let policy = SignPolicy::float_default();
        let pos: ExtScalar<f64> = ExtScalar::PosInf;
        let neg: ExtScalar<f64> = ExtScalar::NegInf;
        assert_eq!(
            classify_ext(&pos, &policy, Reference::One),
            Ok(Sign::Positive)
        );
        assert_eq!(
            classify_ext(&neg, &policy, Reference::Zero),
            Ok(Sign::Negative)
        );
    }

    #[test]
    fn sign_order_is_negative_zero_positive() {
        assert!(Sign::Negative < Sign::Zero && Sign::Zero < Sign::Positive);
    }

    #[test]
    fn nan_is_rejected() {
        assert_eq!(
            classify_f64(f64::NAN, 0.0, Reference::Zero),
            Err(SignError::IndeterminateInput)
        );
    }
}
