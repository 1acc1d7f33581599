//! Numeric carriers for table cells and measure values.
//!
//! Every table and every closed-form measure in this crate is generic over a
//! [`Scalar`]. Two implementations are provided: `f64` for floating-point
//! mode and [`BigRational`] for exact arbitrary-precision arithmetic. The
//! exact carrier is what makes the zero-tolerance identity checks and the
//! exhaustive sweeps meaningful.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arithmetic carrier shared by the float and exact-rational table modes.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Sized
{
    /// True when arithmetic in this carrier is exact (no rounding anywhere).
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    /// The fraction `num / den`; `den` must be nonzero.
    fn from_count_ratio(num: u64, den: u64) -> Self;
    fn to_f64(&self) -> f64;
    /// The exact rational behind this value, when there is one.
    fn as_rational(&self) -> Option<BigRational>;
    /// An exact square root in the same carrier, when one is representable.
    ///
    /// For `f64` any nonnegative value qualifies; for rationals only perfect
    /// squares do. Negative inputs return `None`.
    fn sqrt_representable(&self) -> Option<Self>;

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_int(n: i64) -> Self {
        n as f64
    }

    fn from_count_ratio(num: u64, den: u64) -> Self {
        debug_assert!(den != 0);
        num as f64 / den as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn as_rational(&self) -> Option<BigRational> {
        None
    }

    fn sqrt_representable(&self) -> Option<Self> {
        if *self >= 0.0 {
            Some(self.sqrt())
        } else {
            None
        }
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_count_ratio(num: u64, den: u64) -> Self {
        assert!(den != 0, "zero denominator");
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).expect("rational converts to f64")
    }

    fn as_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }

    fn sqrt_representable(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let numer = exact_int_sqrt(self.numer())?;
        let denom = exact_int_sqrt(self.denom())?;
        Some(BigRational::new(numer, denom))
    }
}

fn exact_int_sqrt(n: &BigInt) -> Option<BigInt> {
    let root = n.sqrt();
    if &root.clone() * &root == *n {
        Some(root)
    } else {
        None
    }
}

/// A scalar extended with signed infinities, for ratio- and log-scale
/// measures at boundary tables. `NaN`-like indeterminate forms are kept out
/// by construction: [`ExtScalar::from_ratio`] refuses `0/0`.
#[derive(Clone, Debug, PartialEq)]
pub enum ExtScalar<S> {
    Finite(S),
    PosInf,
    NegInf,
}

impl<S: Scalar> ExtScalar<S> {
    /// `num / den`, with a zero denominator mapping to the signed infinity
    /// matching the numerator. Returns `None` for the indeterminate `0/0`.
    pub fn from_ratio(num: S, den: S) -> Option<Self> {
        if den.is_zero() {
            match num.partial_cmp(&S::zero()) {
                Some(Ordering::Greater) => Some(ExtScalar::PosInf),
                Some(Ordering::Less) => Some(ExtScalar::NegInf),
                _ => None,
            }
        } else {
            Some(ExtScalar::Finite(num / den))
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtScalar::Finite(_))
    }

    pub fn finite(&self) -> Option<&S> {
        match self {
            ExtScalar::Finite(v) => Some(v),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExtScalar::Finite(v) => v.to_f64(),
            ExtScalar::PosInf => f64::INFINITY,
            ExtScalar::NegInf => f64::NEG_INFINITY,
        }
    }

    /// Division on the extended scale. `None` for the indeterminate forms
    /// `inf/inf` and `0/0` (and division by an infinite denominator of a
    /// zero numerator, which cannot decide a sign).
    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        use ExtScalar::*;
        match (self, other) {
            (Finite(a), Finite(b)) => ExtScalar::from_ratio(a.clone(), b.clone()),
            (PosInf | NegInf, PosInf | NegInf) => None,
            (PosInf, Finite(b)) => signed_inf(b, false),
            (NegInf, Finite(b)) => signed_inf(b, true),
            (Finite(_), PosInf | NegInf) => Some(Finite(S::zero())),
        }
    }
}

fn signed_inf<S: Scalar>(den: &S, flip: bool) -> Option<ExtScalar<S>> {
    match den.partial_cmp(&S::zero())? {
        Ordering::Greater => Some(if flip {
            ExtScalar::NegInf
        } else {
            ExtScalar::PosInf
        }),
        Ordering::Less => Some(if flip {
            ExtScalar::PosInf
        } else {
            ExtScalar::NegInf
        }),
        Ordering::Equal => Some(if flip {
            ExtScalar::NegInf
        } else {
            ExtScalar::PosInf
        }),
    }
}

impl<S: Scalar> PartialOrd for ExtScalar<S> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        use ExtScalar::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.partial_cmp(b),
            (PosInf, PosInf) | (NegInf, NegInf) => Some(Ordering::Equal),
            (PosInf, _) | (_, NegInf) => Some(Ordering::Greater),
            (NegInf, _) | (_, PosInf) => Some(Ordering::Less),
        }
    }
}

impl<S: fmt::Display> fmt::Display for ExtScalar<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtScalar::Finite(v) => v.fmt(f),
            ExtScalar::PosInf => write!(f, "+inf"),
            ExtScalar::NegInf => write!(f, "-inf"),
        }
    }
}

/// Convenience constructor for exact rationals in tests and examples.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
