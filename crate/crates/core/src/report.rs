//! The full measure report and its consistency verdict.
//!
//! [`full_report`] computes every measure in [`crate::measures`] on one
//! table, classifies each sign under the policy, and checks that all signed
//! measures tell the same story as the determinant. The verdict is the
//! artifact's statement of the sign-symmetry theorem on a concrete table;
//! an `Inconsistent` verdict indicates a library bug, never a valid-world
//! outcome.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_rational::BigRational;

use crate::measures::{self, PhiValue};
use crate::scalar::{ExtScalar, Scalar};
use crate::sign::{
    classify_ext, classify_f64, classify_scalar, Reference, Sign, SignError, SignPolicy,
};
use crate::table::ProbTable;

/// A measure value prepared for rendering: exact fraction, float (possibly
/// infinite), boolean, small integer, or a sign word.
#[derive(Clone, Debug, PartialEq)]
pub enum ReportValue {
    Rational(BigRational),
    Float(f64),
    Bool(bool),
    Int(u64),
    SignWord(Sign),
}

impl ReportValue {
    pub fn from_scalar<S: Scalar>(v: &S) -> Self {
        match v.as_rational() {
            Some(rational) => ReportValue::Rational(rational),
            None => ReportValue::Float(v.to_f64()),
        }
    }

    pub fn from_ext<S: Scalar>(v: &ExtScalar<S>) -> Self {
        match v {
            ExtScalar::Finite(x) => Self::from_scalar(x),
            ExtScalar::PosInf => ReportValue::Float(f64::INFINITY),
            ExtScalar::NegInf => ReportValue::Float(f64::NEG_INFINITY),
        }
    }

    /// Stable text form: exact fractions as `n/d`, floats with 17
    /// significant digits, infinities as `+inf` / `-inf`.
    pub fn render(&self) -> String {
        match self {
            ReportValue::Rational(r) => r.to_string(),
            ReportValue::Float(x) => render_f64(*x),
            ReportValue::Bool(b) => b.to_string(),
            ReportValue::Int(n) => n.to_string(),
            ReportValue::SignWord(sign) => sign.word().to_string(),
        }
    }
}

/// 17 significant digits round-trip any f64 exactly.
pub fn render_f64(x: f64) -> String {
    if x == f64::INFINITY {
        "+inf".to_string()
    } else if x == f64::NEG_INFINITY {
        "-inf".to_string()
    } else {
        format!("{x:.16e}")
    }
}

/// One measure in the report: its perspective label, value, classified sign
/// (when the measure is sign-bearing), or the reason it was omitted.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasureEntry {
    pub label: &'static str,
    pub value: Option<ReportValue>,
    pub sign: Option<Sign>,
    pub omitted: Option<&'static str>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Consistent,
    /// Names of the measures whose sign disagrees with `delta`'s.
    Inconsistent(Vec<&'static str>),
}

impl Verdict {
    pub fn is_consistent(&self) -> bool {
        matches!(self, Verdict::Consistent)
    }

    pub fn word(&self) -> &'static str {
        match self {
            Verdict::Consistent => "consistent",
            Verdict::Inconsistent(_) => "inconsistent",
        }
    }
}

/// Report of every measure on one table under one sign policy.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasureReport {
    pub entries: BTreeMap<&'static str, MeasureEntry>,
    pub delta_sign: Sign,
    pub verdict: Verdict,
    pub policy: SignPolicy,
}

/// How an entry participates in the verdict.
#[derive(Clone, Copy, Debug, PartialEq)]
enum Rule {
    Unchecked,
    /// Sign must equal `delta`'s sign.
    Match,
    /// Sign must equal the negation of `delta`'s sign.
    Opposite,
    /// Value classifies as zero exactly when `delta` does.
    ZeroIffDelta,
    /// Rank is 1 exactly when `delta` classifies as zero.
    Rank,
    /// The TP2 minor test must not contradict a strict `delta` sign.
    Tp2,
}

struct Builder {
    delta_sign: Sign,
    entries: BTreeMap<&'static str, MeasureEntry>,
    dissent: Vec<&'static str>,
}

impl Builder {
    fn push(
        &mut self,
        key: &'static str,
        label: &'static str,
        value: ReportValue,
        sign: Option<Sign>,
        rule: Rule,
    ) {
        let consistent = match (rule, sign) {
            (Rule::Unchecked, _) => true,
            (Rule::Match, Some(sign)) => sign == self.delta_sign,
            (Rule::Opposite, Some(sign)) => sign == self.delta_sign.flip(),
            (Rule::ZeroIffDelta, Some(sign)) => {
                (sign == Sign::Zero) == (self.delta_sign == Sign::Zero)
            }
            (Rule::Rank, _) => match &value {
                ReportValue::Int(rank) => (*rank == 1) == (self.delta_sign == Sign::Zero),
                _ => false,
            },
            (Rule::Tp2, _) => match &value {
                ReportValue::Bool(holds) => match self.delta_sign {
                    Sign::Positive => *holds,
                    Sign::Negative => !*holds,
                    Sign::Zero => true,
                },
                _ => false,
            },
            // A sign-checked entry without a sign cannot be confirmed.
            (_, None) => false,
        };
        if !consistent {
            self.dissent.push(key);
        }
        self.entries.insert(
            key,
            MeasureEntry {
                label,
                value: Some(value),
                sign,
                omitted: None,
            },
        );
    }

    fn omit(&mut self, key: &'static str, label: &'static str, reason: &'static str) {
        self.entries.insert(
            key,
            MeasureEntry {
                label,
                value: None,
                sign: None,
                omitted: Some(reason),
            },
        );
    }
}

const NEEDS_POSITIVITY: &str = "requires a strictly positive table";
const INDETERMINATE: &str = "indeterminate (0/0)";

/// Computes all measures, classifies their signs, and assembles the
/// consistency verdict.
///
/// Measures undefined on the given table (the Gibbs fit and the logistic
/// slope need strict positivity; ratio measures can hit `0/0` only on
/// unvalidated tables) are reported as omissions rather than aborting the
/// report. With [`SignPolicy::Exact`] every classification is an exact
/// rational comparison; log-scale measures get their signs from their exact
/// arguments, not from the rounded float values.
pub fn full_report<S: Scalar>(
    t: &ProbTable<S>,
    policy: &SignPolicy,
) -> Result<MeasureReport, SignError> {
    if policy.is_exact() && !S::EXACT {
        return Err(SignError::ExactPolicyOnFloat);
    }

    let d = measures::delta(t);
    let delta_sign = classify_scalar(&d, policy, Reference::Zero)?;
    let mut b = Builder {
        delta_sign,
        entries: BTreeMap::new(),
        dissent: Vec::new(),
    };

    // Exact ordering of ps against qr: the sign source for every log-scale
    // measure in exact mode.
    let or_ordering = (t.p().clone() * t.s().clone()).partial_cmp(&(t.q().clone() * t.r().clone()));
    let log_sign = |value: f64| -> Result<Sign, SignError> {
        match policy {
            SignPolicy::Exact => Ok(Sign::from_ordering(
                or_ordering.ok_or(SignError::IndeterminateInput)?,
            )),
            SignPolicy::Float { zero_band } => classify_f64(value, *zero_band, Reference::Zero),
        }
    };

    let scalar_sign = |value: &S| classify_scalar(value, policy, Reference::Zero);

    b.push(
        "delta",
        "linear algebra",
        ReportValue::from_scalar(&d),
        Some(delta_sign),
        Rule::Match,
    );

    let (d_a, d_b) = measures::conditional_diffs(t);
    b.push(
        "conditional_diff_a",
        "conditional probability",
        ReportValue::from_scalar(&d_a),
        Some(scalar_sign(&d_a)?),
        Rule::Match,
    );
    b.push(
        "conditional_diff_b",
        "conditional probability",
        ReportValue::from_scalar(&d_b),
        Some(scalar_sign(&d_b)?),
        Rule::Match,
    );

    let coupling = measures::coupling_t(t);
    b.push(
        "coupling_t",
        "coupling",
        ReportValue::from_scalar(&coupling),
        Some(scalar_sign(&coupling)?),
        Rule::Match,
    );

    let theta = measures::theta(t);
    b.push(
        "theta",
        "coupling",
        ReportValue::from_scalar(&theta),
        Some(scalar_sign(&theta)?),
        Rule::Match,
    );

    // Sign decided from delta, never from the root.
    let phi_value = match measures::phi(t) {
        PhiValue::Scalar(v) => ReportValue::from_scalar(&v),
        PhiValue::Approx(v) => ReportValue::Float(v),
    };
    b.push(
        "phi",
        "hilbert space",
        phi_value,
        Some(delta_sign),
        Rule::Match,
    );

    match measures::odds_ratio(t) {
        Ok(or) => b.push(
            "odds_ratio",
            "statistics",
            ReportValue::from_ext(&or),
            Some(classify_ext(&or, policy, Reference::One)?),
            Rule::Match,
        ),
        Err(_) => b.omit("odds_ratio", "statistics", INDETERMINATE),
    }

    match measures::log_odds_ratio(t) {
        Ok(value) => b.push(
            "log_odds_ratio",
            "log-potential",
            ReportValue::Float(value),
            Some(log_sign(value)?),
            Rule::Match,
        ),
        Err(_) => b.omit("log_odds_ratio", "log-potential", INDETERMINATE),
    }

    match measures::ising_params(t) {
        Ok(params) => {
            b.push(
                "ising_gamma",
                "ising model",
                ReportValue::Float(params.gamma),
                Some(log_sign(params.gamma)?),
                Rule::Match,
            );
            b.push(
                "ising_field_a",
                "ising model",
                ReportValue::Float(params.h_a),
                None,
                Rule::Unchecked,
            );
            b.push(
                "ising_field_b",
                "ising model",
                ReportValue::Float(params.h_b),
                None,
                Rule::Unchecked,
            );
            b.push(
                "ising_log_z",
                "ising model",
                ReportValue::Float(params.log_z),
                None,
                Rule::Unchecked,
            );
        }
        Err(_) => {
            b.omit("ising_gamma", "ising model", NEEDS_POSITIVITY);
            b.omit("ising_field_a", "ising model", NEEDS_POSITIVITY);
            b.omit("ising_field_b", "ising model", NEEDS_POSITIVITY);
            b.omit("ising_log_z", "ising model", NEEDS_POSITIVITY);
        }
    }

    let walsh = measures::walsh_coefficients(t);
    b.push(
        "walsh_c_empty",
        "walsh-fourier",
        ReportValue::from_scalar(&walsh.c_empty),
        None,
        Rule::Unchecked,
    );
    b.push(
        "walsh_c_u",
        "walsh-fourier",
        ReportValue::from_scalar(&walsh.c_u),
        None,
        Rule::Unchecked,
    );
    b.push(
        "walsh_c_v",
        "walsh-fourier",
        ReportValue::from_scalar(&walsh.c_v),
        None,
        Rule::Unchecked,
    );
    b.push(
        "walsh_c_uv",
        "walsh-fourier",
        ReportValue::from_scalar(&walsh.c_uv),
        None,
        Rule::Unchecked,
    );
    let walsh_excess = measures::walsh_interaction_excess(t);
    b.push(
        "walsh_interaction_excess",
        "walsh-fourier",
        ReportValue::from_scalar(&walsh_excess),
        Some(scalar_sign(&walsh_excess)?),
        Rule::Match,
    );

    let pmi_entry = |b: &mut Builder, key, a, bl, rule| -> Result<(), SignError> {
        let value = measures::pmi(t, a, bl);
        let sign = match policy {
            SignPolicy::Exact => Sign::from_ordering(
                measures::pmi_ordering(t, a, bl).ok_or(SignError::IndeterminateInput)?,
            ),
            SignPolicy::Float { zero_band } => classify_f64(value, *zero_band, Reference::Zero)?,
        };
        b.push(
            key,
            "information",
            ReportValue::Float(value),
            Some(sign),
            rule,
        );
        Ok(())
    };
    pmi_entry(&mut b, "pmi_11", true, true, Rule::Match)?;
    pmi_entry(&mut b, "pmi_00", false, false, Rule::Match)?;
    pmi_entry(&mut b, "pmi_10", true, false, Rule::Opposite)?;
    pmi_entry(&mut b, "pmi_01", false, true, Rule::Opposite)?;

    let mi = measures::mutual_information(t);
    let (mi_sign, mi_rule) = match policy {
        SignPolicy::Exact => {
            let sign = match or_ordering.ok_or(SignError::IndeterminateInput)? {
                Ordering::Equal => Sign::Zero,
                _ => Sign::Positive,
            };
            (sign, Rule::ZeroIffDelta)
        }
        // The float band classifies mutual information on its own quadratic
        // scale, which is incommensurate with the linear delta band, so the
        // value is reported but left out of the verdict.
        SignPolicy::Float { zero_band } => (
            classify_f64(mi, *zero_band, Reference::Zero)?,
            Rule::Unchecked,
        ),
    };
    b.push(
        "mutual_information",
        "information",
        ReportValue::Float(mi),
        Some(mi_sign),
        mi_rule,
    );

    let (b_xy, b_yx) = measures::regression_slopes(t);
    b.push(
        "regression_slope_x_on_y",
        "regression",
        ReportValue::from_scalar(&b_xy),
        Some(scalar_sign(&b_xy)?),
        Rule::Match,
    );
    b.push(
        "regression_slope_y_on_x",
        "regression",
        ReportValue::from_scalar(&b_yx),
        Some(scalar_sign(&b_yx)?),
        Rule::Match,
    );

    let (conc, disc) = measures::concordance(t);
    b.push(
        "concordance_prob",
        "concordance",
        ReportValue::from_scalar(&conc),
        None,
        Rule::Unchecked,
    );
    b.push(
        "discordance_prob",
        "concordance",
        ReportValue::from_scalar(&disc),
        None,
        Rule::Unchecked,
    );
    let conc_excess = conc - disc;
    b.push(
        "concordance_excess",
        "concordance",
        ReportValue::from_scalar(&conc_excess),
        Some(scalar_sign(&conc_excess)?),
        Rule::Match,
    );

    let mismatch = measures::mismatch_excess(t);
    b.push(
        "mismatch_excess",
        "transport",
        ReportValue::from_scalar(&mismatch),
        Some(scalar_sign(&mismatch)?),
        Rule::Match,
    );

    let bf = measures::bayes_factor(t);
    b.push(
        "bayes_factor",
        "bayesian",
        ReportValue::from_ext(&bf),
        Some(classify_ext(&bf, policy, Reference::One)?),
        Rule::Match,
    );

    let (l0, l1) = measures::likelihood_ratios(t);
    b.push(
        "likelihood_ratio_0",
        "mlr",
        ReportValue::from_ext(&l0),
        None,
        Rule::Unchecked,
    );
    b.push(
        "likelihood_ratio_1",
        "mlr",
        ReportValue::from_ext(&l1),
        None,
        Rule::Unchecked,
    );
    match l1.checked_div(&l0) {
        Some(quotient) => {
            let sign = match policy {
                SignPolicy::Exact => {
                    Sign::from_ordering(l1.partial_cmp(&l0).ok_or(SignError::IndeterminateInput)?)
                }
                SignPolicy::Float { zero_band } => {
                    classify_f64(quotient.to_f64(), *zero_band, Reference::One)?
                }
            };
            b.push(
                "mlr_quotient",
                "mlr",
                ReportValue::from_ext(&quotient),
                Some(sign),
                Rule::Match,
            );
        }
        None => b.omit("mlr_quotient", "mlr", INDETERMINATE),
    }

    match measures::logistic_slope(t) {
        Ok(value) => b.push(
            "logistic_slope",
            "logistic",
            ReportValue::Float(value),
            Some(log_sign(value)?),
            Rule::Match,
        ),
        Err(_) => b.omit("logistic_slope", "logistic", NEEDS_POSITIVITY),
    }

    b.push(
        "tp2",
        "total positivity",
        ReportValue::Bool(measures::tp2(t)),
        None,
        Rule::Tp2,
    );

    let (rowwise, columnwise) = measures::stochastic_dominance(t, policy)?;
    b.push(
        "stochastic_rowwise",
        "stochastic order",
        ReportValue::SignWord(rowwise),
        Some(rowwise),
        Rule::Match,
    );
    b.push(
        "stochastic_columnwise",
        "stochastic order",
        ReportValue::SignWord(columnwise),
        Some(columnwise),
        Rule::Match,
    );

    let rank = measures::rank_of_m(t, policy)?;
    b.push(
        "rank",
        "linear algebra",
        ReportValue::Int(u64::from(rank)),
        None,
        Rule::Rank,
    );

    let verdict = if b.dissent.is_empty() {
        Verdict::Consistent
    } else {
        Verdict::Inconsistent(b.dissent)
    };
    Ok(MeasureReport {
        entries: b.entries,
        delta_sign,
        verdict,
        policy: *policy,
    })
}
