//! Association analysis for 2x2 joint probability tables.
//!
//! For events A and B, every scalar notion of association (conditional
//! probability differences, covariance, correlation, odds ratios, Bayes
//! factors, Ising interactions, Walsh coefficients, pointwise mutual
//! information, concordance, transport mismatch, likelihood ratios,
//! logistic slopes, total positivity, stochastic order, matrix rank) is
//! governed by the sign of the single determinant `delta = ps - qr`. This
//! crate computes all of them, in exact rational or floating arithmetic,
//! and verifies the sign agreement three independent ways:
//!
//! * [`report::full_report`] classifies every measure on one table and
//!   issues a consistency verdict;
//! * [`oracle`] re-derives the quantities by brute force (element
//!   enumeration, ordered-pair counting, exhaustive sweeps over all small
//!   count tables) without touching the closed forms;
//! * [`montecarlo`] cross-checks the closed forms against seeded sampling.
//!
//! [`family`] constructs the one-parameter family of tables with fixed
//! marginals, whose single coordinate is the coupling parameter
//! `t = P(A and B) - P(A)P(B)`.

pub mod family;
pub mod measures;
pub mod montecarlo;
pub mod oracle;
pub mod report;
pub mod scalar;
pub mod sign;
pub mod table;

pub use crate::family::{CouplingFamily, FamilyError};
pub use crate::measures::MeasureError;
pub use crate::montecarlo::{MonteCarloError, SampleEstimate};
pub use crate::oracle::{OracleError, SweepSummary};
pub use crate::report::{full_report, MeasureReport, ReportValue, Verdict};
pub use crate::scalar::{ExtScalar, Scalar};
pub use crate::sign::{Reference, Sign, SignError, SignPolicy, DEFAULT_ZERO_BAND};
pub use crate::table::{Axis, CountTable, MarginalPair, ProbTable, TableError};

/// Exact rational scalar used throughout exact mode.
pub type Rational = num_rational::BigRational;
