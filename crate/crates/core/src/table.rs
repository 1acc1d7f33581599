//! Validated 2x2 joint-table types and their symmetry transforms.
//!
//! A [`ProbTable`] holds the four joint probabilities
//!
//! ```text
//! p = P(A and B)      q = P(A and not B)
//! r = P(not A and B)  s = P(not A and not B)
//! ```
//!
//! Construction enforces `p + q + r + s = 1` (exactly in rational mode,
//! within `1e-9` before renormalization in float mode), nonnegative cells,
//! and nondegenerate marginals `0 < P(A) < 1`, `0 < P(B) < 1`. Rejecting
//! degenerate marginals once at construction keeps every downstream
//! conditional quantity well-defined. Zero cells are allowed; operations
//! that need strict positivity check [`ProbTable::is_strictly_positive`].

use num_rational::BigRational;
use thiserror::Error;

use crate::scalar::Scalar;

/// Tolerance on the cell sum accepted by float-mode construction. Inputs
/// within this distance of 1 are renormalized by their exact sum; tighter
/// tolerances reject legitimate data-derived tables.
pub const FLOAT_SUM_TOLERANCE: f64 = 1e-9;

/// Which event a transform acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    A,
    B,
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum TableError {
    #[error("cell {cell} is negative or not finite")]
    NegativeCell { cell: &'static str },
    #[error("cell sum {sum} is outside the accepted tolerance around 1")]
    SumOutOfTolerance { sum: f64 },
    #[error("marginal of {axis:?} is degenerate (0 or 1)")]
    DegenerateMarginal { axis: Axis },
    #[error("count table is empty")]
    EmptySpace,
}

/// A strictly validated 2x2 joint probability table.
///
/// Immutable; cheap to clone; safe to share across threads.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbTable<S: Scalar> {
    p: S,
    q: S,
    r: S,
    s: S,
    strictly_positive: bool,
}

impl<S: Scalar> ProbTable<S> {
    /// Builds a table from the four joint probabilities in the order
    /// `(p, q, r, s)`.
    ///
    /// In float mode the cells are renormalized by their exact sum when that
    /// sum is within [`FLOAT_SUM_TOLERANCE`] of 1; in exact mode the sum must
    /// be exactly 1.
    pub fn from_probs(p: S, q: S, r: S, s: S) -> Result<Self, TableError> {
        for (value, cell) in [(&p, "p"), (&q, "q"), (&r, "r"), (&s, "s")] {
            let as_float = value.to_f64();
            if !(as_float.is_finite() && *value >= S::zero()) {
                return Err(TableError::NegativeCell { cell });
            }
        }
        let sum = p.clone() + q.clone() + r.clone() + s.clone();
        let (p, q, r, s) = if S::EXACT {
            if sum != S::one() {
                return Err(TableError::SumOutOfTolerance { sum: sum.to_f64() });
            }
            (p, q, r, s)
        } else {
            if (sum.to_f64() - 1.0).abs() > FLOAT_SUM_TOLERANCE {
                return Err(TableError::SumOutOfTolerance { sum: sum.to_f64() });
            }
            (p / sum.clone(), q / sum.clone(), r / sum.clone(), s / sum)
        };
        Self::finish(p, q, r, s)
    }

    fn finish(p: S, q: S, r: S, s: S) -> Result<Self, TableError> {
        // Marginals are degenerate exactly when a complementary cell pair is
        // zero; cells are already known nonnegative.
        if (p.is_zero() && q.is_zero()) || (r.is_zero() && s.is_zero()) {
            return Err(TableError::DegenerateMarginal { axis: Axis::A });
        }
        if (p.is_zero() && r.is_zero()) || (q.is_zero() && s.is_zero()) {
            return Err(TableError::DegenerateMarginal { axis: Axis::B });
        }
        let strictly_positive = [&p, &q, &r, &s].iter().all(|c| !c.is_zero());
        Ok(ProbTable {
            p,
            q,
            r,
            s,
            strictly_positive,
        })
    }

    /// Bypasses validation; for error-path tests only.
    #[cfg(test)]
    pub(crate) fn from_cells_unchecked(p: S, q: S, r: S, s: S) -> Self {
        let strictly_positive = [&p, &q, &r, &s].iter().all(|c| !c.is_zero());
        ProbTable {
            p,
            q,
            r,
            s,
            strictly_positive,
        }
    }

    pub fn p(&self) -> &S {
        &self.p
    }

    pub fn q(&self) -> &S {
        &self.q
    }

    pub fn r(&self) -> &S {
        &self.r
    }

    pub fn s(&self) -> &S {
        &self.s
    }

    /// Cells in the fixed order `(p, q, r, s)`.
    pub fn cells(&self) -> [&S; 4] {
        [&self.p, &self.q, &self.r, &self.s]
    }

    /// True when every cell is strictly positive, i.e. when every
    /// conditional and log-scale quantity is finite.
    pub fn is_strictly_positive(&self) -> bool {
        self.strictly_positive
    }

    /// The marginal pair `(P(A), P(B)) = (p + q, p + r)`.
    ///
    /// Infallible: construction already rejected degenerate marginals.
    pub fn marginals(&self) -> MarginalPair<S> {
        MarginalPair {
            alpha: self.p.clone() + self.q.clone(),
            beta: self.p.clone() + self.r.clone(),
        }
    }

    /// Swaps the roles of A and B (transposes the cell matrix). The
    /// determinant `ps - qr` is unchanged; the marginals swap.
    pub fn transpose(&self) -> Self {
        ProbTable {
            p: self.p.clone(),
            q: self.r.clone(),
            r: self.q.clone(),
            s: self.s.clone(),
            strictly_positive: self.strictly_positive,
        }
    }

    /// Replaces the event on `axis` by its complement. The determinant of
    /// the result is the negation of the input's.
    pub fn complement(&self, axis: Axis) -> Self {
        let (p, q, r, s) = match axis {
            Axis::A => (
                self.r.clone(),
                self.s.clone(),
                self.p.clone(),
                self.q.clone(),
            ),
            Axis::B => (
                self.q.clone(),
                self.p.clone(),
                self.s.clone(),
                self.r.clone(),
            ),
        };
        let strictly_positive = self.strictly_positive;
        ProbTable {
            p,
            q,
            r,
            s,
            strictly_positive,
        }
    }
}

impl ProbTable<BigRational> {
    /// Builds the exact-rational table of a finite uniform space with the
    /// given cell counts: each cell is `n_x / N`.
    pub fn from_counts(counts: &CountTable) -> Result<Self, TableError> {
        let total = counts.total();
        if total == 0 {
            return Err(TableError::EmptySpace);
        }
        Self::finish(
            BigRational::from_count_ratio(counts.n_p, total),
            BigRational::from_count_ratio(counts.n_q, total),
            BigRational::from_count_ratio(counts.n_r, total),
            BigRational::from_count_ratio(counts.n_s, total),
        )
    }
}

/// Nonnegative cell counts over a finite uniform space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CountTable {
    pub n_p: u64,
    pub n_q: u64,
    pub n_r: u64,
    pub n_s: u64,
}

impl CountTable {
    pub fn new(n_p: u64, n_q: u64, n_r: u64, n_s: u64) -> Self {
        CountTable { n_p, n_q, n_r, n_s }
    }

    pub fn total(&self) -> u64 {
        self.n_p + self.n_q + self.n_r + self.n_s
    }
}

/// The pair `(alpha, beta) = (P(A), P(B))`, both strictly inside `(0, 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct MarginalPair<S: Scalar> {
    alpha: S,
    beta: S,
}

impl<S: Scalar> MarginalPair<S> {
    pub fn new(alpha: S, beta: S) -> Result<Self, TableError> {
        if !(alpha > S::zero() && alpha < S::one()) {
            return Err(TableError::DegenerateMarginal { axis: Axis::A });
        }
        if !(beta > S::zero() && beta < S::one()) {
            return Err(TableError::DegenerateMarginal { axis: Axis::B });
        }
        Ok(MarginalPair { alpha, beta })
    }

    pub fn alpha(&self) -> &S {
        &self.alpha
    }

    pub fn beta(&self) -> &S {
        &self.beta
    }

    /// `(alpha, 1 - alpha, beta, 1 - beta)`.
    pub fn with_complements(&self) -> (S, S, S, S) {
        (
            self.alpha.clone(),
            S::one() - self.alpha.clone(),
            self.beta.clone(),
            S::one() - self.beta.clone(),
        )
    }
}
