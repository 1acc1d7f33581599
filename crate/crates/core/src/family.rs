//! The fixed-marginal one-parameter coupling family.
//!
//! For marginals `(alpha, beta)` the family `P_t` has cells
//!
//! ```text
//! p = alpha*beta + t          q = alpha*(1-beta) - t
//! r = (1-alpha)*beta - t      s = (1-alpha)*(1-beta) + t
//! ```
//!
//! with `t` admissible on the closed interval
//! `[-min(alpha*beta, (1-alpha)(1-beta)), min(alpha(1-beta), (1-alpha)beta)]`.
//! Both endpoints are admissible; the endpoint tables carry an exact zero
//! cell, and measures needing strict positivity report omissions there.

use thiserror::Error;

use crate::scalar::Scalar;
use crate::table::{MarginalPair, ProbTable, TableError};

#[derive(Clone, Debug, Error, PartialEq)]
pub enum FamilyError {
    #[error("coupling parameter outside the admissible interval")]
    OutOfRange,
    #[error("family table failed validation: {0}")]
    Table(#[from] TableError),
}

/// All joint laws sharing one nondegenerate marginal pair, indexed by the
/// coupling parameter `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct CouplingFamily<S: Scalar> {
    marginals: MarginalPair<S>,
    t_min: S,
    t_max: S,
}

impl<S: Scalar> CouplingFamily<S> {
    pub fn new(marginals: MarginalPair<S>) -> Self {
        let (alpha, alpha_c, beta, beta_c) = marginals.with_complements();
        let min = |a: S, b: S| if a <= b { a } else { b };
        let t_min = -min(
            alpha.clone() * beta.clone(),
            alpha_c.clone() * beta_c.clone(),
        );
        let t_max = min(alpha * beta_c, alpha_c * beta);
        CouplingFamily {
            marginals,
            t_min,
            t_max,
        }
    }

    pub fn marginals(&self) -> &MarginalPair<S> {
        &self.marginals
    }

    pub fn t_min(&self) -> &S {
        &self.t_min
    }

    pub fn t_max(&self) -> &S {
        &self.t_max
    }

    pub fn contains(&self, t: &S) -> bool {
        *t >= self.t_min && *t <= self.t_max
    }

    /// The member table at coupling parameter `t`. Its marginals equal the
    /// family's and its determinant equals `t` (exactly in rational mode).
    pub fn table_from_t(&self, t: &S) -> Result<ProbTable<S>, FamilyError> {
        if !self.contains(t) {
            return Err(FamilyError::OutOfRange);
        }
        let (alpha, alpha_c, beta, beta_c) = self.marginals.with_complements();
        // Cells mirror the interval endpoints term-for-term so endpoint
        // tables get an exact zero cell even in float mode.
        let p = alpha.clone() * beta.clone() + t.clone();
        let q = alpha * beta_c.clone() - t.clone();
        let r = alpha_c.clone() * beta - t.clone();
        let s = alpha_c * beta_c + t.clone();
        Ok(ProbTable::from_probs(p, q, r, s)?)
    }

    /// The member table at normalized interaction `theta`, i.e. at
    /// `t = theta * alpha(1-alpha) beta(1-beta)`. Round-trips through
    /// [`crate::measures::theta`] exactly in rational mode.
    pub fn table_from_theta(&self, theta: &S) -> Result<ProbTable<S>, FamilyError> {
        let (alpha, alpha_c, beta, beta_c) = self.marginals.with_complements();
        let t = theta.clone() * ((alpha * alpha_c) * (beta * beta_c));
        self.table_from_t(&t)
    }

    /// `F(t) = t / (beta(1-beta))`: the conditional difference
    /// `P(A|B) - P(A|!B)` of the member at `t`, as a closed-form linear map.
    pub fn f_of_t(&self, t: &S) -> Result<S, FamilyError> {
        if !self.contains(t) {
            return Err(FamilyError::OutOfRange);
        }
        let (_, _, beta, beta_c) = self.marginals.with_complements();
        Ok(t.clone() / (beta * beta_c))
    }

    /// `G(t) = t / (alpha(1-alpha))`: the conditional difference
    /// `P(B|A) - P(B|!A)` of the member at `t`.
    pub fn g_of_t(&self, t: &S) -> Result<S, FamilyError> {
        if !self.contains(t) {
            return Err(FamilyError::OutOfRange);
        }
        let (alpha, alpha_c, _, _) = self.marginals.with_complements();
        Ok(t.clone() / (alpha * alpha_c))
    }

    /// A uniform grid of `points >= 2` admissible parameters including both
    /// endpoints exactly.
    pub fn grid(&self, points: usize) -> Vec<S> {
        assert!(points >= 2, "grid needs at least the two endpoints");
        let span = self.t_max.clone() - self.t_min.clone();
        let steps = S::from_int((points - 1) as i64);
        let mut grid = Vec::with_capacity(points);
        grid.push(self.t_min.clone());
        for i in 1..points - 1 {
            let offset = span.clone() * S::from_int(i as i64) / steps.clone();
            grid.push(self.t_min.clone() + offset);
        }
        grid.push(self.t_max.clone());
        grid
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures;
    use crate::scalar::ratio;
    use num_rational::BigRational;

    fn family_half_sixth() -> CouplingFamily<BigRational> {
        CouplingFamily::new(MarginalPair::new(ratio(1, 2), ratio(3, 5)).unwrap())
    }

    #[test]
    fn admissible_interval_of_reference_marginals() {
        let f = family_half_sixth();
        assert_eq!(f.t_min(), &ratio(-1, 5));
        assert_eq!(f.t_max(), &ratio(1, 5));

        let sym = CouplingFamily::new(MarginalPair::new(0.5_f64, 0.5).unwrap());
        assert_eq!((*sym.t_min(), *sym.t_max()), (-0.25, 0.25));

        let skew = CouplingFamily::new(MarginalPair::new(ratio(9, 10), ratio(1, 10)).unwrap());
        assert_eq!(skew.t_min(), &ratio(-9, 100));
        assert_eq!(skew.t_max(), &ratio(1, 100));
    }

    #[test]
    fn member_tables_recover_t1_and_independence() {
        let f = family_half_sixth();
        let t1 = f.table_from_t(&ratio(1, 10)).unwrap();
        assert_eq!(
            t1.cells().map(Clone::clone),
            [ratio(2, 5), ratio(1, 10), ratio(1, 5), ratio(3, 10)]
        );
        let indep = f.table_from_t(&ratio(0, 1)).unwrap();
        assert_eq!(measures::delta(&indep), ratio(0, 1));
        assert_eq!(
            f.table_from_t(&ratio(21, 100)),
            Err(FamilyError::OutOfRange)
        );
    }

    #[test]
    fn marginals_and_delta_are_preserved_exactly() {
        let f = family_half_sixth();
        for t in f.grid(11) {
            let member = f.table_from_t(&t).unwrap();
            assert_eq!(member.marginals(), *f.marginals());
            assert_eq!(measures::delta(&member), t);
        }
    }

    #[test]
    fn theta_parameterization_round_trips() {
        let f = family_half_sixth();
        let t1 = f.table_from_theta(&ratio(5, 3)).unwrap();
        assert_eq!(measures::delta(&t1), ratio(1, 10));
        let theta = ratio(6, 5);
        let member = f.table_from_theta(&theta).unwrap();
        assert_eq!(measures::theta(&member), theta);
        assert_eq!(
            f.table_from_theta(&ratio(0, 1)).unwrap(),
            f.table_from_t(&ratio(0, 1)).unwrap()
        );
    }

    #[test]
    fn linear_maps_match_the_member_conditionals() {
        let f = family_half_sixth();
        let t = ratio(1, 10);
        let member = f.table_from_t(&t).unwrap();
        let (d_a, d_b) = measures::conditional_diffs(&member);
        assert_eq!(f.f_of_t(&t).unwrap(), d_a);
        assert_eq!(f.g_of_t(&t).unwrap(), d_b);
        assert_eq!(f.f_of_t(&ratio(0, 1)).unwrap(), ratio(0, 1));
        assert_eq!(f.g_of_t(&ratio(0, 1)).unwrap(), ratio(0, 1));
        assert_eq!(f.f_of_t(&ratio(1, 2)), Err(FamilyError::OutOfRange));
    }

    #[test]
    fn slopes_are_constant_between_grid_points() {
        let f = family_half_sixth();
        let (t1, t2) = (ratio(-1, 10), ratio(3, 20));
        let slope_f = (f.f_of_t(&t2).unwrap() - f.f_of_t(&t1).unwrap()) / (t2.clone() - t1.clone());
        assert_eq!(slope_f, ratio(1, 1) / ratio(6, 25));
        let slope_g = (f.g_of_t(&t2).unwrap() - f.g_of_t(&t1).unwrap()) / (t2 - t1);
        assert_eq!(slope_g, ratio(4, 1));
    }

    #[test]
    fn endpoint_tables_have_an_exact_zero_cell() {
        let f = family_half_sixth();
        for t in [f.t_min().clone(), f.t_max().clone()] {
            let member = f.table_from_t(&t).unwrap();
            assert!(member.cells().iter().any(|c| c.is_zero()));
            assert!(!member.is_strictly_positive());
        }
        // Float mode keeps the endpoint zero exact as well.
        let float_family = CouplingFamily::new(MarginalPair::new(0.37_f64, 0.81).unwrap());
        let hi = float_family.table_from_t(float_family.t_max()).unwrap();
        assert!(hi.cells().iter().any(|c| **c == 0.0));
    }
}
