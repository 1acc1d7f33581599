//! Closed-form association measures on a 2x2 table.
//!
//! Every measure here is a different coordinate on the same one-dimensional
//! family: once the marginals are fixed, a single signed parameter governs
//! them all, and the report module verifies that their signs agree.
//!
//! Difference-scale measures (`delta`, conditional differences, coupling
//! parameter, slopes, concordance excess, mismatch excess) are computed in
//! the table's own scalar carrier and are exact in rational mode. Ratio
//! measures (odds ratio, Bayes factor, likelihood ratios) live on the
//! extended scale with signed infinities at boundary tables. Log-scale
//! measures (log odds ratio, Ising parameters, PMI, mutual information,
//! logistic slope) are float-valued in both modes; all logarithms are
//! natural and reported in nats.

use std::cmp::Ordering;

use thiserror::Error;

use crate::scalar::{ExtScalar, Scalar};
use crate::sign::{classify_scalar, Reference, Sign, SignError, SignPolicy};
use crate::table::ProbTable;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum MeasureError {
    #[error("measure requires a strictly positive table")]
    ZeroCell,
    #[error("indeterminate form (0/0)")]
    Indeterminate,
}

fn cells<S: Scalar>(t: &ProbTable<S>) -> (S, S, S, S) {
    (t.p().clone(), t.q().clone(), t.r().clone(), t.s().clone())
}

/// The determinant `delta = ps - qr` of the cell matrix; equal to
/// `Cov(1_A, 1_B)` and to the coupling parameter.
pub fn delta<S: Scalar>(t: &ProbTable<S>) -> S {
    let (p, q, r, s) = cells(t);
    p * s - q * r
}

/// The two conditional-probability differences
/// `(P(A|B) - P(A|!B), P(B|A) - P(B|!A))`, computed as the shared
/// numerator `delta` over the products of complementary marginals.
pub fn conditional_diffs<S: Scalar>(t: &ProbTable<S>) -> (S, S) {
    let (p, q, r, s) = cells(t);
    let d = delta(t);
    let d_a = d.clone() / ((p.clone() + r.clone()) * (q.clone() + s.clone()));
    let d_b = d / ((p + q) * (r + s));
    (d_a, d_b)
}

/// The coupling parameter `t = p - alpha*beta`, the excess of `P(A and B)`
/// over its independence value. Numerically identical to [`delta`].
pub fn coupling_t<S: Scalar>(t: &ProbTable<S>) -> S {
    let m = t.marginals();
    t.p().clone() - m.alpha().clone() * m.beta().clone()
}

/// The normalized interaction `theta = t / (alpha(1-alpha) beta(1-beta))`.
pub fn theta<S: Scalar>(t: &ProbTable<S>) -> S {
    let (alpha, alpha_c, beta, beta_c) = t.marginals().with_complements();
    coupling_t(t) / ((alpha * alpha_c) * (beta * beta_c))
}

/// Value of the phi coefficient.
///
/// `Scalar` when the square root of the marginal variance product is
/// representable in the carrier (always for floats, perfect squares for
/// rationals); otherwise a float approximation. Sign classification never
/// relies on the root: it is decided from `delta`.
#[derive(Clone, Debug, PartialEq)]
pub enum PhiValue<S> {
    Scalar(S),
    Approx(f64),
}

impl<S: Scalar> PhiValue<S> {
    pub fn to_f64(&self) -> f64 {
        match self {
            PhiValue::Scalar(v) => v.to_f64(),
            PhiValue::Approx(v) => *v,
        }
    }
}

/// The phi coefficient (Pearson correlation of the indicators, equal to the
/// canonical correlation of the binary pair):
/// `phi = delta / sqrt(alpha(1-alpha) beta(1-beta))`.
pub fn phi<S: Scalar>(t: &ProbTable<S>) -> PhiValue<S> {
    let (alpha, alpha_c, beta, beta_c) = t.marginals().with_complements();
    let radicand = (alpha * alpha_c) * (beta * beta_c);
    let d = delta(t);
    match radicand.sqrt_representable() {
        Some(root) => PhiValue::Scalar(d / root),
        None => PhiValue::Approx(d.to_f64() / radicand.to_f64().sqrt()),
    }
}

/// The odds ratio `ps / qr`, with `+inf` when `qr = 0` and `ps > 0`.
pub fn odds_ratio<S: Scalar>(t: &ProbTable<S>) -> Result<ExtScalar<S>, MeasureError> {
    let (p, q, r, s) = cells(t);
    ExtScalar::from_ratio(p * s, q * r).ok_or(MeasureError::Indeterminate)
}

/// The log odds ratio, computed as the mixed discrete derivative of the
/// log-mass potential, `log p + log s - log q - log r`, rather than as
/// `log(odds_ratio)`; the two agree within float rounding on strictly
/// positive tables.
pub fn log_odds_ratio<S: Scalar>(t: &ProbTable<S>) -> Result<f64, MeasureError> {
    let (p, q, r, s) = cells(t);
    if (p.clone() * s.clone()).is_zero() && (q.clone() * r.clone()).is_zero() {
        return Err(MeasureError::Indeterminate);
    }
    let (lp, lq, lr, ls) = (
        p.to_f64().ln(),
        q.to_f64().ln(),
        r.to_f64().ln(),
        s.to_f64().ln(),
    );
    // Grouped so that transposition (q <-> r) and complementation reuse the
    // same partial sums and stay bit-identical.
    Ok((lp + ls) - (lq + lr))
}

/// Parameters of the Gibbs form on spin variables `u, v in {-1, +1}`:
/// `P(u, v) = exp(h_a u + h_b v + gamma uv - log_z)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IsingParams {
    pub h_a: f64,
    pub h_b: f64,
    pub gamma: f64,
    pub log_z: f64,
}

impl IsingParams {
    /// Mass the Gibbs form assigns to the spin point `(u, v)`.
    pub fn gibbs_mass(&self, u: i8, v: i8) -> f64 {
        let (u, v) = (f64::from(u), f64::from(v));
        (self.h_a * u + self.h_b * v + self.gamma * (u * v) - self.log_z).exp()
    }
}

/// Fits the two-spin Gibbs form exactly:
/// `gamma = (1/4) log(ps/qr)`, `h_a = (1/4) log(pq/rs)`,
/// `h_b = (1/4) log(pr/qs)`, `log_z = -(1/4) log(pqrs)`.
pub fn ising_params<S: Scalar>(t: &ProbTable<S>) -> Result<IsingParams, MeasureError> {
    if !t.is_strictly_positive() {
        return Err(MeasureError::ZeroCell);
    }
    let (p, q, r, s) = cells(t);
    let (lp, lq, lr, ls) = (
        p.to_f64().ln(),
        q.to_f64().ln(),
        r.to_f64().ln(),
        s.to_f64().ln(),
    );
    Ok(IsingParams {
        h_a: 0.25 * ((lp + lq) - (lr + ls)),
        h_b: 0.25 * ((lp + lr) - (lq + ls)),
        gamma: 0.25 * ((lp + ls) - (lq + lr)),
        log_z: -0.25 * ((lp + ls) + (lq + lr)),
    })
}

/// Coefficients of the spin-encoded mass function in the Walsh basis
/// `{1, u, v, uv}`.
#[derive(Clone, Debug, PartialEq)]
pub struct WalshCoefficients<S> {
    pub c_empty: S,
    pub c_u: S,
    pub c_v: S,
    pub c_uv: S,
}

impl<S: Scalar> WalshCoefficients<S> {
    /// Evaluates the expansion at a spin point; reproduces the cell mass
    /// exactly in rational mode.
    pub fn eval(&self, u: i8, v: i8) -> S {
        let (u, v) = (S::from_int(i64::from(u)), S::from_int(i64::from(v)));
        self.c_empty.clone()
            + self.c_u.clone() * u.clone()
            + self.c_v.clone() * v.clone()
            + self.c_uv.clone() * (u * v)
    }
}

/// `E[UV] = 4p - 2 alpha - 2 beta + 1` for the spin encodings.
pub fn spin_product_mean<S: Scalar>(t: &ProbTable<S>) -> S {
    let m = t.marginals();
    let two = S::from_int(2);
    S::from_int(4) * t.p().clone() - two.clone() * m.alpha().clone() - two * m.beta().clone()
        + S::one()
}

/// The affine form of the same moment,
/// `E[UV] = (2 alpha - 1)(2 beta - 1) + 4 delta`.
pub fn spin_product_mean_affine<S: Scalar>(t: &ProbTable<S>) -> S {
    let m = t.marginals();
    let two = S::from_int(2);
    (two.clone() * m.alpha().clone() - S::one()) * (two * m.beta().clone() - S::one())
        + S::from_int(4) * delta(t)
}

/// Walsh coefficients: `c_empty = 1/4`, `c_u = E[U]/4`, `c_v = E[V]/4`,
/// `c_uv = E[UV]/4`.
pub fn walsh_coefficients<S: Scalar>(t: &ProbTable<S>) -> WalshCoefficients<S> {
    let m = t.marginals();
    let quarter = S::one() / S::from_int(4);
    let two = S::from_int(2);
    WalshCoefficients {
        c_empty: quarter.clone(),
        c_u: quarter.clone() * (two.clone() * m.alpha().clone() - S::one()),
        c_v: quarter.clone() * (two * m.beta().clone() - S::one()),
        c_uv: quarter * spin_product_mean(t),
    }
}

/// The interaction coefficient centered at independence,
/// `c_uv - (1/4)(2 alpha - 1)(2 beta - 1)`; an independent route to the
/// coupling parameter.
pub fn walsh_interaction_excess<S: Scalar>(t: &ProbTable<S>) -> S {
    let m = t.marginals();
    let quarter = S::one() / S::from_int(4);
    let two = S::from_int(2);
    let marginal_part =
        (two.clone() * m.alpha().clone() - S::one()) * (two * m.beta().clone() - S::one());
    quarter.clone() * spin_product_mean(t) - quarter * marginal_part
}

fn atom<S: Scalar>(t: &ProbTable<S>, a: bool, b: bool) -> (S, S, S) {
    let (p, q, r, s) = cells(t);
    let level_a = if a {
        p.clone() + q.clone()
    } else {
        r.clone() + s.clone()
    };
    let level_b = if b {
        p.clone() + r.clone()
    } else {
        q.clone() + s.clone()
    };
    let cell = match (a, b) {
        (true, true) => p,
        (true, false) => q,
        (false, true) => r,
        (false, false) => s,
    };
    (cell, level_a, level_b)
}

/// Pointwise mutual information of the outcome pair `(A = a, B = b)`:
/// `log( P(A=a, B=b) / (P(A=a) P(B=b)) )` in nats; `-inf` when the cell has
/// no mass.
pub fn pmi<S: Scalar>(t: &ProbTable<S>, a: bool, b: bool) -> f64 {
    let (cell, level_a, level_b) = atom(t, a, b);
    (cell / (level_a * level_b)).to_f64().ln()
}

/// Exact sign of a PMI atom, decided by comparing the cell with the product
/// of its level marginals in the table's own carrier.
pub fn pmi_ordering<S: Scalar>(t: &ProbTable<S>, a: bool, b: bool) -> Option<Ordering> {
    let (cell, level_a, level_b) = atom(t, a, b);
    cell.partial_cmp(&(level_a * level_b))
}

/// Mutual information `I(A; B) = sum over atoms of cell * pmi(atom)` in
/// nats, with the `0 log 0 = 0` convention. Nonnegative; zero exactly at
/// independence.
pub fn mutual_information<S: Scalar>(t: &ProbTable<S>) -> f64 {
    let term = |a: bool, b: bool| -> f64 {
        let (cell, level_a, level_b) = atom(t, a, b);
        if cell.is_zero() {
            return 0.0;
        }
        cell.to_f64() * (cell / (level_a * level_b)).to_f64().ln()
    };
    // Concordant and discordant atoms are paired so the sum is invariant
    // under transposition and complementation at the bit level.
    (term(true, true) + term(false, false)) + (term(true, false) + term(false, true))
}

/// Least-squares regression slopes `(Cov/Var(Y), Cov/Var(X))`, i.e.
/// `(delta / beta(1-beta), delta / alpha(1-alpha))`; the first equals the
/// conditional difference for A, the second the one for B.
pub fn regression_slopes<S: Scalar>(t: &ProbTable<S>) -> (S, S) {
    let (alpha, alpha_c, beta, beta_c) = t.marginals().with_complements();
    let d = delta(t);
    (d.clone() / (beta * beta_c), d / (alpha * alpha_c))
}

/// Probabilities that two independent draws form a concordant or discordant
/// pair: `(2ps, 2qr)`.
pub fn concordance<S: Scalar>(t: &ProbTable<S>) -> (S, S) {
    let (p, q, r, s) = cells(t);
    let two = S::from_int(2);
    (two.clone() * p * s, two * q * r)
}

/// How much less Hamming mismatch the joint law has than the independence
/// coupling: `(alpha(1-beta) + (1-alpha)beta) - (q + r)`; equals twice the
/// coupling parameter.
pub fn mismatch_excess<S: Scalar>(t: &ProbTable<S>) -> S {
    let (alpha, alpha_c, beta, beta_c) = t.marginals().with_complements();
    (alpha * beta_c + alpha_c * beta) - (t.q().clone() + t.r().clone())
}

/// The Bayes factor `P(B|A) / P(B|!A)`; exceeds 1 exactly when observing A
/// raises the odds of B.
pub fn bayes_factor<S: Scalar>(t: &ProbTable<S>) -> ExtScalar<S> {
    let (p, q, r, s) = cells(t);
    let num = p.clone() / (p + q);
    let den = r.clone() / (r + s);
    ExtScalar::from_ratio(num, den).expect("nondegenerate marginals preclude 0/0 Bayes factors")
}

/// The likelihood ratios `(Lambda(0), Lambda(1))` of the binary observation
/// `V` for discriminating A from not-A:
/// `Lambda(v) = P(V=v | A) / P(V=v | !A)`. Their quotient
/// `Lambda(1)/Lambda(0)` is the odds ratio.
pub fn likelihood_ratios<S: Scalar>(t: &ProbTable<S>) -> (ExtScalar<S>, ExtScalar<S>) {
    let (p, q, r, s) = cells(t);
    let alpha = p.clone() + q.clone();
    let alpha_c = r.clone() + s.clone();
    let l0 = ExtScalar::from_ratio(q / alpha.clone(), s / alpha_c.clone())
        .expect("nondegenerate marginals preclude 0/0 likelihood ratios");
    let l1 = ExtScalar::from_ratio(p / alpha, r / alpha_c)
        .expect("nondegenerate marginals preclude 0/0 likelihood ratios");
    (l0, l1)
}

/// Slope of the saturated logistic regression of `1_A` on `1_B`,
/// `logit P(X=1|Y=1) - logit P(X=1|Y=0) = log(p/r) - log(q/s)`, in closed
/// form. Equals the log odds ratio; requires strict positivity.
pub fn logistic_slope<S: Scalar>(t: &ProbTable<S>) -> Result<f64, MeasureError> {
    if !t.is_strictly_positive() {
        return Err(MeasureError::ZeroCell);
    }
    let (p, q, r, s) = cells(t);
    Ok((p / r).to_f64().ln() - (q / s).to_f64().ln())
}

/// Total positivity of order 2: the single 2x2 minor is nonnegative,
/// `ps >= qr`.
pub fn tp2<S: Scalar>(t: &ProbTable<S>) -> bool {
    let (p, q, r, s) = cells(t);
    p * s >= q * r
}

/// Stochastic dominance of the conditional laws on `{0, 1}`:
/// row-wise compares `L(B|A)` against `L(B|!A)`, column-wise `L(A|B)`
/// against `L(A|!B)`. The two coincide.
pub fn stochastic_dominance<S: Scalar>(
    t: &ProbTable<S>,
    policy: &SignPolicy,
) -> Result<(Sign, Sign), SignError> {
    let (d_a, d_b) = conditional_diffs(t);
    let rowwise = classify_scalar(&d_b, policy, Reference::Zero)?;
    let columnwise = classify_scalar(&d_a, policy, Reference::Zero)?;
    Ok((rowwise, columnwise))
}

/// Rank of the cell matrix under the policy's zero test: 1 exactly when
/// `delta` classifies as zero (independence), else 2.
pub fn rank_of_m<S: Scalar>(t: &ProbTable<S>, policy: &SignPolicy) -> Result<u8, SignError> {
    let d = delta(t);
    let sign = classify_scalar(&d, policy, Reference::Zero)?;
    Ok(if sign == Sign::Zero { 1 } else { 2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;
    use crate::table::CountTable;
    use num_rational::BigRational;

    const TOL: f64 = 1e-12;

    fn t1() -> ProbTable<f64> {
        ProbTable::from_probs(0.4, 0.1, 0.2, 0.3).unwrap()
    }

    fn t1_exact() -> ProbTable<BigRational> {
        ProbTable::<BigRational>::from_counts(&CountTable::new(4, 1, 2, 3)).unwrap()
    }

    fn tu() -> ProbTable<f64> {
        ProbTable::from_probs(0.25, 0.25, 0.25, 0.25).unwrap()
    }

    fn indep() -> ProbTable<BigRational> {
        ProbTable::from_probs(ratio(3, 10), ratio(1, 5), ratio(3, 10), ratio(1, 5)).unwrap()
    }

    #[test]
    fn delta_of_reference_tables() {
        assert_eq!(delta(&t1_exact()), ratio(1, 10));
        assert_eq!(delta(&tu()), 0.0);
        let neg = ProbTable::from_probs(0.1, 0.4, 0.3, 0.2).unwrap();
        assert!((delta(&neg) + 0.10).abs() < TOL);
    }

    #[test]
    fn conditional_diffs_share_the_numerator() {
        let (d_a, d_b) = conditional_diffs(&t1_exact());
        assert_eq!(d_a, ratio(5, 12));
        assert_eq!(d_b, ratio(2, 5));
        let (u_a, u_b) = conditional_diffs(&tu());
        assert_eq!((u_a, u_b), (0.0, 0.0));
        let (i_a, i_b) = conditional_diffs(&indep());
        assert_eq!((i_a, i_b), (ratio(0, 1), ratio(0, 1)));
    }

    #[test]
    fn coupling_parameter_equals_delta() {
        assert_eq!(coupling_t(&t1_exact()), ratio(1, 10));
        assert_eq!(coupling_t(&indep()), ratio(0, 1));
        assert_eq!(coupling_t(&tu()), 0.0);
    }

    #[test]
    fn theta_normalizes_the_coupling() {
        assert_eq!(theta(&t1_exact()), ratio(5, 3));
        assert_eq!(theta(&tu()), 0.0);
        // theta * alpha(1-alpha) reproduces the conditional difference.
        let back = theta(&t1_exact()) * ratio(1, 4);
        assert_eq!(back, ratio(5, 12));
    }

    #[test]
    fn phi_matches_the_defining_formula() {
        match phi(&t1()) {
            PhiValue::Scalar(v) => assert!((v - 0.1 / 0.06_f64.sqrt()).abs() < TOL),
            PhiValue::Approx(_) => panic!("float mode always yields a scalar"),
        }
        // 3/50 is not a perfect square, so exact mode annotates the value as
        // approximate.
        match phi(&t1_exact()) {
            PhiValue::Approx(v) => assert!((v - 0.4082482904638631).abs() < TOL),
            PhiValue::Scalar(_) => panic!("radicand is not a perfect square"),
        }
        // A perfectly aligned table has an exact unit correlation.
        let aligned =
            ProbTable::from_probs(ratio(1, 2), ratio(0, 1), ratio(0, 1), ratio(1, 2)).unwrap();
        assert_eq!(phi(&aligned), PhiValue::Scalar(ratio(1, 1)));
    }

    #[test]
    fn odds_ratio_of_reference_tables() {
        assert_eq!(
            odds_ratio(&t1_exact()).unwrap(),
            ExtScalar::Finite(ratio(6, 1))
        );
        assert_eq!(odds_ratio(&tu()).unwrap(), ExtScalar::Finite(1.0));
        let boundary = ProbTable::from_probs(0.5, 0.2, 0.0, 0.3).unwrap();
        assert_eq!(odds_ratio(&boundary).unwrap(), ExtScalar::PosInf);
    }

    #[test]
    fn odds_ratio_indeterminate_on_double_diagonal_zeros() {
        // Such a table has a degenerate marginal and cannot be built through
        // the validated constructors; the error path still holds the contract.
        let t = ProbTable::from_cells_unchecked(0.0, 0.0, 0.5, 0.5);
        assert_eq!(odds_ratio(&t), Err(MeasureError::Indeterminate));
        assert_eq!(log_odds_ratio(&t), Err(MeasureError::Indeterminate));
    }

    #[test]
    fn log_odds_ratio_is_the_mixed_discrete_derivative() {
        let v = log_odds_ratio(&t1()).unwrap();
        assert!((v - 6.0_f64.ln()).abs() < TOL);
        assert_eq!(log_odds_ratio(&tu()).unwrap(), 0.0);
        assert_eq!(
            log_odds_ratio(&t1().transpose()).unwrap(),
            log_odds_ratio(&t1()).unwrap()
        );
        let boundary = ProbTable::from_probs(0.5, 0.2, 0.0, 0.3).unwrap();
        assert_eq!(log_odds_ratio(&boundary).unwrap(), f64::INFINITY);
    }

    #[test]
    fn ising_parameters_of_t1() {
        let params = ising_params(&t1()).unwrap();
        assert!((params.gamma - 6.0_f64.ln() / 4.0).abs() < TOL);
        assert!((params.h_a - (2.0_f64 / 3.0).ln() / 4.0).abs() < TOL);
        assert!((params.h_b - (8.0_f64 / 3.0).ln() / 4.0).abs() < TOL);
        for (cell, (u, v)) in t1()
            .cells()
            .iter()
            .zip([(1, 1), (1, -1), (-1, 1), (-1, -1)])
        {
            assert!((params.gibbs_mass(u, v) - **cell).abs() < 1e-10);
        }
    }

    #[test]
    fn ising_uniform_table_has_no_fields() {
        let params = ising_params(&tu()).unwrap();
        assert_eq!(params.h_a, 0.0);
        assert_eq!(params.h_b, 0.0);
        assert_eq!(params.gamma, 0.0);
        assert!((params.log_z - 4.0_f64.ln()).abs() < TOL);
    }

    #[test]
    fn ising_requires_strict_positivity() {
        let boundary = ProbTable::from_probs(0.5, 0.2, 0.0, 0.3).unwrap();
        assert_eq!(ising_params(&boundary), Err(MeasureError::ZeroCell));
        assert_eq!(logistic_slope(&boundary), Err(MeasureError::ZeroCell));
    }

    #[test]
    fn walsh_expansion_reproduces_the_cells_exactly() {
        let t = t1_exact();
        let w = walsh_coefficients(&t);
        assert_eq!(w.c_empty, ratio(1, 4));
        assert_eq!(w.c_uv, ratio(1, 10));
        assert_eq!(spin_product_mean(&t), ratio(2, 5));
        assert_eq!(spin_product_mean(&t), spin_product_mean_affine(&t));
        for (cell, (u, v)) in t.cells().iter().zip([(1, 1), (1, -1), (-1, 1), (-1, -1)]) {
            assert_eq!(&w.eval(u, v), *cell);
        }
        let wu = walsh_coefficients(&tu());
        assert_eq!((wu.c_empty, wu.c_u, wu.c_v, wu.c_uv), (0.25, 0.0, 0.0, 0.0));
        assert_eq!(walsh_interaction_excess(&indep()), ratio(0, 1));
        assert_eq!(walsh_interaction_excess(&t1_exact()), ratio(1, 10));
    }

    #[test]
    fn pmi_atoms_of_t1() {
        assert!((pmi(&t1(), true, true) - (4.0_f64 / 3.0).ln()).abs() < TOL);
        assert!((pmi(&t1(), true, false) + 2.0_f64.ln()).abs() < TOL);
        for a in [false, true] {
            for b in [false, true] {
                assert_eq!(pmi(&tu(), a, b), 0.0);
            }
        }
        assert_eq!(
            pmi_ordering(&t1_exact(), true, true),
            Some(Ordering::Greater)
        );
        assert_eq!(pmi_ordering(&t1_exact(), true, false), Some(Ordering::Less));
        assert_eq!(pmi_ordering(&indep(), false, true), Some(Ordering::Equal));
    }

    #[test]
    fn pmi_of_an_empty_cell_is_negative_infinity() {
        let boundary = ProbTable::from_probs(0.5, 0.2, 0.0, 0.3).unwrap();
        assert_eq!(pmi(&boundary, false, true), f64::NEG_INFINITY);
    }

    #[test]
    fn mutual_information_of_reference_tables() {
        // Frozen against the independent entropy route
        // I = H(X) + H(Y) - H(X, Y).
        let h = |probs: &[f64]| -> f64 {
            probs
                .iter()
                .filter(|x| **x > 0.0)
                .map(|x| -x * x.ln())
                .sum()
        };
        let expected = h(&[0.5, 0.5]) + h(&[0.6, 0.4]) - h(&[0.4, 0.1, 0.2, 0.3]);
        assert!((mutual_information(&t1()) - expected).abs() < TOL);
        assert!((mutual_information(&t1()) - 0.08630462173553427).abs() < TOL);
        assert_eq!(mutual_information(&tu()), 0.0);
        assert_eq!(mutual_information(&indep()), 0.0);
    }

    #[test]
    fn regression_slopes_match_conditional_diffs() {
        let t = t1_exact();
        let (b_xy, b_yx) = regression_slopes(&t);
        let (d_a, d_b) = conditional_diffs(&t);
        assert_eq!(b_xy, d_a);
        assert_eq!(b_yx, d_b);
        assert_eq!(regression_slopes(&tu()), (0.0, 0.0));
    }

    #[test]
    fn concordance_and_mismatch_of_t1() {
        assert_eq!(concordance(&t1_exact()), (ratio(6, 25), ratio(1, 25)));
        assert_eq!(concordance(&tu()), (0.125, 0.125));
        assert_eq!(mismatch_excess(&t1_exact()), ratio(1, 5));
        assert_eq!(mismatch_excess(&tu()), 0.0);
        let neg = ProbTable::from_probs(0.1, 0.4, 0.3, 0.2).unwrap();
        assert!((mismatch_excess(&neg) + 0.2).abs() < TOL);
    }

    #[test]
    fn bayes_factor_and_likelihood_ratios_of_t1() {
        assert_eq!(bayes_factor(&t1_exact()), ExtScalar::Finite(ratio(2, 1)));
        assert_eq!(bayes_factor(&tu()), ExtScalar::Finite(1.0));
        let boundary = ProbTable::from_probs(0.5, 0.2, 0.0, 0.3).unwrap();
        assert_eq!(bayes_factor(&boundary), ExtScalar::PosInf);

        let (l0, l1) = likelihood_ratios(&t1_exact());
        assert_eq!(l0, ExtScalar::Finite(ratio(1, 3)));
        assert_eq!(l1, ExtScalar::Finite(ratio(2, 1)));
        let quotient = l1.checked_div(&l0).unwrap();
        assert_eq!(quotient, ExtScalar::Finite(ratio(6, 1)));
        assert!(l1 > l0);
        let (u0, u1) = likelihood_ratios(&tu());
        assert_eq!((u0, u1), (ExtScalar::Finite(1.0), ExtScalar::Finite(1.0)));
    }

    #[test]
    fn logistic_slope_is_the_log_odds_ratio() {
        let v = logistic_slope(&t1()).unwrap();
        assert!((v - 6.0_f64.ln()).abs() < TOL);
        assert_eq!(logistic_slope(&tu()).unwrap(), 0.0);
        let transposed = logistic_slope(&t1().transpose()).unwrap();
        assert!((transposed - v).abs() < TOL);
    }

    #[test]
    fn tp2_is_the_minor_test() {
        assert!(tp2(&t1()));
        assert!(tp2(&tu()));
        assert!(!tp2(&ProbTable::from_probs(0.1, 0.4, 0.3, 0.2).unwrap()));
    }

    #[test]
    fn stochastic_dominance_signs() {
        let policy = SignPolicy::Exact;
        assert_eq!(
            stochastic_dominance(&t1_exact(), &policy).unwrap(),
            (Sign::Positive, Sign::Positive)
        );
        assert_eq!(
            stochastic_dominance(&indep(), &policy).unwrap(),
            (Sign::Zero, Sign::Zero)
        );
        let neg =
            ProbTable::from_probs(ratio(1, 10), ratio(2, 5), ratio(3, 10), ratio(1, 5)).unwrap();
        assert_eq!(
            stochastic_dominance(&neg, &policy).unwrap(),
            (Sign::Negative, Sign::Negative)
        );
    }

    #[test]
    fn rank_distinguishes_independence() {
        assert_eq!(rank_of_m(&t1_exact(), &SignPolicy::Exact).unwrap(), 2);
        assert_eq!(rank_of_m(&indep(), &SignPolicy::Exact).unwrap(), 1);
        assert_eq!(rank_of_m(&tu(), &SignPolicy::float_default()).unwrap(), 1);
    }
}
