//! Independent brute-force verification engines in exact arithmetic.
//!
//! Nothing here shares a code path with the closed-form measures it checks:
//! conditionals are obtained by materializing the elements of a finite
//! uniform space and counting, pair counts by enumerating ordered pairs in
//! a double loop, concordance by summing all sixteen two-draw outcomes, and
//! rank by exact row reduction. [`exhaustive_sign_check`] sweeps every
//! strictly positive count table up to a total and confirms the sign
//! equivalences plus the full report verdict on each one.

use num_rational::BigRational;
use rayon::prelude::*;
use thiserror::Error;

use crate::report::{full_report, Verdict};
use crate::scalar::Scalar;
use crate::sign::SignPolicy;
use crate::table::{CountTable, ProbTable};

#[derive(Clone, Debug, Error, PartialEq)]
pub enum OracleError {
    #[error("conditioning class {class} is empty")]
    EmptyConditioningClass { class: &'static str },
    #[error("oracle requires an exact-rational table")]
    NotExact,
}

/// Which conditional comparison the pair counting certifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    AGivenB,
    BGivenA,
}

/// Favorable and unfavorable ordered-pair counts for one direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairCounts {
    pub favorable: u64,
    pub unfavorable: u64,
    pub direction: Direction,
}

/// Element labels of the finite uniform space, partitioned into the four
/// classes in the fixed order P, Q, R, S.
struct Elements {
    labels: Vec<u64>,
    a_bound: u64, // labels < a_bound lie in A (classes P, Q)
    p_bound: u64, // labels < p_bound lie in P
    r_bound: u64, // labels in [a_bound, r_bound) lie in R
}

impl Elements {
    fn new(c: &CountTable) -> Self {
        let total = c.total();
        Elements {
            labels: (0..total).collect(),
            a_bound: c.n_p + c.n_q,
            p_bound: c.n_p,
            r_bound: c.n_p + c.n_q + c.n_r,
        }
    }

    fn in_a(&self, label: u64) -> bool {
        label < self.a_bound
    }

    fn in_b(&self, label: u64) -> bool {
        label < self.p_bound || (label >= self.a_bound && label < self.r_bound)
    }
}

/// Counts favorable and unfavorable ordered pairs by explicit enumeration
/// over the materialized element lists. The closed-form identity
/// `(favorable, unfavorable) = (n_p n_s, n_r n_q)` is what callers assert;
/// the enumeration is the method.
pub fn pair_counts(c: &CountTable, direction: Direction) -> Result<PairCounts, OracleError> {
    let elements = Elements::new(c);
    let (first, second, first_name, second_name): (Vec<u64>, Vec<u64>, _, _) = match direction {
        Direction::AGivenB => (
            elements
                .labels
                .iter()
                .copied()
                .filter(|&e| elements.in_b(e))
                .collect(),
            elements
                .labels
                .iter()
                .copied()
                .filter(|&e| !elements.in_b(e))
                .collect(),
            "B",
            "not B",
        ),
        Direction::BGivenA => (
            elements
                .labels
                .iter()
                .copied()
                .filter(|&e| elements.in_a(e))
                .collect(),
            elements
                .labels
                .iter()
                .copied()
                .filter(|&e| !elements.in_a(e))
                .collect(),
            "A",
            "not A",
        ),
    };
    if first.is_empty() {
        return Err(OracleError::EmptyConditioningClass { class: first_name });
    }
    if second.is_empty() {
        return Err(OracleError::EmptyConditioningClass { class: second_name });
    }
    let favored = |e: u64| match direction {
        Direction::AGivenB => elements.in_a(e),
        Direction::BGivenA => elements.in_b(e),
    };
    let mut favorable = 0;
    let mut unfavorable = 0;
    for &u in &first {
        for &v in &second {
            if favored(u) && !favored(v) {
                favorable += 1;
            } else if !favored(u) && favored(v) {
                unfavorable += 1;
            }
        }
    }
    Ok(PairCounts {
        favorable,
        unfavorable,
        direction,
    })
}

/// Sums the probabilities of all sixteen ordered outcomes of two
/// independent draws, classifying each as concordant, discordant, or
/// neither. Must equal `(2ps, 2qr)`.
pub fn two_draw_enumeration<S: Scalar>(t: &ProbTable<S>) -> (S, S) {
    let atoms = [
        (true, true, t.p().clone()),
        (true, false, t.q().clone()),
        (false, true, t.r().clone()),
        (false, false, t.s().clone()),
    ];
    let mut concordant = S::zero();
    let mut discordant = S::zero();
    for (x1, y1, w1) in &atoms {
        for (x2, y2, w2) in &atoms {
            let weight = w1.clone() * w2.clone();
            let aligned = (*x1 && *y1 && !*x2 && !*y2) || (!*x1 && !*y1 && *x2 && *y2);
            let crossed = (*x1 && !*y1 && !*x2 && *y2) || (!*x1 && *y1 && *x2 && !*y2);
            if aligned {
                concordant = concordant + weight;
            } else if crossed {
                discordant = discordant + weight;
            }
        }
    }
    (concordant, discordant)
}

/// The four conditional probabilities of a finite uniform space, each
/// obtained by materializing, filtering, and counting elements.
#[derive(Clone, Debug, PartialEq)]
pub struct BruteForceConditionals {
    pub a_given_b: BigRational,
    pub a_given_not_b: BigRational,
    pub b_given_a: BigRational,
    pub b_given_not_a: BigRational,
}

pub fn brute_force_conditionals(c: &CountTable) -> Result<BruteForceConditionals, OracleError> {
    let elements = Elements::new(c);
    let conditional = |given: &dyn Fn(u64) -> bool,
                       target: &dyn Fn(u64) -> bool,
                       class: &'static str|
     -> Result<BigRational, OracleError> {
        let pool: Vec<u64> = elements
            .labels
            .iter()
            .copied()
            .filter(|&e| given(e))
            .collect();
        if pool.is_empty() {
            return Err(OracleError::EmptyConditioningClass { class });
        }
        let hits = pool.iter().filter(|&&e| target(e)).count() as u64;
        Ok(BigRational::from_count_ratio(hits, pool.len() as u64))
    };
    Ok(BruteForceConditionals {
        a_given_b: conditional(&|e| elements.in_b(e), &|e| elements.in_a(e), "B")?,
        a_given_not_b: conditional(&|e| !elements.in_b(e), &|e| elements.in_a(e), "not B")?,
        b_given_a: conditional(&|e| elements.in_a(e), &|e| elements.in_b(e), "A")?,
        b_given_not_a: conditional(&|e| !elements.in_a(e), &|e| elements.in_b(e), "not A")?,
    })
}

/// Rank of the cell matrix by exact row reduction; 1 exactly when the rows
/// are proportional, i.e. at independence.
pub fn rational_rank<S: Scalar>(t: &ProbTable<S>) -> Result<u8, OracleError> {
    if !S::EXACT {
        return Err(OracleError::NotExact);
    }
    let (p, q, r, s) = (t.p().clone(), t.q().clone(), t.r().clone(), t.s().clone());
    if !p.is_zero() {
        // Eliminate r below the pivot p; the residual bottom-right entry
        // decides the rank.
        let residual = s - r * (q / p);
        Ok(if residual.is_zero() { 1 } else { 2 })
    } else if !q.is_zero() {
        // First row is (0, q); the reduced matrix loses s and keeps r.
        Ok(if r.is_zero() { 1 } else { 2 })
    } else {
        // Zero first row: the rank is that of the remaining row, which is
        // nonzero because the cells sum to one.
        Ok(1)
    }
}

/// One offending table found by the sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepFailure {
    pub counts: CountTable,
    pub dissent: String,
}

/// Outcome of an exhaustive sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepSummary {
    pub n_max: u64,
    pub tables_checked: u64,
    pub failures: Vec<SweepFailure>,
}

/// Checks every count table with all four cells >= 1 and total at most
/// `n_max`, in lexicographic order over `(n_p, n_q, n_r, n_s)`.
///
/// For each table the three sign equivalences are verified in exact
/// arithmetic (conditional comparisons from element enumeration, ordered
/// pair counts from the double loop, and the determinant) together with
/// the full report verdict. Work is partitioned by `n_p` and merged in
/// order, so the summary is deterministic regardless of scheduling.
pub fn exhaustive_sign_check(n_max: u64) -> SweepSummary {
    if n_max < 4 {
        return SweepSummary {
            n_max,
            tables_checked: 0,
            failures: Vec::new(),
        };
    }
    let per_prefix: Vec<(u64, Vec<SweepFailure>)> = (1..=n_max - 3)
        .into_par_iter()
        .map(|n_p| {
            let mut checked = 0;
            let mut failures = Vec::new();
            for n_q in 1..=n_max - n_p - 2 {
                for n_r in 1..=n_max - n_p - n_q - 1 {
                    for n_s in 1..=n_max - n_p - n_q - n_r {
                        let counts = CountTable::new(n_p, n_q, n_r, n_s);
                        checked += 1;
                        if let Err(dissent) = check_single_table(&counts) {
                            failures.push(SweepFailure { counts, dissent });
                        }
                    }
                }
            }
            (checked, failures)
        })
        .collect();

    let mut tables_checked = 0;
    let mut failures = Vec::new();
    for (checked, mut shard_failures) in per_prefix {
        tables_checked += checked;
        failures.append(&mut shard_failures);
    }
    SweepSummary {
        n_max,
        tables_checked,
        failures,
    }
}

fn check_single_table(counts: &CountTable) -> Result<(), String> {
    let table = ProbTable::from_counts(counts).map_err(|e| e.to_string())?;

    let conditionals = brute_force_conditionals(counts).map_err(|e| e.to_string())?;
    let row_order = conditionals.a_given_b.cmp(&conditionals.a_given_not_b);
    let col_order = conditionals.b_given_a.cmp(&conditionals.b_given_not_a);
    let delta = crate::measures::delta(&table);
    let delta_order = delta.cmp(&Scalar::zero());
    if row_order != delta_order || col_order != delta_order {
        return Err(format!(
            "conditional orderings ({row_order:?}, {col_order:?}) disagree with delta ({delta_order:?})"
        ));
    }

    for direction in [Direction::AGivenB, Direction::BGivenA] {
        let pc = pair_counts(counts, direction).map_err(|e| e.to_string())?;
        let expected = (counts.n_p * counts.n_s, counts.n_q * counts.n_r);
        if (pc.favorable, pc.unfavorable) != expected {
            return Err(format!(
                "pair counts {:?} in {direction:?} differ from products {expected:?}",
                (pc.favorable, pc.unfavorable)
            ));
        }
        if pc.favorable.cmp(&pc.unfavorable) != delta_order {
            return Err(format!(
                "pair-count ordering in {direction:?} disagrees with delta ({delta_order:?})"
            ));
        }
    }

    match full_report(&table, &SignPolicy::Exact) {
        Ok(report) => match report.verdict {
            Verdict::Consistent => Ok(()),
            Verdict::Inconsistent(keys) => Err(format!("dissenting measures: {keys:?}")),
        },
        Err(e) => Err(e.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures;
    use crate::scalar::ratio;

    #[test]
    fn pair_counts_match_the_product_identity() {
        let c = CountTable::new(4, 1, 2, 3);
        let ab = pair_counts(&c, Direction::AGivenB).unwrap();
        assert_eq!((ab.favorable, ab.unfavorable), (12, 2));
        let ba = pair_counts(&c, Direction::BGivenA).unwrap();
        assert_eq!((ba.favorable, ba.unfavorable), (12, 2));

        let uniform = CountTable::new(1, 1, 1, 1);
        for direction in [Direction::AGivenB, Direction::BGivenA] {
            let pc = pair_counts(&uniform, direction).unwrap();
            assert_eq!((pc.favorable, pc.unfavorable), (1, 1));
        }
    }

    #[test]
    fn pair_counts_reject_empty_conditioning_classes() {
        // No elements outside B.
        let c = CountTable::new(2, 0, 3, 0);
        assert_eq!(
            pair_counts(&c, Direction::AGivenB),
            Err(OracleError::EmptyConditioningClass { class: "not B" })
        );
    }

    #[test]
    fn two_draw_enumeration_matches_closed_forms() {
        let t1 = ProbTable::from_counts(&CountTable::new(4, 1, 2, 3)).unwrap();
        assert_eq!(two_draw_enumeration(&t1), (ratio(6, 25), ratio(1, 25)));

        let tu = ProbTable::from_probs(0.25_f64, 0.25, 0.25, 0.25).unwrap();
        assert_eq!(two_draw_enumeration(&tu), (0.125, 0.125));

        let indep =
            ProbTable::from_probs(ratio(3, 10), ratio(1, 5), ratio(3, 10), ratio(1, 5)).unwrap();
        let (conc, disc) = two_draw_enumeration(&indep);
        assert_eq!(conc, disc);
        assert_eq!(conc, ratio(3, 25));
    }

    #[test]
    fn brute_force_conditionals_by_element_counting() {
        let got = brute_force_conditionals(&CountTable::new(4, 1, 2, 3)).unwrap();
        assert_eq!(got.a_given_b, ratio(4, 6));
        assert_eq!(got.a_given_not_b, ratio(1, 4));
        assert_eq!(got.b_given_a, ratio(4, 5));
        assert_eq!(got.b_given_not_a, ratio(2, 5));

        let uniform = brute_force_conditionals(&CountTable::new(1, 1, 1, 1)).unwrap();
        assert_eq!(uniform.a_given_b, ratio(1, 2));
        assert_eq!(uniform.b_given_not_a, ratio(1, 2));

        // Same law, two computation paths.
        let table = ProbTable::from_counts(&CountTable::new(4, 1, 2, 3)).unwrap();
        let (d_a, d_b) = measures::conditional_diffs(&table);
        assert_eq!(got.a_given_b - got.a_given_not_b, d_a);
        assert_eq!(got.b_given_a - got.b_given_not_a, d_b);
    }

    #[test]
    fn brute_force_requires_nonempty_classes() {
        assert_eq!(
            brute_force_conditionals(&CountTable::new(2, 3, 0, 0)),
            Err(OracleError::EmptyConditioningClass { class: "not A" })
        );
    }

    #[test]
    fn rational_rank_by_row_reduction() {
        let t1 = ProbTable::from_counts(&CountTable::new(4, 1, 2, 3)).unwrap();
        assert_eq!(rational_rank(&t1), Ok(2));
        let tu = ProbTable::from_counts(&CountTable::new(1, 1, 1, 1)).unwrap();
        assert_eq!(rational_rank(&tu), Ok(1));
        let indep =
            ProbTable::from_probs(ratio(3, 10), ratio(1, 5), ratio(3, 10), ratio(1, 5)).unwrap();
        assert_eq!(rational_rank(&indep), Ok(1));
        let float_table = ProbTable::from_probs(0.4_f64, 0.1, 0.2, 0.3).unwrap();
        assert_eq!(rational_rank(&float_table), Err(OracleError::NotExact));
    }

    #[test]
    fn rank_cross_checks_the_measure() {
        for counts in [
            CountTable::new(4, 1, 2, 3),
            CountTable::new(1, 1, 1, 1),
            CountTable::new(3, 2, 3, 2),
            CountTable::new(1, 5, 2, 9),
        ] {
            let t = ProbTable::from_counts(&counts).unwrap();
            assert_eq!(
                rational_rank(&t).unwrap(),
                measures::rank_of_m(&t, &SignPolicy::Exact).unwrap()
            );
        }
    }

    #[test]
    fn small_sweeps_count_and_pass() {
        let s4 = exhaustive_sign_check(4);
        assert_eq!((s4.tables_checked, s4.failures.len()), (1, 0));
        let s8 = exhaustive_sign_check(8);
        assert_eq!((s8.tables_checked, s8.failures.len()), (70, 0));
        let s12 = exhaustive_sign_check(12);
        assert_eq!((s12.tables_checked, s12.failures.len()), (495, 0));
        let below = exhaustive_sign_check(3);
        assert_eq!(below.tables_checked, 0);
    }
}
