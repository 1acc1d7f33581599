//! Seeded sampling from a table and statistical cross-checks.
//!
//! The random source is ChaCha12 (`rand_chacha`), seeded from a 64-bit
//! value; it is deterministic across platforms and passes the standard
//! empirical-randomness batteries. Draws use inverse-CDF over the four
//! cells in the fixed order `(p, q, r, s)`. Estimators split the seed into
//! a fixed number of per-shard streams and merge counts in shard order, so
//! estimates are bit-identical for a given `(table, n, seed)` regardless of
//! thread scheduling.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::scalar::Scalar;
use crate::table::ProbTable;

/// Fixed shard count for parallel estimation; part of the deterministic
/// output contract.
pub const SHARDS: u64 = 8;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum MonteCarloError {
    #[error("need at least {min} draws")]
    TooFewSamples { min: u64 },
}

/// A Monte Carlo estimate with its standard error and provenance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SampleEstimate {
    pub estimate: f64,
    pub std_error: f64,
    pub n: u64,
    pub seed: u64,
}

/// Cumulative cell thresholds for inverse-CDF sampling.
#[derive(Clone, Copy, Debug)]
struct Thresholds {
    c_p: f64,
    c_q: f64,
    c_r: f64,
}

impl Thresholds {
    fn new<S: Scalar>(t: &ProbTable<S>) -> Self {
        let p = t.p().to_f64();
        let q = t.q().to_f64();
        let r = t.r().to_f64();
        Thresholds {
            c_p: p,
            c_q: p + q,
            c_r: p + q + r,
        }
    }

    fn draw(&self, rng: &mut ChaCha12Rng) -> (bool, bool) {
        let u: f64 = rng.random();
        if u < self.c_p {
            (true, true)
        } else if u < self.c_q {
            (true, false)
        } else if u < self.c_r {
            (false, true)
        } else {
            (false, false)
        }
    }
}

/// Deterministic stream of i.i.d. `(1_A, 1_B)` draws.
pub struct SamplePairs {
    rng: ChaCha12Rng,
    thresholds: Thresholds,
    remaining: u64,
}

impl Iterator for SamplePairs {
    type Item = (bool, bool);

    fn next(&mut self) -> Option<(bool, bool)> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        Some(self.thresholds.draw(&mut self.rng))
    }
}

fn stream_rng(seed: u64, stream: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// `n >= 1` i.i.d. draws from the table, reproducible from the seed.
pub fn sample_pairs<S: Scalar>(
    t: &ProbTable<S>,
    n: u64,
    seed: u64,
) -> Result<SamplePairs, MonteCarloError> {
    if n < 1 {
        return Err(MonteCarloError::TooFewSamples { min: 1 });
    }
    Ok(SamplePairs {
        rng: stream_rng(seed, 0),
        thresholds: Thresholds::new(t),
        remaining: n,
    })
}

/// Splits `total` units across the fixed shards.
fn shard_sizes(total: u64) -> Vec<u64> {
    let base = total / SHARDS;
    let remainder = total % SHARDS;
    (0..SHARDS)
        .map(|k| base + u64::from(k < remainder))
        .collect()
}

/// Empirical cell counts `(n_p, n_q, n_r, n_s)` over `n` sharded draws.
fn sharded_cell_counts<S: Scalar>(t: &ProbTable<S>, n: u64, seed: u64) -> [u64; 4] {
    let thresholds = Thresholds::new(t);
    let per_shard: Vec<[u64; 4]> = shard_sizes(n)
        .into_par_iter()
        .enumerate()
        .map(|(k, size)| {
            let mut rng = stream_rng(seed, 1 + k as u64);
            let mut counts = [0u64; 4];
            for _ in 0..size {
                let cell = match thresholds.draw(&mut rng) {
                    (true, true) => 0,
                    (true, false) => 1,
                    (false, true) => 2,
                    (false, false) => 3,
                };
                counts[cell] += 1;
            }
            counts
        })
        .collect();
    let mut merged = [0u64; 4];
    for shard in per_shard {
        for (total, part) in merged.iter_mut().zip(shard) {
            *total += part;
        }
    }
    merged
}

/// Plug-in covariance of the indicator pair over `n >= 2` draws; within a
/// few standard errors of `delta` on any table.
pub fn estimate_covariance<S: Scalar>(
    t: &ProbTable<S>,
    n: u64,
    seed: u64,
) -> Result<SampleEstimate, MonteCarloError> {
    if n < 2 {
        return Err(MonteCarloError::TooFewSamples { min: 2 });
    }
    let counts = sharded_cell_counts(t, n, seed);
    let freq = counts.map(|c| c as f64 / n as f64);
    let mean_x = freq[0] + freq[1];
    let mean_y = freq[0] + freq[2];
    let estimate = freq[0] - mean_x * mean_y;
    // Asymptotic variance of the plug-in covariance: the second central
    // moment of W = (X - mean_x)(Y - mean_y) over the empirical law.
    let w = [
        (1.0 - mean_x) * (1.0 - mean_y),
        (1.0 - mean_x) * (0.0 - mean_y),
        (0.0 - mean_x) * (1.0 - mean_y),
        mean_x * mean_y,
    ];
    let m2: f64 = freq.iter().zip(w).map(|(f, w)| f * w * w).sum();
    let variance = (m2 - estimate * estimate).max(0.0);
    Ok(SampleEstimate {
        estimate,
        std_error: (variance / n as f64).sqrt(),
        n,
        seed,
    })
}

/// Empirical Hamming mismatch frequency `P(X != Y)` over `n >= 2` draws;
/// compared against the closed form `q + r`.
pub fn estimate_mismatch<S: Scalar>(
    t: &ProbTable<S>,
    n: u64,
    seed: u64,
) -> Result<SampleEstimate, MonteCarloError> {
    if n < 2 {
        return Err(MonteCarloError::TooFewSamples { min: 2 });
    }
    let counts = sharded_cell_counts(t, n, seed);
    let mismatches = counts[1] + counts[2];
    Ok(binomial_estimate(mismatches, n, n, seed))
}

/// Empirical concordant and discordant frequencies over `n / 2` disjoint
/// consecutive draw pairs (`n >= 2`); compared against `(2ps, 2qr)`.
pub fn estimate_concordance<S: Scalar>(
    t: &ProbTable<S>,
    n: u64,
    seed: u64,
) -> Result<(SampleEstimate, SampleEstimate), MonteCarloError> {
    if n < 2 {
        return Err(MonteCarloError::TooFewSamples { min: 2 });
    }
    let thresholds = Thresholds::new(t);
    let pairs = n / 2;
    let per_shard: Vec<(u64, u64)> = shard_sizes(pairs)
        .into_par_iter()
        .enumerate()
        .map(|(k, size)| {
            let mut rng = stream_rng(seed, 1 + k as u64);
            let mut concordant = 0;
            let mut discordant = 0;
            for _ in 0..size {
                let (x1, y1) = thresholds.draw(&mut rng);
                let (x2, y2) = thresholds.draw(&mut rng);
                let aligned = (x1 && y1 && !x2 && !y2) || (!x1 && !y1 && x2 && y2);
                let crossed = (x1 && !y1 && !x2 && y2) || (!x1 && y1 && x2 && !y2);
                if aligned {
                    concordant += 1;
                } else if crossed {
                    discordant += 1;
                }
            }
            (concordant, discordant)
        })
        .collect();
    let (mut concordant, mut discordant) = (0, 0);
    for (c, d) in per_shard {
        concordant += c;
        discordant += d;
    }
    Ok((
        binomial_estimate(concordant, pairs, n, seed),
        binomial_estimate(discordant, pairs, n, seed),
    ))
}

fn binomial_estimate(hits: u64, trials: u64, n: u64, seed: u64) -> SampleEstimate {
    let frequency = hits as f64 / trials as f64;
    SampleEstimate {
        estimate: frequency,
        std_error: (frequency * (1.0 - frequency) / trials as f64).sqrt(),
        n,
        seed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures;

    fn t1() -> ProbTable<f64> {
        ProbTable::from_probs(0.4, 0.1, 0.2, 0.3).unwrap()
    }

    fn tu() -> ProbTable<f64> {
        ProbTable::from_probs(0.25, 0.25, 0.25, 0.25).unwrap()
    }

    #[test]
    fn streams_are_reproducible() {
        let a: Vec<(bool, bool)> = sample_pairs(&tu(), 4, 0).unwrap().collect();
        let b: Vec<(bool, bool)> = sample_pairs(&tu(), 4, 0).unwrap().collect();
        assert_eq!(a, b);
        assert_eq!(a.len(), 4);
        let c: Vec<(bool, bool)> = sample_pairs(&tu(), 4, 1).unwrap().collect();
        assert_ne!(a, c);
    }

    #[test]
    fn zero_draws_is_an_error() {
        assert_eq!(
            sample_pairs(&t1(), 0, 7).err(),
            Some(MonteCarloError::TooFewSamples { min: 1 })
        );
        assert_eq!(
            estimate_covariance(&t1(), 1, 7).err(),
            Some(MonteCarloError::TooFewSamples { min: 2 })
        );
    }

    #[test]
    fn empirical_cell_frequencies_track_the_table() {
        let n = 1_000_000;
        let counts = sharded_cell_counts(&t1(), n, 42);
        assert_eq!(counts.iter().sum::<u64>(), n);
        for (count, cell) in counts.iter().zip([0.4, 0.1, 0.2, 0.3]) {
            let freq = *count as f64 / n as f64;
            let bound = 4.0 * (cell * (1.0 - cell) / n as f64).sqrt();
            assert!(
                (freq - cell).abs() <= bound,
                "cell frequency {freq} strays from {cell}"
            );
        }
    }

    #[test]
    fn stream_frequencies_track_the_table() {
        let n = 1_000_000u64;
        let mut counts = [0u64; 4];
        for (x, y) in sample_pairs(&t1(), n, 9).unwrap() {
            let cell = match (x, y) {
                (true, true) => 0,
                (true, false) => 1,
                (false, true) => 2,
                (false, false) => 3,
            };
            counts[cell] += 1;
        }
        assert_eq!(counts.iter().sum::<u64>(), n);
        for (count, cell) in counts.iter().zip([0.4, 0.1, 0.2, 0.3]) {
            let freq = *count as f64 / n as f64;
            let bound = 4.0 * (cell * (1.0 - cell) / n as f64).sqrt();
            assert!((freq - cell).abs() <= bound);
        }
    }

    #[test]
    fn covariance_estimate_is_within_four_standard_errors() {
        for (table, seed) in [(t1(), 42_u64), (tu(), 42)] {
            let estimate = estimate_covariance(&table, 1_000_000, seed).unwrap();
            let closed = measures::delta(&table);
            assert!(estimate.std_error > 0.0);
            assert!((estimate.estimate - closed).abs() <= 4.0 * estimate.std_error);
            let again = estimate_covariance(&table, 1_000_000, seed).unwrap();
            assert_eq!(estimate, again);
        }
    }

    #[test]
    fn concordance_estimates_match_closed_forms() {
        let (conc, disc) = estimate_concordance(&t1(), 2_000_000, 7).unwrap();
        assert!((conc.estimate - 0.24).abs() <= 4.0 * conc.std_error);
        assert!((disc.estimate - 0.04).abs() <= 4.0 * disc.std_error);
        let rerun = estimate_concordance(&t1(), 2_000_000, 7).unwrap();
        assert_eq!((conc, disc), rerun);
    }

    #[test]
    fn mismatch_estimate_matches_q_plus_r() {
        let estimate = estimate_mismatch(&t1(), 1_000_000, 11).unwrap();
        assert!((estimate.estimate - 0.3).abs() <= 4.0 * estimate.std_error);
    }
}
