//! Single-pass sample statistics.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StatsError {
    #[error("cannot summarize an empty sample")]
    Empty,
}

/// Welford running moments, mergeable in a fixed order.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Accumulator {
    n: u64,
    mean: f64,
    m2: f64,
}

impl Accumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, x: f64) {
        self.n += 1;
        let delta = x - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += delta * (x - self.mean);
    }

    /// Combines the moments of two disjoint samples (Chan et al.).
    ///
    /// Floating point makes this order-sensitive; callers that need
    /// reproducible output must merge shards in a fixed order.
    pub fn merge(&mut self, other: &Accumulator) {
        if other.n == 0 {
            return;
        }
        if self.n == 0 {
            *self = *other;
            return;
        }
        let n = self.n + other.n;
        let delta = other.mean - self.mean;
        let (na, nb, nt) = (self.n as f64, other.n as f64, n as f64);
        self.mean += delta * nb / nt;
        self.m2 += other.m2 + delta * delta * na * nb / nt;
        self.n = n;
    }

    pub fn count(&self) -> u64 {
        self.n
    }

    pub fn finish(&self) -> Result<RunStats, StatsError> {
        if self.n == 0 {
            return Err(StatsError::Empty);
        }
        let variance = if self.n == 1 {
            0.0
        } else {
            (self.m2 / (self.n - 1) as f64).max(0.0)
        };
        let std_error = (variance / self.n as f64).sqrt();
        let half = 1.96 * std_error;
        Ok(RunStats {
            n: self.n,
            mean: self.mean,
            variance,
            std_error,
            ci95: (self.mean - half, self.mean + half),
        })
    }
}

impl Extend<f64> for Accumulator {
    fn extend<I: IntoIterator<Item = f64>>(&mut self, iter: I) {
        for x in iter {
            self.push(x);
        }
    }
}

/// Monte Carlo summary of a per-slot score.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RunStats {
    pub n: u64,
    pub mean: f64,
    /// Unbiased sample variance.
    pub variance: f64,
    pub std_error: f64,
    pub ci95: (f64, f64),
}

/// Summarizes a stream of samples in one pass.
pub fn aggregate<I: IntoIterator<Item = f64>>(samples: I) -> Result<RunStats, StatsError> {
    let mut acc = Accumulator::new();
    acc.extend(samples);
    acc.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{RandomSource, Stream};
    use proptest::prelude::*;

    fn two_pass(xs: &[f64]) -> (f64, f64) {
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
        (mean, var)
    }

    #[test]
    fn two_point_sample() {
        let s = aggregate([2.0, 3.0]).unwrap();
        assert_eq!(s.n, 2);
        assert_eq!(s.mean, 2.5);
        assert_eq!(s.variance, 0.5);
        assert_eq!(s.std_error, 0.5);
        assert_eq!(s.ci95, (2.5 - 0.98, 2.5 + 0.98));
    }

    #[test]
    fn constant_stream_has_zero_variance() {
        let s = aggregate(std::iter::repeat_n(2.0, 1000)).unwrap();
        assert_eq!(s.mean, 2.0);
        assert_eq!(s.variance, 0.0);
        assert_eq!(s.std_error, 0.0);
    }

    #[test]
    fn single_sample() {
        let s = aggregate([7.5]).unwrap();
        assert_eq!(s.variance, 0.0);
        assert_eq!(s.ci95, (7.5, 7.5));
    }

    #[test]
    fn empty_is_an_error() {
        assert_eq!(aggregate(std::iter::empty()), Err(StatsError::Empty));
    }

    #[test]
    fn million_uniform_draws() {
        let mut rng = Stream::from_u64(2024);
        let xs: Vec<f64> = (0..1_000_000).map(|_| rng.uniform()).collect();
        let s = aggregate(xs.iter().copied()).unwrap();
        let (mean, var) = two_pass(&xs);
        assert!((s.mean - mean).abs() < 1e-10);
        assert!((s.variance - var).abs() < 1e-10);
        let tol = 5.0 * (1.0 / 12f64.sqrt()) / 1e3;
        assert!((s.mean - 0.5).abs() < tol, "mean {}", s.mean);
    }

    proptest! {
        #[test]
        fn merge_matches_sequential(xs in prop::collection::vec(-1e3f64..1e3, 2..200), split in 0usize..200) {
            let split = split.min(xs.len());
            let mut left = Accumulator::new();
            left.extend(xs[..split].iter().copied());
            let mut right = Accumulator::new();
            right.extend(xs[split..].iter().copied());
            left.merge(&right);
            let merged = left.finish().unwrap();
            let (mean, var) = two_pass(&xs);
            prop_assert!((merged.mean - mean).abs() < 1e-9);
            prop_assert!((merged.variance - var).abs() < 1e-6 * var.max(1.0));
        }

        #[test]
        fn ci_is_symmetric(xs in prop::collection::vec(0f64..10.0, 1..100)) {
            let s = aggregate(xs).unwrap();
            prop_assert!(s.variance >= 0.0);
            prop_assert!((s.std_error - (s.variance / s.n as f64).sqrt()).abs() < 1e-15);
            prop_assert!((s.ci95.0 - (s.mean - 1.96 * s.std_error)).abs() < 1e-12);
            prop_assert!((s.ci95.1 - (s.mean + 1.96 * s.std_error)).abs() < 1e-12);
        }
    }
}
