//! Small numeric helpers: compensated sums, sample statistics, exact
//! combinatorial integers.

use crate::error::{Error, Result};

/// Neumaier-compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl Extend<f64> for CompensatedSum {
    fn extend<I: IntoIterator<Item = f64>>(&mut self, iter: I) {
        for x in iter {
            self.add(x);
        }
    }
}

/// Compensated sum of an iterator, in iteration order.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    let mut acc = CompensatedSum::new();
    acc.extend(iter);
    acc.value()
}

/// Welford running mean and variance.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RunningStats {
    count: u64,
    mean: f64,
    m2: f64,
}

impl RunningStats {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Unbiased sample variance (zero for fewer than two samples).
    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            self.m2 / (self.count - 1) as f64
        }
    }

    /// Standard error of the mean.
    pub fn standard_error(&self) -> f64 {
        if self.count == 0 {
            f64::INFINITY
        } else {
            (self.variance() / self.count as f64).sqrt()
        }
    }
}

impl FromIterator<f64> for RunningStats {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = RunningStats::new();
        for x in iter {
            s.push(x);
        }
        s
    }
}

/// n! as a wide integer.
pub fn factorial(n: u64) -> Result<u128> {
    (1..=n as u128).try_fold(1u128, |acc, k| acc.checked_mul(k)).ok_or_else(|| Error::Overflow(format!("{n}!")))
}

/// n! as a float; exact up to 22!.
pub fn factorial_f64(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// Binomial coefficient C(n, k) in wide integers.
pub fn binomial(n: u64, k: u64) -> Result<u128> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        // acc * (n - i) is divisible by (i + 1) at every step.
        acc = acc
            .checked_mul(n as u128 - i)
            .ok_or_else(|| Error::Overflow(format!("C({n}, {k})")))?
            / (i + 1);
    }
    Ok(acc)
}

/// Table of binomial coefficients C(n, k) for n <= max_n, k <= max_k, used
/// for ranking subsets in the combinatorial number system.
#[derive(Debug, Clone)]
pub struct BinomialTable {
    max_k: usize,
    values: Vec<usize>,
}

impl BinomialTable {
    pub fn new(max_n: usize, max_k: usize) -> Self {
        let width = max_k + 1;
        let mut values = vec![0usize; (max_n + 1) * width];
        for n in 0..=max_n {
            values[n * width] = 1;
            for k in 1..=max_k.min(n) {
                let above = values[(n - 1) * width + k - 1];
                let left = if k < n { values[(n - 1) * width + k] } else { 0 };
                values[n * width + k] = above.saturating_add(left);
            }
        }
        BinomialTable { max_k, values }
    }

    #[inline]
    pub fn get(&self, n: usize, k: usize) -> usize {
        if k > self.max_k {
            return 0;
        }
        self.values.get(n * (self.max_k + 1) + k).copied().unwrap_or(0)
    }

    /// Colexicographic rank of a strictly increasing index set.
    #[inline]
    pub fn rank(&self, sorted: &[usize]) -> usize {
        sorted.iter().enumerate().map(|(i, &c)| self.get(c, i + 1)).sum()
    }
}
