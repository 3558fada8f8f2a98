//! Occupation vectors, click patterns and output enumeration.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{binomial, factorial};

/// Default cap on the number of vectors [`enumerate_outputs`] will stream.
pub const DEFAULT_ENUMERATION_LIMIT: u128 = 50_000_000;

/// Photon numbers per mode.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OccupationVector {
    occupations: Vec<usize>,
}

impl OccupationVector {
    pub fn new(occupations: Vec<usize>) -> Self {
        OccupationVector { occupations }
    }

    pub fn vacuum(modes: usize) -> Self {
        Self::new(vec![0; modes])
    }

    /// One photon in each of the first `n` of `modes` modes.
    pub fn leading_ones(n: usize, modes: usize) -> Self {
        let mut v = vec![0; modes];
        v[..n.min(modes)].fill(1);
        Self::new(v)
    }

    pub fn modes(&self) -> usize {
        self.occupations.len()
    }

    pub fn total(&self) -> usize {
        self.occupations.iter().sum()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.occupations
    }

    pub fn is_collision_free(&self) -> bool {
        self.occupations.iter().all(|&k| k <= 1)
    }

    /// Modes with a nonzero occupation.
    pub fn occupied_modes(&self) -> Vec<usize> {
        (0..self.modes()).filter(|&i| self.occupations[i] > 0).collect()
    }

    /// μ(n) = Π n_i!.
    pub fn mu(&self) -> Result<u128> {
        mu(self)
    }

    /// The bucket-detector pattern this vector produces with perfect detectors.
    pub fn to_clicks(&self) -> ClickPattern {
        ClickPattern::new(self.occupations.iter().map(|&k| k > 0).collect())
    }
}

impl std::ops::Index<usize> for OccupationVector {
    type Output = usize;
    fn index(&self, i: usize) -> &usize {
        &self.occupations[i]
    }
}

impl fmt::Display for OccupationVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, k) in self.occupations.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, ")")
    }
}

/// Click/no-click outcome of M bucket detectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClickPattern {
    clicks: Vec<bool>,
}

impl ClickPattern {
    pub fn new(clicks: Vec<bool>) -> Self {
        ClickPattern { clicks }
    }

    pub fn from_modes(modes: usize, clicked: &[usize]) -> Result<Self> {
        let mut clicks = vec![false; modes];
        for &l in clicked {
            if l >= modes {
                return Err(Error::Dimension(format!("mode {l} out of range for {modes} detectors")));
            }
            clicks[l] = true;
        }
        Ok(Self::new(clicks))
    }

    /// Pattern whose bit `l` is bit `l` of `mask`.
    pub fn from_mask(modes: usize, mask: u64) -> Self {
        Self::new((0..modes).map(|l| mask >> l & 1 == 1).collect())
    }

    pub fn modes(&self) -> usize {
        self.clicks.len()
    }

    pub fn click_count(&self) -> usize {
        self.clicks.iter().filter(|&&c| c).count()
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.clicks
    }

    pub fn clicked_modes(&self) -> Vec<usize> {
        (0..self.modes()).filter(|&l| self.clicks[l]).collect()
    }

    /// As an occupation vector with one photon per clicked mode.
    pub fn to_occupation(&self) -> OccupationVector {
        OccupationVector::new(self.clicks.iter().map(|&c| c as usize).collect())
    }
}

impl std::ops::Index<usize> for ClickPattern {
    type Output = bool;
    fn index(&self, i: usize) -> &bool {
        &self.clicks[i]
    }
}

impl fmt::Display for ClickPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &c in &self.clicks {
            f.write_str(if c { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for ClickPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::invalid(format!("click pattern contains {other:?}"))),
            })
            .collect::<Result<Vec<bool>>>()
            .map(ClickPattern::new)
    }
}

impl Serialize for ClickPattern {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ClickPattern {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// μ(n) = Π n_i! in wide integers.
pub fn mu(n: &OccupationVector) -> Result<u128> {
    n.as_slice().iter().try_fold(1u128, |acc, &k| {
        acc.checked_mul(factorial(k as u64)?).ok_or_else(|| Error::Overflow(format!("mu{n}")))
    })
}

/// Number of outputs with `n` photons in `m` modes: C(M+N−1, N), or
/// C(M, N) when restricted to collision-free outputs.
pub fn output_count(m: usize, n: usize, collision_free: bool) -> Result<u128> {
    if collision_free {
        binomial(m as u64, n as u64)
    } else if m == 0 {
        Ok((n == 0) as u128)
    } else {
        binomial((m + n - 1) as u64, n as u64)
    }
}

/// Streams all outputs with `n` photons in `m` modes in descending
/// lexicographic order, refusing sets larger than
/// [`DEFAULT_ENUMERATION_LIMIT`].
pub fn enumerate_outputs(m: usize, n: usize, collision_free: bool) -> Result<OutputIter> {
    enumerate_outputs_with_limit(m, n, collision_free, DEFAULT_ENUMERATION_LIMIT)
}

pub fn enumerate_outputs_with_limit(m: usize, n: usize, collision_free: bool, limit: u128) -> Result<OutputIter> {
    let count = output_count(m, n, collision_free)?;
    if count > limit {
        return Err(Error::resource(format!("output enumeration of {count} vectors"), count, limit));
    }
    let first = if count == 0 {
        None
    } else if collision_free {
        Some(OccupationVector::leading_ones(n, m).occupations)
    } else {
        let mut v = vec![0; m];
        if m > 0 {
            v[0] = n;
        }
        Some(v)
    };
    Ok(OutputIter { next: first, collision_free, remaining: count })
}

/// Lazy iterator over occupation vectors of fixed total.
#[derive(Debug, Clone)]
pub struct OutputIter {
    next: Option<Vec<usize>>,
    collision_free: bool,
    remaining: u128,
}

impl Iterator for OutputIter {
    type Item = OccupationVector;

    fn next(&mut self) -> Option<OccupationVector> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let advanced = if self.collision_free { next_combination(&mut succ) } else { next_composition(&mut succ) };
        if advanced {
            self.next = Some(succ);
        }
        self.remaining = self.remaining.saturating_sub(1);
        Some(OccupationVector::new(current))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (r, Some(r))
    }
}

/// Descending-lex successor of a composition; false at the last one.
fn next_composition(v: &mut [usize]) -> bool {
    let m = v.len();
    if m < 2 {
        return false;
    }
    let tail = v[m - 1];
    v[m - 1] = 0;
    match (0..m - 1).rev().find(|&i| v[i] > 0) {
        Some(i) => {
            v[i] -= 1;
            v[i + 1] = tail + 1;
            true
        }
        None => {
            v[m - 1] = tail;
            false
        }
    }
}

/// Descending-lex successor of a 0/1 vector with fixed weight.
fn next_combination(v: &mut [usize]) -> bool {
    let m = v.len();
    // Rightmost 1 that has a 0 to its right.
    let Some(i) = (0..m.saturating_sub(1)).rev().find(|&i| v[i] == 1 && v[i + 1] == 0) else {
        return false;
    };
    let ones_after = v[i + 1..].iter().filter(|&&x| x == 1).count();
    v[i] = 0;
    v[i + 1..].fill(0);
    v[i + 1..i + 2 + ones_after].fill(1);
    true
}

/// Probability that N uniformly placed bosons share a mode, and its bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BirthdayBound {
    /// 1 − Π_{k=1}^{N−1}(1 − k/M).
    pub exact: f64,
    /// N(N−1)/(2M).
    pub bound: f64,
}

pub fn birthday_bunching_bound(m: usize, n: usize) -> Result<BirthdayBound> {
    if m < n || m == 0 {
        return Err(Error::invalid(format!("birthday bound needs M >= N >= 1, got M={m}, N={n}")));
    }
    let log_product: f64 = (1..n).map(|k| (-(k as f64) / m as f64).ln_1p()).sum();
    let exact = -log_product.exp_m1();
    let bound = (n * n.saturating_sub(1)) as f64 / (2.0 * m as f64);
    Ok(BirthdayBound { exact, bound })
}
