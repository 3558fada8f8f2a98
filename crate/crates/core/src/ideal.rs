//! The ideal device: exact output probabilities, full distributions,
//! sampling and variational distance.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::{enumerate_outputs, OccupationVector};
use crate::matrix::NetworkUnitary;
use crate::numeric::{compensated_sum, CompensatedSum};
use crate::par;
use crate::permanent::permanent_repeated;
use crate::random::RngStream;

/// Mass tolerance for treating a table as a complete distribution.
pub const COMPLETENESS_TOLERANCE: f64 = 1e-9;

/// Outcomes with their probabilities, in a fixed order.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DistributionTable<T> {
    outcomes: Vec<T>,
    probs: Vec<f64>,
    total_mass: f64,
}

impl<T: Ord + Clone> DistributionTable<T> {
    /// Builds a table, rejecting duplicate outcomes, negative or non-finite
    /// probabilities and length mismatches.
    pub fn new(outcomes: Vec<T>, probs: Vec<f64>) -> Result<Self> {
        if outcomes.len() != probs.len() {
            return Err(Error::Dimension(format!("{} outcomes but {} probabilities", outcomes.len(), probs.len())));
        }
        if let Some(p) = probs.iter().find(|p| !p.is_finite() || **p < 0.0) {
            return Err(Error::invalid(format!("probability {p} is not a non-negative number")));
        }
        let mut sorted: Vec<&T> = outcomes.iter().collect();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("duplicate outcome in distribution table"));
        }
        let total_mass = compensated_sum(probs.iter().copied());
        Ok(DistributionTable { outcomes, probs, total_mass })
    }

    pub(crate) fn from_parts_unchecked(outcomes: Vec<T>, probs: Vec<f64>) -> Self {
        let total_mass = compensated_sum(probs.iter().copied());
        DistributionTable { outcomes, probs, total_mass }
    }

    pub fn outcomes(&self) -> &[T] {
        &self.outcomes
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn total_mass(&self) -> f64 {
        self.total_mass
    }

    pub fn len(&self) -> usize {
        self.outcomes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outcomes.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        (self.total_mass - 1.0).abs() <= COMPLETENESS_TOLERANCE
    }

    pub fn iter(&self) -> impl Iterator<Item = (&T, f64)> {
        self.outcomes.iter().zip(self.probs.iter().copied())
    }

    /// Probability of `outcome`, zero if absent.
    pub fn prob(&self, outcome: &T) -> f64 {
        self.outcomes.iter().position(|o| o == outcome).map_or(0.0, |i| self.probs[i])
    }

    /// Keyed view for repeated lookups.
    pub fn to_map(&self) -> BTreeMap<T, f64> {
        self.iter().map(|(o, p)| (o.clone(), p)).collect()
    }
}

fn check_modes(u: &NetworkUnitary, v: &OccupationVector) -> Result<()> {
    if v.modes() != u.modes() {
        return Err(Error::Dimension(format!("occupation vector of length {} for a {}-mode network", v.modes(), u.modes())));
    }
    Ok(())
}

/// P_U(s|n) = |per(U[n|s])|² / (μ(n)μ(s)); zero when |n| ≠ |s|.
pub fn prob_ideal(u: &NetworkUnitary, n: &OccupationVector, s: &OccupationVector) -> Result<f64> {
    check_modes(u, n)?;
    check_modes(u, s)?;
    if n.total() != s.total() {
        return Ok(0.0);
    }
    let per = permanent_repeated(u, n, s)?;
    let denom = n.mu()? as f64 * s.mu()? as f64;
    Ok(per.norm_sqr() / denom)
}

/// Exact distribution over every output with |s| = |n|, in the enumeration
/// order of [`enumerate_outputs`].
pub fn full_distribution(u: &NetworkUnitary, n: &OccupationVector) -> Result<DistributionTable<OccupationVector>> {
    check_modes(u, n)?;
    let outcomes: Vec<OccupationVector> = enumerate_outputs(u.modes(), n.total(), false)?.collect();
    let probs = par::map_slice(&outcomes, |s| prob_ideal(u, n, s));
    let probs = probs.into_iter().collect::<Result<Vec<f64>>>()?;
    Ok(DistributionTable::from_parts_unchecked(outcomes, probs))
}

/// Inverse-CDF sampler over the indices of a complete table.
#[derive(Debug, Clone)]
pub struct DistributionSampler {
    cdf: Vec<f64>,
    total: f64,
    last_positive: usize,
}

impl DistributionSampler {
    pub fn new<T: Ord + Clone>(table: &DistributionTable<T>) -> Result<Self> {
        if !table.is_complete() {
            return Err(Error::IncompleteDistribution(table.total_mass()));
        }
        let mut acc = CompensatedSum::new();
        let cdf = table
            .probs()
            .iter()
            .map(|&p| {
                acc.add(p);
                acc.value()
            })
            .collect();
        let last_positive = table.probs().iter().rposition(|&p| p > 0.0).expect("complete table has positive mass");
        Ok(DistributionSampler { cdf, total: table.total_mass(), last_positive })
    }

    /// Index of one draw; zero-probability outcomes are never returned.
    pub fn draw_index(&self, rng: &mut RngStream) -> usize {
        let x = rng.uniform() * self.total;
        self.cdf.partition_point(|&c| c <= x).min(self.last_positive)
    }
}

/// `count` i.i.d. draws from a complete table by inverse-CDF lookup.
/// Zero-probability outcomes are never returned.
pub fn sample_ideal<T: Ord + Clone>(dist: &DistributionTable<T>, count: usize, rng: &mut RngStream) -> Result<Vec<T>> {
    let sampler = DistributionSampler::new(dist)?;
    Ok((0..count).map(|_| dist.outcomes()[sampler.draw_index(rng)].clone()).collect())
}

/// Σ_i |p_i − q_i| over the union of supports (no factor 1/2).
pub fn variational_distance<T: Ord + Clone>(p: &DistributionTable<T>, q: &DistributionTable<T>) -> f64 {
    let mut merged: BTreeMap<&T, (f64, f64)> = BTreeMap::new();
    for (o, x) in p.iter() {
        merged.entry(o).or_default().0 += x;
    }
    for (o, x) in q.iter() {
        merged.entry(o).or_default().1 += x;
    }
    compensated_sum(merged.values().map(|(a, b)| (a - b).abs()))
}
