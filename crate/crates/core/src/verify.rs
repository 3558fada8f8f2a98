//! Device-level verification: a row-norm witness against uniform sampling,
//! the mirror round trip and the Fourier suppression law.

use serde::Serialize;

use crate::distinguishability::{prob_mismatch, DistinguishabilityParams};
use crate::error::{Error, Result};
use crate::fock::{enumerate_outputs, ClickPattern, OccupationVector};
use crate::ideal::prob_ideal;
use crate::matrix::NetworkUnitary;
use crate::noise::{click_probability, DeviceConfig};
use crate::numeric::{binomial, compensated_sum, RunningStats};
use crate::par;
use crate::permanent::{permanent_naive, NAIVE_MAX_SIZE};
use crate::random::fourier_matrix;

/// Largest number of collision-free patterns enumerated for reference means.
pub const WITNESS_ENUMERATION_LIMIT: u128 = 10_000_000;
/// Largest N accepted by [`suppression_test`].
pub const MAX_SUPPRESSION_N: usize = 7;
/// Probability below which an output counts as suppressed.
pub const SUPPRESSION_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessDecision {
    BsLike,
    UniformLike,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct WitnessResult {
    pub sample_mean: f64,
    pub standard_error: f64,
    pub reference_mean_uniform: f64,
    pub reference_mean_bs: f64,
    /// Midpoint of the two reference means.
    pub threshold: f64,
    pub decision: WitnessDecision,
    /// Samples with exactly N clicks.
    pub sample_count: usize,
    /// Samples with a click count other than N.
    pub rejected: usize,
}

/// W(m) = Π_{l clicked} (M/N) Σ_{i<N} |U_{il}|².
pub fn witness_statistic(u: &NetworkUnitary, photons: usize, clicked: &[usize]) -> f64 {
    let scale = u.modes() as f64 / photons as f64;
    clicked.iter().map(|&l| scale * (0..photons).map(|i| u[(i, l)].norm_sqr()).sum::<f64>()).product()
}

/// Exact means of the witness under uniform collision-free sampling and
/// under the ideal device conditioned on collision-free outputs.
pub fn witness_reference_means(u: &NetworkUnitary, n0: &OccupationVector) -> Result<(f64, f64)> {
    let (m, n) = (u.modes(), n0.total());
    let count = binomial(m as u64, n as u64)?;
    if count > WITNESS_ENUMERATION_LIMIT {
        return Err(Error::resource("witness reference enumeration", count, WITNESS_ENUMERATION_LIMIT));
    }
    let outputs: Vec<OccupationVector> = enumerate_outputs(m, n, true)?.collect();
    let rows = par::map_slice(&outputs, |s| -> Result<(f64, f64)> {
        let w = witness_statistic(u, n, &s.occupied_modes());
        Ok((w, prob_ideal(u, n0, s)?))
    });
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    let uniform = compensated_sum(rows.iter().map(|r| r.0)) / rows.len() as f64;
    let mass = compensated_sum(rows.iter().map(|r| r.1));
    let bs = compensated_sum(rows.iter().map(|r| r.0 * r.1)) / mass;
    Ok((uniform, bs))
}

/// Scores click samples with the row-norm witness and decides whether they
/// look like the ideal device or like uniform sampling. The sample mean must
/// lie more than two standard errors from the midpoint of the reference
/// means, otherwise the result is inconclusive.
pub fn row_norm_witness(u: &NetworkUnitary, n0: &OccupationVector, samples: &[ClickPattern]) -> Result<WitnessResult> {
    let (m, n) = (u.modes(), n0.total());
    if n0.modes() != m || n0.as_slice().iter().take(n).any(|&k| k != 1) {
        return Err(Error::invalid("witness input must be one photon in each of the first N modes"));
    }
    if let Some(bad) = samples.iter().find(|s| s.modes() != m) {
        return Err(Error::Dimension(format!("sample over {} modes for a {m}-mode network", bad.modes())));
    }
    let (reference_mean_uniform, reference_mean_bs) = witness_reference_means(u, n0)?;
    let accepted: Vec<&ClickPattern> = samples.iter().filter(|s| s.click_count() == n).collect();
    let rejected = samples.len() - accepted.len();
    let values = par::map_slice(&accepted, |s| witness_statistic(u, n, &s.clicked_modes()));
    let stats: RunningStats = values.into_iter().collect();
    let threshold = 0.5 * (reference_mean_uniform + reference_mean_bs);
    let se = stats.standard_error();
    let decision = if stats.count() < 2 || (stats.mean() - threshold).abs() <= 2.0 * se {
        WitnessDecision::Inconclusive
    } else if (stats.mean() - reference_mean_bs).abs() < (stats.mean() - reference_mean_uniform).abs() {
        WitnessDecision::BsLike
    } else {
        WitnessDecision::UniformLike
    };
    Ok(WitnessResult {
        sample_mean: stats.mean(),
        standard_error: se,
        reference_mean_uniform,
        reference_mean_bs,
        threshold,
        decision,
        sample_count: accepted.len(),
        rejected,
    })
}

/// Probability that the device followed by the mirrored network U† returns
/// exactly one click in each source mode and none elsewhere. The cascade is
/// the numerical product U·U†, not the identity.
pub fn unitarity_roundtrip(cfg: &DeviceConfig) -> Result<f64> {
    let round = cfg.unitary.then(&cfg.unitary.adjoint())?;
    let mirrored = DeviceConfig::new(round, cfg.photons, cfg.source.clone(), cfg.detector)?;
    let target = ClickPattern::from_modes(cfg.modes(), &(0..cfg.photons).collect::<Vec<_>>())?;
    click_probability(&mirrored, &target)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SuppressionResult {
    pub n: usize,
    /// Outputs the law flags as forbidden.
    pub flagged_outputs: usize,
    pub total_outputs: usize,
    /// Ideal-device mass on flagged outputs, from brute-force permanents.
    pub ideal_mass: f64,
    /// Mass on flagged outputs with the given distinguishability.
    pub suppressed_mass: f64,
    /// Flagged outputs whose ideal probability exceeds the tolerance.
    pub law_violations: usize,
}

/// Whether the law forbids output `s` of the N-mode Fourier network fed
/// with one photon per mode: Σ_α l_α ≢ 0 (mod N), zero-based modes counted
/// with multiplicity.
pub fn suppression_flag(s: &OccupationVector) -> bool {
    let n = s.modes();
    let sum: usize = s.as_slice().iter().enumerate().map(|(l, &k)| l * k).sum();
    n > 0 && !sum.is_multiple_of(n)
}

/// Checks the suppression law on the N-mode Fourier network against
/// brute-force permanents, then measures the mass it forbids for photons
/// with the given distinguishability.
///
/// If any flagged output carries ideal probability above
/// [`SUPPRESSION_TOLERANCE`] the law is reported invalid instead.
pub fn suppression_test(n: usize, g: &DistinguishabilityParams) -> Result<SuppressionResult> {
    if n == 0 || n > MAX_SUPPRESSION_N.min(NAIVE_MAX_SIZE) {
        return Err(Error::resource("suppression test N", n as u128, MAX_SUPPRESSION_N as u128));
    }
    let f = fourier_matrix(n)?;
    let n0 = OccupationVector::new(vec![1; n]);
    let outputs: Vec<OccupationVector> = enumerate_outputs(n, n, false)?.collect();
    let flagged: Vec<&OccupationVector> = outputs.iter().filter(|s| suppression_flag(s)).collect();

    let ideal = par::map_slice(&flagged, |s| -> Result<f64> {
        let per = permanent_naive(&f.matrix().select(&(0..n).collect::<Vec<_>>(), &crate::permanent::expand_indices(s)))?;
        Ok(per.norm_sqr() / s.mu()? as f64)
    });
    let ideal = ideal.into_iter().collect::<Result<Vec<f64>>>()?;
    let law_violations = ideal.iter().filter(|&&p| p > SUPPRESSION_TOLERANCE).count();
    if law_violations > 0 {
        return Err(Error::LawInvalid { violations: law_violations });
    }
    let ideal_mass = compensated_sum(ideal.iter().copied());
    let suppressed_mass = if g.all_one() {
        ideal_mass
    } else {
        let leaked = flagged.iter().map(|s| prob_mismatch(&f, &n0, s, g)).collect::<Result<Vec<f64>>>()?;
        compensated_sum(leaked)
    };
    Ok(SuppressionResult {
        n,
        flagged_outputs: flagged.len(),
        total_outputs: outputs.len(),
        ideal_mass,
        suppressed_mass,
        law_violations,
    })
}
