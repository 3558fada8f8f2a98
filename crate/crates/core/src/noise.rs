//! Imperfect sources and detectors: exact click statistics, the
//! variational-distance decomposition and the Haar-average bound.
//!
//! Two exact routes compute click probabilities.
//! [`output_click_distribution`] evaluates the defining triple sum over
//! input vectors, output vectors and click patterns. It is only feasible for
//! a handful of modes. [`click_probability`] and [`distance_parts`] use an
//! equivalent closed form that scales to hundreds of modes:
//!
//! * detector loss is the same for every mode, so it commutes with the
//!   network and can be applied to the sources as binomial thinning;
//! * the probability that every photon lands inside a mode set T is
//!   per((U X_T U†)[n|n])/μ(n), with X_T the projector onto T;
//! * inclusion–exclusion over T ⊆ C turns those into the probability of the
//!   click set C, with a factor e^{−ν} for each silent detector.

use serde::Serialize;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::fock::{enumerate_outputs, output_count, ClickPattern, OccupationVector};
use crate::ideal::{full_distribution, prob_ideal, DistributionSampler, DistributionTable};
use crate::random::RngStream;
use crate::matrix::NetworkUnitary;
use crate::numeric::{binomial, compensated_sum, BinomialTable, CompensatedSum};
use crate::par;
use crate::permanent::{expand_indices, permanent_slice};

/// Tolerance on Σ p_k exceeding one.
const MASS_TOLERANCE: f64 = 1e-12;
/// Term budget of the literal triple sum.
pub const LITERAL_TERM_LIMIT: u128 = 500_000_000;
/// Largest number of N-click patterns [`distance_parts`] will visit.
pub const PATTERN_LIMIT: u128 = 50_000_000;
/// Patterns per work item in [`distance_parts`].
const PATTERN_CHUNK: usize = 4096;

/// Photon-number distribution p_0, …, p_kmax shared by all sources.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SourceModel {
    probs: Vec<f64>,
}

impl SourceModel {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::invalid("source needs at least p_0"));
        }
        if let Some((k, p)) = probs.iter().enumerate().find(|(_, p)| !(p.is_finite() && **p >= 0.0 && **p <= 1.0)) {
            return Err(Error::invalid(format!("p_{k} = {p} is not a probability")));
        }
        let mass = compensated_sum(probs.iter().copied());
        if mass > 1.0 + MASS_TOLERANCE {
            return Err(Error::invalid(format!("source probabilities sum to {mass} > 1")));
        }
        Ok(SourceModel { probs })
    }

    /// Deterministic single photons.
    pub fn ideal() -> Self {
        SourceModel { probs: vec![0.0, 1.0] }
    }

    /// p_1 = `p1`, p_2 = `p2`, vacuum otherwise.
    pub fn with_multiphoton(p1: f64, p2: f64) -> Result<Self> {
        Self::new(vec![1.0 - p1 - p2, p1, p2])
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn kmax(&self) -> usize {
        self.probs.len() - 1
    }

    pub fn p(&self, k: usize) -> f64 {
        self.probs.get(k).copied().unwrap_or(0.0)
    }

    pub fn p1(&self) -> f64 {
        self.p(1)
    }

    /// Σ_{k ≤ kmax} p_k.
    pub fn mass(&self) -> f64 {
        compensated_sum(self.probs.iter().copied())
    }

    /// Probability carried by photon numbers above kmax.
    pub fn truncated_mass(&self) -> f64 {
        (1.0 - self.mass()).max(0.0)
    }

    /// Source after each photon is independently lost with probability `r`:
    /// p'_j = Σ_k p_k C(k, j)(1−r)^j r^{k−j}.
    pub fn thinned(&self, r: f64) -> SourceModel {
        let kmax = self.kmax();
        let probs = (0..=kmax)
            .map(|j| {
                compensated_sum((j..=kmax).map(|k| {
                    let c = binomial(k as u64, j as u64).expect("small binomial") as f64;
                    self.probs[k] * c * (1.0 - r).powi(j as i32) * r.powi((k - j) as i32)
                }))
            })
            .collect();
        SourceModel { probs }
    }
}

/// Bucket detectors with loss probability r and integral dark-count rate ν.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DetectorModel {
    loss: f64,
    dark_rate: f64,
}

impl DetectorModel {
    pub fn new(loss: f64, dark_rate: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&loss) {
            return Err(Error::invalid(format!("loss probability r = {loss} outside [0, 1]")));
        }
        if !(dark_rate.is_finite() && dark_rate >= 0.0) {
            return Err(Error::invalid(format!("dark-count rate nu = {dark_rate} must be finite and >= 0")));
        }
        Ok(DetectorModel { loss, dark_rate })
    }

    pub fn ideal() -> Self {
        DetectorModel { loss: 0.0, dark_rate: 0.0 }
    }

    pub fn loss(&self) -> f64 {
        self.loss
    }

    pub fn dark_rate(&self) -> f64 {
        self.dark_rate
    }

    /// P_D(0|s) = e^{−ν} r^s.
    pub fn no_click_prob(&self, s: usize) -> f64 {
        (-self.dark_rate).exp() * self.loss.powi(s as i32)
    }
}

/// A device: network, N identical sources on the first N inputs, and
/// identical detectors on all outputs.
#[derive(Debug, Clone)]
pub struct DeviceConfig {
    pub unitary: NetworkUnitary,
    pub photons: usize,
    pub source: SourceModel,
    pub detector: DetectorModel,
}

impl DeviceConfig {
    pub fn new(unitary: NetworkUnitary, photons: usize, source: SourceModel, detector: DetectorModel) -> Result<Self> {
        if photons > unitary.modes() {
            return Err(Error::invalid(format!("N = {photons} sources exceed M = {} modes", unitary.modes())));
        }
        Ok(DeviceConfig { unitary, photons, source, detector })
    }

    /// Noise-free device on `unitary`.
    pub fn ideal(unitary: NetworkUnitary, photons: usize) -> Result<Self> {
        Self::new(unitary, photons, SourceModel::ideal(), DetectorModel::ideal())
    }

    pub fn modes(&self) -> usize {
        self.unitary.modes()
    }

    /// The ideal input n⁰: one photon in each of the first N modes.
    pub fn ideal_input(&self) -> OccupationVector {
        OccupationVector::leading_ones(self.photons, self.modes())
    }

    pub fn is_noise_free(&self) -> bool {
        self.source.p1() == 1.0 && self.detector.loss == 0.0 && self.detector.dark_rate == 0.0
    }
}

/// P_I(n) = Π_{i<N} p_{n_i}; zero if a vacuum input mode is occupied.
pub fn input_prob(cfg: &DeviceConfig, n: &OccupationVector) -> f64 {
    input_prob_for(&cfg.source, cfg.photons, n)
}

fn input_prob_for(source: &SourceModel, photons: usize, n: &OccupationVector) -> f64 {
    let occ = n.as_slice();
    if occ.iter().skip(photons).any(|&k| k > 0) {
        return 0.0;
    }
    occ.iter().take(photons).map(|&k| source.p(k)).product()
}

/// Input vectors with nonzero P_I, in lexicographic order of the source
/// occupations, with their probabilities.
fn input_support(source: &SourceModel, photons: usize, modes: usize) -> Vec<(OccupationVector, f64)> {
    let kmax = source.kmax();
    let mut digits = vec![0usize; photons];
    let mut out = Vec::new();
    loop {
        let mut occ = digits.clone();
        occ.resize(modes, 0);
        let n = OccupationVector::new(occ);
        let p = input_prob_for(source, photons, &n);
        if p > 0.0 {
            out.push((n, p));
        }
        // Odometer increment, last source fastest.
        let Some(i) = (0..photons).rev().find(|&i| digits[i] < kmax) else {
            break;
        };
        digits[i] += 1;
        digits[i + 1..].fill(0);
    }
    out
}

/// Exact distribution of the input vectors, Σ = (Σ_k p_k)^N.
pub fn input_distribution(cfg: &DeviceConfig) -> DistributionTable<OccupationVector> {
    let (outcomes, probs) = input_support(&cfg.source, cfg.photons, cfg.modes()).into_iter().unzip();
    DistributionTable::from_parts_unchecked(outcomes, probs)
}

/// P_D(m|s) = Π_l P_D(m_l|s_l).
pub fn detector_prob(det: &DetectorModel, m: &ClickPattern, s: &OccupationVector) -> Result<f64> {
    if m.modes() != s.modes() {
        return Err(Error::Dimension(format!("click pattern over {} modes, occupation over {}", m.modes(), s.modes())));
    }
    Ok(m.as_slice()
        .iter()
        .zip(s.as_slice())
        .map(|(&click, &k)| {
            let silent = det.no_click_prob(k);
            if click {
                1.0 - silent
            } else {
                silent
            }
        })
        .product())
}

/// All 2^M click patterns in ascending lexicographic order.
fn all_patterns(modes: usize) -> Vec<ClickPattern> {
    (0..1u64 << modes)
        .map(|k| ClickPattern::new((0..modes).map(|l| k >> (modes - 1 - l) & 1 == 1).collect()))
        .collect()
}

/// Estimated number of terms in the literal triple sum.
pub fn literal_term_count(cfg: &DeviceConfig) -> Result<u128> {
    let m = cfg.modes();
    let inputs = input_support(&cfg.source, cfg.photons, m);
    let mut totals: Vec<usize> = inputs.iter().map(|(n, _)| n.total()).collect();
    let mut terms: u128 = 0;
    for t in &totals {
        terms = terms.saturating_add(output_count(m, *t, false)?);
    }
    totals.sort_unstable();
    totals.dedup();
    let mut outputs: u128 = 0;
    for t in totals {
        outputs = outputs.saturating_add(output_count(m, t, false)?);
    }
    let patterns = if m >= 127 { u128::MAX } else { 1u128 << m };
    Ok(terms.saturating_add(patterns.saturating_mul(outputs)))
}

/// P_out over all 2^M click patterns from the literal triple sum
/// Σ_m Σ_s P_D(m|s) Σ_n P_U(s|n) P_I(n).
///
/// Patterns are listed in ascending lexicographic order (mode 0 first).
pub fn output_click_distribution(cfg: &DeviceConfig) -> Result<DistributionTable<ClickPattern>> {
    let m = cfg.modes();
    let terms = literal_term_count(cfg)?;
    if m > 40 || terms > LITERAL_TERM_LIMIT {
        return Err(Error::resource("literal click-distribution terms", terms, LITERAL_TERM_LIMIT));
    }
    let inputs = input_support(&cfg.source, cfg.photons, m);
    let mut totals: Vec<usize> = inputs.iter().map(|(n, _)| n.total()).collect();
    totals.sort_unstable();
    totals.dedup();

    // w(s) = Σ_n P_U(s|n) P_I(n), innermost sum over n.
    let mut outputs = Vec::new();
    let mut weights = Vec::new();
    for t in totals {
        let group: Vec<&(OccupationVector, f64)> = inputs.iter().filter(|(n, _)| n.total() == t).collect();
        let outs: Vec<OccupationVector> = enumerate_outputs(m, t, false)?.collect();
        let w = par::map_slice(&outs, |s| {
            let mut acc = CompensatedSum::new();
            for (n, p) in &group {
                acc.add(prob_ideal(&cfg.unitary, n, s)? * p);
            }
            Ok(acc.value())
        });
        for (s, w) in outs.into_iter().zip(w) {
            let w: f64 = w?;
            if w > 0.0 {
                outputs.push(s);
                weights.push(w);
            }
        }
    }

    let det = cfg.detector;
    let max_photons = outputs.iter().map(|s| s.total()).max().unwrap_or(0);
    let silent: Vec<f64> = (0..=max_photons).map(|k| det.no_click_prob(k)).collect();
    let patterns = all_patterns(m);
    let probs = par::map_slice(&patterns, |pattern| {
        let mut acc = CompensatedSum::new();
        for (s, &w) in outputs.iter().zip(&weights) {
            let pd: f64 = pattern
                .as_slice()
                .iter()
                .zip(s.as_slice())
                .map(|(&click, &k)| if click { 1.0 - silent[k] } else { silent[k] })
                .product();
            acc.add(pd * w);
        }
        acc.value()
    });
    Ok(DistributionTable::from_parts_unchecked(patterns, probs))
}

/// Thinned source inputs in the form needed for reach probabilities.
struct ReachModel<'a> {
    u: &'a NetworkUnitary,
    photons: usize,
    /// (repeated source indices, P'_I(n')/μ(n')) for every n' with P'_I > 0.
    inputs: Vec<(SmallVec<[usize; 16]>, f64)>,
    dark: f64,
    modes: usize,
}

impl<'a> ReachModel<'a> {
    fn new(cfg: &'a DeviceConfig) -> Result<Self> {
        let thinned = cfg.source.thinned(cfg.detector.loss);
        let inputs = input_support(&thinned, cfg.photons, cfg.modes())
            .into_iter()
            .map(|(n, p)| Ok((expand_indices(&n), p / n.mu()? as f64)))
            .collect::<Result<Vec<_>>>()?;
        Ok(ReachModel { u: &cfg.unitary, photons: cfg.photons, inputs, dark: cfg.detector.dark_rate, modes: cfg.modes() })
    }

    /// h(T): probability that every surviving photon ends up in the modes T.
    fn reach(&self, t: &[usize]) -> f64 {
        let n = self.photons;
        let mut h: SmallVec<[num_complex::Complex64; 64]> = SmallVec::new();
        for i in 0..n {
            for j in 0..n {
                h.push(t.iter().map(|&l| self.u[(i, l)] * self.u[(j, l)].conj()).sum());
            }
        }
        let mut buf: SmallVec<[num_complex::Complex64; 64]> = SmallVec::new();
        let mut acc = CompensatedSum::new();
        for (rows, w) in &self.inputs {
            buf.clear();
            for &a in rows {
                for &b in rows {
                    buf.push(h[a * n + b]);
                }
            }
            acc.add(w * permanent_slice(&buf, rows.len()).re);
        }
        acc.value()
    }

    /// Inclusion–exclusion over T ⊆ C given h on every subset, with
    /// `subset_value(mask)` returning h for the subset of C selected by mask.
    fn click_from_subsets(&self, c_len: usize, mut subset_value: impl FnMut(u64) -> f64) -> f64 {
        let mut acc = CompensatedSum::new();
        for mask in 0..1u64 << c_len {
            let size = mask.count_ones() as usize;
            let sign = if (c_len - size).is_multiple_of(2) { 1.0 } else { -1.0 };
            let silent = (-self.dark * (self.modes - size) as f64).exp();
            acc.add(sign * silent * subset_value(mask));
        }
        acc.value()
    }
}

fn subset_of(c: &[usize], mask: u64) -> SmallVec<[usize; 16]> {
    c.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &l)| l).collect()
}

/// P_out(m) for one click pattern through the closed form. Cost grows as
/// 2^{|m|}, independent of the mode count.
pub fn click_probability(cfg: &DeviceConfig, m: &ClickPattern) -> Result<f64> {
    if m.modes() != cfg.modes() {
        return Err(Error::Dimension(format!("click pattern over {} modes for a {}-mode device", m.modes(), cfg.modes())));
    }
    let c = m.clicked_modes();
    if c.len() > 30 {
        return Err(Error::resource("clicked detectors in a pattern", c.len() as u128, 30u128));
    }
    let model = ReachModel::new(cfg)?;
    Ok(model.click_from_subsets(c.len(), |mask| model.reach(&subset_of(&c, mask))))
}

/// Largest total number of output vectors [`DeviceSampler`] tabulates.
pub const SAMPLER_OUTCOME_LIMIT: u128 = 2_000_000;

/// Exact sampler of click patterns from a noisy device: an input vector is
/// drawn from the sources, an output vector from the exact distribution for
/// that input, then every photon survives with probability 1 − r and every
/// detector fires spontaneously with probability 1 − e^{−ν}.
#[derive(Debug, Clone)]
pub struct DeviceSampler {
    detector: DetectorModel,
    inputs: DistributionSampler,
    outputs: Vec<(DistributionTable<OccupationVector>, DistributionSampler)>,
}

impl DeviceSampler {
    /// Tabulates the output distribution of every input vector in the
    /// source support. Sources must be normalised.
    pub fn new(cfg: &DeviceConfig) -> Result<Self> {
        let inputs = input_distribution(cfg);
        if !inputs.is_complete() {
            return Err(Error::IncompleteDistribution(inputs.total_mass()));
        }
        let mut total = 0u128;
        for n in inputs.outcomes() {
            total = total.saturating_add(output_count(cfg.modes(), n.total(), false)?);
        }
        if total > SAMPLER_OUTCOME_LIMIT {
            return Err(Error::resource("output vectors tabulated by the device sampler", total, SAMPLER_OUTCOME_LIMIT));
        }
        let outputs = inputs
            .outcomes()
            .iter()
            .map(|n| {
                let table = full_distribution(&cfg.unitary, n)?;
                let sampler = DistributionSampler::new(&table)?;
                Ok((table, sampler))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DeviceSampler { detector: cfg.detector, inputs: DistributionSampler::new(&inputs)?, outputs })
    }

    pub fn draw(&self, rng: &mut RngStream) -> ClickPattern {
        let (table, sampler) = &self.outputs[self.inputs.draw_index(rng)];
        let s = &table.outcomes()[sampler.draw_index(rng)];
        let keep = 1.0 - self.detector.loss();
        let fire = -(-self.detector.dark_rate()).exp_m1();
        let clicks = s
            .as_slice()
            .iter()
            .map(|&k| {
                let survivors = (0..k).filter(|_| rng.uniform() < keep).count();
                let dark = rng.uniform() < fire;
                survivors > 0 || dark
            })
            .collect();
        ClickPattern::new(clicks)
    }

    /// `count` samples; sample i uses `rng.child(i)`, so the result does not
    /// depend on the number of workers.
    pub fn sample(&self, count: usize, rng: &RngStream) -> Vec<ClickPattern> {
        par::map_range(count, |i| self.draw(&mut rng.child(i as u64)))
    }
}

/// The parts of the variational distance between a device and its ideal
/// counterpart.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DistanceParts {
    /// Mass on click patterns with a count other than N.
    pub v1: f64,
    /// Σ_{|m|=N} |P_out(m) − P_U(m|n⁰)|.
    pub v2: f64,
    /// Ideal-device probability of a bunched output.
    pub vb: f64,
    /// Mass of the N-click patterns.
    pub n_click_mass: f64,
    /// Total click-pattern mass, (Σ_k p_k)^N.
    pub total_mass: f64,
}

impl DistanceParts {
    pub fn sum(&self) -> f64 {
        self.v1 + self.v2 + self.vb
    }
}

/// Next k-subset of 0..m in colexicographic order.
fn next_colex(c: &mut [usize], m: usize) -> bool {
    let k = c.len();
    for i in 0..k {
        let limit = if i + 1 < k { c[i + 1] } else { m };
        if c[i] + 1 < limit {
            c[i] += 1;
            for (j, x) in c.iter_mut().take(i).enumerate() {
                *x = j;
            }
            return true;
        }
    }
    false
}

/// The k-subset with colexicographic rank `rank`.
fn unrank_colex(mut rank: usize, k: usize, table: &BinomialTable) -> SmallVec<[usize; 16]> {
    let mut c: SmallVec<[usize; 16]> = SmallVec::from_elem(0, k);
    for i in (1..=k).rev() {
        let mut x = i - 1;
        while table.get(x + 1, i) <= rank {
            x += 1;
        }
        c[i - 1] = x;
        rank -= table.get(x, i);
    }
    c
}

/// V1, V2 and Vb through the closed form over all N-subsets of modes.
pub fn distance_parts(cfg: &DeviceConfig) -> Result<DistanceParts> {
    let (n, m) = (cfg.photons, cfg.modes());
    if n > 16 {
        return Err(Error::resource("photons in distance_parts", n as u128, 16u128));
    }
    let count = binomial(m as u64, n as u64)?;
    if count > PATTERN_LIMIT {
        return Err(Error::resource(format!("{count} N-click patterns"), count, PATTERN_LIMIT));
    }
    let model = ReachModel::new(cfg)?;
    let table = BinomialTable::new(m, n);

    // h(T) for every |T| < N, indexed by size and colex rank.
    let small: Vec<Vec<f64>> = (0..n)
        .map(|k| {
            let len = table.get(m, k);
            par::map_range(len, |r| model.reach(&unrank_colex(r, k, &table)))
        })
        .collect();

    let u = &cfg.unitary;
    let count = count as usize;
    let partials = par::map_chunks(count, PATTERN_CHUNK, |range| {
        let mut c = unrank_colex(range.start, n, &table);
        let (mut out_mass, mut diff, mut ideal_mass) = (CompensatedSum::new(), CompensatedSum::new(), CompensatedSum::new());
        let mut buf: SmallVec<[num_complex::Complex64; 64]> = SmallVec::new();
        let mut sub: SmallVec<[usize; 16]> = SmallVec::new();
        for idx in range.clone() {
            let p_out = model.click_from_subsets(n, |mask| {
                if mask.count_ones() as usize == n {
                    model.reach(&c)
                } else {
                    sub.clear();
                    sub.extend(c.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &l)| l));
                    small[sub.len()][table.rank(&sub)]
                }
            });
            buf.clear();
            for i in 0..n {
                for &l in c.iter() {
                    buf.push(u[(i, l)]);
                }
            }
            let p0 = permanent_slice(&buf, n).norm_sqr();
            out_mass.add(p_out);
            diff.add((p_out - p0).abs());
            ideal_mass.add(p0);
            if idx + 1 < range.end {
                next_colex(&mut c, m);
            }
        }
        (out_mass.value(), diff.value(), ideal_mass.value())
    });
    let n_click_mass = compensated_sum(partials.iter().map(|p| p.0));
    let v2 = compensated_sum(partials.iter().map(|p| p.1));
    let ideal_cf = compensated_sum(partials.iter().map(|p| p.2));
    let total_mass = cfg.source.mass().powi(n as i32);
    Ok(DistanceParts { v1: (total_mass - n_click_mass).max(0.0), v2, vb: (1.0 - ideal_cf).max(0.0), n_click_mass, total_mass })
}

/// The same parts computed from the literal click distribution and the full
/// ideal distribution. Only feasible for small devices.
pub fn distance_parts_literal(cfg: &DeviceConfig) -> Result<DistanceParts> {
    let n = cfg.photons;
    let dist = output_click_distribution(cfg)?;
    let n0 = cfg.ideal_input();
    let mut n_click = CompensatedSum::new();
    let mut diff = CompensatedSum::new();
    for (pattern, p) in dist.iter() {
        if pattern.click_count() == n {
            n_click.add(p);
            diff.add((p - prob_ideal(&cfg.unitary, &n0, &pattern.to_occupation())?).abs());
        }
    }
    let ideal = crate::ideal::full_distribution(&cfg.unitary, &n0)?;
    let vb = compensated_sum(ideal.iter().filter(|(s, _)| !s.is_collision_free()).map(|(_, p)| p));
    let total_mass = dist.total_mass();
    Ok(DistanceParts { v1: total_mass - n_click.value(), v2: diff.value(), vb, n_click_mass: n_click.value(), total_mass })
}

/// The Haar-average bound with its ingredients.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RaBound {
    /// Raw bound; may exceed 2.
    pub ra: f64,
    /// min(ra, 2).
    pub ra_clamped: f64,
    /// Probability of N clicks from N single photons with no dark counts
    /// elsewhere.
    pub q: f64,
    /// Probability of a non-ideal input, 1 − p_1^N.
    pub q_prime: f64,
}

fn check_nm(n: usize, m: usize) -> Result<()> {
    if n == 0 || m < n {
        return Err(Error::invalid(format!("bounds need M >= N >= 1, got N={n}, M={m}")));
    }
    Ok(())
}

/// R_A = x + 2{1 − Q(1 − x)} + 1 − Q + Q′ with x = N²/2M,
/// Q = e^{−(M−N)ν}(1 − e^{−ν}r)^N p_1^N and Q′ = 1 − p_1^N.
pub fn bound_ra(n: usize, m: usize, src: &SourceModel, det: &DetectorModel) -> Result<RaBound> {
    check_nm(n, m)?;
    let (nf, mf) = (n as f64, m as f64);
    let nu = det.dark_rate();
    let ln_p1_n = nf * src.p1().ln();
    let ln_q = -(mf - nf) * nu + nf * (-(-nu).exp() * det.loss()).ln_1p() + ln_p1_n;
    let q = ln_q.exp();
    let one_minus_q = 0.0 - ln_q.exp_m1();
    let q_prime = 0.0 - ln_p1_n.exp_m1();
    let x = nf * nf / (2.0 * mf);
    let ra = x * (1.0 + 2.0 * q) + 3.0 * one_minus_q + q_prime;
    Ok(RaBound { ra, ra_clamped: ra.min(2.0), q, q_prime })
}

/// The additive bound 3N²/2M + 3[(M−N)ν + N r] + 4N(1 − p_1), which
/// dominates [`bound_ra`].
pub fn bound_ra_simple(n: usize, m: usize, src: &SourceModel, det: &DetectorModel) -> Result<f64> {
    check_nm(n, m)?;
    let (nf, mf) = (n as f64, m as f64);
    Ok(3.0 * nf * nf / (2.0 * mf) + 3.0 * ((mf - nf) * det.dark_rate() + nf * det.loss()) + 4.0 * nf * (1.0 - src.p1()))
}
