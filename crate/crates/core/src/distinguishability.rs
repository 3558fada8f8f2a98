//! Partially distinguishable photons.
//!
//! Identical sources emit single photons whose internal state ρ_1 is mixed.
//! Interference between photons exchanged along a k-cycle is weighted by
//! g_k = Tr(ρ_1^k), so every quantity here depends on permutations only
//! through their cycle type.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::OccupationVector;
use crate::matrix::{ComplexMatrix, NetworkUnitary};
use crate::numeric::{compensated_sum, factorial};
use crate::par;
use crate::permanent::{permanent_slice, repeated_submatrix};

/// Largest N accepted by [`cycle_types`] and [`bound_rb`].
pub const MAX_CYCLE_N: usize = 12;
/// Largest n accepted by [`chi`].
pub const MAX_CHI_N: usize = 20;
/// Largest photon number accepted by [`prob_mismatch`].
pub const MAX_MISMATCH_N: usize = 8;

/// Cycle counts c_1, …, c_N of a permutation of N elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct CycleType {
    counts: Vec<usize>,
}

impl CycleType {
    /// `counts[k - 1]` is the number of k-cycles.
    pub fn new(counts: Vec<usize>) -> Self {
        CycleType { counts }
    }

    pub fn of_permutation(sigma: &[usize]) -> Result<Self> {
        let n = sigma.len();
        let mut seen = vec![false; n];
        let mut counts = vec![0usize; n];
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = *sigma.get(i).filter(|&&j| j < n).ok_or_else(|| Error::invalid("not a permutation"))?;
                len += 1;
            }
            if i != start {
                return Err(Error::invalid("not a permutation"));
            }
            counts[len - 1] += 1;
        }
        Ok(CycleType { counts })
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// c_k, zero beyond the stored length.
    pub fn count(&self, k: usize) -> usize {
        if k == 0 {
            0
        } else {
            self.counts.get(k - 1).copied().unwrap_or(0)
        }
    }

    /// Σ k·c_k.
    pub fn degree(&self) -> usize {
        self.counts.iter().enumerate().map(|(i, c)| (i + 1) * c).sum()
    }

    /// Π_k k^{c_k} c_k!, the centraliser order.
    pub fn centralizer_order(&self) -> Result<u128> {
        let mut z: u128 = 1;
        for (i, &c) in self.counts.iter().enumerate() {
            let k = (i + 1) as u128;
            let term = k.checked_pow(c as u32).and_then(|p| p.checked_mul(factorial(c as u64).ok()?));
            z = term.and_then(|t| z.checked_mul(t)).ok_or_else(|| Error::Overflow("centralizer order".into()))?;
        }
        Ok(z)
    }
}

/// Every cycle type of S_N with its class size N!/Π k^{c_k} c_k!, ordered by
/// the descending-parts form of the partition (1+1+…+1 first, N last).
pub fn cycle_types(n: usize) -> Result<Vec<(CycleType, u128)>> {
    if n > MAX_CYCLE_N {
        return Err(Error::resource("cycle-type enumeration N", n as u128, MAX_CYCLE_N as u128));
    }
    let mut parts = Vec::new();
    partitions(n, n, &mut Vec::new(), &mut parts);
    parts.sort();
    let n_fact = factorial(n as u64)?;
    parts
        .into_iter()
        .map(|p| {
            let mut counts = vec![0usize; n];
            for k in p {
                counts[k - 1] += 1;
            }
            let t = CycleType::new(counts);
            let size = n_fact / t.centralizer_order()?;
            Ok((t, size))
        })
        .collect()
}

/// Partitions of `n` into parts ≤ `max`, parts in descending order.
fn partitions(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if n == 0 {
        out.push(prefix.clone());
        return;
    }
    for k in 1..=max.min(n) {
        prefix.push(k);
        partitions(n - k, k, prefix, out);
        prefix.pop();
    }
}

/// χ(n) = Σ_{k=0}^n n!/k!, exactly.
pub fn chi(n: usize) -> Result<u128> {
    if n > MAX_CHI_N {
        return Err(Error::resource("chi argument", n as u128, MAX_CHI_N as u128));
    }
    // χ(n) = n·χ(n−1) + 1.
    Ok((1..=n as u128).fold(1u128, |acc, k| k * acc + 1))
}

/// Indistinguishability parameters g_2, …, g_K and, optionally, the average
/// single-photon fidelity.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DistinguishabilityParams {
    g: Vec<f64>,
    avg_fidelity: Option<f64>,
}

impl DistinguishabilityParams {
    /// `g[i]` is g_{i+2}.
    pub fn new(g: Vec<f64>, avg_fidelity: Option<f64>) -> Result<Self> {
        if let Some((i, x)) = g.iter().enumerate().find(|(_, x)| !(0.0..=1.0).contains(*x)) {
            return Err(Error::invalid(format!("g_{} = {x} outside [0, 1]", i + 2)));
        }
        if let Some(f) = avg_fidelity.filter(|f| !(0.0..=1.0).contains(f)) {
            return Err(Error::invalid(format!("average fidelity {f} outside [0, 1]")));
        }
        Ok(DistinguishabilityParams { g, avg_fidelity })
    }

    /// g_k = `value` for 2 ≤ k ≤ `max_k`.
    pub fn uniform(value: f64, max_k: usize) -> Result<Self> {
        Self::new(vec![value; max_k.saturating_sub(1)], None)
    }

    pub fn indistinguishable(max_k: usize) -> Self {
        Self::uniform(1.0, max_k).expect("1 is in range")
    }

    /// The small-mismatch form g_k = 1 − k(1 − F), floored at zero.
    pub fn from_fidelity(avg_fidelity: f64, max_k: usize) -> Result<Self> {
        let g = (2..=max_k).map(|k| (1.0 - k as f64 * (1.0 - avg_fidelity)).max(0.0)).collect();
        Self::new(g, Some(avg_fidelity))
    }

    /// Largest k with a stored g_k (1 when none are stored).
    pub fn max_k(&self) -> usize {
        self.g.len() + 1
    }

    pub fn values(&self) -> &[f64] {
        &self.g
    }

    pub fn avg_fidelity(&self) -> Option<f64> {
        self.avg_fidelity
    }

    /// g_k, with g_1 = 1.
    pub fn g(&self, k: usize) -> Result<f64> {
        match k {
            0 => Err(Error::invalid("g_0 is undefined")),
            1 => Ok(1.0),
            _ => self.g.get(k - 2).copied().ok_or_else(|| Error::invalid(format!("g_{k} not provided (have up to g_{})", self.max_k()))),
        }
    }

    pub fn all_one(&self) -> bool {
        self.g.iter().all(|&x| x == 1.0)
    }

    /// J for a cycle type: Π_{k≥2} g_k^{c_k}.
    pub fn j_of_type(&self, t: &CycleType) -> Result<f64> {
        let mut j = 1.0;
        for k in 2..=t.counts().len() {
            let c = t.count(k);
            if c > 0 {
                j *= self.g(k)?.powi(c as i32);
            }
        }
        Ok(j)
    }
}

/// J(σ) = Π_{k≥2} g_k^{c_k(σ)}; `sigma[i]` is the image of i.
pub fn j_sigma(g: &DistinguishabilityParams, sigma: &[usize]) -> Result<f64> {
    g.j_of_type(&CycleType::of_permutation(sigma)?)
}

/// All permutations of 0..n in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![p.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
        p.swap(i - 1, j);
        p[i..].reverse();
        out.push(p.clone());
    }
}

/// Output probability with partially distinguishable photons:
/// (1/μ(n)μ(s)) Σ_τ J(τ) per(B^τ), where A = U[n|s] and
/// B^τ_{βα} = conj(A_{βα}) A_{τ(β)α}.
///
/// With all g_k = 1 this is |per A|²/μμ; with all g_k = 0 it is
/// per(|A|²)/μμ. Inputs with several photons in one mode are accepted only
/// when all g_k = 1.
pub fn prob_mismatch(
    u: &NetworkUnitary,
    n: &OccupationVector,
    s: &OccupationVector,
    g: &DistinguishabilityParams,
) -> Result<f64> {
    let a = repeated_submatrix(u, n, s)?;
    if a.rows() > MAX_MISMATCH_N {
        return Err(Error::resource("photons in prob_mismatch", a.rows() as u128, MAX_MISMATCH_N as u128));
    }
    if !n.is_collision_free() && !g.all_one() {
        return Err(Error::invalid("partially distinguishable photons need at most one source per input mode"));
    }
    let denom = n.mu()? as f64 * s.mu()? as f64;
    Ok((mismatch_sum(&a, g)? / denom).max(0.0))
}

/// Σ_τ J(τ) per(B^τ) for an arbitrary square matrix A, without the μ
/// normalisation. Terms are reduced in lexicographic order of τ.
pub fn mismatch_sum(a: &ComplexMatrix, g: &DistinguishabilityParams) -> Result<f64> {
    if !a.is_square() {
        return Err(Error::Dimension(format!("mismatch sum of a {}x{} matrix", a.rows(), a.cols())));
    }
    MismatchKernel::new(a.rows(), g)?.eval(a)
}

/// [`mismatch_sum`] with the permutations and their weights J(τ)
/// precomputed, for evaluating many matrices of one size.
#[derive(Debug, Clone)]
pub struct MismatchKernel {
    size: usize,
    /// Permutations with nonzero weight, in lexicographic order.
    terms: Vec<(Vec<usize>, f64)>,
}

impl MismatchKernel {
    pub fn new(size: usize, g: &DistinguishabilityParams) -> Result<Self> {
        if size > MAX_MISMATCH_N {
            return Err(Error::resource("photons in prob_mismatch", size as u128, MAX_MISMATCH_N as u128));
        }
        let mut terms = Vec::new();
        if size > 0 {
            for tau in permutations(size) {
                let j = j_sigma(g, &tau)?;
                if j != 0.0 {
                    terms.push((tau, j));
                }
            }
        }
        Ok(MismatchKernel { size, terms })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn eval(&self, a: &ComplexMatrix) -> Result<f64> {
        let size = self.size;
        if a.rows() != size || a.cols() != size {
            return Err(Error::Dimension(format!("{}x{} matrix for a size-{size} mismatch kernel", a.rows(), a.cols())));
        }
        if size == 0 {
            return Ok(1.0);
        }
        let term = |(tau, j): &(Vec<usize>, f64)| -> f64 {
            let mut b = Vec::with_capacity(size * size);
            for beta in 0..size {
                for alpha in 0..size {
                    b.push(a[(beta, alpha)].conj() * a[(tau[beta], alpha)]);
                }
            }
            j * permanent_slice(&b, size).re
        };
        // Up to 4! terms the fork-join overhead outweighs the work.
        let terms = if size <= 4 { self.terms.iter().map(term).collect() } else { par::map_slice(&self.terms, term) };
        Ok(compensated_sum(terms))
    }
}

/// R_B(g) = Σ_c χ(c_1)(1 − Π_{k≥2} g_k^{c_k})² / Π_k k^{c_k} c_k!, summed
/// in ascending order of the terms.
pub fn bound_rb(n: usize, g: &DistinguishabilityParams) -> Result<f64> {
    let mut terms = Vec::new();
    for (t, _) in cycle_types(n)? {
        let mut log_j = 0.0;
        for k in 2..=n {
            let c = t.count(k);
            if c > 0 {
                log_j += c as f64 * g.g(k)?.ln();
            }
        }
        let defect = -log_j.exp_m1();
        let term = chi(t.count(1))? as f64 * defect * defect / t.centralizer_order()? as f64;
        terms.push(term);
    }
    terms.sort_by(f64::total_cmp);
    Ok(compensated_sum(terms))
}

/// (2N³ − 3N² + 7N − 6)/6, the small-mismatch coefficient.
pub fn small_mismatch_coefficient(n: usize) -> f64 {
    let n = n as i128;
    (2 * n * n * n - 3 * n * n + 7 * n - 6) as f64 / 6.0
}

/// (1 − F)²·(N³/3 − N²/2 + 7N/6 − 1).
pub fn bound_rb_smallmismatch(n: usize, avg_fidelity: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&avg_fidelity) {
        return Err(Error::invalid(format!("average fidelity {avg_fidelity} outside [0, 1]")));
    }
    if n == 0 {
        return Err(Error::invalid("N must be at least 1"));
    }
    let d = 1.0 - avg_fidelity;
    Ok(d * d * small_mismatch_coefficient(n))
}

/// Gaussian spectral envelope with Gaussian arrival-time jitter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct JitterSourceSpec {
    /// σ_ω, the spectral intensity standard deviation.
    pub spectral_width: f64,
    /// σ_τ, the arrival-time standard deviation.
    pub jitter_std: f64,
}

/// g_k for photons with a Gaussian envelope of spectral width σ_ω and
/// arrival times jittered by N(0, σ_τ²).
///
/// Time shifts overlap as ⟨Φ(τ)|Φ(τ′)⟩ = exp(−σ_ω²(τ − τ′)²/2), so the
/// k-fold cyclic integral is a Gaussian integral with the cycle-graph
/// Laplacian. With c = σ_ω²σ_τ²:
/// g_k = Π_{j<k} (1 + 2c(1 − cos(2πj/k)))^{−1/2} and ⟨F⟩ = (1 + 2c)^{−1/2}.
pub fn g_from_jitter(spec: &JitterSourceSpec, max_k: usize) -> Result<DistinguishabilityParams> {
    if !(spec.spectral_width.is_finite() && spec.spectral_width > 0.0) {
        return Err(Error::invalid(format!("spectral width {} must be positive", spec.spectral_width)));
    }
    if !(spec.jitter_std.is_finite() && spec.jitter_std >= 0.0) {
        return Err(Error::invalid(format!("jitter {} must be finite and >= 0", spec.jitter_std)));
    }
    if max_k < 2 {
        return Err(Error::invalid("max_k must be at least 2"));
    }
    let c = (spec.spectral_width * spec.jitter_std).powi(2);
    let g = (2..=max_k)
        .map(|k| {
            let log_g: f64 = (1..k)
                .map(|j| (2.0 * c * (1.0 - (std::f64::consts::TAU * j as f64 / k as f64).cos())).ln_1p())
                .sum();
            (-0.5 * log_g).exp()
        })
        .collect();
    let fidelity = (-0.5 * (2.0 * c).ln_1p()).exp();
    DistinguishabilityParams::new(g, Some(fidelity))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{haar_unitary, RngStream};

    fn ov(v: &[usize]) -> OccupationVector {
        OccupationVector::new(v.to_vec())
    }

    #[test]
    fn cycle_type_examples() {
        let three: Vec<_> = cycle_types(3).unwrap().into_iter().map(|(t, s)| (t.counts().to_vec(), s)).collect();
        assert_eq!(three, vec![(vec![3, 0, 0], 1), (vec![1, 1, 0], 3), (vec![0, 0, 1], 2)]);
        let two: Vec<_> = cycle_types(2).unwrap().into_iter().map(|(t, s)| (t.counts().to_vec(), s)).collect();
        assert_eq!(two, vec![(vec![2, 0], 1), (vec![0, 1], 1)]);
        for n in 1..=MAX_CYCLE_N {
            let total: u128 = cycle_types(n).unwrap().iter().map(|(_, s)| s).sum();
            assert_eq!(total, factorial(n as u64).unwrap());
        }
        assert!(cycle_types(13).is_err());
    }

    #[test]
    fn class_sizes_match_permutation_census() {
        for n in 1..=6 {
            let mut census = std::collections::BTreeMap::new();
            for p in permutations(n) {
                *census.entry(CycleType::of_permutation(&p).unwrap()).or_insert(0u128) += 1;
            }
            let listed: std::collections::BTreeMap<_, _> = cycle_types(n).unwrap().into_iter().collect();
            assert_eq!(census, listed);
        }
    }

    #[test]
    fn chi_values_and_integral() {
        assert_eq!((chi(0).unwrap(), chi(1).unwrap(), chi(2).unwrap()), (1, 2, 5));
        assert_eq!(chi(20).unwrap(), (0..=20u64).map(|k| factorial(20).unwrap() / factorial(k).unwrap()).sum::<u128>());
        assert!(chi(21).is_err());
        // χ(n) = ∫_1^∞ z^n e^{1−z} dz, by composite Simpson on [0, 120] after z = 1 + t.
        for n in 0..=8 {
            let (steps, top) = (240_000, 120.0);
            let h = top / steps as f64;
            let f = |t: f64| (1.0 + t).powi(n) * (-t).exp();
            let mut acc = f(0.0) + f(top);
            for i in 1..steps {
                acc += f(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
            }
            let integral = acc * h / 3.0;
            let exact = chi(n as usize).unwrap() as f64;
            assert!((integral - exact).abs() < 1e-9 * exact, "n={n}: {integral} vs {exact}");
        }
    }

    #[test]
    fn j_examples() {
        let g = DistinguishabilityParams::new(vec![0.9, 0.8, 0.7], None).unwrap();
        assert_eq!(j_sigma(&g, &[0, 1, 2, 3]).unwrap(), 1.0);
        assert_eq!(j_sigma(&g, &[1, 0]).unwrap(), 0.9);
        assert_eq!(j_sigma(&g, &[1, 2, 0, 3]).unwrap(), 0.8);
        assert!((j_sigma(&g, &[1, 0, 3, 2]).unwrap() - 0.81).abs() < 1e-16);
        assert!(j_sigma(&g, &[0, 0]).is_err());
    }

    #[test]
    fn hom_dip_interpolates() {
        let h = NetworkUnitary::beamsplitter();
        let n = ov(&[1, 1]);
        for g2 in [0.0, 0.25, 0.5, 0.9, 1.0] {
            let g = DistinguishabilityParams::uniform(g2, 2).unwrap();
            let p = prob_mismatch(&h, &n, &n, &g).unwrap();
            assert!((p - (1.0 - g2) / 2.0).abs() < 1e-15, "g2={g2}: {p}");
        }
    }

    #[test]
    fn multiphoton_inputs_need_full_indistinguishability() {
        let u = haar_unitary(2, &mut RngStream::new(1)).unwrap();
        let g = DistinguishabilityParams::uniform(0.5, 2).unwrap();
        assert!(prob_mismatch(&u, &ov(&[2, 0]), &ov(&[1, 1]), &g).is_err());
        let one = DistinguishabilityParams::indistinguishable(2);
        let p = prob_mismatch(&u, &ov(&[2, 0]), &ov(&[1, 1]), &one).unwrap();
        let ideal = crate::ideal::prob_ideal(&u, &ov(&[2, 0]), &ov(&[1, 1])).unwrap();
        assert!((p - ideal).abs() < 1e-14);
    }

    #[test]
    fn rb_examples() {
        assert_eq!(bound_rb(5, &DistinguishabilityParams::indistinguishable(5)).unwrap(), 0.0);
        for g2 in [0.0, 0.3, 0.99] {
            let g = DistinguishabilityParams::uniform(g2, 2).unwrap();
            assert!((bound_rb(2, &g).unwrap() - (1.0 - g2) * (1.0 - g2) / 2.0).abs() < 1e-16);
        }
        let zero = DistinguishabilityParams::uniform(0.0, 3).unwrap();
        assert!((bound_rb(3, &zero).unwrap() - 4.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn small_mismatch_polynomial() {
        assert_eq!(bound_rb_smallmismatch(1, 0.3).unwrap(), 0.0);
        assert_eq!(small_mismatch_coefficient(2), 2.0);
        assert_eq!(small_mismatch_coefficient(3), 7.0);
        assert_eq!(small_mismatch_coefficient(20), 2489.0);
        let d: f64 = 6.2e-4;
        assert!((bound_rb_smallmismatch(20, 1.0 - d).unwrap() - 2489.0 * d * d).abs() < 1e-15);
        // Direct evaluation of N³/3 − N²/2 + 7N/6 − 1 as an independent check.
        for n in 1..=40usize {
            let x = n as f64;
            let direct = x.powi(3) / 3.0 - x * x / 2.0 + 7.0 * x / 6.0 - 1.0;
            assert!((small_mismatch_coefficient(n) - direct).abs() < 1e-9 * direct.max(1.0));
        }
    }

    /// g_k by a k-dimensional trapezoid rule over the jitter density.
    fn jitter_quadrature(c: f64, k: usize, nodes: usize) -> f64 {
        let half = 9.0;
        let h = 2.0 * half / (nodes - 1) as f64;
        let t: Vec<f64> = (0..nodes).map(|i| -half + i as f64 * h).collect();
        let w: Vec<f64> = t.iter().map(|x| h * (-x * x / 2.0).exp() / (std::f64::consts::TAU).sqrt()).collect();
        let overlap = |a: f64, b: f64| (-c * (a - b) * (a - b) / 2.0).exp();
        match k {
            2 => t.iter().zip(&w).map(|(a, wa)| t.iter().zip(&w).map(|(b, wb)| wa * wb * overlap(*a, *b).powi(2)).sum::<f64>()).sum(),
            3 => {
                let mut acc = 0.0;
                for (a, wa) in t.iter().zip(&w) {
                    for (b, wb) in t.iter().zip(&w) {
                        let ab = overlap(*a, *b);
                        for (x, wx) in t.iter().zip(&w) {
                            acc += wa * wb * wx * ab * overlap(*b, *x) * overlap(*x, *a);
                        }
                    }
                }
                acc
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn jitter_closed_form_matches_quadrature() {
        for product in [0.05, 0.1, 0.7] {
            let spec = JitterSourceSpec { spectral_width: 2.0, jitter_std: product / 2.0 };
            let g = g_from_jitter(&spec, 4).unwrap();
            let c = product * product;
            for k in 2..=3 {
                let q = jitter_quadrature(c, k, 161);
                assert!((g.g(k).unwrap() - q).abs() < 1e-10, "k={k}, c={c}: {} vs {q}", g.g(k).unwrap());
            }
            assert!(g.values().windows(2).all(|w| w[0] >= w[1]));
        }
        let sharp = g_from_jitter(&JitterSourceSpec { spectral_width: 1.0, jitter_std: 0.0 }, 5).unwrap();
        assert!(sharp.all_one() && sharp.avg_fidelity() == Some(1.0));
        let broad = g_from_jitter(&JitterSourceSpec { spectral_width: 1.0, jitter_std: 1e6 }, 5).unwrap();
        assert!(broad.values().iter().all(|&g| g < 1e-5));
    }

    #[test]
    fn jitter_monte_carlo_k4() {
        let c: f64 = 0.3;
        let g4 = g_from_jitter(&JitterSourceSpec { spectral_width: 1.0, jitter_std: c.sqrt() }, 4).unwrap().g(4).unwrap();
        let mut rng = RngStream::new(44);
        let stats: crate::numeric::RunningStats = (0..200_000)
            .map(|_| {
                let t: Vec<f64> = (0..4).map(|_| rng.complex_normal().re * std::f64::consts::SQRT_2).collect();
                (0..4).map(|i| (-c * (t[i] - t[(i + 1) % 4]).powi(2) / 2.0).exp()).product::<f64>()
            })
            .collect();
        assert!((stats.mean() - g4).abs() < 4.0 * stats.standard_error(), "{} vs {g4}", stats.mean());
    }

    #[test]
    fn jitter_small_mismatch_relation() {
        let g = g_from_jitter(&JitterSourceSpec { spectral_width: 1.0, jitter_std: 0.1 }, 2).unwrap();
        let lhs = 1.0 - g.g(2).unwrap();
        let rhs = 2.0 * (1.0 - g.avg_fidelity().unwrap());
        assert!((lhs - rhs).abs() <= 0.1 * rhs);
    }
}
