//! Matrix permanents.
//!
//! [`permanent_ryser`] is the production kernel: Ryser's inclusion–exclusion
//! formula walked in Gray-code order so each subset step costs one row-sum
//! update, O(N·2^N) in total. [`permanent_naive`] and
//! [`permanent_contingency`] are slow, independent references used to
//! cross-check it.

use std::sync::OnceLock;

use num_complex::Complex64;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::fock::OccupationVector;
use crate::matrix::{ComplexMatrix, NetworkUnitary};
use crate::numeric::factorial;
use crate::par;

/// Default hard cap on the permanent size.
pub const DEFAULT_MAX_SIZE: usize = 30;
/// Cap on the brute-force reference.
pub const NAIVE_MAX_SIZE: usize = 9;
/// Cap on contingency-table enumeration.
pub const CONTINGENCY_MAX_PHOTONS: usize = 6;
/// Environment variable overriding [`DEFAULT_MAX_SIZE`].
pub const MAX_SIZE_ENV: &str = "BOSONBUDGET_MAX_N";

/// Subset walks at or above this size are split into [`RYSER_CHUNKS`]
/// contiguous pieces that are summed in index order.
const PARALLEL_THRESHOLD: usize = 16;
const RYSER_CHUNKS: usize = 64;

type Scratch = SmallVec<[Complex64; 32]>;

/// Effective permanent size cap: [`DEFAULT_MAX_SIZE`] unless overridden by
/// `BOSONBUDGET_MAX_N` (clamped to 62).
pub fn max_size() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var(MAX_SIZE_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .map(|v| v.min(62))
            .unwrap_or(DEFAULT_MAX_SIZE)
    })
}

fn check_square(a: &ComplexMatrix) -> Result<usize> {
    if !a.is_square() {
        return Err(Error::Dimension(format!("permanent of a non-square {}x{} matrix", a.rows(), a.cols())));
    }
    Ok(a.rows())
}

/// Permanent by Ryser's formula with Gray-code subset ordering.
///
/// The 0×0 permanent is 1. Sizes above [`max_size`] are refused.
pub fn permanent_ryser(a: &ComplexMatrix) -> Result<Complex64> {
    let n = check_square(a)?;
    let cap = max_size();
    if n > cap {
        return Err(Error::resource("permanent size", n as u128, cap as u128));
    }
    Ok(permanent_slice(a.as_slice(), n))
}

/// Permanent of the n×n row-major block `data`. No size checks.
pub(crate) fn permanent_slice(data: &[Complex64], n: usize) -> Complex64 {
    debug_assert_eq!(data.len(), n * n);
    match n {
        0 => Complex64::new(1.0, 0.0),
        1 => data[0],
        2 => data[0] * data[3] + data[1] * data[2],
        3 => {
            data[0] * (data[4] * data[8] + data[5] * data[7])
                + data[1] * (data[3] * data[8] + data[5] * data[6])
                + data[2] * (data[3] * data[7] + data[4] * data[6])
        }
        _ => ryser(data, n),
    }
}

fn ryser(data: &[Complex64], n: usize) -> Complex64 {
    let total: u64 = 1u64 << n;
    let sum = if n >= PARALLEL_THRESHOLD {
        let chunk = (total as usize).div_ceil(RYSER_CHUNKS);
        let partials = par::map_chunks(total as usize, chunk, |r| ryser_range(data, n, r.start as u64, r.end as u64));
        partials.into_iter().fold(Complex64::new(0.0, 0.0), |acc, x| acc + x)
    } else {
        ryser_range(data, n, 0, total)
    };
    if n % 2 == 1 {
        -sum
    } else {
        sum
    }
}

/// Σ over Gray-code steps k in [start, end) of (−1)^{|S_k|} Π_i Σ_{j∈S_k} a_ij,
/// with S_k the subset encoded by k ^ (k >> 1).
fn ryser_range(data: &[Complex64], n: usize, start: u64, end: u64) -> Complex64 {
    let mut row_sums: Scratch = SmallVec::from_elem(Complex64::new(0.0, 0.0), n);
    let gray0 = start ^ (start >> 1);
    for j in (0..n).filter(|&j| gray0 >> j & 1 == 1) {
        for (i, s) in row_sums.iter_mut().enumerate() {
            *s += data[i * n + j];
        }
    }
    let term = |row_sums: &Scratch, gray: u64| {
        let prod = row_sums.iter().fold(Complex64::new(1.0, 0.0), |p, s| p * s);
        if gray.count_ones() % 2 == 1 {
            -prod
        } else {
            prod
        }
    };
    // The empty subset contributes nothing for n >= 1.
    let mut acc = if start > 0 { term(&row_sums, gray0) } else { Complex64::new(0.0, 0.0) };
    for k in start + 1..end {
        let j = k.trailing_zeros() as usize;
        let gray = k ^ (k >> 1);
        if gray >> j & 1 == 1 {
            for (i, s) in row_sums.iter_mut().enumerate() {
                *s += data[i * n + j];
            }
        } else {
            for (i, s) in row_sums.iter_mut().enumerate() {
                *s -= data[i * n + j];
            }
        }
        acc += term(&row_sums, gray);
    }
    acc
}

/// Brute-force permanent: the sum over all N! permutations. Reference only.
pub fn permanent_naive(a: &ComplexMatrix) -> Result<Complex64> {
    let n = check_square(a)?;
    if n > NAIVE_MAX_SIZE {
        return Err(Error::resource("naive permanent size", n as u128, NAIVE_MAX_SIZE as u128));
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = Complex64::new(0.0, 0.0);
    // Heap's algorithm, iterative form.
    let mut c = vec![0usize; n];
    let product = |p: &[usize]| p.iter().enumerate().fold(Complex64::new(1.0, 0.0), |acc, (i, &j)| acc * a[(i, j)]);
    total += product(&perm);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            total += product(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(total)
}

/// Mode indices with multiplicity: mode k listed `n_k` times.
pub(crate) fn expand_indices(n: &OccupationVector) -> SmallVec<[usize; 16]> {
    n.as_slice().iter().enumerate().flat_map(|(k, &c)| std::iter::repeat_n(k, c)).collect()
}

fn check_pair(u: &NetworkUnitary, n: &OccupationVector, s: &OccupationVector) -> Result<usize> {
    let m = u.modes();
    if n.modes() != m || s.modes() != m {
        return Err(Error::Dimension(format!(
            "occupation vectors of length {} and {} for a {m}-mode network",
            n.modes(),
            s.modes()
        )));
    }
    if n.total() != s.total() {
        return Err(Error::PhotonNumberMismatch { input: n.total(), output: s.total() });
    }
    Ok(n.total())
}

/// The |n|×|n| matrix U[n|s]: row k repeated n_k times, column l repeated
/// s_l times.
pub fn repeated_submatrix(u: &NetworkUnitary, n: &OccupationVector, s: &OccupationVector) -> Result<ComplexMatrix> {
    check_pair(u, n, s)?;
    Ok(u.matrix().select(&expand_indices(n), &expand_indices(s)))
}

/// per(U[n|s]).
pub fn permanent_repeated(u: &NetworkUnitary, n: &OccupationVector, s: &OccupationVector) -> Result<Complex64> {
    let size = check_pair(u, n, s)?;
    let cap = max_size();
    if size > cap {
        return Err(Error::resource("permanent size", size as u128, cap as u128));
    }
    let rows = expand_indices(n);
    let cols = expand_indices(s);
    let mut buf: Scratch = SmallVec::with_capacity(size * size);
    for &r in &rows {
        for &c in &cols {
            buf.push(u[(r, c)]);
        }
    }
    Ok(permanent_slice(&buf, size))
}

/// Non-negative integer table with prescribed row and column sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContingencyTable {
    rows: usize,
    cols: usize,
    counts: Vec<usize>,
}

impl ContingencyTable {
    pub fn get(&self, k: usize, l: usize) -> usize {
        self.counts[k * self.cols + l]
    }

    pub fn row_sums(&self) -> Vec<usize> {
        (0..self.rows).map(|k| (0..self.cols).map(|l| self.get(k, l)).sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<usize> {
        (0..self.cols).map(|l| (0..self.rows).map(|k| self.get(k, l)).sum()).collect()
    }

    /// μ(T) = Π T_kl!.
    pub fn mu(&self) -> Result<u128> {
        self.counts.iter().try_fold(1u128, |acc, &c| {
            acc.checked_mul(factorial(c as u64)?).ok_or_else(|| Error::Overflow("mu(T)".into()))
        })
    }

    /// Fisher–Yates probability μ(s)μ(n) / (N! μ(T)) of this table.
    pub fn fisher_yates_probability(&self) -> Result<f64> {
        let mu_margins = |m: &[usize]| m.iter().try_fold(1u128, |acc, &c| Ok::<_, Error>(acc * factorial(c as u64)?));
        let total: usize = self.counts.iter().sum();
        let num = mu_margins(&self.row_sums())? as f64 * mu_margins(&self.col_sums())? as f64;
        Ok(num / (factorial(total as u64)? as f64 * self.mu()? as f64))
    }
}

/// All contingency tables with the given row and column sums, in
/// lexicographic order of their row-major entries (descending per row).
pub fn contingency_tables(row_sums: &[usize], col_sums: &[usize]) -> Result<Vec<ContingencyTable>> {
    let total: usize = row_sums.iter().sum();
    if total != col_sums.iter().sum::<usize>() {
        return Err(Error::PhotonNumberMismatch { input: total, output: col_sums.iter().sum() });
    }
    let (rows, cols) = (row_sums.len(), col_sums.len());
    if rows == 0 || cols == 0 {
        return Ok(vec![ContingencyTable { rows, cols, counts: vec![0; rows * cols] }]);
    }
    let mut found = Vec::new();
    let mut counts = vec![0usize; rows * cols];
    let mut remaining = col_sums.to_vec();
    fill_row(0, 0, row_sums[0], row_sums, &mut remaining, &mut counts, cols, &mut found);
    Ok(found.into_iter().map(|counts| ContingencyTable { rows, cols, counts }).collect())
}

#[allow(clippy::too_many_arguments)]
fn fill_row(
    k: usize,
    l: usize,
    left_in_row: usize,
    row_sums: &[usize],
    remaining: &mut [usize],
    counts: &mut [usize],
    cols: usize,
    out: &mut Vec<Vec<usize>>,
) {
    let rows = row_sums.len();
    if k == rows {
        if remaining.iter().all(|&r| r == 0) {
            out.push(counts.to_vec());
        }
        return;
    }
    if l == cols - 1 {
        // Last column takes whatever is left in the row.
        if left_in_row <= remaining[l] {
            counts[k * cols + l] = left_in_row;
            remaining[l] -= left_in_row;
            let next = row_sums.get(k + 1).copied().unwrap_or(0);
            fill_row(k + 1, 0, next, row_sums, remaining, counts, cols, out);
            remaining[l] += left_in_row;
            counts[k * cols + l] = 0;
        }
        return;
    }
    for t in (0..=left_in_row.min(remaining[l])).rev() {
        counts[k * cols + l] = t;
        remaining[l] -= t;
        fill_row(k, l + 1, left_in_row - t, row_sums, remaining, counts, cols, out);
        remaining[l] += t;
    }
    counts[k * cols + l] = 0;
}

/// per(U[n|s]) through the contingency-table expansion
/// N!·Σ_T P(T|s,n)·Π U_kl^{T_kl}, with P the Fisher–Yates distribution.
/// Only rows with n_k > 0 and columns with s_l > 0 enter the tables.
pub fn permanent_contingency(u: &NetworkUnitary, n: &OccupationVector, s: &OccupationVector) -> Result<Complex64> {
    let total = check_pair(u, n, s)?;
    if total > CONTINGENCY_MAX_PHOTONS {
        return Err(Error::resource("contingency enumeration photons", total as u128, CONTINGENCY_MAX_PHOTONS as u128));
    }
    if total == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let row_modes: Vec<usize> = (0..n.modes()).filter(|&k| n[k] > 0).collect();
    let col_modes: Vec<usize> = (0..s.modes()).filter(|&l| s[l] > 0).collect();
    let row_sums: Vec<usize> = row_modes.iter().map(|&k| n[k]).collect();
    let col_sums: Vec<usize> = col_modes.iter().map(|&l| s[l]).collect();
    let n_fact = factorial(total as u64)? as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for table in contingency_tables(&row_sums, &col_sums)? {
        let mut term = Complex64::new(table.fisher_yates_probability()?, 0.0);
        for (a, &k) in row_modes.iter().enumerate() {
            for (b, &l) in col_modes.iter().enumerate() {
                let t = table.get(a, b);
                if t > 0 {
                    term *= u[(k, l)].powu(t as u32);
                }
            }
        }
        acc += term;
    }
    Ok(acc * n_fact)
}
