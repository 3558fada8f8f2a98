//! Random matrix ensembles and seeded random streams.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, NetworkUnitary};

/// Largest mode count accepted by [`haar_unitary`].
pub const MAX_HAAR_MODES: usize = 4096;

/// Name of the generator behind [`RngStream`].
pub const RNG_ALGORITHM: &str = "chacha20";

/// A seeded, splittable random stream.
///
/// Identical `(seed, stream)` pairs give identical draw sequences.
/// [`RngStream::child`] derives independent streams for parallel tasks
/// without consuming draws from the parent.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    stream: u64,
    rng: ChaCha20Rng,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self::with_stream(seed, 0)
    }

    pub fn with_stream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        RngStream { seed, stream, rng }
    }

    /// Independent sub-stream number `index`.
    pub fn child(&self, index: u64) -> Self {
        Self::with_stream(self.seed, splitmix64(self.stream ^ splitmix64(index.wrapping_add(1))))
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    pub fn algorithm(&self) -> &'static str {
        RNG_ALGORITHM
    }

    /// Number of 32-bit words drawn so far.
    pub fn position(&self) -> u128 {
        self.rng.get_word_pos()
    }

    /// Uniform draw in [0, 1) with 53 random bits.
    pub fn uniform(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard complex normal: real and imaginary parts i.i.d. N(0, 1/2).
    pub fn complex_normal(&mut self) -> Complex64 {
        let re: f64 = StandardNormal.sample(&mut self.rng);
        let im: f64 = StandardNormal.sample(&mut self.rng);
        Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.rng.fill_bytes(dst)
    }
}

/// Haar-distributed M×M unitary: QR of a complex Ginibre matrix with the
/// phases of R's diagonal moved into Q.
pub fn haar_unitary(m: usize, rng: &mut RngStream) -> Result<NetworkUnitary> {
    if m == 0 || m > MAX_HAAR_MODES {
        return Err(Error::resource("Haar unitary modes", m as u128, MAX_HAAR_MODES as u128));
    }
    let z = DMatrix::<Complex64>::from_fn(m, m, |_, _| rng.complex_normal());
    let qr = z.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..m {
        let d = r[(j, j)];
        let norm = d.norm();
        let phase = if norm > 0.0 { d / norm } else { Complex64::new(1.0, 0.0) };
        for i in 0..m {
            q[(i, j)] *= phase;
        }
    }
    let matrix = ComplexMatrix::from_fn(m, m, |i, j| q[(i, j)]);
    NetworkUnitary::new(matrix)
}

/// rows×cols matrix of i.i.d. complex Gaussians with zero mean and
/// E|x|² = `variance`.
pub fn gaussian_matrix(rows: usize, cols: usize, variance: f64, rng: &mut RngStream) -> Result<ComplexMatrix> {
    if !(variance.is_finite() && variance > 0.0) {
        return Err(Error::invalid(format!("variance must be positive, got {variance}")));
    }
    let scale = variance.sqrt();
    Ok(ComplexMatrix::from_fn(rows, cols, |_, _| rng.complex_normal() * scale))
}

/// N×N matrix of i.i.d. complex Gaussians with density (M/π)exp(−M|x|²),
/// the small-submatrix approximation of a Haar unitary.
pub fn gaussian_submatrix(n: usize, m: usize, rng: &mut RngStream) -> Result<ComplexMatrix> {
    if n == 0 || m == 0 {
        return Err(Error::invalid(format!("gaussian_submatrix needs N, M >= 1, got N={n}, M={m}")));
    }
    if m < 10 * n * n {
        log::warn!("gaussian_submatrix: M={m} < 10 N^2 = {}; the Gaussian approximation is poor", 10 * n * n);
    }
    gaussian_matrix(n, n, 1.0 / m as f64, rng)
}

/// The M-point discrete Fourier matrix U_jk = exp(2πi·jk/M)/√M
/// (zero-based indices). Quarter-turn phases are exact.
pub fn fourier_matrix(m: usize) -> Result<NetworkUnitary> {
    if m == 0 {
        return Err(Error::invalid("fourier_matrix needs M >= 1"));
    }
    let norm = 1.0 / (m as f64).sqrt();
    let matrix = ComplexMatrix::from_fn(m, m, |j, k| root_of_unity((j * k) % m, m) * norm);
    Ok(NetworkUnitary::new(matrix).expect("DFT is unitary"))
}

/// exp(2πi·k/m) with exact values at multiples of a quarter turn.
fn root_of_unity(k: usize, m: usize) -> Complex64 {
    if (4 * k).is_multiple_of(m) {
        return match 4 * k / m {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / m as f64)
}
