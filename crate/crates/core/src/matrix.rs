//! Dense complex matrices and network unitaries.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense row-major complex matrix with finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        if let Some(i) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::invalid(format!("non-finite entry at ({}, {})", i / cols.max(1), i % cols.max(1))));
        }
        Ok(ComplexMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ComplexMatrix { rows, cols, data }
    }

    /// Builds a matrix from real entries given row by row.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let data = rows.iter().flat_map(|r| r.iter().map(|&x| Complex64::new(x, 0.0))).collect();
        Self::new(rows.len(), cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    /// Entrywise squared modulus, as a complex matrix with zero imaginary part.
    pub fn abs_squared(&self) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| Complex64::new(z.norm_sqr(), 0.0)).collect(),
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        ComplexMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z * c).collect() }
    }

    pub fn matmul(&self, other: &ComplexMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.data[k * other.cols + j];
                }
            }
        }
        Ok(out)
    }

    /// Rows and columns picked by index lists; indices may repeat.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])])
    }

    /// Max-norm of `self† self − I`.
    pub fn unitarity_defect(&self) -> f64 {
        if self.rows != self.cols {
            return f64::INFINITY;
        }
        let n = self.cols;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..self.rows {
                    acc += self[(k, i)].conj() * self[(k, j)];
                }
                if i == j {
                    acc -= 1.0;
                }
                worst = worst.max(acc.norm());
            }
        }
        worst
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Tolerance on `U†U − I` accepted for a network matrix.
pub const UNITARITY_TOLERANCE: f64 = 1e-10;

/// An M×M unitary describing a lossless linear-optical network, together
/// with its measured unitarity defect.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkUnitary {
    matrix: ComplexMatrix,
    defect: f64,
}

impl NetworkUnitary {
    /// Wraps `matrix`, rejecting it if `U†U` deviates from the identity by
    /// more than [`UNITARITY_TOLERANCE`].
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(matrix, UNITARITY_TOLERANCE)
    }

    pub fn with_tolerance(matrix: ComplexMatrix, tolerance: f64) -> Result<Self> {
        if !matrix.is_square() || matrix.rows() == 0 {
            return Err(Error::Dimension(format!("network matrix must be square and non-empty, got {}x{}", matrix.rows(), matrix.cols())));
        }
        let defect = matrix.unitarity_defect();
        if defect > tolerance {
            return Err(Error::Numeric(format!("matrix is not unitary: defect {defect:.3e} > {tolerance:.1e}")));
        }
        Ok(NetworkUnitary { matrix, defect })
    }

    /// Skips the defect check; the defect is still measured and recorded.
    pub(crate) fn trusted(matrix: ComplexMatrix) -> Self {
        let defect = matrix.unitarity_defect();
        NetworkUnitary { matrix, defect }
    }

    pub fn identity(modes: usize) -> Self {
        NetworkUnitary { matrix: ComplexMatrix::identity(modes), defect: 0.0 }
    }

    /// The balanced two-mode beamsplitter (1/√2)[[1, 1], [1, −1]].
    pub fn beamsplitter() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self::trusted(ComplexMatrix::from_real_rows(&[&[h, h], &[h, -h]]).expect("2x2"))
    }

    pub fn modes(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn unitarity_defect(&self) -> f64 {
        self.defect
    }

    pub fn adjoint(&self) -> Self {
        NetworkUnitary { matrix: self.matrix.adjoint(), defect: self.defect }
    }

    /// Network `other` applied after `self`: the mode transformation of the
    /// cascade is the matrix product `self · other`.
    pub fn then(&self, other: &NetworkUnitary) -> Result<Self> {
        Ok(Self::trusted(self.matrix.matmul(&other.matrix)?))
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }
}

impl std::ops::Index<(usize, usize)> for NetworkUnitary {
    type Output = Complex64;
    #[inline]
    fn index(&self, idx: (usize, usize)) -> &Complex64 {
        &self.matrix[idx]
    }
}
