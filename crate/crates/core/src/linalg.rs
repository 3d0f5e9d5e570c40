//! Dense complex matrices and the irreducible SU(2) generators.
//!
//! Matrices are stored row-major. Every operation returns a new value; nothing
//! here mutates its inputs, so matrices can be shared freely across threads.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::json::ComplexRepr;

/// Largest representation dimension accepted by [`su2_generators`] and the
/// fuzzy-sphere constructor (12 qubits).
pub const MAX_DIMENSION: usize = 4096;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Dense complex matrix with finite entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixRepr", into = "MatrixRepr")]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::shape(format!("empty matrix {rows}x{cols}")));
        }
        if data.len() != rows * cols {
            return Err(Error::shape(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(idx) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite { row: idx / cols, col: idx % cols });
        }
        Ok(ComplexMatrix { rows, cols, data })
    }

    /// Builds a matrix from nested rows. All rows must have the same length.
    pub fn from_rows<R: AsRef<[Complex64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        if let Some(bad) = rows.iter().find(|r| r.as_ref().len() != cols) {
            return Err(Error::shape(format!(
                "ragged rows: expected {cols} columns, found {}",
                bad.as_ref().len()
            )));
        }
        let data = rows.iter().flat_map(|r| r.as_ref().iter().copied()).collect();
        Self::new(rows.len(), cols, data)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        ComplexMatrix { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![ONE; n])
    }

    /// Square matrix with `diag` on the main diagonal.
    pub fn diagonal(diag: &[Complex64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * n + i] = d;
        }
        m
    }

    pub fn pauli_x() -> Self {
        Self::from_rows(&[[ZERO, ONE], [ONE, ZERO]]).unwrap()
    }

    pub fn pauli_y() -> Self {
        Self::from_rows(&[[ZERO, -I], [I, ZERO]]).unwrap()
    }

    pub fn pauli_z() -> Self {
        Self::diagonal(&[ONE, -ONE])
    }

    /// The three Pauli matrices in order.
    pub fn paulis() -> [Self; 3] {
        [Self::pauli_x(), Self::pauli_y(), Self::pauli_z()]
    }

    /// Hadamard basis change, mapping |0⟩,|1⟩ to |+⟩,|−⟩.
    pub fn hadamard() -> Self {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self::from_rows(&[[h, h], [h, -h]]).unwrap()
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

    /// Row-major entries.
    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        assert!(row < self.rows && col < self.cols, "index ({row}, {col}) out of bounds");
        self.data[row * self.cols + col]
    }

    /// Returns a copy with entry `(row, col)` replaced.
    pub fn with_entry(&self, row: usize, col: usize, value: Complex64) -> Result<Self> {
        if row >= self.rows || col >= self.cols {
            return Err(Error::shape(format!(
                "index ({row}, {col}) outside {}x{}",
                self.rows, self.cols
            )));
        }
        let mut data = self.data.clone();
        data[row * self.cols + col] = value;
        Self::new(self.rows, self.cols, data)
    }

    /// Matrix product `self · rhs`.
    pub fn mat_mul(&self, rhs: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let (n, m) = (self.rows, rhs.cols);
        let mut out = vec![ZERO; n * m];
        for i in 0..n {
            let row_out = &mut out[i * m..(i + 1) * m];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == ZERO {
                    continue;
                }
                let row_rhs = &rhs.data[k * m..(k + 1) * m];
                for (o, &b) in row_out.iter_mut().zip(row_rhs) {
                    *o += a * b;
                }
            }
        }
        Ok(ComplexMatrix { rows: n, cols: m, data: out })
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> ComplexMatrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.data[i * self.cols + j].conj());
            }
        }
        ComplexMatrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn add(&self, rhs: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.zip_with(rhs, |a, b| a - b)
    }

    pub fn scale(&self, factor: Complex64) -> ComplexMatrix {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| factor * z).collect(),
        }
    }

    /// `[self, rhs] = self·rhs − rhs·self`.
    pub fn commutator(&self, rhs: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.mat_mul(rhs)?.sub(&rhs.mat_mul(self)?)
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.cols {
            return Err(Error::shape(format!(
                "cannot apply {}x{} matrix to a vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok(self
            .data
            .chunks_exact(self.cols)
            .map(|row| row.iter().zip(v).map(|(&a, &b)| a * b).sum())
            .collect())
    }

    pub fn trace(&self) -> Result<Complex64> {
        self.require_square()?;
        Ok((0..self.rows).map(|i| self.data[i * self.cols + i]).sum())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// ‖self − rhs‖_F.
    pub fn frobenius_distance(&self, rhs: &ComplexMatrix) -> Result<f64> {
        self.check_same_shape(rhs)?;
        Ok(self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }

    /// True iff ‖A†A − I‖_F ≤ `tol`.
    pub fn is_unitary(&self, tol: f64) -> Result<bool> {
        Ok(self.unitarity_residual()? <= tol)
    }

    /// ‖A†A − I‖_F for a square matrix.
    pub fn unitarity_residual(&self) -> Result<f64> {
        self.require_square()?;
        self.dagger()
            .mat_mul(self)?
            .frobenius_distance(&Self::identity(self.rows))
    }

    /// ‖A − A†‖_F.
    pub fn hermiticity_residual(&self) -> Result<f64> {
        self.require_square()?;
        self.frobenius_distance(&self.dagger())
    }

    /// Largest entrywise deviation |A_ij − conj(A_ji)|.
    pub fn max_hermitian_deviation(&self) -> Result<f64> {
        self.require_square()?;
        let n = self.rows;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                worst = worst.max((self.data[i * n + j] - self.data[j * n + i].conj()).norm());
            }
        }
        Ok(worst)
    }

    fn zip_with(
        &self,
        rhs: &ComplexMatrix,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<ComplexMatrix> {
        self.check_same_shape(rhs)?;
        Ok(ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    fn check_same_shape(&self, rhs: &ComplexMatrix) -> Result<()> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::shape(format!(
                "shape mismatch: {}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(())
    }

    pub(crate) fn require_square(&self) -> Result<()> {
        if !self.is_square() {
            return Err(Error::shape(format!(
                "expected a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        Ok(())
    }
}

/// Free-function form of [`ComplexMatrix::mat_mul`].
pub fn mat_mul(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.mat_mul(b)
}

pub fn dagger(a: &ComplexMatrix) -> ComplexMatrix {
    a.dagger()
}

pub fn is_unitary(a: &ComplexMatrix, tol: f64) -> Result<bool> {
    a.is_unitary(tol)
}

pub fn frobenius_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    a.frobenius_distance(b)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    entries: Vec<ComplexRepr>,
}

impl TryFrom<MatrixRepr> for ComplexMatrix {
    type Error = Error;

    fn try_from(r: MatrixRepr) -> Result<Self> {
        ComplexMatrix::new(r.rows, r.cols, r.entries.into_iter().map(Into::into).collect())
    }
}

impl From<ComplexMatrix> for MatrixRepr {
    fn from(m: ComplexMatrix) -> Self {
        MatrixRepr {
            rows: m.rows,
            cols: m.cols,
            entries: m.data.into_iter().map(Into::into).collect(),
        }
    }
}

/// Pauli-normalized generators `G_i = 2 J_i` of the `n`-dimensional
/// irreducible representation of SU(2).
///
/// With this normalization `[G_i, G_j] = 2i ε_ijk G_k`, `G_3` has the
/// eigenvalues `n−1, n−3, …, −(n−1)`, and `n = 2` gives the Pauli matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorTriple {
    n: usize,
    g: [ComplexMatrix; 3],
}

impl GeneratorTriple {
    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn g1(&self) -> &ComplexMatrix {
        &self.g[0]
    }

    pub fn g2(&self) -> &ComplexMatrix {
        &self.g[1]
    }

    pub fn g3(&self) -> &ComplexMatrix {
        &self.g[2]
    }

    pub fn as_array(&self) -> &[ComplexMatrix; 3] {
        &self.g
    }

    pub fn into_array(self) -> [ComplexMatrix; 3] {
        self.g
    }
}

/// Builds the generators from the spin-`j = (n−1)/2` ladder operators.
pub fn su2_generators(n: usize) -> Result<GeneratorTriple> {
    if n < 2 {
        return Err(Error::domain(format!("representation dimension must be at least 2, got {n}")));
    }
    if n > MAX_DIMENSION {
        return Err(Error::SizeLimit { n, max: MAX_DIMENSION });
    }

    // Basis index r carries m = j − r. The raising element between rows r−1
    // and r is √(j(j+1) − m(m+1)) = √(r(n−r)), an integer product under the root.
    let mut g1 = vec![ZERO; n * n];
    let mut g2 = vec![ZERO; n * n];
    for r in 1..n {
        let c = ((r * (n - r)) as f64).sqrt();
        // G1 = J+ + J-, G2 = −i (J+ − J-)
        g1[(r - 1) * n + r] = Complex64::new(c, 0.0);
        g1[r * n + (r - 1)] = Complex64::new(c, 0.0);
        g2[(r - 1) * n + r] = Complex64::new(0.0, -c);
        g2[r * n + (r - 1)] = Complex64::new(0.0, c);
    }
    let g3: Vec<Complex64> = (0..n)
        .map(|r| Complex64::new((n as f64 - 1.0) - 2.0 * r as f64, 0.0))
        .collect();

    Ok(GeneratorTriple {
        n,
        g: [
            ComplexMatrix { rows: n, cols: n, data: g1 },
            ComplexMatrix { rows: n, cols: n, data: g2 },
            ComplexMatrix::diagonal(&g3),
        ],
    })
}
