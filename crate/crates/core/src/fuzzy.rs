//! Fuzzy sphere with `n` cells and the diagonal two-point lattice.
//!
//! The sphere coordinates are quantized as `X_i = k G_i`, where `G_i` are the
//! Pauli-normalized generators of the `n`-dimensional irreducible
//! representation and `k = 1/√(n² − 1)`. Then `ΣX_i² = I` (unit radius) and
//! `[X_i, X_j] = 2ik ε_ijk X_k`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{su2_generators, ComplexMatrix, MAX_DIMENSION};

/// Largest register size accepted by [`cells_for_register`].
pub const MAX_QUBITS: u32 = 12;

/// Residual bound for a matrix to count as a member of the diagonal lattice.
pub const LATTICE_TOL: f64 = 1e-12;

/// `1/√(n² − 1)`, the unit-radius noncommutativity parameter.
pub fn noncommutativity(n: usize) -> f64 {
    let n = n as f64;
    1.0 / (n * n - 1.0).sqrt()
}

#[derive(Debug, Clone, PartialEq)]
pub struct FuzzySphere {
    n: usize,
    k: f64,
    x: [ComplexMatrix; 3],
}

impl FuzzySphere {
    /// Assembles a sphere from explicit coordinate matrices without checking
    /// the algebraic relations; run [`verify_sphere`] to measure them.
    pub fn from_coordinates(n: usize, k: f64, x: [ComplexMatrix; 3]) -> Result<Self> {
        if let Some(bad) = x.iter().find(|m| m.rows() != n || m.cols() != n) {
            return Err(Error::shape(format!(
                "coordinates must be {n}x{n}, got {}x{}",
                bad.rows(),
                bad.cols()
            )));
        }
        Ok(FuzzySphere { n, k, x })
    }

    pub fn cells(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn coordinates(&self) -> &[ComplexMatrix; 3] {
        &self.x
    }

    pub fn x1(&self) -> &ComplexMatrix {
        &self.x[0]
    }

    pub fn x2(&self) -> &ComplexMatrix {
        &self.x[1]
    }

    pub fn x3(&self) -> &ComplexMatrix {
        &self.x[2]
    }
}

/// Builds the fuzzy sphere with `n` cells.
pub fn fuzzy_sphere(n: usize) -> Result<FuzzySphere> {
    if n < 2 {
        return Err(Error::domain(format!("cell count must be at least 2, got {n}")));
    }
    if n > MAX_DIMENSION {
        return Err(Error::domain(format!("cell count {n} exceeds {MAX_DIMENSION}")));
    }
    let k = noncommutativity(n);
    let g = su2_generators(n)?.into_array();
    let x = g.map(|gi| gi.scale(Complex64::new(k, 0.0)));
    Ok(FuzzySphere { n, k, x })
}

/// `n = 2^N` cells for an `N`-qubit register.
pub fn cells_for_register(qubits: u32) -> Result<usize> {
    if !(1..=MAX_QUBITS).contains(&qubits) {
        return Err(Error::domain(format!("qubit count must be in 1..={MAX_QUBITS}, got {qubits}")));
    }
    Ok(1usize << qubits)
}

/// Frobenius residuals of the defining identities. Field order and names are
/// part of the JSON report format.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SphereResiduals {
    pub hermiticity_x1: f64,
    pub hermiticity_x2: f64,
    pub hermiticity_x3: f64,
    pub casimir: f64,
    pub commutator_12: f64,
    pub commutator_23: f64,
    pub commutator_31: f64,
}

impl SphereResiduals {
    pub fn entries(&self) -> [(&'static str, f64); 7] {
        [
            ("hermiticity_x1", self.hermiticity_x1),
            ("hermiticity_x2", self.hermiticity_x2),
            ("hermiticity_x3", self.hermiticity_x3),
            ("casimir", self.casimir),
            ("commutator_12", self.commutator_12),
            ("commutator_23", self.commutator_23),
            ("commutator_31", self.commutator_31),
        ]
    }

    /// Largest residual. NaN propagates so a broken sphere never passes.
    pub fn max(&self) -> f64 {
        let entries = self.entries();
        if entries.iter().any(|e| e.1.is_nan()) {
            return f64::NAN;
        }
        entries.iter().map(|e| e.1).fold(0.0, f64::max)
    }

    pub fn all_within(&self, tol: f64) -> bool {
        self.entries().iter().all(|&(_, r)| r <= tol)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerificationReport {
    pub n: usize,
    pub k: f64,
    pub residuals: SphereResiduals,
}

fn commutator_residual(a: &ComplexMatrix, b: &ComplexMatrix, target: &ComplexMatrix, k: f64) -> f64 {
    let lhs = a.commutator(b).expect("square coordinates");
    lhs.frobenius_distance(&target.scale(Complex64::new(0.0, 2.0 * k)))
        .expect("square coordinates")
}

/// Measures Hermiticity, the Casimir identity and the three commutators.
/// The commutators are evaluated on separate threads; each residual is
/// computed by the same sequential kernel, so the report does not depend on
/// scheduling.
pub fn verify_sphere(s: &FuzzySphere) -> VerificationReport {
    let [x1, x2, x3] = &s.x;
    let k = s.k;
    let (c12, c23, c31, casimir) = std::thread::scope(|scope| {
        let h12 = scope.spawn(|| commutator_residual(x1, x2, x3, k));
        let h23 = scope.spawn(|| commutator_residual(x2, x3, x1, k));
        let h31 = scope.spawn(|| commutator_residual(x3, x1, x2, k));
        let sum = s
            .x
            .iter()
            .map(|xi| xi.mat_mul(xi).expect("square coordinates"))
            .reduce(|acc, sq| acc.add(&sq).expect("same shape"))
            .expect("three coordinates");
        let casimir = sum.frobenius_distance(&ComplexMatrix::identity(s.n)).expect("same shape");
        (
            h12.join().expect("commutator thread"),
            h23.join().expect("commutator thread"),
            h31.join().expect("commutator thread"),
            casimir,
        )
    });
    let herm = |m: &ComplexMatrix| m.hermiticity_residual().expect("square coordinates");
    VerificationReport {
        n: s.n,
        k,
        residuals: SphereResiduals {
            hermiticity_x1: herm(x1),
            hermiticity_x2: herm(x2),
            hermiticity_x3: herm(x3),
            casimir,
            commutator_12: c12,
            commutator_23: c23,
            commutator_31: c31,
        },
    }
}

/// Membership of a 2×2 matrix in the diagonal (two-point lattice) subalgebra.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LatticeClassification {
    pub is_diagonal: bool,
    pub off_diagonal_residual: f64,
}

pub fn classify_lattice(m: &ComplexMatrix) -> Result<LatticeClassification> {
    if m.rows() != 2 || m.cols() != 2 {
        return Err(Error::shape(format!("expected a 2x2 matrix, got {}x{}", m.rows(), m.cols())));
    }
    let residual = (m.get(0, 1).norm_sqr() + m.get(1, 0).norm_sqr()).sqrt();
    Ok(LatticeClassification { is_diagonal: residual <= LATTICE_TOL, off_diagonal_residual: residual })
}

/// `(n, k(n))` for each requested cell count, in input order.
pub fn classical_limit_profile(n_values: &[usize]) -> Result<Vec<(usize, f64)>> {
    n_values
        .iter()
        .map(|&n| {
            if n < 2 {
                Err(Error::domain(format!("cell count must be at least 2, got {n}")))
            } else {
                Ok((n, noncommutativity(n)))
            }
        })
        .collect()
}
