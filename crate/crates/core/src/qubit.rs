//! One-qubit pure states `a|0⟩ + b|1⟩` and their Bloch-sphere coordinates.

use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

/// Allowed deviation of |a|² + |b|² from one.
pub const NORM_TOL: f64 = 1e-12;

/// Normalized one-qubit state.
///
/// `PartialEq` is exact entrywise equality. Use [`Qubit::fidelity`] or
/// [`Qubit::same_ray`] when global phase should be ignored.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "QubitRepr", into = "QubitRepr")]
pub struct Qubit {
    a: Complex64,
    b: Complex64,
}

impl Qubit {
    pub const ZERO: Qubit = Qubit { a: Complex64::new(1.0, 0.0), b: Complex64::new(0.0, 0.0) };
    pub const ONE: Qubit = Qubit { a: Complex64::new(0.0, 0.0), b: Complex64::new(1.0, 0.0) };

    /// Normalizes `(a, b)` into a state. Inputs already at unit norm (to the
    /// last bit) are kept verbatim.
    pub fn new(a: Complex64, b: Complex64) -> Result<Self> {
        if ![a.re, a.im, b.re, b.im].iter().all(|x| x.is_finite()) {
            return Err(Error::domain("amplitudes must be finite"));
        }
        let norm = (a.norm_sqr() + b.norm_sqr()).sqrt();
        if norm == 0.0 {
            return Err(Error::DegenerateState);
        }
        if (norm - 1.0).abs() <= f64::EPSILON {
            return Ok(Qubit { a, b });
        }
        Ok(Qubit { a: a / norm, b: b / norm })
    }

    /// Accepts amplitudes that are already normalized within [`NORM_TOL`],
    /// without rescaling them.
    pub fn from_normalized(a: Complex64, b: Complex64) -> Result<Self> {
        let total = a.norm_sqr() + b.norm_sqr();
        if !total.is_finite() || (total - 1.0).abs() > NORM_TOL {
            return Err(Error::domain(format!(
                "|a|² + |b|² = {total} is not 1 within {NORM_TOL:e}"
            )));
        }
        Ok(Qubit { a, b })
    }

    /// Rescales a vector produced by a unitary map. Panics only if the vector
    /// is zero, which a unitary cannot produce from a normalized state.
    pub(crate) fn renormalized(v: [Complex64; 2]) -> Self {
        Self::new(v[0], v[1]).expect("unitary image of a state is nonzero")
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    pub fn amplitudes(&self) -> [Complex64; 2] {
        [self.a, self.b]
    }

    /// Probabilities `(|a|², |b|²)`.
    pub fn probabilities(&self) -> (f64, f64) {
        (self.a.norm_sqr(), self.b.norm_sqr())
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &Qubit) -> Complex64 {
        self.a.conj() * other.a + self.b.conj() * other.b
    }

    /// |⟨self|other⟩|, equal to one iff the states differ by a global phase.
    pub fn fidelity(&self, other: &Qubit) -> f64 {
        self.inner(other).norm()
    }

    /// Physical equality: same point on the Bloch sphere.
    pub fn same_ray(&self, other: &Qubit, tol: f64) -> bool {
        (1.0 - self.fidelity(other)).abs() <= tol
    }

    /// Largest entrywise deviation from `other`.
    pub fn max_deviation(&self, other: &Qubit) -> f64 {
        (self.a - other.a).norm().max((self.b - other.b).norm())
    }

    pub fn approx_eq(&self, other: &Qubit, tol: f64) -> bool {
        self.max_deviation(other) <= tol
    }

    pub fn with_global_phase(&self, phase: f64) -> Qubit {
        let p = Complex64::from_polar(1.0, phase);
        Qubit { a: p * self.a, b: p * self.b }
    }

    /// Applies a 2×2 unitary and renormalizes.
    pub fn transformed(&self, m: &ComplexMatrix) -> Result<Qubit> {
        if m.rows() != 2 || m.cols() != 2 {
            return Err(Error::shape(format!(
                "qubit operators are 2x2, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        let v = m.apply(&self.amplitudes())?;
        Qubit::new(v[0], v[1])
    }

    pub fn bloch_vector(&self) -> BlochVector {
        bloch_vector(self)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QubitRepr {
    #[serde(with = "crate::json")]
    a: Complex64,
    #[serde(with = "crate::json")]
    b: Complex64,
}

impl TryFrom<QubitRepr> for Qubit {
    type Error = Error;

    fn try_from(r: QubitRepr) -> Result<Self> {
        Qubit::from_normalized(r.a, r.b)
    }
}

impl From<Qubit> for QubitRepr {
    fn from(q: Qubit) -> Self {
        QubitRepr { a: q.a, b: q.b }
    }
}

/// Point on the unit sphere.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let v = BlochVector { x, y, z };
        if (v.norm() - 1.0).abs() > NORM_TOL {
            return Err(Error::domain(format!("Bloch vector norm {} is not 1", v.norm())));
        }
        Ok(v)
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn distance(&self, other: &BlochVector) -> f64 {
        let d = [self.x - other.x, self.y - other.y, self.z - other.z];
        (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt()
    }

    /// Polar and azimuthal angles `(θ ∈ [0, π], φ ∈ [0, 2π))`.
    pub fn angles(&self) -> (f64, f64) {
        let theta = self.z.clamp(-1.0, 1.0).acos();
        let mut phi = self.y.atan2(self.x);
        if phi < 0.0 {
            phi += TAU;
        }
        if phi >= TAU {
            phi = 0.0;
        }
        (theta, phi)
    }
}

pub fn new_qubit(a: Complex64, b: Complex64) -> Result<Qubit> {
    Qubit::new(a, b)
}

/// `x = 2 Re(ā b)`, `y = 2 Im(ā b)`, `z = |a|² − |b|²`.
pub fn bloch_vector(q: &Qubit) -> BlochVector {
    let ab = q.a.conj() * q.b;
    BlochVector { x: 2.0 * ab.re, y: 2.0 * ab.im, z: q.a.norm_sqr() - q.b.norm_sqr() }
}

/// `cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩`.
pub fn from_bloch(theta: f64, phi: f64) -> Result<Qubit> {
    if !(0.0..=PI).contains(&theta) {
        return Err(Error::domain(format!("polar angle {theta} outside [0, π]")));
    }
    if !(0.0..TAU).contains(&phi) {
        return Err(Error::domain(format!("azimuth {phi} outside [0, 2π)")));
    }
    let (s, c) = (theta / 2.0).sin_cos();
    Ok(Qubit { a: Complex64::new(c, 0.0), b: Complex64::from_polar(s, phi) })
}

/// The dual basis `(|+⟩, |−⟩)`.
pub fn dual_basis() -> (Qubit, Qubit) {
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    (Qubit { a: h, b: h }, Qubit { a: h, b: -h })
}
