//! One-qubit unitaries as Bloch-sphere rotations.
//!
//! Any 2×2 unitary factors as `U = e^{iφ} R_n(θ)` with
//! `R_n(θ) = cos(θ/2) I − i sin(θ/2) n·σ`. The decomposition is made unique by
//! taking `θ ∈ [0, π]`, fixing the axis sign at `θ = π`, and reporting the
//! z-axis for the identity rotation.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::qubit::{BlochVector, Qubit};

/// Unitarity tolerance for [`decompose_unitary`] inputs.
pub const DECOMPOSE_UNITARY_TOL: f64 = 1e-10;

/// Reconstruction residual above which decomposition reports failure.
pub const RECONSTRUCTION_TOL: f64 = 1e-10;

/// Allowed deviation of |α|² + |β|² from one.
pub const GATE_NORM_TOL: f64 = 1e-12;

/// Below this, `sin(θ/2)` is treated as exactly zero and the axis defaults to +z.
const DEGENERATE_SIN: f64 = 1e-15;

/// Below this, `cos(θ/2)` is treated as zero when canonicalizing the axis sign.
const HALF_TURN_COS: f64 = 1e-14;

/// Axis components smaller than this are skipped when fixing the sign.
const AXIS_SIGN_TOL: f64 = 1e-12;

/// `e^{iφ} [[α, β], [−β*, α*]]` with `|α|² + |β|² = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitaryGate2 {
    phi: f64,
    alpha: Complex64,
    beta: Complex64,
}

impl UnitaryGate2 {
    pub fn new(phi: f64, alpha: Complex64, beta: Complex64) -> Result<Self> {
        if ![phi, alpha.re, alpha.im, beta.re, beta.im].iter().all(|x| x.is_finite()) {
            return Err(Error::domain("gate parameters must be finite"));
        }
        let total = alpha.norm_sqr() + beta.norm_sqr();
        if (total - 1.0).abs() > GATE_NORM_TOL {
            return Err(Error::domain(format!("|alpha|² + |beta|² = {total} is not 1")));
        }
        Ok(Self::normalized(phi, alpha, beta))
    }

    fn normalized(phi: f64, alpha: Complex64, beta: Complex64) -> Self {
        let norm = (alpha.norm_sqr() + beta.norm_sqr()).sqrt();
        if (norm - 1.0).abs() <= f64::EPSILON {
            UnitaryGate2 { phi, alpha, beta }
        } else {
            UnitaryGate2 { phi, alpha: alpha / norm, beta: beta / norm }
        }
    }

    /// Recovers the parameters of an arbitrary 2×2 unitary, with
    /// `φ = arg(det M) / 2`.
    pub fn from_matrix(m: &ComplexMatrix) -> Result<Self> {
        check_two_by_two(m)?;
        let residual = m.unitarity_residual()?;
        if residual > DECOMPOSE_UNITARY_TOL {
            return Err(Error::domain(format!("matrix is not unitary (residual {residual:e})")));
        }
        let phi = det2(m).arg() / 2.0;
        let inv = Complex64::from_polar(1.0, -phi);
        Ok(Self::normalized(phi, inv * m.get(0, 0), inv * m.get(0, 1)))
    }

    pub fn identity() -> Self {
        UnitaryGate2 { phi: 0.0, alpha: Complex64::new(1.0, 0.0), beta: Complex64::new(0.0, 0.0) }
    }

    /// Hadamard written with `φ = π/2`, `α = β = −i/√2`.
    pub fn hadamard() -> Self {
        let h = Complex64::new(0.0, -std::f64::consts::FRAC_1_SQRT_2);
        UnitaryGate2 { phi: PI / 2.0, alpha: h, beta: h }
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    pub fn matrix(&self) -> ComplexMatrix {
        let (a, b) = (self.alpha, self.beta);
        ComplexMatrix::from_rows(&[[a, b], [-b.conj(), a.conj()]])
            .expect("2x2 gate")
            .scale(Complex64::from_polar(1.0, self.phi))
    }
}

/// Canonical `(φ, θ, n)` with `U = e^{iφ} R_n(θ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DecompositionRepr", into = "DecompositionRepr")]
pub struct RotationDecomposition {
    phi: f64,
    theta: f64,
    axis: [f64; 3],
}

impl RotationDecomposition {
    pub fn new(phi: f64, theta: f64, axis: [f64; 3]) -> Result<Self> {
        if !phi.is_finite() || !(0.0..=PI).contains(&theta) {
            return Err(Error::domain(format!("rotation angle {theta} outside [0, π]")));
        }
        let norm = axis.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > 1e-12 {
            return Err(Error::domain(format!("rotation axis has norm {norm}, expected 1")));
        }
        Ok(RotationDecomposition { phi, theta, axis })
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn axis(&self) -> [f64; 3] {
        self.axis
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DecompositionRepr {
    phi: f64,
    theta: f64,
    axis: [f64; 3],
}

impl TryFrom<DecompositionRepr> for RotationDecomposition {
    type Error = Error;

    fn try_from(r: DecompositionRepr) -> Result<Self> {
        RotationDecomposition::new(r.phi, r.theta, r.axis)
    }
}

impl From<RotationDecomposition> for DecompositionRepr {
    fn from(r: RotationDecomposition) -> Self {
        DecompositionRepr { phi: r.phi, theta: r.theta, axis: r.axis }
    }
}

fn check_two_by_two(m: &ComplexMatrix) -> Result<()> {
    if m.rows() != 2 || m.cols() != 2 {
        return Err(Error::shape(format!("expected a 2x2 matrix, got {}x{}", m.rows(), m.cols())));
    }
    Ok(())
}

fn det2(m: &ComplexMatrix) -> Complex64 {
    m.get(0, 0) * m.get(1, 1) - m.get(0, 1) * m.get(1, 0)
}

/// Wraps into (−π, π].
fn wrap_phase(x: f64) -> f64 {
    let mut y = x % (2.0 * PI);
    if y <= -PI {
        y += 2.0 * PI;
    } else if y > PI {
        y -= 2.0 * PI;
    }
    y
}

/// Applies the gate: `e^{iφ} (αa + βb, −β*a + α*b)`.
pub fn apply_unitary(g: &UnitaryGate2, q: &Qubit) -> Qubit {
    let p = Complex64::from_polar(1.0, g.phi);
    let (a, b) = (q.a(), q.b());
    Qubit::renormalized([
        p * (g.alpha * a + g.beta * b),
        p * (-g.beta.conj() * a + g.alpha.conj() * b),
    ])
}

/// Splits a 2×2 unitary into global phase, rotation angle and axis.
pub fn decompose_unitary(m: &ComplexMatrix) -> Result<RotationDecomposition> {
    check_two_by_two(m)?;
    let residual = m.unitarity_residual()?;
    if residual > DECOMPOSE_UNITARY_TOL {
        return Err(Error::domain(format!("matrix is not unitary (residual {residual:e})")));
    }

    let mut phi = det2(m).arg() / 2.0;
    let v = m.scale(Complex64::from_polar(1.0, -phi));
    let (v00, v01, v10, v11) = (v.get(0, 0), v.get(0, 1), v.get(1, 0), v.get(1, 1));

    // V = c I − i (s·σ); c = Re tr V / 2, s_k = −Im tr(σ_k V) / 2.
    let mut c = (v00 + v11).re / 2.0;
    let mut s = [
        -(v01 + v10).im / 2.0,
        -(Complex64::i() * (v01 - v10)).im / 2.0,
        -(v00 - v11).im / 2.0,
    ];
    if c < 0.0 {
        phi += PI;
        c = -c;
        s = s.map(|x| -x);
    }

    let sin_half = s.iter().map(|x| x * x).sum::<f64>().sqrt();
    let (theta, axis) = if sin_half <= DEGENERATE_SIN {
        (0.0, [0.0, 0.0, 1.0])
    } else {
        let mut axis = s.map(|x| x / sin_half);
        let mut theta = 2.0 * sin_half.atan2(c);
        if c <= HALF_TURN_COS {
            // Half turn: (φ, n) and (φ + π, −n) describe the same matrix.
            if axis.iter().find(|x| x.abs() > AXIS_SIGN_TOL).is_some_and(|&x| x < 0.0) {
                axis = axis.map(|x| -x);
                phi += PI;
            }
            theta = PI;
        }
        (theta, axis)
    };

    let out = RotationDecomposition { phi: wrap_phase(phi), theta, axis };
    let residual = reconstruct_unitary(&out).frobenius_distance(m)?;
    if residual > RECONSTRUCTION_TOL {
        return Err(Error::Consistency { what: "unitary reconstruction", residual });
    }
    Ok(out)
}

/// `e^{iφ} (cos(θ/2) I − i sin(θ/2) n·σ)`.
pub fn reconstruct_unitary(r: &RotationDecomposition) -> ComplexMatrix {
    let (s, c) = (r.theta / 2.0).sin_cos();
    let [nx, ny, nz] = r.axis;
    let m = ComplexMatrix::from_rows(&[
        [Complex64::new(c, -s * nz), Complex64::new(-s * ny, -s * nx)],
        [Complex64::new(s * ny, -s * nx), Complex64::new(c, s * nz)],
    ])
    .expect("2x2 rotation");
    m.scale(Complex64::from_polar(1.0, r.phi))
}

/// Rodrigues rotation of `v` by `θ` about `n`.
pub fn rotate_bloch(r: &RotationDecomposition, v: &BlochVector) -> BlochVector {
    let n = r.axis;
    let p = v.as_array();
    let (sin, cos) = r.theta.sin_cos();
    let dot = n[0] * p[0] + n[1] * p[1] + n[2] * p[2];
    let cross = [
        n[1] * p[2] - n[2] * p[1],
        n[2] * p[0] - n[0] * p[2],
        n[0] * p[1] - n[1] * p[0],
    ];
    let out: [f64; 3] = std::array::from_fn(|k| p[k] * cos + cross[k] * sin + n[k] * dot * (1.0 - cos));
    BlochVector { x: out[0], y: out[1], z: out[2] }
}
