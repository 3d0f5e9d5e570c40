//! Standard projective measurement and the reversible basic measurement.
//!
//! A standard measurement collapses `a|0⟩ + b|1⟩` onto one pole of the Bloch
//! sphere and discards the amplitudes. The basic measurement instead applies
//! the diagonal unitary
//!
//! ```text
//! U = e^{iφ} diag(α, α*) = e^{iφ} (α P₀ + α* P₁),   |α| = 1
//! ```
//!
//! which acts with both projectors at once. It leaves `|a|²` and `|b|²`
//! untouched and is undone exactly by `U†`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::qubit::{Qubit, NORM_TOL};

/// Generator behind [`standard_measure`]. Part of the reproducibility
/// contract: outcome sequences for a given seed are fixed by this choice.
pub type MeasurementRng = ChaCha8Rng;

/// Allowed deviation of |α| from one.
pub const UNIMODULAR_TOL: f64 = 1e-12;

/// Tolerance for accepting a basis-change matrix as unitary.
pub const BASIS_CHANGE_TOL: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Computational basis label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum BasisIndex {
    Zero = 0,
    One = 1,
}

impl BasisIndex {
    pub fn basis_state(self) -> Qubit {
        match self {
            BasisIndex::Zero => Qubit::ZERO,
            BasisIndex::One => Qubit::ONE,
        }
    }
}

impl TryFrom<u8> for BasisIndex {
    type Error = Error;

    fn try_from(v: u8) -> Result<Self> {
        match v {
            0 => Ok(BasisIndex::Zero),
            1 => Ok(BasisIndex::One),
            other => Err(Error::domain(format!("basis index must be 0 or 1, got {other}"))),
        }
    }
}

impl From<BasisIndex> for u8 {
    fn from(b: BasisIndex) -> u8 {
        b as u8
    }
}

/// Orthogonal projector onto a computational basis state.
#[derive(Debug, Clone, PartialEq)]
pub struct Projector {
    target: BasisIndex,
    matrix: ComplexMatrix,
}

impl Projector {
    pub fn new(target: BasisIndex) -> Self {
        let matrix = match target {
            BasisIndex::Zero => ComplexMatrix::diagonal(&[ONE, ZERO]),
            BasisIndex::One => ComplexMatrix::diagonal(&[ZERO, ONE]),
        };
        Projector { target, matrix }
    }

    pub fn target(&self) -> BasisIndex {
        self.target
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Applies the projector to an arbitrary 2-vector.
    pub fn apply(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        let out = self.matrix.apply(&v).expect("projector is 2x2");
        [out[0], out[1]]
    }
}

/// `P₀ = diag(1, 0)` for target 0 and `P₁ = diag(0, 1)` for target 1.
pub fn projector(target: u8) -> Result<Projector> {
    Ok(Projector::new(BasisIndex::try_from(target)?))
}

/// Unnormalized image `P|ψ⟩`; its squared norm is the outcome probability.
pub fn project(p: &Projector, q: &Qubit) -> [Complex64; 2] {
    p.apply(q.amplitudes())
}

/// The gate `e^{iφ} diag(α, α*)` with `|α| = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DiagonalUnitaryRepr", into = "DiagonalUnitaryRepr")]
pub struct DiagonalUnitary {
    phi: f64,
    alpha: Complex64,
}

impl DiagonalUnitary {
    /// Rejects `|α|` further than [`UNIMODULAR_TOL`] from one; smaller
    /// deviations are rescaled away.
    pub fn new(phi: f64, alpha: Complex64) -> Result<Self> {
        if !phi.is_finite() || !alpha.re.is_finite() || !alpha.im.is_finite() {
            return Err(Error::domain("diagonal unitary parameters must be finite"));
        }
        let modulus = alpha.norm();
        if (modulus - 1.0).abs() > UNIMODULAR_TOL {
            return Err(Error::domain(format!("|alpha| = {modulus} is not 1")));
        }
        let alpha = if (modulus - 1.0).abs() <= f64::EPSILON { alpha } else { alpha / modulus };
        Ok(DiagonalUnitary { phi, alpha })
    }

    /// `α = e^{iγ}`.
    pub fn from_angles(phi: f64, gamma: f64) -> Result<Self> {
        Self::new(phi, Complex64::from_polar(1.0, gamma))
    }

    pub fn identity() -> Self {
        DiagonalUnitary { phi: 0.0, alpha: ONE }
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn global_phase(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.phi)
    }

    /// `e^{iφ} diag(α, α*)`.
    pub fn matrix(&self) -> ComplexMatrix {
        let p = self.global_phase();
        ComplexMatrix::diagonal(&[p * self.alpha, p * self.alpha.conj()])
    }

    fn check(&self) -> Result<()> {
        Self::new(self.phi, self.alpha).map(|_| ())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DiagonalUnitaryRepr {
    phi: f64,
    #[serde(with = "crate::json")]
    alpha: Complex64,
}

impl TryFrom<DiagonalUnitaryRepr> for DiagonalUnitary {
    type Error = Error;

    fn try_from(r: DiagonalUnitaryRepr) -> Result<Self> {
        DiagonalUnitary::new(r.phi, r.alpha)
    }
}

impl From<DiagonalUnitary> for DiagonalUnitaryRepr {
    fn from(u: DiagonalUnitary) -> Self {
        DiagonalUnitaryRepr { phi: u.phi, alpha: u.alpha }
    }
}

/// Result of a standard measurement. Only the collapsed pole survives; the
/// input amplitudes cannot be reconstructed from it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "OutcomeRepr", into = "OutcomeRepr")]
pub struct MeasurementOutcome {
    outcome: BasisIndex,
    probability: f64,
    post_state: Qubit,
}

impl MeasurementOutcome {
    pub fn outcome(&self) -> BasisIndex {
        self.outcome
    }

    pub fn probability(&self) -> f64 {
        self.probability
    }

    pub fn post_state(&self) -> Qubit {
        self.post_state
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OutcomeRepr {
    outcome: BasisIndex,
    probability: f64,
    post_state: Qubit,
}

impl TryFrom<OutcomeRepr> for MeasurementOutcome {
    type Error = Error;

    fn try_from(r: OutcomeRepr) -> Result<Self> {
        if !(0.0..=1.0).contains(&r.probability) {
            return Err(Error::domain(format!("probability {} outside [0, 1]", r.probability)));
        }
        if r.post_state != r.outcome.basis_state() {
            return Err(Error::domain("post_state does not match outcome"));
        }
        Ok(MeasurementOutcome { outcome: r.outcome, probability: r.probability, post_state: r.post_state })
    }
}

impl From<MeasurementOutcome> for OutcomeRepr {
    fn from(m: MeasurementOutcome) -> Self {
        OutcomeRepr { outcome: m.outcome, probability: m.probability, post_state: m.post_state }
    }
}

fn born_probabilities(q: &Qubit) -> [f64; 2] {
    let norm_sqr = |v: [Complex64; 2]| v[0].norm_sqr() + v[1].norm_sqr();
    [
        norm_sqr(project(&Projector::new(BasisIndex::Zero), q)),
        norm_sqr(project(&Projector::new(BasisIndex::One), q)),
    ]
}

fn outcome_for(index: BasisIndex, probs: [f64; 2]) -> MeasurementOutcome {
    MeasurementOutcome {
        outcome: index,
        probability: probs[index as usize],
        post_state: index.basis_state(),
    }
}

fn draw<R: Rng + ?Sized>(probs: [f64; 2], rng: &mut R) -> BasisIndex {
    // Certain outcomes are forced and leave the generator untouched.
    if probs[1] == 0.0 {
        return BasisIndex::Zero;
    }
    if probs[0] == 0.0 {
        return BasisIndex::One;
    }
    let u: f64 = rng.random();
    if u < probs[0] {
        BasisIndex::Zero
    } else {
        BasisIndex::One
    }
}

/// Born-rule measurement drawing from a caller-supplied generator.
pub fn standard_measure_with_rng<R: Rng + ?Sized>(q: &Qubit, rng: &mut R) -> MeasurementOutcome {
    let probs = born_probabilities(q);
    outcome_for(draw(probs, rng), probs)
}

/// Born-rule measurement in the computational basis with a fresh
/// [`MeasurementRng`] seeded from `seed`.
pub fn standard_measure(q: &Qubit, seed: u64) -> MeasurementOutcome {
    standard_measure_with_rng(q, &mut MeasurementRng::seed_from_u64(seed))
}

/// `shots` independent measurements of copies of `q`, drawn from one
/// seeded stream.
pub fn sample_outcomes(q: &Qubit, seed: u64, shots: usize) -> Vec<BasisIndex> {
    let probs = born_probabilities(q);
    let mut rng = MeasurementRng::seed_from_u64(seed);
    (0..shots).map(|_| draw(probs, &mut rng)).collect()
}

/// Normalizes by the total probability, which must already be one.
fn normalize_total(v: [Complex64; 2]) -> Result<Qubit> {
    let total = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    if (total - 1.0).abs() > NORM_TOL {
        return Err(Error::Consistency {
            what: "total probability after basic measurement",
            residual: (total - 1.0).abs(),
        });
    }
    Qubit::new(v[0], v[1])
}

/// `a' = e^{iφ} α a`, `b' = e^{iφ} α* b`, divided by `√(|a'|² + |b'|²)`.
pub fn basic_measure(q: &Qubit, u: &DiagonalUnitary) -> Result<Qubit> {
    u.check()?;
    let p = u.global_phase();
    normalize_total([p * u.alpha * q.a(), p * u.alpha.conj() * q.b()])
}

/// `e^{iφ} (α P₀ + α* P₁)` assembled from the projectors.
pub fn superposed_projector_form(u: &DiagonalUnitary) -> ComplexMatrix {
    let p0 = Projector::new(BasisIndex::Zero);
    let p1 = Projector::new(BasisIndex::One);
    p0.matrix()
        .scale(u.alpha)
        .add(&p1.matrix().scale(u.alpha.conj()))
        .expect("projectors share a shape")
        .scale(u.global_phase())
}

/// Undoes [`basic_measure`] by applying `U†`.
pub fn recover(q_prime: &Qubit, u: &DiagonalUnitary) -> Result<Qubit> {
    u.check()?;
    let v = u.matrix().dagger().apply(&q_prime.amplitudes())?;
    normalize_total([v[0], v[1]])
}

fn check_basis_change(b: &ComplexMatrix) -> Result<()> {
    if b.rows() != 2 || b.cols() != 2 {
        return Err(Error::shape(format!("basis change must be 2x2, got {}x{}", b.rows(), b.cols())));
    }
    let residual = b.unitarity_residual()?;
    if residual > BASIS_CHANGE_TOL {
        return Err(Error::domain(format!("basis change is not unitary (residual {residual:e})")));
    }
    Ok(())
}

fn conjugated_apply(q: &Qubit, inner: &ComplexMatrix, b: &ComplexMatrix) -> Result<Qubit> {
    check_basis_change(b)?;
    let m = b.mat_mul(inner)?.mat_mul(&b.dagger())?;
    let v = m.apply(&q.amplitudes())?;
    normalize_total([v[0], v[1]])
}

/// Basic measurement in the basis `{B|0⟩, B|1⟩}`: applies `B U B†`.
/// With `B` the Hadamard matrix this is the dual-basis basic measurement.
pub fn basic_measure_in_basis(q: &Qubit, u: &DiagonalUnitary, basis_change: &ComplexMatrix) -> Result<Qubit> {
    u.check()?;
    conjugated_apply(q, &u.matrix(), basis_change)
}

/// Inverse of [`basic_measure_in_basis`]: applies `B U† B†`.
pub fn recover_in_basis(q_prime: &Qubit, u: &DiagonalUnitary, basis_change: &ComplexMatrix) -> Result<Qubit> {
    u.check()?;
    conjugated_apply(q_prime, &u.matrix().dagger(), basis_change)
}
